//! Linear maps between based rings, given by square matrices whose column `c`
//! holds the coordinates of the image of `e_c`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{direct_sum, quandle_ring, BasedRing, Domain, PrimeField, RingElement};
use crate::error::{Error, Result};
use crate::quandle::{char3_ring_twins, disjoint_union, trivial_quandle, Quandle};

pub type Matrix<E> = Vec<Vec<E>>;

pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

fn check_square<E>(m: &[Vec<E>], dim: usize) -> Result<()> {
    if m.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: m.len() });
    }
    for row in m {
        if row.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
        }
    }
    Ok(())
}

/// Converts an integer matrix into the domain.
pub fn matrix_from_i64<D: Domain>(d: &D, m: &[Vec<i64>]) -> Matrix<D::Elem> {
    m.iter().map(|r| r.iter().map(|&x| d.from_i64(x)).collect()).collect()
}

fn column<E: Clone>(m: &[Vec<E>], c: usize) -> Vec<E> {
    m.iter().map(|r| r[c].clone()).collect()
}

/// Determinant by fraction-free elimination; exact in every domain.
pub fn determinant<D: Domain>(d: &D, m: &[Vec<D::Elem>]) -> Result<D::Elem> {
    let n = m.len();
    check_square(m, n)?;
    if n == 0 {
        return Ok(d.one());
    }
    let mut a: Matrix<D::Elem> = m.to_vec();
    let mut negate = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&a[k][k]) {
            let Some(swap) = (k + 1..n).find(|&i| !d.is_zero(&a[i][k])) else {
                return Ok(d.zero());
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = d.sub(&d.mul(&a[i][j], &a[k][k]), &d.mul(&a[i][k], &a[k][j]));
                a[i][j] = d.div_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg(&det) } else { det })
}

pub fn rank<D: Domain>(d: &D, m: &[Vec<D::Elem>]) -> usize {
    d.echelon(m.to_vec()).len()
}

/// Inverse over the domain, if the matrix is invertible there.
pub fn matrix_inverse<D: Domain>(d: &D, m: &[Vec<D::Elem>]) -> Result<Option<Matrix<D::Elem>>> {
    let n = m.len();
    check_square(m, n)?;
    let augmented: Matrix<D::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { d.one() } else { d.zero() }));
            r
        })
        .collect();
    let e = d.echelon(augmented);
    if e.len() != n {
        return Ok(None);
    }
    let one = d.one();
    for (i, row) in e.iter().enumerate() {
        for (j, x) in row[..n].iter().enumerate() {
            let ok = if i == j { *x == one } else { d.is_zero(x) };
            if !ok {
                return Ok(None);
            }
        }
    }
    Ok(Some(e.into_iter().map(|row| row[n..].to_vec()).collect()))
}

/// `φ(u) = M·u`.
pub fn apply_matrix<D: Domain>(d: &D, m: &[Vec<D::Elem>], u: &[D::Elem]) -> RingElement<D::Elem> {
    m.iter()
        .map(|row| row.iter().zip(u).fold(d.zero(), |acc, (a, b)| d.add(&acc, &d.mul(a, b))))
        .collect()
}

fn pair_holds<D: Domain>(r1: &BasedRing<D>, r2: &BasedRing<D>, cols: &[RingElement<D::Elem>], i: usize, j: usize) -> bool {
    let d = r2.domain();
    let mut lhs = r2.zero();
    for (k, c) in r1.product_terms(i, j) {
        for (x, y) in lhs.iter_mut().zip(&cols[*k]) {
            *x = d.add(x, &d.mul(c, y));
        }
    }
    lhs == r2.mul(&cols[i], &cols[j])
}

/// `φ(e_i e_j) = φ(e_i) φ(e_j)` for every basis pair.
pub fn is_ring_homomorphism<D: Domain>(r1: &BasedRing<D>, r2: &BasedRing<D>, m: &[Vec<D::Elem>]) -> Result<bool> {
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch { expected: r1.dim(), got: r2.dim() });
    }
    let n = r1.dim();
    check_square(m, n)?;
    let cols: Vec<_> = (0..n).map(|c| column(m, c)).collect();
    Ok((0..n).all(|i| (0..n).all(|j| pair_holds(r1, r2, &cols, i, j))))
}

/// A homomorphism whose determinant is a unit of the domain.
pub fn is_ring_isomorphism<D: Domain>(r1: &BasedRing<D>, r2: &BasedRing<D>, m: &[Vec<D::Elem>]) -> Result<bool> {
    if !is_ring_homomorphism(r1, r2, m)? {
        return Ok(false);
    }
    let det = determinant(r1.domain(), m)?;
    Ok(r1.domain().is_unit(&det))
}

#[derive(Debug, Clone, Copy)]
pub struct BruteForceOptions {
    /// Maximum number of candidate columns examined.
    pub budget: u64,
    pub invertible_only: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_SEARCH_BUDGET, invertible_only: true }
    }
}

/// Exhaustive search for a homomorphism (by default an isomorphism) over
/// `F_p`. Columns `φ(e_0), φ(e_1), …` are chosen in turn, each running over
/// `F_p^n` in lexicographic order, and every basis-pair condition is checked
/// as soon as the columns it mentions are fixed. The result is the first
/// solution in that order, independent of thread scheduling.
pub fn ring_iso_brute_force(
    r1: &BasedRing<PrimeField>,
    r2: &BasedRing<PrimeField>,
    opts: BruteForceOptions,
) -> Result<Option<Matrix<u64>>> {
    if r1.domain() != r2.domain() {
        return Err(Error::DomainMismatch(r1.domain().tag().to_string(), r2.domain().tag().to_string()));
    }
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch { expected: r1.dim(), got: r2.dim() });
    }
    let n = r1.dim();
    let p = r1.domain().modulus();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let per_column = (p as u128).checked_pow(n as u32).filter(|&c| c <= u64::MAX as u128).ok_or_else(|| {
        Error::Capacity(format!("F_{p}^{n} is too large to enumerate"))
    })? as u64;

    // pair (i, j) becomes checkable once every column it mentions is fixed
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let level = r1.product_terms(i, j).iter().map(|(k, _)| *k).chain([i, j]).max().unwrap();
            checks[level].push((i, j));
        }
    }

    let spent = AtomicU64::new(0);
    let search = Search { r1, r2, p, n, per_column, checks: &checks, spent: &spent, opts };
    let found = (0..per_column).into_par_iter().find_map_first(|first| {
        let mut cols = vec![search.decode(first)];
        search.step(&mut cols).transpose()
    });
    match found {
        Some(Ok(cols)) => Ok(Some((0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect())),
        Some(Err(e)) => Err(e),
        None => Ok(None),
    }
}

struct Search<'a> {
    r1: &'a BasedRing<PrimeField>,
    r2: &'a BasedRing<PrimeField>,
    p: u64,
    n: usize,
    per_column: u64,
    checks: &'a [Vec<(usize, usize)>],
    spent: &'a AtomicU64,
    opts: BruteForceOptions,
}

impl Search<'_> {
    /// Index to vector, first coordinate most significant.
    fn decode(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for slot in v.iter_mut().rev() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        v
    }

    /// Validates the newest column, then extends. `Ok(Some)` on a full solution.
    fn step(&self, cols: &mut Vec<Vec<u64>>) -> Result<Option<Vec<Vec<u64>>>> {
        if self.spent.fetch_add(1, Ordering::Relaxed) >= self.opts.budget {
            return Err(Error::Capacity(format!("isomorphism search exceeded budget {}", self.opts.budget)));
        }
        let level = cols.len() - 1;
        if !self.checks[level].iter().all(|&(i, j)| pair_holds(self.r1, self.r2, cols, i, j)) {
            return Ok(None);
        }
        if self.opts.invertible_only && rank(self.r1.domain(), cols) != cols.len() {
            return Ok(None);
        }
        if cols.len() == self.n {
            return Ok(Some(cols.clone()));
        }
        for idx in 0..self.per_column {
            cols.push(self.decode(idx));
            let r = self.step(cols);
            cols.pop();
            match r {
                Ok(None) => {}
                other => return other,
            }
        }
        Ok(None)
    }
}

/// The char-3 isomorphism between the rings of [`char3_ring_twins`].
pub fn char3_twin_matrix() -> Matrix<i64> {
    vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]
}

/// The characteristic-0 isomorphism between the rings of
/// [`crate::quandle::char0_ring_twins`].
pub fn char0_twin_matrix() -> Matrix<i64> {
    let mut m: Matrix<i64> = (0..7).map(|i| (0..7).map(|j| i64::from(i == j)).collect()).collect();
    m[4][5] = 1;
    m[6][5] = -1;
    m
}

#[derive(Debug, Clone)]
pub struct GeneralizedCounterexample {
    pub x: Quandle,
    pub y: Quandle,
    pub matrix: Matrix<u64>,
    pub verified: bool,
}

/// Pads the char-3 twins with `n − 4` fixed points and maps `e_3` to the sum
/// of all basis elements; an isomorphism over `F_p` whenever `p | n − 1`.
pub fn generalized_counterexample(n: usize, p: u64) -> Result<GeneralizedCounterexample> {
    let f = PrimeField::new(p)?;
    if n < 4 || (n as u64 - 1) % p != 0 {
        return Err(Error::Precondition(format!("need n ≥ 4 and p | n − 1, got n = {n}, p = {p}")));
    }
    let (x4, y4) = char3_ring_twins();
    let (x, y) = if n == 4 {
        (x4, y4)
    } else {
        let pad = trivial_quandle(n - 4)?;
        (disjoint_union(&x4, &pad), disjoint_union(&y4, &pad))
    };
    let matrix: Matrix<u64> = (0..n).map(|r| (0..n).map(|c| u64::from(r == c || c == 3)).collect()).collect();
    let verified = is_ring_isomorphism(&quandle_ring(&x, f), &quandle_ring(&y, f), &matrix)?;
    Ok(GeneralizedCounterexample { x, y, matrix, verified })
}

/// `k[pt]^{⊕m}` over `F_p`.
pub fn point_ring_sum(m: usize, f: PrimeField) -> Result<BasedRing<PrimeField>> {
    let one = quandle_ring(&trivial_quandle(1)?, f);
    let mut acc = one.clone();
    for _ in 1..m {
        acc = direct_sum(&acc, &one)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{char0_ring_twins, dihedral_quandle, two_orbit_order3};
    use crate::ring::{Integers, Rationals};
    use proptest::prelude::*;

    #[test]
    fn determinants_and_inverses() {
        let z = Integers;
        let m = matrix_from_i64(&z, &char3_twin_matrix());
        assert_eq!(determinant(&z, &m).unwrap(), z.one());
        let inv = matrix_inverse(&z, &m).unwrap().unwrap();
        assert_eq!(inv, matrix_from_i64(&z, &[vec![1, 0, 0, -1], vec![0, 1, 0, -1], vec![0, 0, 1, -1], vec![0, 0, 0, 1]]));
        let two = matrix_from_i64(&z, &[vec![2, 0], vec![0, 1]]);
        assert_eq!(matrix_inverse(&z, &two).unwrap(), None);
        let q = Rationals;
        let two = matrix_from_i64(&q, &[vec![2, 0], vec![0, 1]]);
        assert!(matrix_inverse(&q, &two).unwrap().is_some());
    }

    #[test]
    fn identity_is_isomorphism() {
        let r = quandle_ring(&dihedral_quandle(4).unwrap(), Rationals);
        let id = matrix_from_i64(&Rationals, &(0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect::<Vec<_>>());
        assert!(is_ring_isomorphism(&r, &r, &id).unwrap());
        assert!(is_ring_homomorphism(&r, &r, &id[..3]).is_err());
    }

    #[test]
    fn twin_matrices_are_isomorphisms() {
        let f3 = PrimeField::new(3).unwrap();
        let (x, y) = char3_ring_twins();
        let (rx, ry) = (quandle_ring(&x, f3), quandle_ring(&y, f3));
        let m = matrix_from_i64(&f3, &char3_twin_matrix());
        assert!(is_ring_isomorphism(&rx, &ry, &m).unwrap());
        let inv = matrix_inverse(&f3, &m).unwrap().unwrap();
        assert!(is_ring_isomorphism(&ry, &rx, &inv).unwrap());
        // fails away from characteristic 3
        let f5 = PrimeField::new(5).unwrap();
        let m5 = matrix_from_i64(&f5, &char3_twin_matrix());
        assert!(!is_ring_isomorphism(&quandle_ring(&x, f5), &quandle_ring(&y, f5), &m5).unwrap());

        let (x, y) = char0_ring_twins();
        let (rx, ry) = (quandle_ring(&x, Rationals), quandle_ring(&y, Rationals));
        let m = matrix_from_i64(&Rationals, &char0_twin_matrix());
        assert!(is_ring_isomorphism(&rx, &ry, &m).unwrap());
        let inv = matrix_inverse(&Rationals, &m).unwrap().unwrap();
        assert!(is_ring_isomorphism(&ry, &rx, &inv).unwrap());
    }

    #[test]
    fn generalized_counterexamples() {
        for (n, p) in [(4, 3), (6, 5), (12, 11), (7, 3), (7, 2)] {
            let g = generalized_counterexample(n, p).unwrap();
            assert!(g.verified, "n = {n}, p = {p}");
        }
        assert!(matches!(generalized_counterexample(6, 3), Err(Error::Precondition(_))));
        assert!(matches!(generalized_counterexample(3, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn brute_force_finds_identity_first() {
        let f = PrimeField::new(3).unwrap();
        let r = quandle_ring(&dihedral_quandle(3).unwrap(), f);
        let m = ring_iso_brute_force(&r, &r, BruteForceOptions::default()).unwrap().unwrap();
        assert!(is_ring_isomorphism(&r, &r, &m).unwrap());
        // the zero map is a homomorphism and comes first when invertibility is not required
        let opts = BruteForceOptions { invertible_only: false, ..Default::default() };
        let z = ring_iso_brute_force(&r, &r, opts).unwrap().unwrap();
        assert!(z.iter().flatten().all(|&c| c == 0));
    }

    #[test]
    fn brute_force_on_twins_and_sums() {
        let f3 = PrimeField::new(3).unwrap();
        let (x, y) = char3_ring_twins();
        let m = ring_iso_brute_force(&quandle_ring(&x, f3), &quandle_ring(&y, f3), BruteForceOptions::default())
            .unwrap()
            .unwrap();
        assert!(is_ring_isomorphism(&quandle_ring(&x, f3), &quandle_ring(&y, f3), &m).unwrap());
        for p in [2, 3] {
            let f = PrimeField::new(p).unwrap();
            let sum = point_ring_sum(3, f).unwrap();
            let t3 = quandle_ring(&trivial_quandle(3).unwrap(), f);
            assert_eq!(ring_iso_brute_force(&sum, &t3, BruteForceOptions::default()).unwrap(), None);
        }
    }

    #[test]
    fn order3_rings_pairwise_distinct_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let qs = [trivial_quandle(3).unwrap(), two_orbit_order3(), dihedral_quandle(3).unwrap()];
        for (a, x) in qs.iter().enumerate() {
            for y in &qs[a + 1..] {
                let r = ring_iso_brute_force(&quandle_ring(x, f), &quandle_ring(y, f), BruteForceOptions::default());
                assert_eq!(r.unwrap(), None);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = PrimeField::new(5).unwrap();
        let r = quandle_ring(&dihedral_quandle(3).unwrap(), f);
        let t = quandle_ring(&trivial_quandle(3).unwrap(), f);
        let opts = BruteForceOptions { budget: 10, ..Default::default() };
        assert!(matches!(ring_iso_brute_force(&r, &t, opts), Err(Error::Capacity(_))));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(entries in proptest::collection::vec(-3i64..=3, 9)) {
            let q = Rationals;
            let m: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
            let m = matrix_from_i64(&q, &m);
            match matrix_inverse(&q, &m).unwrap() {
                Some(inv) => {
                    for c in 0..3 {
                        let e: Vec<_> = (0..3).map(|r| q.from_i64(i64::from(r == c))).collect();
                        prop_assert_eq!(apply_matrix(&q, &m, &apply_matrix(&q, &inv, &e)), e);
                    }
                }
                None => prop_assert!(q.is_zero(&determinant(&q, &m).unwrap())),
            }
        }
    }
}
