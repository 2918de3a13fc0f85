//! Quandle rings and other finite-rank rings given by structure constants.

pub mod domain;
pub mod morphism;
pub mod power_assoc;

pub use domain::{ComplexFloat, Domain, DomainTag, Integers, PrimeField, Rationals, COMPLEX_ZERO_TOL};
pub use morphism::{
    char0_twin_matrix, char3_twin_matrix, determinant, generalized_counterexample, is_ring_homomorphism,
    is_ring_isomorphism, matrix_from_i64, matrix_inverse, point_ring_sum, rank, ring_iso_brute_force, apply_matrix,
    BruteForceOptions, GeneralizedCounterexample, Matrix,
    DEFAULT_SEARCH_BUDGET,
};
pub use power_assoc::{
    albert_check, power_assoc_witness, AlbertIdentity, CoefficientSearch, PowerAssocWitness, DEFAULT_BOX,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quandle::Quandle;

/// A coefficient vector in a [`BasedRing`].
pub type RingElement<E> = Vec<E>;

/// Free module of rank `dim` with a bilinear product given on basis pairs.
#[derive(Debug, Clone)]
pub struct BasedRing<D: Domain> {
    domain: D,
    dim: usize,
    /// `structure[i][j]` lists the nonzero coordinates of `e_i · e_j`.
    structure: Vec<Vec<Vec<(usize, D::Elem)>>>,
    labels: Vec<String>,
}

impl<D: Domain> BasedRing<D> {
    /// Builds a ring from dense structure constants, `dense[i][j]` being the
    /// coordinate vector of `e_i · e_j`.
    pub fn from_structure(domain: D, dense: Vec<Vec<Vec<D::Elem>>>, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = dense.len();
        let mut structure = Vec::with_capacity(dim);
        for row in dense {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: row.len() });
            }
            let mut out = Vec::with_capacity(dim);
            for entry in row {
                if entry.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: entry.len() });
                }
                out.push(entry.into_iter().enumerate().filter(|(_, c)| !domain.is_zero(c)).collect());
            }
            structure.push(out);
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("a{i}")).collect());
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: labels.len() });
        }
        Ok(Self { domain, dim, structure, labels })
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Sparse coordinates of `e_i · e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, D::Elem)] {
        &self.structure[i][j]
    }

    /// Dense coordinates of `e_i · e_j`.
    pub fn structure_vector(&self, i: usize, j: usize) -> RingElement<D::Elem> {
        let mut v = self.zero();
        for (k, c) in &self.structure[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn zero(&self) -> RingElement<D::Elem> {
        vec![self.domain.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> RingElement<D::Elem> {
        let mut v = self.zero();
        v[i] = self.domain.one();
        v
    }

    /// Element with integer coordinates.
    pub fn element(&self, coeffs: &[i64]) -> Result<RingElement<D::Elem>> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: coeffs.len() });
        }
        Ok(coeffs.iter().map(|&c| self.domain.from_i64(c)).collect())
    }

    pub fn multiply(&self, u: &[D::Elem], v: &[D::Elem]) -> Result<RingElement<D::Elem>> {
        for len in [u.len(), v.len()] {
            if len != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: len });
            }
        }
        Ok(self.mul(u, v))
    }

    /// Product without length checks.
    pub(crate) fn mul(&self, u: &[D::Elem], v: &[D::Elem]) -> RingElement<D::Elem> {
        let d = &self.domain;
        let mut out = self.zero();
        for (i, ui) in u.iter().enumerate() {
            if d.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if d.is_zero(vj) {
                    continue;
                }
                let uv = d.mul(ui, vj);
                for (k, c) in &self.structure[i][j] {
                    out[*k] = d.add(&out[*k], &d.mul(&uv, c));
                }
            }
        }
        out
    }

    pub fn add(&self, u: &[D::Elem], v: &[D::Elem]) -> RingElement<D::Elem> {
        u.iter().zip(v).map(|(a, b)| self.domain.add(a, b)).collect()
    }

    pub fn sub(&self, u: &[D::Elem], v: &[D::Elem]) -> RingElement<D::Elem> {
        u.iter().zip(v).map(|(a, b)| self.domain.sub(a, b)).collect()
    }

    pub fn scale(&self, s: &D::Elem, u: &[D::Elem]) -> RingElement<D::Elem> {
        u.iter().map(|a| self.domain.mul(s, a)).collect()
    }

    pub fn is_zero(&self, u: &[D::Elem]) -> bool {
        u.iter().all(|a| self.domain.is_zero(a))
    }

    /// Every basis product is a single basis element with coefficient 1.
    pub fn is_basis_closed(&self) -> bool {
        let one = self.domain.one();
        self.structure.iter().flatten().all(|t| t.len() == 1 && t[0].1 == one)
    }
}

/// `k[X]`: basis `a_x`, product `a_i · a_j = a_{i ▷ j}`.
pub fn quandle_ring<D: Domain>(x: &Quandle, domain: D) -> BasedRing<D> {
    let n = x.size();
    let one = domain.one();
    let structure = (0..n)
        .map(|i| (0..n).map(|j| vec![(x.op(i, j), one.clone())]).collect())
        .collect();
    BasedRing { domain, dim: n, structure, labels: (0..n).map(|i| format!("a{i}")).collect() }
}

/// Coefficient sum.
pub fn augmentation<D: Domain>(domain: &D, u: &[D::Elem]) -> D::Elem {
    u.iter().fold(domain.zero(), |acc, c| domain.add(&acc, c))
}

/// Block sum `R₁ ⊕ R₂`; products across blocks vanish.
pub fn direct_sum<D: Domain>(r1: &BasedRing<D>, r2: &BasedRing<D>) -> Result<BasedRing<D>> {
    if r1.domain.tag() != r2.domain.tag() {
        return Err(Error::DomainMismatch(r1.domain.tag().to_string(), r2.domain.tag().to_string()));
    }
    let (n1, n2) = (r1.dim, r2.dim);
    let dim = n1 + n2;
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for i in 0..n1 {
        for j in 0..n1 {
            structure[i][j] = r1.structure[i][j].clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            structure[n1 + i][n1 + j] = r2.structure[i][j].iter().map(|(k, c)| (n1 + k, c.clone())).collect();
        }
    }
    let labels = (0..dim).map(|i| format!("a{i}")).collect();
    Ok(BasedRing { domain: r1.domain.clone(), dim, structure, labels })
}

/// `|{v ∈ F_p^n : u·v = 0 for all u}|` in `F_p[X]`.
pub fn right_annihilator_count(x: &Quandle, p: u64) -> Result<BigInt> {
    let f = PrimeField::new(p)?;
    let n = x.size();
    // e_i · v = Σ_j v_j a_{i▷j}; coordinate k collects the j with i ▷ j = k
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for k in 0..n {
            let row: Vec<u64> = (0..n).map(|j| u64::from(x.op(i, j) == k)).collect();
            if row.iter().any(|&c| c != 0) {
                rows.push(row);
            }
        }
    }
    let r = f.echelon(rows).len();
    Ok(BigInt::from(p).pow((n - r) as u32))
}

/// Checks `(Σ_{z ∈ O} z)·(x − y) = 0` for every orbit `O` with more than one
/// element and every pair `x ≠ y`.
pub fn orbit_sum_annihilates<D: Domain>(x: &Quandle, domain: D) -> bool {
    let ring = quandle_ring(x, domain);
    let n = x.size();
    x.orbits().iter().filter(|o| o.len() > 1).all(|orbit| {
        let mut s = ring.zero();
        for &z in orbit {
            s[z] = ring.domain.one();
        }
        (0..n).all(|a| {
            (0..n).filter(|&b| b != a).all(|b| {
                let diff = ring.sub(&ring.basis(a), &ring.basis(b));
                ring.is_zero(&ring.mul(&s, &diff))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{dihedral_quandle, trivial_quandle, two_orbit_order3};
    use proptest::prelude::*;

    #[test]
    fn trivial_ring_products() {
        let r = quandle_ring(&trivial_quandle(2).unwrap(), Integers);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(r.mul(&r.basis(i), &r.basis(j)), r.basis(i));
            }
        }
        assert_eq!(r.dim(), 2);
        assert!(r.is_basis_closed());
    }

    #[test]
    fn r3_products() {
        let r = quandle_ring(&dihedral_quandle(3).unwrap(), Integers);
        assert_eq!(r.mul(&r.basis(0), &r.basis(1)), r.basis(2));
        let e1 = r.element(&[-1, 1, 0]).unwrap();
        // e1·e1 = e1 − 2e2 = a0 + a1 − 2a2
        assert_eq!(r.mul(&e1, &e1), r.element(&[1, 1, -2]).unwrap());
        assert_eq!(r.mul(&e1, &r.zero()), r.zero());
        assert!(r.multiply(&e1, &[BigInt::from(1)]).is_err());
    }

    #[test]
    fn augmentation_values() {
        let z = Integers;
        assert_eq!(augmentation(&z, &[BigInt::from(1), BigInt::from(0)]), BigInt::from(1));
        assert_eq!(augmentation(&z, &[BigInt::from(-1), BigInt::from(1)]), BigInt::from(0));
    }

    #[test]
    fn direct_sums() {
        let one = quandle_ring(&trivial_quandle(1).unwrap(), Rationals);
        let two = direct_sum(&one, &one).unwrap();
        let three = direct_sum(&two, &one).unwrap();
        assert_eq!(three.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let p = three.mul(&three.basis(i), &three.basis(j));
                if i == j {
                    assert_eq!(p, three.basis(i));
                } else {
                    assert!(three.is_zero(&p));
                }
            }
        }
        let f = quandle_ring(&trivial_quandle(1).unwrap(), Rationals);
        assert!(direct_sum(&f, &one).is_ok());
    }

    #[test]
    fn zero_columns() {
        for p in [2, 3, 5, 7] {
            let pb = BigInt::from(p);
            assert_eq!(right_annihilator_count(&trivial_quandle(3).unwrap(), p).unwrap(), &pb * &pb);
            assert_eq!(right_annihilator_count(&two_orbit_order3(), p).unwrap(), pb);
            assert_eq!(right_annihilator_count(&dihedral_quandle(3).unwrap(), p).unwrap(), BigInt::from(1));
        }
        assert!(right_annihilator_count(&trivial_quandle(3).unwrap(), 4).is_err());
    }

    #[test]
    fn orbit_sums_annihilate_differences() {
        assert!(orbit_sum_annihilates(&two_orbit_order3(), Integers));
        assert!(orbit_sum_annihilates(&dihedral_quandle(6).unwrap(), Integers));
    }

    #[test]
    fn trivial_ring_right_multiplication_is_augmentation() {
        let r = quandle_ring(&trivial_quandle(3).unwrap(), Integers);
        let u = r.element(&[2, -1, 5]).unwrap();
        let w = r.element(&[1, 1, -3]).unwrap();
        let eps = augmentation(r.domain(), &w);
        assert_eq!(r.mul(&u, &w), r.scale(&eps, &u));
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, n)
    }

    proptest! {
        #[test]
        fn bilinear_and_augmentation_multiplicative(
            u in small_vec(5), u2 in small_vec(5), v in small_vec(5), alpha in -3i64..=3, which in 0usize..3
        ) {
            let q = [dihedral_quandle(5).unwrap(), trivial_quandle(5).unwrap(),
                     crate::quandle::disjoint_union(&dihedral_quandle(3).unwrap(), &trivial_quandle(2).unwrap())][which].clone();
            let r = quandle_ring(&q, Integers);
            let d = r.domain();
            let (u, u2, v) = (r.element(&u).unwrap(), r.element(&u2).unwrap(), r.element(&v).unwrap());
            let a = d.from_i64(alpha);
            let lhs = r.mul(&r.add(&r.scale(&a, &u), &u2), &v);
            let rhs = r.add(&r.scale(&a, &r.mul(&u, &v)), &r.mul(&u2, &v));
            prop_assert_eq!(lhs, rhs);
            let lhs = r.mul(&v, &r.add(&r.scale(&a, &u), &u2));
            let rhs = r.add(&r.scale(&a, &r.mul(&v, &u)), &r.mul(&v, &u2));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(augmentation(d, &r.mul(&u, &v)), augmentation(d, &u) * augmentation(d, &v));
        }
    }
}
