//! Closed forms in the augmentation ideal of `Z[R_n]`, the Δ-filtration of
//! dihedral quandle rings, and a numeric check of the decomposition of
//! `C[R_n]` into right ideals.
//!
//! Throughout, `e_i = a_i − a_0` for `1 ≤ i < n`, and `e_0 = 0`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{delta_series, quotient_shape, AbelianGroupShape, DeltaVariant, Submodule};
use crate::quandle::dihedral_quandle;
use crate::ring::{quandle_ring, Integers};

/// Integer combination of `e_1, …, e_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EBasisExpr {
    n: usize,
    terms: BTreeMap<usize, i64>,
}

impl EBasisExpr {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// Builds `Σ c·e_idx`, reducing indices mod `n` and dropping `e_0`.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut e = Self::zero(n);
        for (c, idx) in terms {
            e.add_term(idx, c);
        }
        e
    }

    pub fn add_term(&mut self, idx: i64, c: i64) {
        let i = idx.rem_euclid(self.n as i64) as usize;
        if i == 0 || c == 0 {
            return;
        }
        let slot = self.terms.entry(i).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&i);
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.terms.get(&i).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates in the basis `a_0, …, a_{n−1}`.
    pub fn to_a_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        for (&i, &c) in &self.terms {
            v[i] += c;
            v[0] -= c;
        }
        v
    }

    /// Inverse of [`Self::to_a_vector`]; `None` unless the coefficients sum to 0.
    pub fn from_a_vector(v: &[BigInt]) -> Option<Self> {
        let sum: BigInt = v.iter().sum();
        if !sum.is_zero() {
            return None;
        }
        let mut e = Self::zero(v.len());
        for (i, c) in v.iter().enumerate().skip(1) {
            e.add_term(i as i64, c.to_i64()?);
        }
        Some(e)
    }

    /// Parses `"e_3-e_4-e_7"`, `"-2e_4"`, `"0"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        let mut e = Self::zero(n);
        if s == "0" {
            return Ok(e);
        }
        let bad = || Error::Parse(format!("bad e-basis expression {s:?}"));
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..].find(['+', '-']).map_or(body.len(), |k| k + 1);
            let (term, tail) = body.split_at(end);
            let (coef, idx) = term.split_once("e_").ok_or_else(bad)?;
            let coef: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, size: n });
            }
            e.add_term(idx as i64, sign * coef);
            rest = tail;
        }
        Ok(e)
    }
}

impl fmt::Display for EBasisExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&i, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}e_{i}")?;
            } else {
                write!(f, "{sign}{mag}e_{i}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for EBasisExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `e_i · e_j = e_{2j−i} − e_{2j} − e_{n−i}` in `Z[R_n]`.
pub fn e_product(n: usize, i: usize, j: usize) -> Result<EBasisExpr> {
    for idx in [i, j] {
        if idx == 0 || idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, size: n });
        }
    }
    let (n_, i, j) = (n as i64, i as i64, j as i64);
    Ok(EBasisExpr::from_terms(n, [(1, 2 * j - i), (-1, 2 * j), (-1, n_ - i)]))
}

/// `table[i−1][j−1] = e_i · e_j`.
pub fn appendix_table(n: usize) -> Result<Vec<Vec<EBasisExpr>>> {
    if n < 3 {
        return Err(Error::Precondition(format!("appendix tables need n ≥ 3, got {n}")));
    }
    (1..n).map(|i| (1..n).map(|j| e_product(n, i, j)).collect()).collect()
}

/// Column `j` equals column `j + n/2` (even `n`).
pub fn column_periodicity(n: usize) -> Result<bool> {
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("column periodicity needs even n, got {n}")));
    }
    let t = appendix_table(n)?;
    Ok((0..n - 1).all(|i| (1..n / 2).all(|j| t[i][j - 1] == t[i][j - 1 + n / 2])))
}

/// Compares [`e_product`] with multiplication in `Z[R_n]` for every pair.
pub fn cross_check_generic(n: usize) -> Result<bool> {
    let r = quandle_ring(&dihedral_quandle(n)?, Integers);
    let basis = |i: usize| EBasisExpr::from_terms(n, [(1, i as i64)]).to_a_vector();
    for i in 1..n {
        for j in 1..n {
            let generic = EBasisExpr::from_a_vector(&r.multiply(&basis(i), &basis(j))?);
            if generic.as_ref() != Some(&e_product(n, i, j)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One printed cell of a reference multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceCell {
    pub i: usize,
    pub j: usize,
    pub expected: String,
}

fn cells(raw: &[(usize, usize, &str)]) -> Vec<ReferenceCell> {
    raw.iter().map(|&(i, j, e)| ReferenceCell { i, j, expected: e.to_string() }).collect()
}

/// Printed cells of the published `n = 8` table.
pub fn reference_cells_r8() -> Vec<ReferenceCell> {
    cells(&[
        (1, 2, "e_3-e_4-e_7"),
        (1, 4, "0"),
        (2, 1, "-e_2-e_6"),
        (2, 2, "e_2-e_4-e_6"),
        (2, 3, "e_4-2e_6"),
        (2, 4, "0"),
        (2, 5, "-e_2-e_6"),
        (2, 7, "e_4-2e_6"),
        (3, 2, "e_1-e_4-e_5"),
        (3, 4, "0"),
        (4, 2, "-2e_4"),
        (4, 4, "0"),
        (4, 6, "-2e_4"),
        (5, 2, "-e_3-e_4+e_7"),
        (5, 4, "0"),
        (6, 1, "-2e_2+e_4"),
        (6, 2, "-e_2-e_4+e_6"),
        (6, 3, "-e_2-e_6"),
        (6, 4, "0"),
        (6, 5, "-2e_2+e_4"),
        (6, 7, "-e_2-e_6"),
        (7, 2, "-e_1-e_4+e_5"),
        (7, 4, "0"),
    ])
}

/// Printed cells of the published `n = 10` table.
pub fn reference_cells_r10() -> Vec<ReferenceCell> {
    cells(&[
        (1, 1, "e_1-e_2-e_9"),
        (1, 5, "0"),
        (2, 1, "-e_2-e_8"),
        (2, 4, "e_6-2e_8"),
        (2, 5, "0"),
        (2, 6, "-e_2-e_8"),
        (2, 9, "e_6-2e_8"),
        (3, 1, "-e_2-e_7+e_9"),
        (3, 5, "0"),
        (4, 1, "-e_2-e_6+e_8"),
        (4, 2, "-e_4-e_6"),
        (4, 3, "e_2-2e_6"),
        (4, 5, "0"),
        (4, 7, "-e_4-e_6"),
        (4, 8, "e_2-2e_6"),
        (5, 1, "-e_2-e_5+e_7"),
        (5, 5, "0"),
        (6, 1, "-e_2-e_4+e_6"),
        (6, 2, "-2e_4+e_8"),
        (6, 3, "-e_4-e_6"),
        (6, 5, "0"),
        (6, 7, "-2e_4+e_8"),
        (6, 8, "-e_4-e_6"),
        (7, 1, "-e_2-e_3+e_5"),
        (7, 5, "0"),
        (8, 1, "-2e_2+e_4"),
        (8, 4, "-e_2-e_8"),
        (8, 5, "0"),
        (8, 6, "-2e_2+e_4"),
        (8, 9, "-e_2-e_8"),
        (9, 1, "-e_1-e_2+e_3"),
        (9, 5, "0"),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub formula: String,
    pub i: usize,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaReport {
    pub n: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl FormulaReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares printed cells against [`e_product`].
pub fn check_reference_cells(n: usize, cells: &[ReferenceCell]) -> Result<FormulaReport> {
    let mut mismatches = Vec::new();
    for c in cells {
        let expected = EBasisExpr::parse(n, &c.expected)?;
        let computed = e_product(n, c.i, c.j)?;
        if expected != computed {
            mismatches.push(Mismatch {
                formula: format!("e_{} · e_{}", c.i, c.j),
                i: c.i,
                expected: expected.to_string(),
                computed: computed.to_string(),
            });
        }
    }
    Ok(FormulaReport { n, checked: cells.len(), mismatches })
}

type Family = (&'static str, Vec<usize>, fn(i64, i64) -> (i64, i64, Vec<(i64, i64)>));

/// The displayed formula families for `n ≡ 0` and `n ≡ 2 (mod 4)`: each maps
/// `(n, i)` to `(left index, right index, expected terms)`.
fn families(n: usize) -> Vec<Family> {
    let q = n / 4;
    let h = n / 2;
    let mut out: Vec<Family> = Vec::new();
    if n % 4 == 0 {
        out.push(("e_{2i}·e_i = −e_{2i} − e_{n−2i}", (1..=q).collect(), |n, i| (2 * i, i, vec![(-1, 2 * i), (-1, n - 2 * i)])));
        out.push(("e_{n−2i}·e_i = −2e_{2i} + e_{4i}", (1..q).collect(), |n, i| (n - 2 * i, i, vec![(-2, 2 * i), (1, 4 * i)])));
        out.push((
            "e_{2i}·e_{n/2−i} = e_{n−4i} − 2e_{n−2i}",
            (1..q).collect(),
            |n, i| (2 * i, n / 2 - i, vec![(1, n - 4 * i), (-2, n - 2 * i)]),
        ));
        out.push((
            "e_i·e_{n/4} = −e_{n−i} − e_{n/2} + e_{n/2+n−i}",
            (h + 1..n).collect(),
            |n, i| (i, n / 4, vec![(-1, n - i), (-1, n / 2), (1, n / 2 + n - i)]),
        ));
        out.push((
            "e_i·e_{n/4} = e_{n/2−i} − e_{n/2} − e_{n−i}",
            (1..h).collect(),
            |n, i| (i, n / 4, vec![(1, n / 2 - i), (-1, n / 2), (-1, n - i)]),
        ));
        out.push(("e_i·e_{n/2} = 0", (1..n).collect(), |n, i| (i, n / 2, vec![])));
    } else if n % 4 == 2 {
        out.push(("e_{2i}·e_i = −e_{2i} − e_{n−2i}", (1..=q).collect(), |n, i| (2 * i, i, vec![(-1, 2 * i), (-1, n - 2 * i)])));
        out.push(("e_{n−2i}·e_i = −2e_{2i} + e_{4i}", (1..=q).collect(), |n, i| (n - 2 * i, i, vec![(-2, 2 * i), (1, 4 * i)])));
        out.push((
            "e_{2i}·e_{n/2−i} = e_{n−4i} − 2e_{n−2i}",
            (1..=q).collect(),
            |n, i| (2 * i, n / 2 - i, vec![(1, n - 4 * i), (-2, n - 2 * i)]),
        ));
        out.push(("e_i·e_{n/2} = 0", (1..n).collect(), |n, i| (i, n / 2, vec![])));
        out.push(("e_1·e_1 = e_1 − e_2 − e_{n−1}", vec![1], |n, _| (1, 1, vec![(1, 1), (-1, 2), (-1, n - 1)])));
        out.push(("e_{n−1}·e_1 = −e_1 − e_2 + e_3", vec![1], |n, _| (n - 1, 1, vec![(-1, 1), (-1, 2), (1, 3)])));
        out.push((
            "e_i·e_1 = −e_2 − e_{n−i} + e_{n−i+2}",
            (3..=n.saturating_sub(3)).collect(),
            |n, i| (i, 1, vec![(-1, 2), (-1, n - i), (1, n - i + 2)]),
        ));
    }
    out
}

/// Checks every displayed formula family for `n` over its index range.
pub fn verify_appendix_formulas(n: usize) -> Result<FormulaReport> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(format!("appendix formulas cover even n ≥ 4, got {n}")));
    }
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (label, range, f) in families(n) {
        for i in range {
            let (l, r, terms) = f(n as i64, i as i64);
            let expected = EBasisExpr::from_terms(n, terms.iter().map(|&(c, k)| (c, k)));
            let computed = e_product(n, l as usize, r as usize)?;
            checked += 1;
            if expected != computed {
                mismatches.push(Mismatch {
                    formula: label.to_string(),
                    i,
                    expected: expected.to_string(),
                    computed: computed.to_string(),
                });
            }
        }
    }
    Ok(FormulaReport { n, checked, mismatches })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaShape {
    pub n: usize,
    pub k: usize,
    pub shape: AbelianGroupShape,
    pub variant: DeltaVariant,
}

/// `Δ^k(R_n)/Δ^{k+1}(R_n)` over the integers for `k = 1..=k_max`.
pub fn delta_series_shapes(n: usize, k_max: usize, variant: DeltaVariant) -> Result<Vec<DeltaShape>> {
    if n < 2 || k_max == 0 {
        return Err(Error::Precondition(format!("need n ≥ 2 and k_max ≥ 1, got n = {n}, k_max = {k_max}")));
    }
    let r = quandle_ring(&dihedral_quandle(n)?, Integers);
    let s = delta_series(&r, k_max + 1, variant)?;
    (0..k_max)
        .map(|k| Ok(DeltaShape { n, k: k + 1, shape: quotient_shape(&s[k], &s[k + 1])?, variant }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub checked: usize,
    /// Relations whose difference is not in `Δ²`.
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn delta_square(n: usize) -> Result<Submodule<Integers>> {
    let r = quandle_ring(&dihedral_quandle(n)?, Integers);
    Ok(delta_series(&r, 2, DeltaVariant::AllBracketings)?.pop().expect("two terms"))
}

fn check_relations(n: usize, relations: Vec<(String, EBasisExpr)>) -> Result<RelationReport> {
    let d2 = delta_square(n)?;
    let checked = relations.len();
    let failures = relations
        .into_iter()
        .filter(|(_, e)| !d2.contains_vector(&e.to_a_vector()))
        .map(|(label, _)| label)
        .collect();
    Ok(RelationReport { n, checked, failures })
}

/// `e_l ≡ (l/2)·e_2` for even `l` and `⌊l/2⌋·e_2 + e_1` for odd `l`, modulo
/// `Δ²(R_n)`, for `2 ≤ l < n` and even `n`.
pub fn star_relations_check(n: usize) -> Result<RelationReport> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(format!("star relations need even n ≥ 4, got {n}")));
    }
    let relations = (2..n as i64)
        .map(|l| {
            let mut terms = vec![(1, l), (-(l / 2), 2)];
            let label = if l % 2 == 0 {
                format!("e_{l} = {}e_2", l / 2)
            } else {
                terms.push((-1, 1));
                format!("e_{l} = {}e_2 + e_1", l / 2)
            };
            (label, EBasisExpr::from_terms(n, terms))
        })
        .collect();
    check_relations(n, relations)
}

/// For odd `n`: `e_{2i} ≡ −e_{n−2i}`, `e_k ≡ k·e_1` and `n·e_1 ≡ 0` modulo `Δ²(R_n)`.
pub fn odd_relations_check(n: usize) -> Result<RelationReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition(format!("odd relations need odd n ≥ 3, got {n}")));
    }
    let n_ = n as i64;
    let mut relations = Vec::new();
    for i in 1..=(n_ - 1) / 2 {
        relations.push((format!("e_{} = −e_{}", 2 * i, n_ - 2 * i), EBasisExpr::from_terms(n, [(1, 2 * i), (1, n_ - 2 * i)])));
    }
    for k in 1..n_ {
        relations.push((format!("e_{k} = {k}e_1"), EBasisExpr::from_terms(n, [(1, k), (-k, 1)])));
    }
    relations.push((format!("{n}e_1 = 0"), EBasisExpr::from_terms(n, [(n_, 1)])));
    check_relations(n, relations)
}

// -- numeric decomposition of C[R_n] --------------------------------------

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericSummand {
    /// `all`, `even` or `odd`.
    pub orbit: String,
    /// `trivial`, `pair` (spanned by `v_ξ`, `v_ξ̄`) or `sign`.
    pub kind: String,
    /// `ξ = exp(2πi·m/size)` on the orbit.
    pub m: usize,
    pub dim: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexDecompositionReport {
    pub n: usize,
    pub tolerance: f64,
    pub summands: Vec<NumericSummand>,
    pub total_dim: usize,
    /// Smallest Gram–Schmidt pivot norm over all summand vectors together.
    pub independence_margin: f64,
    pub max_residual: f64,
    pub ok: bool,
}

type CVec = Vec<Complex64>;

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    inner(a, a).re.sqrt()
}

/// Orthonormal basis plus the smallest pivot norm met on the way.
fn gram_schmidt(vectors: &[CVec]) -> (Vec<CVec>, f64) {
    let mut out: Vec<CVec> = Vec::new();
    let mut margin = f64::INFINITY;
    for v in vectors {
        let mut w = v.clone();
        for q in &out {
            let c = inner(q, &w);
            for (x, y) in w.iter_mut().zip(q) {
                *x -= c * y;
            }
        }
        let nw = norm(&w);
        margin = margin.min(nw / norm(v).max(f64::MIN_POSITIVE));
        if nw > 0.0 {
            out.push(w.iter().map(|x| x / nw).collect());
        }
    }
    (out, margin)
}

/// `max ‖g·b − P(g·b)‖` over basis vectors `b` and right translations `g`.
fn invariance_residual(n: usize, basis: &[CVec]) -> f64 {
    let (q, _) = gram_schmidt(basis);
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for b in basis {
            // (v·a_j)[2j − x] = v[x]
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for (x, c) in b.iter().enumerate() {
                w[(2 * j + n - x) % n] = *c;
            }
            let mut r = w.clone();
            for qv in &q {
                let c = inner(qv, &w);
                for (x, y) in r.iter_mut().zip(qv) {
                    *x -= c * y;
                }
            }
            worst = worst.max(norm(&r));
        }
    }
    worst
}

/// Builds `V_triv`, the 2-dimensional spans of `v_ξ, v_ξ̄` and (for even orbit
/// size) the sign summand on each orbit of `R_n`, and checks each is invariant
/// under every right translation and that together they span `C^n`.
pub fn complex_decomposition_check(n: usize, tol: f64) -> Result<ComplexDecompositionReport> {
    if n < 3 || tol <= 0.0 {
        return Err(Error::Precondition(format!("need n ≥ 3 and tol > 0, got n = {n}, tol = {tol}")));
    }
    let orbits: Vec<(String, Vec<usize>)> = if n % 2 == 1 {
        vec![("all".into(), (0..n).collect())]
    } else {
        vec![("even".into(), (0..n).step_by(2).collect()), ("odd".into(), (1..n).step_by(2).collect())]
    };
    let mut summands = Vec::new();
    let mut all_vectors = Vec::new();
    for (name, points) in &orbits {
        let size = points.len();
        // position s on the orbit carries ζ^{m·s}
        let vector = |m: usize, conj: bool| -> CVec {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for (s, &x) in points.iter().enumerate() {
                let angle = 2.0 * PI * (m * s) as f64 / size as f64;
                v[x] = Complex64::from_polar(1.0, if conj { -angle } else { angle });
            }
            v
        };
        let mut parts: Vec<(String, usize, Vec<CVec>)> = vec![("trivial".into(), 0, vec![vector(0, false)])];
        for m in 1..=(size - 1) / 2 {
            parts.push(("pair".into(), m, vec![vector(m, false), vector(m, true)]));
        }
        if size % 2 == 0 && size >= 2 {
            parts.push(("sign".into(), size / 2, vec![vector(size / 2, false)]));
        }
        for (kind, m, basis) in parts {
            let max_residual = invariance_residual(n, &basis);
            all_vectors.extend(basis.iter().cloned());
            summands.push(NumericSummand { orbit: name.clone(), kind, m, dim: basis.len(), max_residual });
        }
    }
    let total_dim = summands.iter().map(|s| s.dim).sum();
    let (_, independence_margin) = gram_schmidt(&all_vectors);
    let max_residual = summands.iter().map(|s| s.max_residual).fold(0.0, f64::max);
    let ok = total_dim == n && max_residual < tol && independence_margin > tol;
    Ok(ComplexDecompositionReport { n, tolerance: tol, summands, total_dim, independence_margin, max_residual, ok })
}

impl FromStr for EBasisExpr {
    type Err = Error;
    /// Parses `"<n>:<expr>"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, e) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected \"n:expr\", got {s:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad order in {s:?}")))?;
        Self::parse(n, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(e_product(8, 1, 2).unwrap().to_string(), "e_3-e_4-e_7");
        assert_eq!(e_product(10, 2, 1).unwrap().to_string(), "-e_2-e_8");
        assert_eq!(e_product(8, 4, 2).unwrap().to_string(), "-2e_4");
        for n in 3..12 {
            for i in 1..n {
                let expected = EBasisExpr::from_terms(n, [(1, i as i64), (-1, 2 * i as i64), (-1, (n - i) as i64)]);
                assert_eq!(e_product(n, i, i).unwrap(), expected);
                if 2 * i % n != 0 {
                    let expected = EBasisExpr::from_terms(n, [(-1, 2 * i as i64), (-1, n as i64 - 2 * i as i64)]);
                    assert_eq!(e_product(n, (2 * i) % n, i).unwrap(), expected);
                }
            }
        }
        assert!(e_product(8, 0, 1).is_err());
        assert!(e_product(8, 1, 8).is_err());
    }

    #[test]
    fn closed_form_matches_generic_multiplication() {
        for n in 3..=12 {
            assert!(cross_check_generic(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn tables_and_periodicity() {
        let t10 = appendix_table(10).unwrap();
        assert!((0..9).all(|i| t10[i][4].is_zero()));
        for n in [4, 6, 8, 10, 12] {
            assert!(column_periodicity(n).unwrap());
        }
        assert!(column_periodicity(7).is_err());
    }

    #[test]
    fn reference_tables() {
        assert!(check_reference_cells(8, &reference_cells_r8()).unwrap().ok());
        assert!(check_reference_cells(10, &reference_cells_r10()).unwrap().ok());
        let mut bad = reference_cells_r8();
        bad[0].expected = "e_3-e_4+e_7".into();
        let rep = check_reference_cells(8, &bad).unwrap();
        assert_eq!(rep.mismatches.len(), 1);
    }

    #[test]
    fn formula_families() {
        for n in [4, 6, 8, 10, 12, 14, 16, 18] {
            let rep = verify_appendix_formulas(n).unwrap();
            assert!(rep.ok(), "n = {n}: {:?}", rep.mismatches);
            assert!(rep.checked > 0);
        }
    }

    #[test]
    fn parse_and_vectors() {
        let e = EBasisExpr::parse(8, "-2e_2 + e_4").unwrap();
        assert_eq!(e.coefficient(2), -2);
        assert_eq!(EBasisExpr::from_a_vector(&e.to_a_vector()).unwrap(), e);
        assert!(EBasisExpr::parse(8, "e_9").is_err());
        assert!(EBasisExpr::parse(8, "x").is_err());
        assert_eq!("8:0".parse::<EBasisExpr>().unwrap(), EBasisExpr::zero(8));
    }

    #[test]
    fn delta_shapes() {
        for n in [3, 5, 7] {
            let shapes = delta_series_shapes(n, 3, DeltaVariant::default()).unwrap();
            assert!(shapes.iter().all(|s| s.shape == AbelianGroupShape::cyclic(n as u64)));
        }
        let s = delta_series_shapes(6, 1, DeltaVariant::default()).unwrap();
        assert_eq!(s[0].shape, AbelianGroupShape::new(1, &[3]));
    }

    #[test]
    fn relations() {
        for n in [4, 6, 8, 10] {
            assert!(star_relations_check(n).unwrap().ok(), "n = {n}");
        }
        for n in [3, 5, 7, 9] {
            assert!(odd_relations_check(n).unwrap().ok(), "n = {n}");
        }
        assert!(star_relations_check(5).is_err());
        assert!(odd_relations_check(6).is_err());
    }

    #[test]
    fn complex_decompositions() {
        for (n, parts) in [(3, 2), (5, 3), (6, 4), (8, 6)] {
            let rep = complex_decomposition_check(n, DEFAULT_TOLERANCE).unwrap();
            assert!(rep.ok, "n = {n}: {rep:?}");
            assert_eq!(rep.total_dim, n);
            assert_eq!(rep.summands.len(), parts);
        }
        // a single v_ξ is not invariant
        let v: Vec<CVec> = vec![(0..5)
            .map(|x| Complex64::from_polar(1.0, 2.0 * PI * x as f64 / 5.0))
            .collect()];
        assert!(invariance_residual(5, &v) > 0.1);
    }
}
