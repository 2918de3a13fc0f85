//! Submodules and one-sided ideals of based rings: the augmentation ideal,
//! products of submodules, the Δ-power filtration, quotient shapes and
//! decompositions into orbit summands.

pub mod normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quandle::Quandle;
use crate::ring::domain::bigint_to_json;
use crate::ring::{quandle_ring, BasedRing, Domain, DomainTag, PrimeField};
use crate::symmetry::{permutation_rank, restricted_action};

/// A finitely generated abelian group `Z^free_rank ⊕ Z_{d_1} ⊕ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupShape {
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | …`, each greater than 1.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupShape {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new() }
    }

    /// `Z_n`, or the trivial group for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        let torsion = if n > 1 { vec![BigInt::from(n)] } else { Vec::new() };
        Self { free_rank: 0, torsion }
    }

    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        Self { free_rank, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(bigint_to_json).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for AbelianGroupShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for AbelianGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// A submodule of `D^ambient_dim`, stored by its canonical echelon basis.
#[derive(Debug, Clone)]
pub struct Submodule<D: Domain> {
    domain: D,
    ambient_dim: usize,
    basis: Vec<Vec<D::Elem>>,
}

impl<D: Domain> PartialEq for Submodule<D> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl<D: Domain> Submodule<D> {
    pub fn new(domain: D, ambient_dim: usize, generators: Vec<Vec<D::Elem>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: g.len() });
        }
        let basis = if generators.is_empty() { Vec::new() } else { domain.echelon(generators) };
        Ok(Self { domain, ambient_dim, basis })
    }

    pub fn zero(domain: D, ambient_dim: usize) -> Self {
        Self { domain, ambient_dim, basis: Vec::new() }
    }

    pub fn full(domain: D, ambient_dim: usize) -> Self {
        let gens = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { domain.one() } else { domain.zero() }).collect())
            .collect();
        Self::new(domain, ambient_dim, gens).expect("lengths match")
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<D::Elem>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the submodule.
    pub fn coordinates(&self, v: &[D::Elem]) -> Option<Vec<D::Elem>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let d = &self.domain;
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let c = row.iter().position(|x| !d.is_zero(x)).expect("echelon rows are nonzero");
            let q = if d.is_zero(&rest[c]) { d.zero() } else { d.div_exact(&rest[c], &row[c])? };
            for (x, y) in rest.iter_mut().zip(row) {
                *x = d.sub(x, &d.mul(&q, y));
            }
            coords.push(q);
        }
        rest.iter().all(|x| d.is_zero(x)).then_some(coords)
    }

    pub fn contains_vector(&self, v: &[D::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Submodule<D>) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Submodule<D>) -> Result<Submodule<D>> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Submodule::new(self.domain.clone(), self.ambient_dim, gens)
    }

    pub fn to_json(&self) -> Value {
        let mut v = crate::ring::domain::matrix_to_json(&self.domain, &self.basis);
        v["ambient_dim"] = json!(self.ambient_dim);
        v["rank"] = json!(self.rank());
        v
    }
}

/// `Δ(X)`: span of `a_i − a_0` for `1 ≤ i < n`.
pub fn augmentation_ideal<D: Domain>(n: usize, domain: D) -> Submodule<D> {
    let gens = (1..n)
        .map(|i| {
            let mut v = vec![domain.zero(); n];
            v[0] = domain.from_i64(-1);
            v[i] = domain.one();
            v
        })
        .collect();
    Submodule::new(domain, n, gens).expect("lengths match")
}

/// Span of all products `a·b` with `a`, `b` running over the two bases.
pub fn submodule_product<D: Domain>(r: &BasedRing<D>, a: &Submodule<D>, b: &Submodule<D>) -> Result<Submodule<D>> {
    for m in [a, b] {
        if m.ambient_dim != r.dim() {
            return Err(Error::DimensionMismatch { expected: r.dim(), got: m.ambient_dim });
        }
    }
    let gens = a.basis.iter().flat_map(|u| b.basis.iter().map(move |v| r.mul(u, v))).collect();
    Submodule::new(r.domain().clone(), r.dim(), gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum DeltaVariant {
    /// `Δ^k = Σ_{i+j=k} Δ^i·Δ^j`
    #[default]
    #[serde(rename = "all-bracketings")]
    AllBracketings,
    /// `Δ^k = Δ^{k−1}·Δ`
    #[serde(rename = "left-normed")]
    LeftNormed,
}

impl DeltaVariant {
    pub fn name(&self) -> &'static str {
        match self {
            DeltaVariant::AllBracketings => "all-bracketings",
            DeltaVariant::LeftNormed => "left-normed",
        }
    }
}

impl std::str::FromStr for DeltaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-bracketings" | "all" => Ok(DeltaVariant::AllBracketings),
            "left-normed" | "left" => Ok(DeltaVariant::LeftNormed),
            _ => Err(Error::Parse(format!("unknown Δ-power variant {s:?}"))),
        }
    }
}

/// `[Δ¹, Δ², …, Δ^k_max]` in the augmentation ideal of `r`.
pub fn delta_series<D: Domain>(r: &BasedRing<D>, k_max: usize, variant: DeltaVariant) -> Result<Vec<Submodule<D>>> {
    if k_max == 0 {
        return Err(Error::Precondition("Δ-powers start at k = 1".into()));
    }
    let mut powers = vec![augmentation_ideal(r.dim(), r.domain().clone())];
    for k in 2..=k_max {
        let next = match variant {
            DeltaVariant::LeftNormed => submodule_product(r, &powers[k - 2], &powers[0])?,
            DeltaVariant::AllBracketings => {
                let mut acc = Submodule::zero(r.domain().clone(), r.dim());
                for i in 1..k {
                    acc = acc.sum(&submodule_product(r, &powers[i - 1], &powers[k - i - 1])?)?;
                }
                acc
            }
        };
        powers.push(next);
    }
    Ok(powers)
}

pub fn delta_power<D: Domain>(x: &Quandle, domain: D, k: usize, variant: DeltaVariant) -> Result<Submodule<D>> {
    let r = quandle_ring(x, domain);
    Ok(delta_series(&r, k, variant)?.pop().expect("k ≥ 1"))
}

/// Shape of `A / B`. Requires `B ⊆ A`; over fields only the dimension
/// difference is reported.
pub fn quotient_shape<D: Domain>(a: &Submodule<D>, b: &Submodule<D>) -> Result<AbelianGroupShape> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim, got: b.ambient_dim });
    }
    let relations: Vec<Vec<D::Elem>> =
        b.basis.iter().map(|v| a.coordinates(v).ok_or(Error::NotContained)).collect::<Result<_>>()?;
    if relations.is_empty() {
        return Ok(AbelianGroupShape { free_rank: a.rank(), torsion: Vec::new() });
    }
    Ok(a.domain.relation_shape(a.rank(), relations))
}

fn closure_under<D: Domain>(r: &BasedRing<D>, generators: Vec<Vec<D::Elem>>, right: bool) -> Result<Submodule<D>> {
    let mut current = Submodule::new(r.domain().clone(), r.dim(), generators)?;
    loop {
        let mut gens = current.basis.clone();
        for v in &current.basis {
            for j in 0..r.dim() {
                let e = r.basis(j);
                gens.push(if right { r.mul(v, &e) } else { r.mul(&e, v) });
            }
        }
        let next = Submodule::new(r.domain().clone(), r.dim(), gens)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
}

/// Smallest submodule containing the generators and closed under right
/// multiplication by the ring.
pub fn generated_right_ideal<D: Domain>(r: &BasedRing<D>, generators: Vec<Vec<D::Elem>>) -> Result<Submodule<D>> {
    closure_under(r, generators, true)
}

pub fn generated_left_ideal<D: Domain>(r: &BasedRing<D>, generators: Vec<Vec<D::Elem>>) -> Result<Submodule<D>> {
    closure_under(r, generators, false)
}

/// `M·e_j ⊆ M` for every basis element.
pub fn is_right_ideal<D: Domain>(r: &BasedRing<D>, m: &Submodule<D>) -> bool {
    m.basis.iter().all(|v| (0..r.dim()).all(|j| m.contains_vector(&r.mul(v, &r.basis(j)))))
}

#[derive(Debug, Clone)]
pub struct OrbitSummand<D: Domain> {
    pub orbit: Vec<usize>,
    /// Spanned by the orbit's indicator vector.
    pub trivial: Submodule<D>,
    /// Augmentation-zero vectors supported on the orbit.
    pub standard: Submodule<D>,
}

/// `V^i = V_triv^i ⊕ V_st^i` for each orbit `X_i`. Needs a field whose
/// characteristic does not divide any orbit size.
pub fn orbit_summands<D: Domain>(x: &Quandle, domain: D) -> Result<Vec<OrbitSummand<D>>> {
    if !domain.is_field() {
        return Err(Error::Precondition(format!("orbit summands need a field, got {}", domain.tag())));
    }
    let n = x.size();
    let p = domain.characteristic();
    x.orbits()
        .into_iter()
        .map(|orbit| {
            if p != 0 && orbit.len() as u64 % p == 0 {
                return Err(Error::NonSplit { characteristic: p, orbit_size: orbit.len() });
            }
            let mut indicator = vec![domain.zero(); n];
            for &z in &orbit {
                indicator[z] = domain.one();
            }
            let st_gens = orbit[1..]
                .iter()
                .map(|&z| {
                    let mut v = vec![domain.zero(); n];
                    v[orbit[0]] = domain.from_i64(-1);
                    v[z] = domain.one();
                    v
                })
                .collect();
            Ok(OrbitSummand {
                trivial: Submodule::new(domain.clone(), n, vec![indicator])?,
                standard: Submodule::new(domain.clone(), n, st_gens)?,
                orbit,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Simplicity {
    Simple,
    NotSimple,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub dim: usize,
    pub invariant: bool,
    /// `None` for the zero summand.
    pub simple: Option<Simplicity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub orbit: Vec<usize>,
    pub trivial: SummandReport,
    pub standard: SummandReport,
    /// Permutation rank of the orbit group on the orbit.
    pub permutation_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every summand is a right ideal, certified simple, and the summands
    /// span the whole ring.
    Simple,
    /// Some summand is not a right ideal or is certified not simple.
    NotSimple,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub domain: String,
    pub orbits: Vec<OrbitReport>,
    pub total_dim: usize,
    /// Rank of the union of all summand bases.
    pub direct_sum_rank: usize,
    pub verdict: Verdict,
}

/// Upper limit on spin-up start vectors per summand.
pub const DEFAULT_SPIN_BUDGET: u64 = 1_000_000;

/// Simplicity of a right ideal `m` over `F_p`: spin up every nonzero vector
/// (one per line) and check it regenerates `m`.
fn spin_up_simplicity(r: &BasedRing<PrimeField>, m: &Submodule<PrimeField>, budget: u64) -> Simplicity {
    let f = *r.domain();
    let p = f.modulus();
    let d = m.rank();
    let lines = (p as u128).pow(d as u32).saturating_sub(1) / (p as u128 - 1);
    if lines > budget as u128 {
        return Simplicity::Unknown;
    }
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..d {
        let tail = d - lead - 1;
        for idx in 0..p.pow(tail as u32) {
            let mut coeffs = vec![0u64; d];
            coeffs[lead] = 1;
            let mut rest = idx;
            for c in coeffs[lead + 1..].iter_mut().rev() {
                *c = rest % p;
                rest /= p;
            }
            let mut v = vec![0u64; r.dim()];
            for (c, row) in coeffs.iter().zip(m.basis()) {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.add(x, &f.mul(c, y));
                }
            }
            let spun = generated_right_ideal(r, vec![v]).expect("lengths match");
            if spun.rank() != d {
                return Simplicity::NotSimple;
            }
        }
    }
    Simplicity::Simple
}

/// Trait-object-free dispatch for spin-up, which needs a prime field.
fn prime_field_of<D: Domain>(d: &D) -> Option<PrimeField> {
    match d.tag() {
        DomainTag::PrimeField(p) => PrimeField::new(p).ok(),
        _ => None,
    }
}

fn to_prime_field<D: Domain>(f: PrimeField, m: &Submodule<D>) -> Submodule<PrimeField> {
    // elements of a prime-field domain serialize as their residues
    let gens = m
        .basis
        .iter()
        .map(|row| row.iter().map(|c| m.domain.elem_to_json(c).as_u64().unwrap_or(0)).collect())
        .collect();
    Submodule::new(f, m.ambient_dim, gens).expect("lengths match")
}

/// Checks that each orbit summand is a right ideal and decides simplicity:
/// by exhaustive spin-up over prime fields, and over characteristic 0 by the
/// rank-2 criterion (simple when the orbit group is 2-transitive, otherwise
/// unknown).
pub fn verify_simple_decomposition<D: Domain>(x: &Quandle, domain: D) -> Result<DecompositionReport> {
    verify_simple_decomposition_with(x, domain, DEFAULT_SPIN_BUDGET)
}

pub fn verify_simple_decomposition_with<D: Domain>(x: &Quandle, domain: D, spin_budget: u64) -> Result<DecompositionReport> {
    let summands = orbit_summands(x, domain.clone())?;
    let r = quandle_ring(x, domain.clone());
    let prime = prime_field_of(&domain);
    let r_p = prime.map(|f| quandle_ring(x, f));
    let gens = x.right_translations();

    let mut orbits = Vec::new();
    let mut all_gens = Vec::new();
    let mut total_dim = 0;
    for s in &summands {
        let restricted = restricted_action(&gens, &s.orbit)?;
        let rank = permutation_rank(&restricted, s.orbit.len());
        let judge = |m: &Submodule<D>, invariant: bool| -> SummandReport {
            let dim = m.rank();
            let (simple, note) = if dim == 0 {
                (None, None)
            } else if !invariant {
                (Some(Simplicity::NotSimple), Some("not a right ideal".to_string()))
            } else if dim == 1 {
                (Some(Simplicity::Simple), None)
            } else if let (Some(f), Some(rp)) = (prime, r_p.as_ref()) {
                let verdict = spin_up_simplicity(rp, &to_prime_field(f, m), spin_budget);
                let note = (verdict == Simplicity::Unknown).then(|| "spin-up budget exceeded".to_string());
                (Some(verdict), note)
            } else if rank == 2 {
                (Some(Simplicity::Simple), Some("orbit action is 2-transitive".to_string()))
            } else {
                (Some(Simplicity::Unknown), Some(format!("orbit action has permutation rank {rank}")))
            };
            SummandReport { dim, invariant, simple, note }
        };
        let trivial = judge(&s.trivial, is_right_ideal(&r, &s.trivial));
        let standard = judge(&s.standard, is_right_ideal(&r, &s.standard));
        total_dim += trivial.dim + standard.dim;
        all_gens.extend(s.trivial.basis().iter().cloned());
        all_gens.extend(s.standard.basis().iter().cloned());
        orbits.push(OrbitReport { orbit: s.orbit.clone(), trivial, standard, permutation_rank: rank });
    }
    let direct_sum_rank = Submodule::new(domain.clone(), x.size(), all_gens)?.rank();
    let verdict = {
        let reports: Vec<&SummandReport> = orbits.iter().flat_map(|o| [&o.trivial, &o.standard]).collect();
        if reports.iter().any(|s| !s.invariant || s.simple == Some(Simplicity::NotSimple)) {
            Verdict::NotSimple
        } else if reports.iter().all(|s| s.simple != Some(Simplicity::Unknown)) && direct_sum_rank == x.size() {
            Verdict::Simple
        } else {
            Verdict::Inconclusive
        }
    };
    Ok(DecompositionReport { domain: domain.tag().to_string(), orbits, total_dim, direct_sum_rank, verdict })
}

/// Number of elements of `Z^k / L` killed by `d`, for a full-rank lattice `L`
/// given by the rows of `m`; computed by enumerating cosets. Used as an
/// independent check on Smith normal forms.
pub fn coset_torsion_counts(m: &[Vec<i64>]) -> Option<(BigInt, Vec<(u64, usize)>)> {
    use normal_form::{determinant, int_matrix};
    use std::collections::{BTreeSet, VecDeque};
    let k = m.len();
    let big = int_matrix(m);
    let det = determinant(&big);
    if det.is_zero() {
        return None;
    }
    let modulus = num_traits::Signed::abs(&det);
    let md: i64 = num_traits::ToPrimitive::to_i64(&modulus)?;
    // x ∈ L ⇔ x·adj(M) ≡ 0 (mod det); key(x) = x·adj(M) mod |det|
    let adj: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    // adj(M)[i][j] = (−1)^{i+j} · minor(j, i)
                    let minor: Vec<Vec<BigInt>> = (0..k)
                        .filter(|&r| r != j)
                        .map(|r| (0..k).filter(|&c| c != i).map(|c| big[r][c].clone()).collect())
                        .collect();
                    let v = determinant(&minor);
                    let v = if (i + j) % 2 == 1 { -v } else { v };
                    num_traits::ToPrimitive::to_i64(&v).unwrap().rem_euclid(md)
                })
                .collect()
        })
        .collect();
    let gens: Vec<Vec<i64>> = adj.clone();
    let zero = vec![0i64; k];
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(md)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let counts = (1..=md as u64)
        .filter(|d| md as u64 % d == 0)
        .map(|d| (d, seen.iter().filter(|x| x.iter().all(|c| (c * d as i64).rem_euclid(md) == 0)).count()))
        .collect();
    Some((BigInt::from(seen.len()), counts))
}

#[cfg(test)]
mod tests {
    use super::normal_form::*;
    use super::*;
    use crate::quandle::{dihedral_quandle, trivial_quandle, two_orbit_order3};
    use crate::ring::{Integers, Rationals};
    use proptest::prelude::*;

    fn z(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        int_matrix(rows)
    }

    #[test]
    fn augmentation_ideal_basics() {
        assert_eq!(augmentation_ideal(1, Integers).rank(), 0);
        let d = augmentation_ideal(3, Integers);
        let spec_basis = Submodule::new(Integers, 3, z(&[vec![-1, 1, 0], vec![-1, 0, 1]])).unwrap();
        assert_eq!(d, spec_basis);
        assert_eq!(d.basis(), z(&[vec![1, 0, -1], vec![0, 1, -1]]).as_slice());
        // kernel of the coefficient sum
        assert!(d.contains_vector(&z(&[vec![3, -5, 2]])[0]));
        assert!(!d.contains_vector(&z(&[vec![1, 0, 0]])[0]));
    }

    #[test]
    fn products_in_r3() {
        let r = quandle_ring(&dihedral_quandle(3).unwrap(), Integers);
        let d = augmentation_ideal(3, Integers);
        let d2 = submodule_product(&r, &d, &d).unwrap();
        assert!(d2.contains_vector(&z(&[vec![1, 1, -2]])[0]));
        assert!(!d2.contains_vector(&z(&[vec![0, 1, -1]])[0]));
        assert!(d.contains(&d2));
        let zero = Submodule::zero(Integers, 3);
        assert_eq!(submodule_product(&r, &d, &zero).unwrap().rank(), 0);
        assert_eq!(quotient_shape(&d, &d2).unwrap(), AbelianGroupShape::cyclic(3));
        assert_eq!(quotient_shape(&d, &d).unwrap(), AbelianGroupShape::trivial());
        assert_eq!(quotient_shape(&d2, &d), Err(Error::NotContained));
    }

    #[test]
    fn r8_first_quotient() {
        let r = quandle_ring(&dihedral_quandle(8).unwrap(), Integers);
        let s = delta_series(&r, 2, DeltaVariant::AllBracketings).unwrap();
        assert_eq!(quotient_shape(&s[0], &s[1]).unwrap(), AbelianGroupShape::new(1, &[4]));
    }

    #[test]
    fn filtration_descends_for_r5() {
        let r = quandle_ring(&dihedral_quandle(5).unwrap(), Integers);
        for variant in [DeltaVariant::AllBracketings, DeltaVariant::LeftNormed] {
            let s = delta_series(&r, 5, variant).unwrap();
            for k in 0..4 {
                assert!(s[k].contains(&s[k + 1]));
            }
        }
        let all = delta_series(&r, 4, DeltaVariant::AllBracketings).unwrap();
        let left = delta_series(&r, 4, DeltaVariant::LeftNormed).unwrap();
        for (a, l) in all.iter().zip(&left) {
            assert!(a.contains(l));
        }
    }

    #[test]
    fn field_quotients_are_dimensions() {
        let r = quandle_ring(&dihedral_quandle(3).unwrap(), Rationals);
        let s = delta_series(&r, 2, DeltaVariant::AllBracketings).unwrap();
        let shape = quotient_shape(&s[0], &s[1]).unwrap();
        assert!(shape.torsion.is_empty());
        assert_eq!(shape.free_rank, s[0].rank() - s[1].rank());
    }

    #[test]
    fn right_ideals() {
        let r = quandle_ring(&dihedral_quandle(5).unwrap(), Rationals);
        assert_eq!(generated_right_ideal(&r, vec![r.zero()]).unwrap().rank(), 0);
        let ones = r.element(&[1; 5]).unwrap();
        let triv = generated_right_ideal(&r, vec![ones]).unwrap();
        assert_eq!(triv.rank(), 1);
        let e = r.element(&[-1, 1, 0, 0, 0]).unwrap();
        let m = generated_right_ideal(&r, vec![e]).unwrap();
        assert!(is_right_ideal(&r, &m));
        let left = generated_left_ideal(&r, vec![r.basis(0)]).unwrap();
        assert!(left.rank() >= 1);
    }

    #[test]
    fn spin_up_in_f5_r5() {
        // 5 divides the orbit size, so V_st contains the all-ones vector and
        // spin-up from it stays one-dimensional
        let f = PrimeField::new(5).unwrap();
        let r = quandle_ring(&dihedral_quandle(5).unwrap(), f);
        let st = Submodule::new(f, 5, (1..5).map(|i| { let mut v = vec![0; 5]; v[0] = 4; v[i] = 1; v }).collect()).unwrap();
        assert!(is_right_ideal(&r, &st));
        let ones = vec![1u64; 5];
        assert!(st.contains_vector(&ones));
        assert_eq!(generated_right_ideal(&r, vec![ones]).unwrap().rank(), 1);
        assert_eq!(generated_right_ideal(&r, vec![st.basis()[0].clone()]).unwrap().rank(), 4);
    }

    #[test]
    fn decompositions() {
        let f5 = PrimeField::new(5).unwrap();
        let rep = verify_simple_decomposition(&dihedral_quandle(3).unwrap(), f5).unwrap();
        assert_eq!(rep.verdict, Verdict::Simple);
        assert_eq!(rep.orbits[0].trivial.dim, 1);
        assert_eq!(rep.orbits[0].standard.dim, 2);

        let rep = verify_simple_decomposition(&dihedral_quandle(5).unwrap(), Rationals).unwrap();
        assert_eq!(rep.orbits[0].standard.dim, 4);
        assert!(rep.orbits[0].standard.invariant);
        assert_eq!(rep.orbits[0].standard.simple, Some(Simplicity::Unknown));
        assert_eq!(rep.orbits[0].permutation_rank, 3);
        assert_ne!(rep.verdict, Verdict::Simple);

        let rep = verify_simple_decomposition(&trivial_quandle(3).unwrap(), Rationals).unwrap();
        assert_eq!(rep.orbits.len(), 3);
        assert!(rep.orbits.iter().all(|o| o.standard.dim == 0 && o.trivial.dim == 1));
        assert_eq!(rep.verdict, Verdict::Simple);

        for q in [two_orbit_order3(), dihedral_quandle(3).unwrap()] {
            assert_eq!(verify_simple_decomposition(&q, Rationals).unwrap().verdict, Verdict::Simple);
        }

        let f3 = PrimeField::new(3).unwrap();
        assert!(matches!(
            verify_simple_decomposition(&dihedral_quandle(3).unwrap(), f3),
            Err(Error::NonSplit { characteristic: 3, orbit_size: 3 })
        ));
        assert!(orbit_summands(&dihedral_quandle(3).unwrap(), Integers).is_err());
    }

    #[test]
    fn shape_display() {
        assert_eq!(AbelianGroupShape::new(1, &[4]).to_string(), "Z ⊕ Z_4");
        assert_eq!(AbelianGroupShape::trivial().to_string(), "0");
        assert_eq!(
            serde_json::to_string(&AbelianGroupShape::new(0, &[5])).unwrap(),
            r#"{"free_rank":0,"torsion":[5]}"#
        );
    }

    #[test]
    fn coset_oracle_examples() {
        let (order, counts) = coset_torsion_counts(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(order, BigInt::from(6));
        assert!(counts.contains(&(2, 2)) && counts.contains(&(6, 6)));
        let (order, counts) = coset_torsion_counts(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(order, BigInt::from(4));
        assert!(counts.contains(&(2, 4)));
        assert!(coset_torsion_counts(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    // -- oracle property tests --------------------------------------------

    fn gcd_all(xs: impl IntoIterator<Item = BigInt>) -> BigInt {
        use num_integer::Integer;
        xs.into_iter().fold(BigInt::zero(), |a, b| a.gcd(&b))
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (0..n)
            .flat_map(|first| {
                subsets(n, k - 1).into_iter().filter(move |s| s.first().is_none_or(|&f| f > first)).map(move |mut s| {
                    s.insert(0, first);
                    s
                })
            })
            .collect()
    }

    /// `d_k` = gcd of all `k×k` minors, for every `k`.
    fn determinantal_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        (1..=rows.min(cols))
            .map(|k| {
                gcd_all(subsets(rows, k).iter().flat_map(|rs| {
                    subsets(cols, k).into_iter().map(move |cs| {
                        let minor: Vec<Vec<BigInt>> =
                            rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                        determinant(&minor)
                    })
                }))
            })
            .collect()
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
        })
    }

    fn square_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=4).prop_flat_map(|k| proptest::collection::vec(proptest::collection::vec(-2i64..=2, k), k))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn snf_transforms_are_unimodular(m in matrix_strategy()) {
            let a = z(&m);
            let s = smith_normal_form(&a, true);
            let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
            prop_assert_eq!(mat_mul(&mat_mul(&u, &a), &v), s.diagonal.clone());
            prop_assert_eq!(num_traits::Signed::abs(&determinant(&u)), BigInt::one());
            prop_assert_eq!(num_traits::Signed::abs(&determinant(&v)), BigInt::one());
            // diagonal shape and divisibility chain
            for (i, row) in s.diagonal.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if i != j { prop_assert!(x.is_zero()); }
                }
            }
            for w in s.invariant_factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        #[test]
        fn snf_matches_determinantal_divisors(m in matrix_strategy()) {
            let a = z(&m);
            let s = smith_normal_form(&a, false);
            let dd = determinantal_divisors(&a);
            let mut prod = BigInt::one();
            for (k, dk) in dd.iter().enumerate() {
                if k < s.invariant_factors.len() {
                    prod *= &s.invariant_factors[k];
                    prop_assert_eq!(&prod, dk);
                } else {
                    prop_assert!(dk.is_zero());
                }
            }
        }

        #[test]
        fn hnf_is_idempotent_and_spans(m in matrix_strategy()) {
            let a = z(&m);
            let h = hermite_normal_form(&a);
            prop_assert_eq!(hermite_normal_form(&h), h.clone());
            let lat = Submodule::new(Integers, a[0].len(), a.clone()).unwrap();
            let lat_h = Submodule::new(Integers, a[0].len(), h.clone()).unwrap();
            for row in &a { prop_assert!(lat_h.contains_vector(row)); }
            for row in &h { prop_assert!(lat.contains_vector(row)); }
        }

        #[test]
        fn quotient_matches_coset_enumeration(m in square_strategy()) {
            let k = m.len();
            let Some((order, counts)) = coset_torsion_counts(&m) else {
                let s = smith_normal_form(&z(&m), false);
                prop_assert!(s.invariant_factors.len() < k);
                return Ok(());
            };
            let full = Submodule::full(Integers, k);
            let sub = Submodule::new(Integers, k, z(&m)).unwrap();
            let shape = quotient_shape(&full, &sub).unwrap();
            prop_assert_eq!(shape.free_rank, 0);
            prop_assert_eq!(shape.torsion_order(), order);
            for (d, count) in counts {
                use num_integer::Integer;
                let expected: BigInt = shape.torsion.iter().map(|t| t.gcd(&BigInt::from(d))).product();
                prop_assert_eq!(expected, BigInt::from(count));
            }
        }

        #[test]
        fn quotient_shape_ignores_generating_set(m in matrix_strategy(), mix in -2i64..=2) {
            let a = z(&m);
            let cols = a[0].len();
            let full = Submodule::full(Integers, cols);
            let s1 = quotient_shape(&full, &Submodule::new(Integers, cols, a.clone()).unwrap()).unwrap();
            // add a multiple of the first row to every other row, and repeat a row
            let mut b = a.clone();
            for i in 1..b.len() {
                let t: Vec<BigInt> = b[0].iter().map(|x| x * mix).collect();
                for (x, y) in b[i].iter_mut().zip(t) { *x += y; }
            }
            b.push(a[0].clone());
            let s2 = quotient_shape(&full, &Submodule::new(Integers, cols, b).unwrap()).unwrap();
            prop_assert_eq!(s1, s2);
        }
    }
}
