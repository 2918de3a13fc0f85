//! Power-associativity search via the two Albert identities
//! `(u·u)·u = u·(u·u)` and `(u·u)·(u·u) = ((u·u)·u)·u`.

use serde::Serialize;
use serde_json::{json, Value};

use super::{quandle_ring, BasedRing, Domain, DomainTag, RingElement};
use crate::error::{Error, Result};
use crate::quandle::Quandle;

pub const DEFAULT_BOX: [i64; 4] = [-2, -1, 1, 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlbertIdentity {
    /// `(u·u)·u = u·(u·u)`
    #[serde(rename = "cubic")]
    Cubic,
    /// `(u·u)·(u·u) = ((u·u)·u)·u`
    #[serde(rename = "quartic")]
    Quartic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSearch {
    /// Both coefficients range over the listed integers.
    Box(Vec<i64>),
    /// Every pair in `F_p²`; prime fields only.
    Exhaustive,
}

impl Default for CoefficientSearch {
    fn default() -> Self {
        CoefficientSearch::Box(DEFAULT_BOX.to_vec())
    }
}

impl CoefficientSearch {
    /// `{−r, …, −1, 1, …, r}`
    pub fn radius(r: i64) -> Self {
        CoefficientSearch::Box((-r..=r).filter(|&c| c != 0).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerAssocWitness<E> {
    pub x: usize,
    pub y: usize,
    pub a: i64,
    pub b: i64,
    /// `u = a·x + b·y`
    pub element: RingElement<E>,
    pub identity: AlbertIdentity,
    pub lhs: RingElement<E>,
    pub rhs: RingElement<E>,
}

impl<E> PowerAssocWitness<E> {
    pub fn to_json<D: Domain<Elem = E>>(&self, d: &D) -> Value {
        let vec = |v: &[E]| v.iter().map(|c| d.elem_to_json(c)).collect::<Vec<_>>();
        json!({
            "x": self.x,
            "y": self.y,
            "a": self.a,
            "b": self.b,
            "element": vec(&self.element),
            "identity": self.identity,
            "lhs": vec(&self.lhs),
            "rhs": vec(&self.rhs),
        })
    }
}

/// Returns whether `u` satisfies the cubic and the quartic identity.
pub fn albert_check<D: Domain>(r: &BasedRing<D>, u: &[D::Elem]) -> Result<(bool, bool)> {
    let uu = r.multiply(u, u)?;
    let uu_u = r.mul(&uu, u);
    let cubic = uu_u == r.mul(u, &uu);
    let quartic = r.mul(&uu, &uu) == r.mul(&uu_u, u);
    Ok((cubic, quartic))
}

fn violation<D: Domain>(r: &BasedRing<D>, u: &[D::Elem]) -> Option<(AlbertIdentity, RingElement<D::Elem>, RingElement<D::Elem>)> {
    let uu = r.mul(u, u);
    let uu_u = r.mul(&uu, u);
    let u_uu = r.mul(u, &uu);
    if uu_u != u_uu {
        return Some((AlbertIdentity::Cubic, uu_u, u_uu));
    }
    let lhs = r.mul(&uu, &uu);
    let rhs = r.mul(&uu_u, u);
    (lhs != rhs).then_some((AlbertIdentity::Quartic, lhs, rhs))
}

/// Searches `u = a·x + b·y` over ordered pairs `x ≠ y` and coefficient pairs,
/// returning the first violation of either Albert identity.
pub fn power_assoc_witness<D: Domain>(
    x: &Quandle,
    domain: D,
    search: &CoefficientSearch,
) -> Result<Option<PowerAssocWitness<D::Elem>>> {
    let coeffs: Vec<i64> = match search {
        CoefficientSearch::Box(c) => c.clone(),
        CoefficientSearch::Exhaustive => match domain.tag() {
            DomainTag::PrimeField(p) => (0..p as i64).collect(),
            other => {
                return Err(Error::Precondition(format!("exhaustive coefficient search needs a prime field, got {other}")))
            }
        },
    };
    let r = quandle_ring(x, domain);
    let d = r.domain().clone();
    let n = x.size();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &coeffs {
                for &b in &coeffs {
                    let mut u = r.zero();
                    u[i] = d.from_i64(a);
                    u[j] = d.from_i64(b);
                    if let Some((identity, lhs, rhs)) = violation(&r, &u) {
                        return Ok(Some(PowerAssocWitness { x: i, y: j, a, b, element: u, identity, lhs, rhs }));
                    }
                }
            }
        }
    }
    Ok(None)
}
