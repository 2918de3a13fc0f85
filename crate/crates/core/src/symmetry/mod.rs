//! Symmetries of a quandle: `Inn(X)`, the left-translation semigroup `H_X`,
//! transitivity and cyclic-type predicates, the quandle polynomial,
//! isomorphism testing and enumeration of small quandles.

pub mod closure;
pub mod enumerate;
pub mod iso;
pub mod maps;
pub mod polynomial;

pub use closure::{
    is_2transitive, permutation_rank, restricted_action, GeneratedGroup, GeneratedSemigroup, MaximalSubgroup,
    DEFAULT_ELEMENT_CAP,
};
pub use enumerate::{enumerate_quandles, EnumerationOptions, DEFAULT_ENUMERATION_BOUND};
pub use iso::{canonical_form, quandles_isomorphic, MAX_CANONICAL_SIZE};
pub use maps::{Permutation, Transformation};
pub use polynomial::{quandle_polynomial, QuandlePolynomial, Term};

use crate::error::Result;
use crate::quandle::Quandle;

/// `Inn(X)`, generated by the right translations.
pub fn inner_group(x: &Quandle) -> Result<GeneratedGroup> {
    inner_group_capped(x, DEFAULT_ELEMENT_CAP)
}

pub fn inner_group_capped(x: &Quandle, cap: usize) -> Result<GeneratedGroup> {
    GeneratedGroup::generate(x.size(), x.right_translations(), cap)
}

/// `H_X`, generated by the left translations.
pub fn left_semigroup(x: &Quandle) -> Result<GeneratedSemigroup> {
    left_semigroup_capped(x, DEFAULT_ELEMENT_CAP)
}

pub fn left_semigroup_capped(x: &Quandle, cap: usize) -> Result<GeneratedSemigroup> {
    GeneratedSemigroup::generate(x.size(), x.left_translations(), cap)
}

/// `G_{X_i}` for each orbit, acting on the orbit's points in sorted order.
pub fn orbit_groups(x: &Quandle) -> Result<Vec<(Vec<usize>, GeneratedGroup)>> {
    let gens = x.right_translations();
    x.orbits()
        .into_iter()
        .map(|orbit| {
            let restricted: Vec<Permutation> = restricted_action(&gens, &orbit)?
                .into_iter()
                .map(|t| t.to_permutation().expect("translations restrict to bijections"))
                .collect();
            let g = GeneratedGroup::generate(orbit.len(), restricted, DEFAULT_ELEMENT_CAP)?;
            Ok((orbit, g))
        })
        .collect()
}

/// Each orbit group acts 2-transitively on its orbit (singletons vacuously).
pub fn is_right_orbit_2transitive(x: &Quandle) -> bool {
    let gens = x.right_translations();
    x.orbits().iter().all(|orbit| {
        orbit.len() <= 1 || {
            let restricted = restricted_action(&gens, orbit).expect("orbits are invariant");
            permutation_rank(&restricted, orbit.len()) == 2
        }
    })
}

/// `Inn(X)` acts 2-transitively on `X`.
pub fn is_right_2transitive(x: &Quandle) -> bool {
    x.size() <= 1 || permutation_rank(&x.right_translations(), x.size()) == 2
}

/// `H_X` acts 2-transitively on `X` (distinct source and target pairs).
pub fn is_left_2transitive(x: &Quandle) -> Result<bool> {
    if x.size() <= 1 {
        return Ok(true);
    }
    Ok(left_semigroup(x)?.is_2transitive())
}

fn acts_as_long_cycle(images: &[usize], fixed: usize) -> bool {
    let n = images.len();
    if images[fixed] != fixed {
        return false;
    }
    if n <= 2 {
        return true;
    }
    let start = (fixed + 1) % n;
    let mut len = 1;
    let mut y = images[start];
    while y != start {
        if y == fixed || len >= n {
            return false;
        }
        len += 1;
        y = images[y];
    }
    len == n - 1
}

/// Every `R_x` is a single `(n−1)`-cycle on `X ∖ {x}`.
pub fn is_right_cyclic_type(x: &Quandle) -> bool {
    x.right_translations()
        .iter()
        .enumerate()
        .all(|(i, r)| acts_as_long_cycle(r.images(), i))
}

/// Every `L_x` is a bijection acting as an `(n−1)`-cycle on `X ∖ {x}`.
pub fn is_left_cyclic_type(x: &Quandle) -> bool {
    x.left_translations()
        .iter()
        .enumerate()
        .all(|(i, l)| l.is_bijective() && acts_as_long_cycle(l.images(), i))
}

/// Maximal subgroups of `H_X` at its idempotents.
pub fn maximal_subgroup_at_idempotents(s: &GeneratedSemigroup) -> Vec<MaximalSubgroup> {
    s.maximal_subgroups()
}
