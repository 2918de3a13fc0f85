//! Groups and semigroups of maps generated by closure, and their actions on
//! points and ordered pairs.

use std::collections::HashSet;

use serde::Serialize;

use super::maps::{Permutation, Transformation};
use crate::error::{Error, Result};

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// sorted
    elements: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratedSemigroup {
    degree: usize,
    generators: Vec<Transformation>,
    /// sorted
    elements: Vec<Transformation>,
}

fn check_degrees<M: AsRef<[usize]>>(degree: usize, maps: &[M]) -> Result<()> {
    for m in maps {
        if m.as_ref().len() != degree {
            return Err(Error::DimensionMismatch { expected: degree, got: m.as_ref().len() });
        }
    }
    Ok(())
}

impl GeneratedGroup {
    /// Breadth-first closure of `generators` and their inverses.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        check_degrees(degree, &generators)?;
        let mut step: Vec<Permutation> = generators.clone();
        step.extend(generators.iter().map(Permutation::inverse));
        step.sort();
        step.dedup();

        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &step {
                    let h = g.then(s);
                    if !seen.contains(&h) {
                        if seen.len() >= cap {
                            return Err(Error::Capacity(format!("group closure exceeds {cap} elements")));
                        }
                        seen.insert(h.clone());
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self { degree, generators, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Number of orbits on ordered pairs, the diagonal counted as one orbit.
    /// The action is 2-transitive exactly when this is 2 (for degree ≥ 2).
    pub fn permutation_rank(&self) -> usize {
        permutation_rank(&self.generators, self.degree)
    }

    pub fn is_2transitive(&self) -> bool {
        self.degree <= 1 || self.permutation_rank() == 2
    }
}

impl GeneratedSemigroup {
    /// Closure of `generators` under composition; the identity is only present
    /// if it arises as a product.
    pub fn generate(degree: usize, generators: Vec<Transformation>, cap: usize) -> Result<Self> {
        check_degrees(degree, &generators)?;
        let mut step = generators.clone();
        step.sort();
        step.dedup();

        let mut seen: HashSet<Transformation> = step.iter().cloned().collect();
        let mut frontier = step.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &step {
                    let h = g.then(s);
                    if !seen.contains(&h) {
                        if seen.len() >= cap {
                            return Err(Error::Capacity(format!("semigroup closure exceeds {cap} elements")));
                        }
                        seen.insert(h.clone());
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<Transformation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self { degree, generators, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Transformation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_2transitive(&self) -> bool {
        is_2transitive(&self.elements, self.degree)
    }

    /// For each idempotent `e`, the group of units of the monoid `eSe`,
    /// acting on the image of `e` (reindexed to `0..|im e|`).
    pub fn maximal_subgroups(&self) -> Vec<MaximalSubgroup> {
        let mut out = Vec::new();
        for e in self.elements.iter().filter(|e| e.is_idempotent()) {
            let mut local: Vec<Transformation> = self
                .elements
                .iter()
                .map(|s| e.then(s).then(e))
                .collect();
            local.sort();
            local.dedup();
            let units: Vec<&Transformation> = local
                .iter()
                .filter(|x| local.iter().any(|y| x.then(y) == *e && y.then(x) == *e))
                .collect();
            let image = e.image();
            let restricted: Vec<Permutation> = units
                .iter()
                .map(|u| {
                    let images = image
                        .iter()
                        .map(|&x| image.binary_search(&u.apply(x)).expect("unit preserves the image"))
                        .collect();
                    Permutation::from_images_unchecked(images)
                })
                .collect();
            let group = GeneratedGroup::generate(image.len(), restricted, DEFAULT_ELEMENT_CAP)
                .expect("unit group is no larger than the semigroup");
            out.push(MaximalSubgroup { idempotent: e.clone(), image, group });
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSubgroup {
    pub idempotent: Transformation,
    /// points of the image of the idempotent, the domain of `group`
    pub image: Vec<usize>,
    pub group: GeneratedGroup,
}

/// Restricts each map to `subset` and renumbers points by their position in
/// `subset`. Fails unless every map sends `subset` into itself.
pub fn restricted_action<M: AsRef<[usize]>>(maps: &[M], subset: &[usize]) -> Result<Vec<Transformation>> {
    let mut out = Vec::with_capacity(maps.len());
    for m in maps {
        let m = m.as_ref();
        let mut images = Vec::with_capacity(subset.len());
        for &x in subset {
            let y = *m.get(x).ok_or(Error::IndexOutOfRange { index: x, size: m.len() })?;
            let pos = subset.iter().position(|&s| s == y).ok_or(Error::NotInvariant)?;
            images.push(pos);
        }
        out.push(Transformation::from_images_unchecked(images));
    }
    Ok(out)
}

/// Orbits of the maps on ordered pairs of distinct points, plus one for the
/// diagonal. For permutations this is the rank of the permutation action.
pub fn permutation_rank<M: AsRef<[usize]>>(generators: &[M], m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    let idx = |x: usize, y: usize| x * m + y;
    let mut parent: Vec<usize> = (0..m * m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        let g = g.as_ref();
        for x in 0..m {
            for y in 0..m {
                if x == y {
                    continue;
                }
                let a = find(&mut parent, idx(x, y));
                let b = find(&mut parent, idx(g[x], g[y]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut roots = HashSet::new();
    for x in 0..m {
        for y in 0..m {
            if x != y {
                roots.insert(find(&mut parent, idx(x, y)));
            }
        }
    }
    roots.len() + 1
}

/// Direct test over all ordered pairs of distinct sources and distinct
/// targets: some map must send `(x1, y1)` to `(x2, y2)`. Vacuous for `m ≤ 1`.
///
/// `maps` must be the full element set (not just generators) when it is a
/// semigroup.
pub fn is_2transitive<M: AsRef<[usize]>>(maps: &[M], m: usize) -> bool {
    if m <= 1 {
        return true;
    }
    let pairs = m * m;
    // reached[source][target]
    let mut reached = vec![false; pairs * pairs];
    for g in maps {
        let g = g.as_ref();
        for x in 0..m {
            for y in 0..m {
                if x != y && g[x] != g[y] {
                    reached[(x * m + y) * pairs + g[x] * m + g[y]] = true;
                }
            }
        }
    }
    (0..m).all(|x1| {
        (0..m).all(|y1| {
            x1 == y1
                || (0..m).all(|x2| {
                    (0..m).all(|y2| x2 == y2 || reached[(x1 * m + y1) * pairs + x2 * m + y2])
                })
        })
    })
}
