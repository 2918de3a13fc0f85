//! Enumeration of quandles of a given order up to isomorphism.
//!
//! Column `j` of a quandle table is the permutation `R_j`, which fixes `j`.
//! Self-distributivity says `R_{R_k(j)} = R_k ∘ R_j ∘ R_k⁻¹`, so once two
//! columns are placed, a third is forced. The search places a free column
//! for the smallest unplaced index and then propagates every forced column,
//! failing on the first contradiction. Leaves are complete quandle tables,
//! deduplicated by canonical form.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::iso::canonical_with;
use crate::error::{Error, Result};
use crate::quandle::{all_permutations, Quandle};

pub const DEFAULT_ENUMERATION_BOUND: usize = 6;

#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Largest order accepted.
    pub bound: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { bound: DEFAULT_ENUMERATION_BOUND }
    }
}

/// All quandles of order `n` up to isomorphism, as canonical tables in
/// ascending lexicographic order.
pub fn enumerate_quandles(n: usize, opts: EnumerationOptions) -> Result<Vec<Quandle>> {
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    if n > opts.bound || n > super::iso::MAX_CANONICAL_SIZE {
        return Err(Error::Capacity(format!(
            "enumeration of order {n} exceeds bound {}",
            opts.bound.min(super::iso::MAX_CANONICAL_SIZE)
        )));
    }
    let perms = all_permutations(n);
    // candidate columns for each index: permutations fixing it
    let fixing: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| perms.iter().filter(|p| p[j] == j).cloned().collect())
        .collect();

    let classes: BTreeSet<Vec<usize>> = fixing[0]
        .par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            let mut cols: Vec<Option<Vec<usize>>> = vec![None; n];
            if place(&mut cols, 0, first.clone()) {
                descend(&mut cols, &fixing, &perms, &mut found);
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });

    Ok(classes
        .into_iter()
        .map(|t| Quandle::from_flat_unchecked(n, t))
        .collect())
}

fn descend(
    cols: &mut Vec<Option<Vec<usize>>>,
    fixing: &[Vec<Vec<usize>>],
    perms: &[Vec<usize>],
    found: &mut BTreeSet<Vec<usize>>,
) {
    let n = cols.len();
    let Some(next) = cols.iter().position(Option::is_none) else {
        let mut table = vec![0; n * n];
        for (j, col) in cols.iter().enumerate() {
            let col = col.as_ref().unwrap();
            for i in 0..n {
                table[i * n + j] = col[i];
            }
        }
        let q = Quandle::from_flat_unchecked(n, table);
        debug_assert!(q.validate().ok);
        found.insert(canonical_with(&q, perms).flat_table().to_vec());
        return;
    };
    for cand in &fixing[next] {
        let saved = cols.clone();
        if place(cols, next, cand.clone()) {
            descend(cols, fixing, perms, found);
        }
        *cols = saved;
    }
}

/// Places column `j` and propagates forced columns. Returns false on a
/// contradiction (the columns are left in an unspecified state).
fn place(cols: &mut [Option<Vec<usize>>], j: usize, col: Vec<usize>) -> bool {
    let n = cols.len();
    cols[j] = Some(col);
    loop {
        let mut changed = false;
        for k in 0..n {
            let Some(rk) = cols[k].clone() else { continue };
            let mut rk_inv = vec![0; n];
            for (x, &y) in rk.iter().enumerate() {
                rk_inv[y] = x;
            }
            for jj in 0..n {
                let Some(rj) = cols[jj].as_ref() else { continue };
                let target = rk[jj];
                // R_k ∘ R_j ∘ R_k⁻¹
                let expected: Vec<usize> = (0..n).map(|x| rk[rj[rk_inv[x]]]).collect();
                match &cols[target] {
                    Some(existing) => {
                        if *existing != expected {
                            return false;
                        }
                    }
                    None => {
                        cols[target] = Some(expected);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::quandles_isomorphic;

    #[test]
    fn small_counts() {
        let opts = EnumerationOptions::default();
        assert_eq!(enumerate_quandles(1, opts).unwrap().len(), 1);
        assert_eq!(enumerate_quandles(2, opts).unwrap().len(), 1);
        assert_eq!(enumerate_quandles(3, opts).unwrap().len(), 3);
        assert_eq!(enumerate_quandles(4, opts).unwrap().len(), 7);
    }

    #[test]
    fn bound_is_enforced() {
        let opts = EnumerationOptions { bound: 4 };
        assert!(matches!(enumerate_quandles(5, opts), Err(Error::Capacity(_))));
    }

    #[test]
    fn classes_are_pairwise_non_isomorphic() {
        for n in 1..=4 {
            let qs = enumerate_quandles(n, EnumerationOptions::default()).unwrap();
            for (a, x) in qs.iter().enumerate() {
                assert!(x.validate().ok);
                for y in &qs[a + 1..] {
                    assert_eq!(quandles_isomorphic(x, y).unwrap(), None);
                }
            }
        }
    }
}
