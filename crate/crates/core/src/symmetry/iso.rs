use super::maps::Permutation;
use super::polynomial::quandle_polynomial;
use crate::error::{Error, Result};
use crate::quandle::{all_permutations, Quandle};

/// Largest size accepted by [`canonical_form`] (8! relabelings).
pub const MAX_CANONICAL_SIZE: usize = 8;

/// Per-element invariants preserved by isomorphisms.
fn element_signature(x: &Quandle) -> Vec<(usize, usize, usize)> {
    let n = x.size();
    let mut orbit_size = vec![0; n];
    for orbit in x.orbits() {
        for &e in &orbit {
            orbit_size[e] = orbit.len();
        }
    }
    (0..n)
        .map(|e| {
            let r = (0..n).filter(|&y| x.op(e, y) == e).count();
            let c = (0..n).filter(|&y| x.op(y, e) == y).count();
            (r, c, orbit_size[e])
        })
        .collect()
}

/// Finds `σ` with `σ(i ▷ j) = σ(i) ▷ σ(j)`, or `None`.
pub fn quandles_isomorphic(x: &Quandle, y: &Quandle) -> Result<Option<Permutation>> {
    let n = x.size();
    if n != y.size() {
        return Err(Error::SizeMismatch { left: n, right: y.size() });
    }
    if x.partition_type() != y.partition_type() || quandle_polynomial(x) != quandle_polynomial(y) {
        return Ok(None);
    }
    let sx = element_signature(x);
    let sy = element_signature(y);
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(x, y, &sx, &sy, 0, &mut sigma, &mut used) {
        Ok(Some(Permutation::from_images_unchecked(sigma)))
    } else {
        Ok(None)
    }
}

fn search(
    x: &Quandle,
    y: &Quandle,
    sx: &[(usize, usize, usize)],
    sy: &[(usize, usize, usize)],
    depth: usize,
    sigma: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = x.size();
    if depth == n {
        return true;
    }
    for target in 0..n {
        if used[target] || sx[depth] != sy[target] {
            continue;
        }
        sigma[depth] = target;
        used[target] = true;
        if consistent(x, y, depth, sigma) && search(x, y, sx, sy, depth + 1, sigma, used) {
            return true;
        }
        used[target] = false;
        sigma[depth] = usize::MAX;
    }
    false
}

/// Checks every product among `0..=last` whose result is also assigned,
/// restricted to products involving `last`.
fn consistent(x: &Quandle, y: &Quandle, last: usize, sigma: &[usize]) -> bool {
    for i in 0..=last {
        for (a, b) in [(i, last), (last, i)] {
            let p = x.op(a, b);
            if p <= last && sigma[p] != y.op(sigma[a], sigma[b]) {
                return false;
            }
        }
    }
    // products landing on `last` from earlier pairs
    for a in 0..last {
        for b in 0..last {
            if x.op(a, b) == last && sigma[last] != y.op(sigma[a], sigma[b]) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest row-major table over all relabelings.
pub fn canonical_form(x: &Quandle) -> Result<Quandle> {
    let n = x.size();
    if n > MAX_CANONICAL_SIZE {
        return Err(Error::Capacity(format!(
            "canonical form limited to size {MAX_CANONICAL_SIZE}, got {n}"
        )));
    }
    Ok(canonical_with(x, &all_permutations(n)))
}

/// Canonical form using a precomputed list of all permutations of `0..n`.
pub(crate) fn canonical_with(x: &Quandle, perms: &[Vec<usize>]) -> Quandle {
    let n = x.size();
    let t = x.flat_table();
    let mut best: Vec<usize> = t.to_vec();
    let mut cand = vec![0; n * n];
    // `tau` is the inverse relabeling: new entry (a, b) = σ(T[τa][τb])
    for tau in perms {
        let mut sigma = vec![0; n];
        for (a, &ta) in tau.iter().enumerate() {
            sigma[ta] = a;
        }
        let mut state = std::cmp::Ordering::Equal;
        'fill: for a in 0..n {
            for b in 0..n {
                let v = sigma[t[tau[a] * n + tau[b]]];
                let k = a * n + b;
                cand[k] = v;
                if state == std::cmp::Ordering::Equal {
                    state = v.cmp(&best[k]);
                    if state == std::cmp::Ordering::Greater {
                        break 'fill;
                    }
                }
            }
        }
        if state == std::cmp::Ordering::Less {
            best.copy_from_slice(&cand);
        }
    }
    Quandle::from_flat_unchecked(n, best)
}
