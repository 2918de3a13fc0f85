//! Hermite and Smith normal forms of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn ncols(m: &[Vec<BigInt>]) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let inner = b.len();
    let cols = ncols(b);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `row[dst] -= q · row[src]`
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x -= q * y;
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let t = q * &row[src];
        row[dst] -= t;
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row-style Hermite normal form of the row lattice: echelon rows with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// zero rows removed.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut a: IntMatrix = rows.to_vec();
    let m = a.len();
    let n = ncols(&a);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some(piv) = (r..m).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(r, piv);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                row_axpy(&mut a, i, r, &q);
                clean &= a[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            row_axpy(&mut a, i, r, &q);
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
    /// Full diagonal matrix `U·M·V`.
    pub diagonal: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

/// Smith normal form by gcd-pivot elimination, choosing the entry of smallest
/// absolute value as pivot. With `transforms`, also returns unimodular `U`, `V`
/// with `U·M·V = diagonal`.
pub fn smith_normal_form(m: &[Vec<BigInt>], transforms: bool) -> SmithForm {
    let rows = m.len();
    let cols = ncols(m);
    let mut a: IntMatrix = m.to_vec();
    let mut u = transforms.then(|| identity_matrix(rows));
    let mut v = transforms.then(|| identity_matrix(cols));

    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap(t, pi);
        }
        col_swap(&mut a, t, pj);
        if let Some(v) = v.as_mut() {
            col_swap(v, t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                if let Some(u) = u.as_mut() {
                    row_axpy(u, i, t, &q);
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                if let Some(v) = v.as_mut() {
                    col_axpy(v, j, t, &q);
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                // divisibility: fold an offending row into row t
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        row_axpy(&mut a, t, i, &minus_one);
                        if let Some(u) = u.as_mut() {
                            row_axpy(u, t, i, &minus_one);
                        }
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t onto the diagonal
            let best_row = (t..rows)
                .filter(|&i| !a[i][t].is_zero())
                .min_by(|&i, &k| a[i][t].abs().cmp(&a[k][t].abs()));
            if let Some(i) = best_row {
                if a[i][t].abs() < a[t][t].abs() {
                    a.swap(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap(t, i);
                    }
                }
            }
            let best_col = (t..cols)
                .filter(|&j| !a[t][j].is_zero())
                .min_by(|&j, &l| a[t][j].abs().cmp(&a[t][l].abs()));
            if let Some(j) = best_col {
                if a[t][j].abs() < a[t][t].abs() {
                    col_swap(&mut a, t, j);
                    if let Some(v) = v.as_mut() {
                        col_swap(v, t, j);
                    }
                }
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    let invariant_factors = (0..rows.min(cols)).map(|i| a[i][i].clone()).filter(|d| !d.is_zero()).collect();
    SmithForm { invariant_factors, diagonal: a, u, v }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
