//! Finite quandles stored as operation tables.
//!
//! Elements are `0..n`; entry `(i, j)` of the table is `i ▷ j`. Columns are
//! the right translations `R_j` and rows the left translations `L_i`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::symmetry::maps::{Permutation, Transformation};

/// Default number of witnesses kept per axiom by [`validate_table`].
pub const DEFAULT_WITNESS_LIMIT: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quandle {
    n: usize,
    table: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `i ▷ i = i`
    #[serde(rename = "I")]
    Idempotence,
    /// every column is a bijection
    #[serde(rename = "II")]
    RightInvertibility,
    /// `(i ▷ j) ▷ k = (i ▷ k) ▷ (j ▷ k)`
    #[serde(rename = "III")]
    SelfDistributivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// `[i]` for axiom I, `[column, i1, i2]` (two rows with equal entries) for
    /// axiom II, `[i, j, k]` for axiom III.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks the three quandle axioms on a square table.
///
/// Range and shape problems are errors; axiom failures are reported with at
/// most `witness_limit` witnesses per axiom.
pub fn validate_table(n: usize, rows: &[Vec<usize>], witness_limit: usize) -> Result<ValidationReport> {
    let table = flatten_checked(n, rows)?;
    Ok(validate_flat(n, &table, witness_limit))
}

fn flatten_checked(n: usize, rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    if rows.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
    }
    let mut table = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRow { row: r, len: row.len(), expected: n });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::EntryOutOfRange { row: r, col: c, value: v as i64, n });
            }
            table.push(v);
        }
    }
    Ok(table)
}

fn validate_flat(n: usize, t: &[usize], limit: usize) -> ValidationReport {
    let at = |i: usize, j: usize| t[i * n + j];
    let mut violations = Vec::new();

    let mut count = 0;
    for i in 0..n {
        if at(i, i) != i && count < limit {
            violations.push(Violation { axiom: Axiom::Idempotence, witness: vec![i] });
            count += 1;
        }
    }

    count = 0;
    'cols: for j in 0..n {
        let mut first_row = vec![usize::MAX; n];
        for i in 0..n {
            let v = at(i, j);
            if first_row[v] != usize::MAX {
                if count >= limit {
                    break 'cols;
                }
                violations.push(Violation {
                    axiom: Axiom::RightInvertibility,
                    witness: vec![j, first_row[v], i],
                });
                count += 1;
            } else {
                first_row[v] = i;
            }
        }
    }

    count = 0;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if at(at(i, j), k) != at(at(i, k), at(j, k)) {
                    if count >= limit {
                        break 'outer;
                    }
                    violations.push(Violation { axiom: Axiom::SelfDistributivity, witness: vec![i, j, k] });
                    count += 1;
                }
            }
        }
    }

    ValidationReport { ok: violations.is_empty(), violations }
}

impl Quandle {
    /// Builds a quandle from rows, rejecting malformed tables and axiom
    /// violations alike.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let table = flatten_checked(n, rows)?;
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        let report = validate_flat(n, &table, DEFAULT_WITNESS_LIMIT);
        if !report.ok {
            let v = &report.violations[0];
            return Err(Error::AxiomViolation(format!("{:?} at {:?}", v.axiom, v.witness)));
        }
        Ok(Self { n, table })
    }

    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        Self { n, table }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `i ▷ j`
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_flat(self.n, &self.table, DEFAULT_WITNESS_LIMIT)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.op(i, j) == i))
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, size: self.n })
        }
    }

    /// `R_x : y ↦ y ▷ x`
    pub fn right_translation(&self, x: usize) -> Result<Permutation> {
        self.check_index(x)?;
        Ok(Permutation::from_images_unchecked((0..self.n).map(|y| self.op(y, x)).collect()))
    }

    /// `L_x : y ↦ x ▷ y`
    pub fn left_translation(&self, x: usize) -> Result<Transformation> {
        self.check_index(x)?;
        Ok(Transformation::from_images_unchecked(self.table[x * self.n..(x + 1) * self.n].to_vec()))
    }

    pub fn right_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|x| self.right_translation(x).unwrap()).collect()
    }

    pub fn left_translations(&self) -> Vec<Transformation> {
        (0..self.n).map(|x| self.left_translation(x).unwrap()).collect()
    }

    /// Orbits under `Inn(X)`, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in 0..n {
                let a = find(&mut parent, i);
                let b = find(&mut parent, self.op(i, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if block_of[r] == usize::MAX {
                block_of[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of[r]].push(i);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// `λ[j-1]` is the number of orbits with `j` elements.
    pub fn partition_type(&self) -> Vec<usize> {
        let mut lambda = vec![0; self.n];
        for orbit in self.orbits() {
            lambda[orbit.len() - 1] += 1;
        }
        lambda
    }

    /// Relabels by `sigma`: the result has `σ(i) ▷ σ(j) = σ(i ▷ j)`.
    pub fn relabel(&self, sigma: &Permutation) -> Quandle {
        let n = self.n;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[sigma.apply(i) * n + sigma.apply(j)] = sigma.apply(self.op(i, j));
            }
        }
        Quandle { n, table }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("quandle serializes")
    }

    /// Parses `{"n": .., "table": [[..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let (n, rows) = parse_table_value(&value)?;
        let table = flatten_checked(n, &rows)?;
        Self::from_flat(n, table)
    }
}

/// Parses the JSON table format without checking the quandle axioms.
pub fn parse_table_json(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let value: Value = serde_json::from_str(text)?;
    let (n, rows) = parse_table_value(&value)?;
    flatten_checked(n, &rows)?;
    Ok((n, rows))
}

fn parse_table_value(value: &Value) -> Result<(usize, Vec<Vec<usize>>)> {
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or invalid \"n\"".into()))? as usize;
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    let rows = obj
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing or invalid \"table\"".into()))?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
    }
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Parse(format!("row {r} is not an array")))?;
        if row.len() != n {
            return Err(Error::RaggedRow { row: r, len: row.len(), expected: n });
        }
        let mut parsed = Vec::with_capacity(n);
        for (c, v) in row.iter().enumerate() {
            let v = v.as_i64().ok_or_else(|| Error::Parse(format!("entry ({r}, {c}) is not an integer")))?;
            if v < 0 || v as u64 >= n as u64 {
                return Err(Error::EntryOutOfRange { row: r, col: c, value: v, n });
            }
            parsed.push(v as usize);
        }
        out.push(parsed);
    }
    Ok((n, out))
}

impl Serialize for Quandle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            table: Vec<Vec<usize>>,
        }
        Repr { n: self.n, table: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quandle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(d)?;
        let (n, rows) = parse_table_value(&value).map_err(serde::de::Error::custom)?;
        let table = flatten_checked(n, &rows).map_err(serde::de::Error::custom)?;
        Quandle::from_flat(n, table).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle({}, {:?})", self.n, self.rows())
    }
}

impl fmt::Display for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.n.max(1) - 1).to_string().len();
        write!(f, "{:>width$} |", "▷", width = width)?;
        for j in 0..self.n {
            write!(f, " {:>width$}", j, width = width)?;
        }
        writeln!(f)?;
        for i in 0..self.n {
            write!(f, "{:>width$} |", i, width = width)?;
            for j in 0..self.n {
                write!(f, " {:>width$}", self.op(i, j), width = width)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// constructors

pub fn trivial_quandle(n: usize) -> Result<Quandle> {
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    let table = (0..n).flat_map(|i| std::iter::repeat_n(i, n)).collect();
    Ok(Quandle::from_flat_unchecked(n, table))
}

/// `R_n`: `i ▷ j = 2j − i mod n`.
pub fn dihedral_quandle(n: usize) -> Result<Quandle> {
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push((2 * j + n - i) % n);
        }
    }
    Ok(Quandle::from_flat_unchecked(n, table))
}

/// `i ▷ j = t·i + (1 − t)·j mod n`, requiring `gcd(t, n) = 1`.
pub fn alexander_quandle(n: usize, t: i64) -> Result<Quandle> {
    if n == 0 {
        return Err(Error::EmptyQuandle);
    }
    let m = n as i64;
    let t = t.rem_euclid(m);
    if t.gcd(&m) != 1 && n > 1 {
        return Err(Error::NonUnitParameter { t, n });
    }
    let s = (1 - t).rem_euclid(m);
    let mut table = Vec::with_capacity(n * n);
    for i in 0..m {
        for j in 0..m {
            table.push(((t * i + s * j) % m) as usize);
        }
    }
    Ok(Quandle::from_flat_unchecked(n, table))
}

/// A validated group multiplication table.
struct Group {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl Group {
    fn from_cayley(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mul = flatten_checked(n, rows)?;
        let m = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::GroupAxiom(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::GroupAxiom(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { n, mul, inv })
    }

    #[inline]
    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }
}

/// `Conj(G)`: `a ▷ b = b⁻¹ a b`.
pub fn conjugation_quandle(cayley: &[Vec<usize>]) -> Result<Quandle> {
    let g = Group::from_cayley(cayley)?;
    let n = g.n;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(g.m(g.m(g.inv[b], a), b));
        }
    }
    Ok(Quandle::from_flat_unchecked(n, table))
}

/// `Core(G)`: `a ▷ b = b a⁻¹ b`.
pub fn core_quandle(cayley: &[Vec<usize>]) -> Result<Quandle> {
    let g = Group::from_cayley(cayley)?;
    let n = g.n;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(g.m(g.m(b, g.inv[a]), b));
        }
    }
    Ok(Quandle::from_flat_unchecked(n, table))
}

/// `X ⊔ Y`: blocks replicate `X` and `Y`, cross products return the left argument.
pub fn disjoint_union(x: &Quandle, y: &Quandle) -> Quandle {
    let (nx, ny) = (x.size(), y.size());
    let n = nx + ny;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = match (i < nx, j < nx) {
                (true, true) => x.op(i, j),
                (false, false) => nx + y.op(i - nx, j - nx),
                _ => i,
            };
            table.push(v);
        }
    }
    Quandle::from_flat_unchecked(n, table)
}

/// Cayley table of `Z_n` under addition.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Cayley table of a direct product, elements indexed `a * |H| + b`.
pub fn product_group_table(g: &[Vec<usize>], h: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let (ng, nh) = (g.len(), h.len());
    let mut out = vec![vec![0; ng * nh]; ng * nh];
    for a1 in 0..ng {
        for b1 in 0..nh {
            for a2 in 0..ng {
                for b2 in 0..nh {
                    out[a1 * nh + b1][a2 * nh + b2] = g[a1][a2] * nh + h[b1][b2];
                }
            }
        }
    }
    out
}

/// Cayley table of the symmetric group on `m` points, elements in
/// lexicographic order of their image arrays; `a·b` applies `a` first.
pub fn symmetric_group_table(m: usize) -> Vec<Vec<usize>> {
    let perms = all_permutations(m);
    let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).unwrap();
    perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| index(&a.iter().map(|&x| b[x]).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

/// All permutations of `0..m` in lexicographic order.
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

// ---------------------------------------------------------------------------
// fixed small quandles used by the isomorphism examples

fn rows_1_indexed(rows: &[&[usize]]) -> Quandle {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|&x| x - 1).collect()).collect();
    Quandle::from_rows(&rows).expect("fixed table is a quandle")
}

/// The order-3 quandle `{0, 1} ⊔ {2}` where `2` swaps `0` and `1`.
pub fn two_orbit_order3() -> Quandle {
    Quandle::from_rows(&[vec![0, 0, 1], vec![1, 1, 0], vec![2, 2, 2]]).unwrap()
}

/// Two non-isomorphic order-4 quandles whose rings agree in characteristic 3.
pub fn char3_ring_twins() -> (Quandle, Quandle) {
    let x = rows_1_indexed(&[&[1, 1, 2, 2], &[2, 2, 1, 1], &[3, 3, 3, 3], &[4, 4, 4, 4]]);
    let y = rows_1_indexed(&[&[1, 1, 2, 1], &[2, 2, 1, 2], &[3, 3, 3, 3], &[4, 4, 4, 4]]);
    (x, y)
}

/// Two non-isomorphic order-7 quandles whose rings agree in characteristic 0.
pub fn char0_ring_twins() -> (Quandle, Quandle) {
    let x = rows_1_indexed(&[
        &[1, 1, 1, 1, 2, 2, 1],
        &[2, 2, 2, 2, 1, 1, 2],
        &[3, 3, 3, 3, 3, 4, 3],
        &[4, 4, 4, 4, 4, 3, 4],
        &[5, 5, 5, 5, 5, 5, 5],
        &[6, 6, 6, 6, 6, 6, 6],
        &[7, 7, 7, 7, 7, 7, 7],
    ]);
    let y = rows_1_indexed(&[
        &[1, 1, 1, 1, 2, 1, 1],
        &[2, 2, 2, 2, 1, 2, 2],
        &[3, 3, 3, 3, 3, 4, 3],
        &[4, 4, 4, 4, 4, 3, 4],
        &[5, 5, 5, 5, 5, 5, 5],
        &[6, 6, 6, 6, 6, 6, 6],
        &[7, 7, 7, 7, 7, 7, 7],
    ]);
    (x, y)
}
