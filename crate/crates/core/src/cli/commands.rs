use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::catalog::{append_catalog, CatalogEntry, CATALOG_ENV};
use super::golden::golden_suite;
use super::{CliError, CliResult, Command, Family, Outcome, VariantArg, EXIT_AXIOM, EXIT_CHECK_FAILED, EXIT_PARSE};
use crate::dihedral::complex_decomposition_check;
use crate::error::Error;
use crate::lattice::{delta_series, quotient_shape, verify_simple_decomposition_with, DeltaVariant, Simplicity, Verdict};
use crate::quandle::{
    alexander_quandle, char0_ring_twins, char3_ring_twins, conjugation_quandle, core_quandle, cyclic_group_table,
    dihedral_quandle, disjoint_union, parse_table_json, product_group_table, symmetric_group_table, trivial_quandle,
    validate_table, Quandle,
};
use crate::ring::domain::matrix_to_json;
use crate::ring::{
    AlbertIdentity, char0_twin_matrix, char3_twin_matrix, is_ring_isomorphism, matrix_from_i64, power_assoc_witness, quandle_ring,
    ring_iso_brute_force, BruteForceOptions, CoefficientSearch, ComplexFloat, Domain, DomainTag, Integers,
    PrimeField, Rationals,
};
use crate::symmetry::{
    enumerate_quandles, inner_group, is_left_2transitive, is_left_cyclic_type, is_right_2transitive,
    is_right_cyclic_type, is_right_orbit_2transitive, quandle_polynomial, quandles_isomorphic, EnumerationOptions,
};

/// Binds `$d` to the domain named by `$tag` and evaluates `$body` with it.
macro_rules! with_domain {
    ($tag:expr, |$d:ident| $body:expr) => {
        match $tag {
            DomainTag::Integers => {
                let $d = Integers;
                $body
            }
            DomainTag::Rationals => {
                let $d = Rationals;
                $body
            }
            DomainTag::PrimeField(p) => {
                let $d = PrimeField::new(p)?;
                $body
            }
            DomainTag::Complex => {
                let $d = ComplexFloat;
                $body
            }
        }
    };
}

pub(super) fn execute(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Make { family, params, output } => make(*family, params, output.as_deref()),
        Command::Check { file, witnesses } => check(file, *witnesses),
        Command::Enumerate { n, catalog, bound } => enumerate(*n, catalog.clone(), *bound),
        Command::PowerAssoc { file, domain, radius, exhaustive } => power_assoc(file, domain, *radius, *exhaustive),
        Command::Delta { file, dihedral, kmax, variant } => delta(file.as_deref(), *dihedral, *kmax, *variant),
        Command::Iso { x, y, ring_domain, budget, matrix } => iso(x, y, ring_domain, *budget, matrix.as_deref()),
        Command::Decompose { file, domain, complex_dihedral, tol, spin_budget } => {
            decompose(file.as_deref(), domain, *complex_dihedral, *tol, *spin_budget)
        }
        Command::VerifyPaper { inject_fault } => verify_paper(*inject_fault),
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::params(format!("{}: {e}", path.display())))
}

/// Malformed tables are parse errors when they come from a file.
fn file_error(path: &Path, e: Error) -> CliError {
    let code = match e {
        Error::Parse(_) | Error::EmptyQuandle | Error::RaggedRow { .. } | Error::EntryOutOfRange { .. } => EXIT_PARSE,
        _ => CliError::from(e.clone()).code,
    };
    CliError::new(code, format!("{}: {e}", path.display()))
}

fn load_quandle(path: &Path) -> CliResult<Quandle> {
    let (n, rows) = parse_table_json(&read_file(path)?).map_err(|e| file_error(path, e))?;
    let report = validate_table(n, &rows, 5).map_err(|e| file_error(path, e))?;
    if !report.ok {
        let mut err = CliError::new(EXIT_AXIOM, format!("{}: quandle axioms violated", path.display()));
        err.detail = Some(serde_json::to_value(&report).expect("report serializes"));
        return Err(err);
    }
    Quandle::from_rows(&rows).map_err(|e| file_error(path, e))
}

fn parse_domain(s: &str) -> CliResult<DomainTag> {
    s.parse().map_err(|e: Error| CliError::params(e.to_string()))
}

fn param<T: std::str::FromStr>(params: &[String], k: usize, what: &str) -> CliResult<T> {
    let raw = params.get(k).ok_or_else(|| CliError::params(format!("missing parameter {what}")))?;
    raw.parse().map_err(|_| CliError::params(format!("bad {what}: {raw:?}")))
}

fn expect_params(params: &[String], count: usize, usage: &str) -> CliResult<()> {
    if params.len() != count {
        return Err(CliError::params(format!("usage: make {usage}")));
    }
    Ok(())
}

/// `Z<n>`, `S<m>`, products joined by `x`, or a JSON Cayley-table file.
fn group_table(spec: &str) -> CliResult<Vec<Vec<usize>>> {
    let path = Path::new(spec);
    if path.exists() {
        let v: Value = serde_json::from_str(&read_file(path)?).map_err(|e| file_error(path, e.into()))?;
        let rows = v.get("cayley").unwrap_or(&v);
        return serde_json::from_value(rows.clone()).map_err(|e| file_error(path, e.into()));
    }
    let mut table: Option<Vec<Vec<usize>>> = None;
    for factor in spec.split('x') {
        let bad = || CliError::params(format!("unknown group {spec:?}"));
        let (kind, order) = factor.split_at(1.min(factor.len()));
        let order: usize = order.trim_start_matches('_').parse().map_err(|_| bad())?;
        let t = match kind {
            "Z" | "C" if order >= 1 => cyclic_group_table(order),
            "S" if (1..=5).contains(&order) => symmetric_group_table(order),
            _ => return Err(bad()),
        };
        table = Some(match table {
            None => t,
            Some(acc) => product_group_table(&acc, &t),
        });
    }
    table.ok_or_else(|| CliError::params("empty group"))
}

fn make(family: Family, params: &[String], output: Option<&Path>) -> CliResult<Outcome> {
    let q = match family {
        Family::Trivial => {
            expect_params(params, 1, "trivial N")?;
            trivial_quandle(param(params, 0, "N")?)?
        }
        Family::Dihedral => {
            expect_params(params, 1, "dihedral N")?;
            dihedral_quandle(param(params, 0, "N")?)?
        }
        Family::Alexander => {
            expect_params(params, 2, "alexander N T")?;
            alexander_quandle(param(params, 0, "N")?, param(params, 1, "T")?)?
        }
        Family::Conj => {
            expect_params(params, 1, "conj GROUP")?;
            conjugation_quandle(&group_table(&params[0])?)?
        }
        Family::Core => {
            expect_params(params, 1, "core GROUP")?;
            core_quandle(&group_table(&params[0])?)?
        }
        Family::Union => {
            expect_params(params, 2, "union A.json B.json")?;
            disjoint_union(&load_quandle(Path::new(&params[0]))?, &load_quandle(Path::new(&params[1]))?)
        }
        Family::Table => {
            expect_params(params, 1, "table FILE")?;
            load_quandle(Path::new(&params[0]))?
        }
    };
    let doc = q.to_json();
    let text = match output {
        Some(path) => {
            fs::write(path, format!("{doc}\n")).map_err(|e| CliError::params(format!("{}: {e}", path.display())))?;
            format!("wrote quandle of order {} to {}", q.size(), path.display())
        }
        None => doc.clone(),
    };
    let quandle: Value = serde_json::from_str(&doc).expect("valid JSON");
    Ok(Outcome::ok(json!({"quandle": quandle}), text))
}

fn summary(x: &Quandle) -> CliResult<Value> {
    let qp = quandle_polynomial(x);
    Ok(json!({
        "n": x.size(),
        "orbits": x.orbits(),
        "partition_type": x.partition_type(),
        "connected": x.is_connected(),
        "trivial": x.is_trivial(),
        "inn_order": inner_group(x)?.order(),
        "right2t": is_right_2transitive(x),
        "right_orbit2t": is_right_orbit_2transitive(x),
        "left2t": is_left_2transitive(x)?,
        "right_cyclic": is_right_cyclic_type(x),
        "left_cyclic": is_left_cyclic_type(x),
        "qp": qp,
        "qp_string": qp.to_string(),
    }))
}

fn check(file: &Path, witnesses: usize) -> CliResult<Outcome> {
    let (n, rows) = parse_table_json(&read_file(file)?).map_err(|e| file_error(file, e))?;
    let report = validate_table(n, &rows, witnesses).map_err(|e| file_error(file, e))?;
    if !report.ok {
        let mut text = format!("{}: not a quandle\n", file.display());
        for v in &report.violations {
            let _ = writeln!(text, "  axiom {:?} fails at {:?}", v.axiom, v.witness);
        }
        let outputs = json!({"valid": false, "validation": report});
        return Ok(Outcome { outputs, text: text.trim_end().to_string(), code: EXIT_AXIOM });
    }
    let x = Quandle::from_rows(&rows)?;
    let mut s = summary(&x)?;
    let mut text = format!("{}: quandle of order {n}\n", file.display());
    for key in [
        "orbits",
        "partition_type",
        "connected",
        "inn_order",
        "right2t",
        "right_orbit2t",
        "left2t",
        "right_cyclic",
        "left_cyclic",
        "qp_string",
    ] {
        let _ = writeln!(text, "  {key:<15} {}", s[key]);
    }
    s["valid"] = json!(true);
    Ok(Outcome::ok(s, text.trim_end().to_string()))
}

pub(super) fn catalog_entry(x: &Quandle) -> CliResult<CatalogEntry> {
    Ok(CatalogEntry {
        n: x.size(),
        table: x.rows(),
        partition_type: x.partition_type(),
        right2t: is_right_orbit_2transitive(x),
        left2t: is_left_2transitive(x)?,
        qp: quandle_polynomial(x),
    })
}

fn enumerate(n: usize, catalog: Option<PathBuf>, bound: usize) -> CliResult<Outcome> {
    let classes = enumerate_quandles(n, EnumerationOptions { bound })?;
    let entries: Vec<CatalogEntry> = classes.iter().map(catalog_entry).collect::<CliResult<_>>()?;
    let right = entries.iter().filter(|e| e.right2t).count();
    let left = entries.iter().filter(|e| e.left2t).count();
    let inn = classes.iter().filter(|x| is_right_2transitive(x)).count();
    let catalog = catalog.or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    let appended = match &catalog {
        Some(path) => Some(append_catalog(path, &entries)?),
        None => None,
    };
    let mut text = format!(
        "order {n}: {} quandles, {right} right 2-transitive, {left} left 2-transitive ({inn} with Inn(X) 2-transitive on X)",
        classes.len()
    );
    if let (Some(path), Some(k)) = (&catalog, appended) {
        let _ = write!(text, "\ncatalog {}: {k} new entries", path.display());
    }
    let outputs = json!({
        "n": n,
        "quandles": classes.len(),
        "right2t": right,
        "left2t": left,
        "inn2t": inn,
        "catalog_appended": appended,
    });
    Ok(Outcome::ok(outputs, text))
}

fn format_element<D: Domain>(d: &D, v: &[D::Elem]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !d.is_zero(c)) {
        let c = d.format(c);
        let (sign, mag) = match c.strip_prefix('-') {
            Some(m) => ("-", m.to_string()),
            None => ("+", c),
        };
        let coef = if mag == "1" { String::new() } else if mag.contains(['+', ' ']) { format!("({mag})") } else { mag };
        match (out.is_empty(), sign) {
            (true, "+") => {}
            (true, _) => out.push('-'),
            (false, s) => {
                let _ = write!(out, " {s} ");
            }
        }
        let _ = write!(out, "{coef}a{i}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn power_assoc(file: &Path, domain: &str, radius: i64, exhaustive: bool) -> CliResult<Outcome> {
    let x = load_quandle(file)?;
    let tag = parse_domain(domain)?;
    if radius < 1 {
        return Err(CliError::params("radius must be at least 1"));
    }
    if x.is_trivial() {
        let outputs = json!({"domain": tag.to_string(), "power_associative": true, "trivial": true, "witness": null});
        return Ok(Outcome::ok(outputs, "power associative (trivial)".into()));
    }
    let search = if exhaustive { CoefficientSearch::Exhaustive } else { CoefficientSearch::radius(radius) };
    with_domain!(tag, |d| {
        let found = power_assoc_witness(&x, d, &search)?;
        Ok(match found {
            Some(w) => {
                let text = format!(
                    "not power associative: u = {} fails the {} identity\n  lhs = {}\n  rhs = {}",
                    format_element(&d, &w.element),
                    match w.identity {
                        AlbertIdentity::Cubic => "cubic",
                        AlbertIdentity::Quartic => "quartic",
                    },
                    format_element(&d, &w.lhs),
                    format_element(&d, &w.rhs),
                );
                let outputs = json!({
                    "domain": tag.to_string(),
                    "power_associative": false,
                    "trivial": false,
                    "witness": w.to_json(&d),
                });
                Outcome::ok(outputs, text)
            }
            None => {
                let outputs = json!({
                    "domain": tag.to_string(),
                    "power_associative": null,
                    "trivial": false,
                    "witness": null,
                });
                Outcome::ok(outputs, "no witness in the searched coefficients".into())
            }
        })
    })
}

fn delta(file: Option<&Path>, dihedral: Option<usize>, kmax: usize, variant: VariantArg) -> CliResult<Outcome> {
    let (x, dihedral_n) = match (file, dihedral) {
        (Some(f), None) => (load_quandle(f)?, None),
        (None, Some(n)) => (dihedral_quandle(n)?, Some(n)),
        _ => return Err(CliError::params("give a quandle file or --dihedral N")),
    };
    if kmax == 0 {
        return Err(CliError::params("kmax must be at least 1"));
    }
    let variants = match variant {
        VariantArg::AllBracketings => vec![DeltaVariant::AllBracketings],
        VariantArg::LeftNormed => vec![DeltaVariant::LeftNormed],
        VariantArg::Both => vec![DeltaVariant::AllBracketings, DeltaVariant::LeftNormed],
    };
    let n = x.size();
    let r = quandle_ring(&x, Integers);
    let mut rows = Vec::new();
    let mut text = String::new();
    for v in variants {
        let series = delta_series(&r, kmax + 1, v)?;
        for k in 1..=kmax {
            let shape = quotient_shape(&series[k - 1], &series[k])?;
            let mut row = json!({"n": n, "k": k, "shape": shape, "display": shape.to_string(), "variant": v.name()});
            let _ = write!(text, "{:<16} k={k}  Δ^{k}/Δ^{}  ≅ {shape}", v.name(), k + 1);
            if let Some(m) = dihedral_n.filter(|m| m % 2 == 0 && k >= 2) {
                let order = shape.order();
                let matches = order.as_ref().is_some_and(|o| *o == m.into());
                row["exploratory"] = json!(true);
                row["conjectured_order"] = json!(m);
                row["order"] = json!(order.map(|o| o.to_string()));
                row["order_matches"] = json!(matches);
                let _ = write!(text, "  (exploratory: conjectured order {m}, {})", if matches { "matches" } else { "differs" });
            }
            text.push('\n');
            rows.push(row);
        }
    }
    Ok(Outcome::ok(Value::Array(rows), text.trim_end().to_string()))
}

fn int_matrix_file(path: &Path) -> CliResult<Vec<Vec<i64>>> {
    let v: Value = serde_json::from_str(&read_file(path)?).map_err(|e| file_error(path, e.into()))?;
    let rows = v.get("rows").unwrap_or(&v);
    serde_json::from_value(rows.clone()).map_err(|e| file_error(path, e.into()))
}

fn builtin_matrix(x: &Quandle, y: &Quandle) -> Option<(&'static str, Vec<Vec<i64>>)> {
    let n = x.size();
    if x == y {
        let id = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
        return Some(("identity", id));
    }
    if (x.clone(), y.clone()) == char3_ring_twins() {
        return Some(("builtin", char3_twin_matrix()));
    }
    if (x.clone(), y.clone()) == char0_ring_twins() {
        return Some(("builtin", char0_twin_matrix()));
    }
    None
}

fn iso(xp: &Path, yp: &Path, ring_domain: &str, budget: u64, matrix: Option<&Path>) -> CliResult<Outcome> {
    let x = load_quandle(xp)?;
    let y = load_quandle(yp)?;
    let tag = parse_domain(ring_domain)?;
    let sigma = quandles_isomorphic(&x, &y)?;
    let quandle_iso = sigma.as_ref().map(|s| s.images().to_vec());
    let mut text = match &quandle_iso {
        Some(s) => format!("quandles: isomorphic via {s:?}\n"),
        None => "quandles: not isomorphic\n".to_string(),
    };
    let given = match matrix {
        Some(p) => Some(("given", int_matrix_file(p)?)),
        None => builtin_matrix(&x, &y),
    };
    let ring = with_domain!(tag, |d| {
        if let Some((source, m)) = given {
            let m = matrix_from_i64(&d, &m);
            let ok = is_ring_isomorphism(&quandle_ring(&x, d), &quandle_ring(&y, d), &m)?;
            let _ = write!(text, "ring over {tag}: {source} matrix {}", if ok { "is an isomorphism" } else { "is not an isomorphism" });
            json!({"domain": tag.to_string(), "method": source, "isomorphism": ok, "matrix": matrix_to_json(&d, &m)})
        } else if let DomainTag::PrimeField(p) = tag {
            let f = PrimeField::new(p)?;
            let opts = BruteForceOptions { budget, invertible_only: true };
            let found = ring_iso_brute_force(&quandle_ring(&x, f), &quandle_ring(&y, f), opts)?;
            let _ = write!(text, "ring over {tag}: {}", if found.is_some() { "isomorphism found" } else { "no isomorphism exists" });
            json!({
                "domain": tag.to_string(),
                "method": "search",
                "isomorphism": found.is_some(),
                "matrix": found.map(|m| matrix_to_json(&f, &m)),
            })
        } else {
            let _ = write!(text, "ring over {tag}: no matrix given and no search over this domain");
            json!({"domain": tag.to_string(), "method": "none", "isomorphism": null, "matrix": null})
        }
    });
    Ok(Outcome::ok(json!({"quandle_isomorphism": quandle_iso, "ring": ring}), text))
}

fn simplicity(s: Option<Simplicity>) -> &'static str {
    match s {
        Some(Simplicity::Simple) => "simple",
        Some(Simplicity::NotSimple) => "not simple",
        Some(Simplicity::Unknown) => "simplicity unknown",
        None => "zero",
    }
}

fn decompose(
    file: Option<&Path>,
    domain: &str,
    complex_dihedral: Option<usize>,
    tol: f64,
    spin_budget: u64,
) -> CliResult<Outcome> {
    if let Some(n) = complex_dihedral {
        let rep = complex_decomposition_check(n, tol)?;
        let mut text = format!("C[R_{n}]: {} summands, total dimension {}\n", rep.summands.len(), rep.total_dim);
        for s in &rep.summands {
            let _ = writeln!(text, "  {:<5} {:<8} m={} dim={} residual={:.2e}", s.orbit, s.kind, s.m, s.dim, s.max_residual);
        }
        let _ = write!(text, "verdict: {}", if rep.ok { "decomposition verified" } else { "FAILED" });
        let code = if rep.ok { 0 } else { EXIT_CHECK_FAILED };
        return Ok(Outcome { outputs: serde_json::to_value(&rep).expect("serializes"), text, code });
    }
    let file = file.ok_or_else(|| CliError::params("give a quandle file or --complex-dihedral N"))?;
    let x = load_quandle(file)?;
    let tag = parse_domain(domain)?;
    let rep = with_domain!(tag, |d| verify_simple_decomposition_with(&x, d, spin_budget)?);
    let mut text = format!("{} over {}:\n", file.display(), rep.domain);
    for o in &rep.orbits {
        let _ = writeln!(
            text,
            "  orbit {:?}: trivial dim {} ({}), standard dim {} ({}), permutation rank {}",
            o.orbit,
            o.trivial.dim,
            simplicity(o.trivial.simple),
            o.standard.dim,
            simplicity(o.standard.simple),
            o.permutation_rank
        );
        for note in [&o.trivial.note, &o.standard.note].into_iter().flatten() {
            let _ = writeln!(text, "    note: {note}");
        }
    }
    let verdict = match rep.verdict {
        Verdict::Simple => "direct sum of simple right ideals",
        Verdict::NotSimple => "not a direct sum of simple right ideals",
        Verdict::Inconclusive => "inconclusive",
    };
    let _ = write!(text, "verdict: {verdict}");
    Ok(Outcome::ok(serde_json::to_value(&rep).expect("serializes"), text))
}

fn verify_paper(fault: Option<super::Fault>) -> CliResult<Outcome> {
    let results = golden_suite(fault);
    let failed = results.iter().filter(|r| r.status == super::CheckStatus::Fail).count();
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{:<6} {:<36} {}", r.status.label(), r.id, r.detail);
    }
    let _ = write!(text, "{} checks, {} failed", results.len(), failed);
    let outputs = json!({"checks": results, "total": results.len(), "failed": failed});
    let code = if failed == 0 { 0 } else { EXIT_CHECK_FAILED };
    Ok(Outcome { outputs, text, code })
}
