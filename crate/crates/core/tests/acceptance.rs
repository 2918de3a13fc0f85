//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL`
//! line; criteria marked non-gating print their findings and never fail.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use quandlekit::dihedral::{
    appendix_table, check_reference_cells, column_periodicity, complex_decomposition_check, delta_series_shapes,
    reference_cells_r10, reference_cells_r8, verify_appendix_formulas, DEFAULT_TOLERANCE,
};
use quandlekit::lattice::normal_form::{determinant, hermite_normal_form, int_matrix, mat_mul, smith_normal_form};
use quandlekit::lattice::{
    coset_torsion_counts, quotient_shape, verify_simple_decomposition, AbelianGroupShape, DeltaVariant, Submodule,
    Verdict,
};
use quandlekit::quandle::{char0_ring_twins, char3_ring_twins, dihedral_quandle, trivial_quandle, two_orbit_order3};
use quandlekit::ring::{
    char0_twin_matrix, char3_twin_matrix, generalized_counterexample, is_ring_isomorphism, matrix_from_i64,
    orbit_sum_annihilates, point_ring_sum, power_assoc_witness, quandle_ring, right_annihilator_count,
    ring_iso_brute_force, BruteForceOptions, CoefficientSearch, Integers, PrimeField, Rationals,
};
use quandlekit::symmetry::{
    enumerate_quandles, is_left_2transitive, is_right_orbit_2transitive, quandle_polynomial, quandles_isomorphic,
    EnumerationOptions, Term,
};
use quandlekit::Quandle;

fn verdict(criterion: &str, ok: bool, detail: &str) {
    println!("{} criterion {criterion}: {detail}", if ok { "PASS" } else { "FAIL" });
}

fn gate(criterion: &str, ok: bool, detail: String) {
    verdict(criterion, ok, &detail);
    assert!(ok, "criterion {criterion}: {detail}");
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

fn classes(n: usize) -> Vec<Quandle> {
    enumerate_quandles(n, EnumerationOptions::default()).unwrap()
}

fn up_to_5() -> Vec<Quandle> {
    (1..=5).flat_map(classes).collect()
}

fn table1_row(n: usize) -> (usize, usize, usize) {
    let cls = classes(n);
    let right = cls.iter().filter(|x| is_right_orbit_2transitive(x)).count();
    let left = cls.iter().filter(|x| is_left_2transitive(x).unwrap()).count();
    (cls.len(), right, left)
}

#[test]
fn criterion_01_enumeration_counts() {
    let start = Instant::now();
    let rows: Vec<_> = [3, 4, 5].map(|n| (n, table1_row(n))).into();
    let expected = [(3, 3, 2), (7, 6, 3), (22, 16, 7)];
    let timely = within(start, Duration::from_secs(30));

    let stretch_start = Instant::now();
    let six = table1_row(6);
    let stretch_ok = six == (73, 42, 14) && within(stretch_start, Duration::from_secs(600));
    println!(
        "{} criterion 1 (stretch, non-gating): n=6 -> {six:?}, published (73, 42, 14), {:.1?}",
        if stretch_ok { "PASS" } else { "FAIL" },
        stretch_start.elapsed()
    );

    let ok = rows.iter().zip(expected).all(|((_, got), want)| *got == want) && timely;
    let detail = rows
        .iter()
        .zip(expected)
        .map(|((n, got), want)| format!("n={n} {got:?} vs {want:?}"))
        .collect::<Vec<_>>()
        .join("; ");
    gate("1", ok, format!("{detail}; {:.1?}", start.elapsed()));
}

#[test]
fn criterion_02_power_associativity() {
    let start = Instant::now();
    let mut mismatches = 0;
    let all = up_to_5();
    for x in &all {
        let w = power_assoc_witness(x, Rationals, &CoefficientSearch::default()).unwrap();
        if w.is_some() == x.is_trivial() {
            mismatches += 1;
        }
    }
    let ok = mismatches == 0 && within(start, Duration::from_secs(60));
    gate("2", ok, format!("{} quandles of order ≤ 5, {mismatches} mismatches, {:.1?}", all.len(), start.elapsed()));
}

#[test]
fn criterion_03_odd_filtration() {
    let start = Instant::now();
    let mut ok = true;
    let mut out = Vec::new();
    for n in [3usize, 5, 7, 9] {
        let s = delta_series_shapes(n, 3, DeltaVariant::default()).unwrap();
        ok &= s.iter().all(|d| d.shape == AbelianGroupShape::cyclic(n as u64));
        out.push(format!("n={n}: {}", s.iter().map(|d| d.shape.to_string()).collect::<Vec<_>>().join(", ")));
    }
    ok &= within(start, Duration::from_secs(60));
    gate("3", ok, format!("{}; {:.1?}", out.join("; "), start.elapsed()));
}

#[test]
fn criterion_04_even_first_quotient() {
    let start = Instant::now();
    let mut ok = true;
    let mut out = Vec::new();
    for n in [4usize, 6, 8, 10] {
        let s = delta_series_shapes(n, 1, DeltaVariant::default()).unwrap();
        ok &= s[0].shape == AbelianGroupShape::new(1, &[n as u64 / 2]);
        out.push(format!("n={n}: {}", s[0].shape));
    }
    ok &= within(start, Duration::from_secs(30));
    gate("4", ok, format!("{}; {:.1?}", out.join("; "), start.elapsed()));
}

#[test]
fn criterion_05_even_higher_quotients_reported() {
    let mut out = Vec::new();
    let mut all_match = true;
    for n in [4usize, 6, 8] {
        for v in [DeltaVariant::AllBracketings, DeltaVariant::LeftNormed] {
            let s = delta_series_shapes(n, 3, v).unwrap();
            for d in &s[1..] {
                let order = d.shape.order();
                all_match &= order == Some(BigInt::from(n));
                let order = order.map_or("infinite".to_string(), |o| o.to_string());
                out.push(format!("n={n} k={} {}: {} (order {order})", d.k, v.name(), d.shape));
            }
        }
    }
    println!(
        "{} criterion 5 (non-gating, exploratory): {}",
        if all_match { "PASS" } else { "FAIL" },
        out.join("; ")
    );
}

#[test]
fn criterion_06_counterexample_matrices() {
    let start = Instant::now();
    let f3 = PrimeField::new(3).unwrap();
    let (x1, y1) = char3_ring_twins();
    let m1 = matrix_from_i64(&f3, &char3_twin_matrix());
    let iso1 = is_ring_isomorphism(&quandle_ring(&x1, f3), &quandle_ring(&y1, f3), &m1).unwrap();
    let (x2, y2) = char0_ring_twins();
    let m2 = matrix_from_i64(&Rationals, &char0_twin_matrix());
    let iso2 = is_ring_isomorphism(&quandle_ring(&x2, Rationals), &quandle_ring(&y2, Rationals), &m2).unwrap();
    let q1 = quandles_isomorphic(&x1, &y1).unwrap().is_none();
    let q2 = quandles_isomorphic(&x2, &y2).unwrap().is_none();
    let gen: Vec<bool> =
        [(6, 5), (12, 11)].iter().map(|&(n, p)| generalized_counterexample(n, p).unwrap().verified).collect();
    let ok = iso1 && iso2 && q1 && q2 && gen.iter().all(|&g| g) && within(start, Duration::from_secs(10));
    gate(
        "6",
        ok,
        format!(
            "ring isos {iso1}/{iso2}, quandles non-isomorphic {q1}/{q2}, generalized {gen:?}, {:.1?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_07_quandle_polynomials() {
    let (x, y) = char0_ring_twins();
    let sorted = |raw: &[(usize, usize, usize)]| {
        let mut t: Vec<Term> = raw.iter().map(|&(r, c, mult)| Term { r, c, mult }).collect();
        t.sort();
        t
    };
    // s^7(t^7+t^5+t^3) + 2s^6t^7 + 2s^5t^7 and t^7(4s^6+s^7) + 2t^5s^7
    let px = sorted(&[(7, 7, 1), (7, 5, 1), (7, 3, 1), (6, 7, 2), (5, 7, 2)]);
    let py = sorted(&[(6, 7, 4), (7, 7, 1), (7, 5, 2)]);
    let (qx, qy) = (quandle_polynomial(&x), quandle_polynomial(&y));
    gate("7", qx.terms() == px && qy.terms() == py, format!("qp_X = {qx}; qp_Y = {qy}"));
}

#[test]
fn criterion_08_zero_columns() {
    let cases = [
        ("trivial(3)", trivial_quandle(3).unwrap(), 2u32),
        ("{0,1}⊔{2}", two_orbit_order3(), 1),
        ("R_3", dihedral_quandle(3).unwrap(), 0),
    ];
    let mut ok = true;
    let mut out = Vec::new();
    for (name, q, e) in &cases {
        for p in [2u64, 5, 7] {
            let c = right_annihilator_count(q, p).unwrap();
            ok &= c == BigInt::from(p).pow(*e);
            out.push(format!("{name} p={p}: {c}"));
        }
    }
    let p3: Vec<String> =
        cases.iter().map(|(name, q, _)| format!("{name}: {}", right_annihilator_count(q, 3).unwrap())).collect();
    gate("8", ok, format!("{}; p=3 reported: {}", out.join(", "), p3.join(", ")));
}

#[test]
fn criterion_09_direct_sum_not_isomorphic() {
    let start = Instant::now();
    let mut out = Vec::new();
    let mut ok = true;
    for p in [2u64, 3] {
        let f = PrimeField::new(p).unwrap();
        let found = ring_iso_brute_force(
            &point_ring_sum(3, f).unwrap(),
            &quandle_ring(&trivial_quandle(3).unwrap(), f),
            BruteForceOptions::default(),
        )
        .unwrap();
        ok &= found.is_none();
        out.push(format!("F{p}: {}", if found.is_none() { "none" } else { "found" }));
    }
    ok &= within(start, Duration::from_secs(60));
    gate("9", ok, format!("{}; {:.1?}", out.join(", "), start.elapsed()));
}

#[test]
fn criterion_10_appendix_closed_forms() {
    let mut ok = true;
    let mut out = Vec::new();
    for n in [8, 10] {
        let f = verify_appendix_formulas(n).unwrap();
        let cells = if n == 8 { reference_cells_r8() } else { reference_cells_r10() };
        let c = check_reference_cells(n, &cells).unwrap();
        ok &= f.ok() && c.ok();
        out.push(format!(
            "n={n}: {} formula instances ({} bad), {} printed cells ({} bad)",
            f.checked,
            f.mismatches.len(),
            c.checked,
            c.mismatches.len()
        ));
    }
    let periodic = column_periodicity(8).unwrap() && column_periodicity(10).unwrap();
    let half_zero = appendix_table(10).unwrap().iter().all(|row| row[4].is_zero());
    ok &= periodic && half_zero;
    gate("10", ok, format!("{}; periodicity {periodic}", out.join("; ")));
}

#[test]
fn criterion_11_orbit_sum_zero_divisors() {
    let relevant: Vec<Quandle> = up_to_5()
        .into_iter()
        .filter(|x| {
            let orbits = x.orbits();
            orbits.len() >= 2 && orbits.iter().any(|o| o.len() >= 2)
        })
        .collect();
    let bad = relevant.iter().filter(|x| !orbit_sum_annihilates(x, Integers)).count();
    gate("11", bad == 0 && !relevant.is_empty(), format!("{} quandles checked, {bad} failures", relevant.len()));
}

#[test]
fn criterion_12_decompositions() {
    let f5 = PrimeField::new(5).unwrap();
    let mut certified = 0;
    let mut failed = Vec::new();
    for n in 1..=4 {
        for x in classes(n).iter().filter(|x| is_right_orbit_2transitive(x)) {
            if x.orbits().iter().any(|o| o.len() % 5 == 0) {
                continue;
            }
            let rep = verify_simple_decomposition(x, f5).unwrap();
            if rep.verdict == Verdict::Simple {
                certified += 1;
            } else {
                failed.push(x.to_json());
            }
        }
    }
    let mut residuals = Vec::new();
    let mut complex_ok = true;
    for n in [3, 5, 6, 8] {
        let rep = complex_decomposition_check(n, DEFAULT_TOLERANCE).unwrap();
        complex_ok &= rep.ok;
        residuals.push(format!("n={n}: {:.1e}", rep.max_residual));
    }
    gate(
        "12",
        failed.is_empty() && complex_ok,
        format!("{certified} certified simple over F5, {} not; residuals {}", failed.len(), residuals.join(", ")),
    );
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r))
}

fn square_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|k| proptest::collection::vec(proptest::collection::vec(-2i64..=2, k), k))
}

#[test]
fn criterion_13_normal_form_oracles() {
    const CASES: u32 = 600;
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut results = Vec::new();

    let mut runner = TestRunner::new(config.clone());
    results.push(runner.run(&matrix_strategy(), |m| {
        let a = int_matrix(&m);
        let s = smith_normal_form(&a, true);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert_eq!(mat_mul(&mat_mul(&u, &a), &v), s.diagonal.clone());
        prop_assert!(determinant(&u).abs().is_one() && determinant(&v).abs().is_one());
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        Ok(())
    }));

    let mut runner = TestRunner::new(config.clone());
    results.push(runner.run(&matrix_strategy(), |m| {
        let h = hermite_normal_form(&int_matrix(&m));
        prop_assert_eq!(hermite_normal_form(&h), h);
        Ok(())
    }));

    let mut runner = TestRunner::new(config);
    results.push(runner.run(&square_strategy(), |m| {
        let k = m.len();
        let Some((order, _)) = coset_torsion_counts(&m) else {
            return Ok(());
        };
        let full = Submodule::full(Integers, k);
        let sub = Submodule::new(Integers, k, int_matrix(&m)).unwrap();
        let shape = quotient_shape(&full, &sub).unwrap();
        prop_assert_eq!(shape.free_rank, 0);
        prop_assert_eq!(shape.torsion_order(), order);
        Ok(())
    }));

    let ok = results.iter().all(Result::is_ok);
    let failures: Vec<String> = results.iter().filter_map(|r| r.as_ref().err().map(|e| e.to_string())).collect();
    gate(
        "13",
        ok,
        format!("3 properties × {CASES} cases (SNF transforms, HNF idempotence, coset-count quotients) {}", if ok { "hold".into() } else { failures.join("; ") }),
    );
}
