//! Acceptance suite: every check is exact (zero tolerance); numeric checks
//! run over exact rationals at sample points. Each test prints one ledger
//! line; run with `--nocapture` to see them.

use std::time::Instant;

use ospq_core::bmw::{matrix_unit_tables, verify_unit_axioms};
use ospq_core::centralizer::{
    commutant_dim_from_paths, commutant_dim_oracle, link_invariant, markov_trace,
    path_projection_table,
};
use ospq_core::graded::GradedSpace;
use ospq_core::rmatrix::{build_tower, cap_maps};
use ospq_core::scalar::{Field, Fq, Rational};
use ospq_core::verify::{
    suite_bmw, suite_braid, suite_cubic, suite_hecke, suite_projections, suite_qpoly,
    suite_spectral, suite_trace, suite_units, CheckResult,
};
use ospq_core::GradedOperator;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: &str, results: &[CheckResult], started: Instant, budget_secs: Option<u64>) {
    let elapsed = started.elapsed();
    let all_pass = results.iter().all(|r| r.pass);
    println!(
        "acceptance {criterion}: {} ({} checks, {:.2?})",
        if all_pass { "PASS" } else { "FAIL" },
        results.len(),
        elapsed
    );
    for r in results {
        if !r.pass {
            println!("  FAILED: {} — {}", r.name, r.detail.clone().unwrap_or_default());
        }
    }
    assert!(all_pass, "{criterion} has failing checks");
    if let Some(limit) = budget_secs {
        assert!(
            elapsed.as_secs() < limit,
            "{criterion} exceeded the {limit}s budget ({elapsed:.2?})"
        );
    }
}

#[test]
fn criterion_01_cubic_relation() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        results.extend(suite_cubic(n));
    }
    report("01 cubic relation n=1..3", &results, started, Some(10));
}

#[test]
fn criterion_02_braid_and_far_commutation() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=2 {
        for t in [3, 4] {
            results.extend(suite_braid(n, t));
        }
    }
    report("02 braid relations t=3,4 n=1,2", &results, started, Some(60));
}

#[test]
fn criterion_03_full_bmw_relation_suite() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=2 {
        for t in 2..=4 {
            results.extend(suite_bmw(n, t));
        }
    }
    report("03 full skein/cap suite t<=4 n=1,2", &results, started, Some(120));
}

#[test]
fn criterion_04_intertwining() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        let (m, rc) = build_tower(n, Fq::gen());
        let mut ok = true;
        for g in ospq_core::Gen::all(n) {
            let dx = m.tensor_action(g, 2);
            if rc.matrix().compose(&dx) != dx.compose(rc.matrix()) {
                ok = false;
            }
        }
        results.push(CheckResult {
            name: format!("R-matrix centralises the coproduct action, n={n}"),
            pass: ok,
            detail: None,
        });
    }
    report("04 intertwining n=1..3", &results, started, None);
}

#[test]
fn criterion_05_spectral_data() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        results.extend(suite_spectral(n));
    }
    report("05 spectral eigenvalues and ranks n=1..3", &results, started, None);
}

#[test]
fn criterion_06_partial_trace_and_markov() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        // only the kilo scalar for n=3 (the unit tables there are out of scope)
        let (m, rc) = build_tower(n, Fq::gen());
        let idv = GradedOperator::identity(m.space().clone());
        let two_n = 2 * n as i64;
        let ok = m.str_q_partial_last(rc.matrix(), 2) == idv.scale(&Fq::gen_pow(two_n))
            && m.str_q_partial_last(rc.inverse(), 2) == idv.scale(&Fq::gen_pow(-two_n));
        results.push(CheckResult {
            name: format!("partial supertrace scalars q^(±2n), n={n}"),
            pass: ok,
            detail: None,
        });
    }
    // Markov property on random centraliser pairs, n=1, t=3
    let (m, rc) = build_tower(1, Fq::gen());
    let v = m.space();
    let t = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let r_last = rc.braid(t - 1, t, v);
    let psi_r = markov_trace(&m, &r_last, t).unwrap();
    let mut ok = true;
    for _ in 0..20 {
        let word = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..4usize);
            let mut x = GradedOperator::identity(GradedSpace::tensor_power(v, t));
            for _ in 0..len {
                let g = if rng.gen_bool(0.5) {
                    rc.braid(1, t, v)
                } else {
                    rc.braid_inv(1, t, v)
                };
                x = x.compose(&g);
            }
            x
        };
        let a = word(&mut rng);
        let b = word(&mut rng);
        let lhs = markov_trace(&m, &a.compose(&r_last).compose(&b), t).unwrap();
        let rhs = psi_r.mul(&markov_trace(&m, &a.compose(&b), t).unwrap());
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    results.push(CheckResult {
        name: "Markov factorisation on random centraliser pairs, n=1, t=3".into(),
        pass: ok,
        detail: None,
    });
    report("06 partial trace and Markov property", &results, started, None);
}

#[test]
fn criterion_07_q_identity() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        results.extend(suite_qpoly(n, 6));
    }
    report("07 Q-identity up to 6 boxes n=1..3", &results, started, Some(10));
}

#[test]
fn criterion_08_matrix_unit_axioms() {
    let started = Instant::now();
    let mut results = Vec::new();
    for t in 1..=4 {
        results.extend(suite_units(1, t, None));
    }
    for t in 1..=3 {
        results.extend(suite_units(2, t, None));
    }
    let q0 = <Rational as Field>::from_i64(2);
    results.extend(suite_units(2, 4, Some(&q0)));
    report("08 matrix-unit axioms", &results, started, Some(600));
}

#[test]
fn criterion_09_trace_equality() {
    let started = Instant::now();
    let results = suite_trace(1, 4);
    report("09 trace equality n=1 t<=4", &results, started, None);
}

#[test]
fn criterion_10_commutant_dimension() {
    let started = Instant::now();
    let mut results = Vec::new();
    let q0 = <Rational as Field>::from_i64(2);
    let expected: &[(usize, usize, usize)] = &[
        (2, 1, 3),
        (3, 1, 15),
        (4, 1, 91),
        (2, 2, 3),
        (3, 2, 15),
    ];
    for &(t, n, want) in expected {
        let from_paths = commutant_dim_from_paths(t, n) as usize;
        let from_oracle = commutant_dim_oracle(t, n, &q0).unwrap();
        results.push(CheckResult {
            name: format!("commutant dimension t={t} n={n} equals {want}"),
            pass: from_paths == want && from_oracle == want,
            detail: Some(format!("paths {from_paths}, oracle {from_oracle}")),
        });
    }
    report("10 commutant dimension oracle", &results, started, None);
}

#[test]
fn criterion_11_path_projection_coincidence() {
    let started = Instant::now();
    let q0 = <Rational as Field>::from_i64(2);
    let mut results = Vec::new();
    for t in 1..=3 {
        results.extend(suite_projections(1, t, &q0));
    }
    report("11 path projections = diagonal units n=1 t<=3", &results, started, None);
}

#[test]
fn criterion_12_superdimension_consistency() {
    let started = Instant::now();
    let mut results = Vec::new();
    for n in 1..=3 {
        // the second check inside suite_qpoly is the consistency statement
        results.extend(suite_qpoly(n, 1));
    }
    report("12 superdimension consistency n=1..3", &results, started, None);
}

#[test]
fn criterion_13_spinor_hecke() {
    let started = Instant::now();
    let results = suite_hecke(4);
    report("13 spinor Hecke tower t<=4", &results, started, None);
}

#[test]
fn criterion_14_link_evaluator() {
    let started = Instant::now();
    let mut results = Vec::new();
    // conjugation invariance on 50 random word pairs, t=3, n=1
    let (m, rc) = build_tower(1, Fq::gen());
    let v = m.space();
    let t = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let eval = |word: &[i64]| {
        let mut x = GradedOperator::identity(GradedSpace::tensor_power(v, t));
        for &l in word {
            let i = l.unsigned_abs() as usize;
            let g = if l > 0 {
                rc.braid(i, t, v).neg()
            } else {
                rc.braid_inv(i, t, v).neg()
            };
            x = x.compose(&g);
        }
        x
    };
    let mut ok = true;
    for _ in 0..50 {
        let rand_word = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..rng.gen_range(1..4usize))
                .map(|_| {
                    let i = rng.gen_range(1..=2i64);
                    if rng.gen_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect()
        };
        let beta = rand_word(&mut rng);
        let gamma = rand_word(&mut rng);
        let bg = eval(&beta).compose(&eval(&gamma));
        let gb = eval(&gamma).compose(&eval(&beta));
        if markov_trace(&m, &bg, t).unwrap() != markov_trace(&m, &gb, t).unwrap() {
            ok = false;
            break;
        }
    }
    results.push(CheckResult {
        name: "trace is conjugation invariant on 50 random pairs".into(),
        pass: ok,
        detail: None,
    });
    // pinned link values
    let unknot = link_invariant(&[1], 2, 1, false).unwrap();
    let sdim = ospq_core::roots::sdim_q(&ospq_core::Weight::eps(1, 1), 1).unwrap();
    results.push(CheckResult {
        name: "single crossing closure evaluates to -q^2/sdim".into(),
        pass: unknot == Fq::gen_pow(2).neg().div(&sdim).unwrap(),
        detail: None,
    });
    results.push(CheckResult {
        name: "empty word evaluates to 1".into(),
        pass: link_invariant(&[], 3, 1, false).unwrap().is_one(),
        detail: None,
    });
    report("14 link evaluator t=3 n=1", &results, started, None);
}

/// Completeness of the mixed family: path projections as diagonal units plus
/// the off-diagonal intertwiners satisfy the unit axioms (n=1, t<=4 via the
/// unit tables; the t=4 table doubles as the criterion-8 workload, so here we
/// pin the identification at t=3 where projections are also built directly).
#[test]
fn criterion_11b_mixed_family_at_t3() {
    let started = Instant::now();
    let (m, rc) = build_tower(1, Fq::gen());
    let caps = cap_maps(&m).unwrap();
    let tables = matrix_unit_tables(&m, &rc, &caps, 3).unwrap();
    let table = &tables[2];
    let projections = path_projection_table(&m, &rc, 3).unwrap();
    // replace every diagonal unit by the independently built projection and
    // re-check the axioms
    let mut ok = verify_unit_axioms(table).is_ok();
    for (idx, path) in table.paths().iter().enumerate() {
        let starred = path.star_image(1);
        let pp = projections.iter().find(|p| p.path == starred).unwrap();
        if &pp.matrix != table.projector(idx) {
            ok = false;
        }
    }
    let results = vec![CheckResult {
        name: "mixed projector/intertwiner family satisfies the axioms".into(),
        pass: ok,
        detail: None,
    }];
    report("11b mixed family t=3 n=1", &results, started, None);
}
