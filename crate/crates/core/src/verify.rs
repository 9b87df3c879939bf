//! Identity suites: every named check runs an exact matrix identity and
//! reports pass/fail. The command-line `verify` subcommand and the
//! acceptance tests are both built on these.

use crate::bmw::{
    abstract_trace, matrix_unit_tables, q_lambda, BrattelliGraph, GraphKind, QVariant,
};
use crate::centralizer::{
    commutant_dim_from_paths, commutant_dim_oracle, markov_trace, path_projection_table,
};
use crate::graded::{FundamentalModule, Gen, GradedOperator, GradedSpace};
use crate::rmatrix::{
    build_tower, cap_idempotent, cap_maps, rcheck_eigenvalues, spectral_projectors,
};
use crate::roots::{dim_module, partitions, sdim_q, Weight};
use crate::scalar::{Field, Fq, Rational};
use crate::spinor::{hecke_images, q_of_t, spinor_partial_trace, SpinorModule, SpinorRCheck};

/// Outcome of one named identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            detail: None,
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: false,
            detail: Some(detail.into()),
        }
    }

    fn of(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail)
        }
    }
}

/// Cubic relation and coproduct intertwining of the permuted R-matrix.
pub fn suite_cubic(n: usize) -> Vec<CheckResult> {
    let (m, rc) = build_tower(n, Fq::gen());
    let mut out = Vec::new();
    let id = GradedOperator::identity(rc.matrix().domain().clone());
    let mut acc = id.clone();
    for ev in rcheck_eigenvalues(n, m.q()) {
        acc = acc.compose(&rc.matrix().sub(&id.scale(&ev)));
    }
    out.push(CheckResult::of(
        format!("cubic relation (R+q)(R-q^-1)(R-q^-2n) = 0, n={n}"),
        acc.is_zero(),
        "cubic product is nonzero",
    ));
    let mut ok = true;
    let mut bad = String::new();
    for g in Gen::all(n) {
        let dx = m.tensor_action(g, 2);
        if rc.matrix().compose(&dx) != dx.compose(rc.matrix()) {
            ok = false;
            bad = format!("{g:?}");
            break;
        }
    }
    out.push(CheckResult::of(
        format!("R-matrix commutes with the coproduct action, n={n}"),
        ok,
        format!("fails on generator {bad}"),
    ));
    out
}

/// Braid relation and far commutation on the t-th tensor power.
pub fn suite_braid(n: usize, t: usize) -> Vec<CheckResult> {
    let (m, rc) = build_tower(n, Fq::gen());
    let v = m.space();
    let mut out = Vec::new();
    for i in 1..t.saturating_sub(1) {
        let a = rc.braid(i, t, v);
        let b = rc.braid(i + 1, t, v);
        let lhs = a.compose(&b).compose(&a);
        let rhs = b.compose(&a).compose(&b);
        out.push(CheckResult::of(
            format!("braid relation R_{i} R_{} R_{i} on {t} strands, n={n}", i + 1),
            lhs == rhs,
            "sides differ",
        ));
    }
    for i in 1..t {
        for j in (i + 2)..t {
            let a = rc.braid(i, t, v);
            let b = rc.braid(j, t, v);
            out.push(CheckResult::of(
                format!("far commutation R_{i} R_{j} on {t} strands, n={n}"),
                a.compose(&b) == b.compose(&a),
                "sides differ",
            ));
        }
    }
    out
}

/// The full relation set of the braid/cap tower on t strands: cubic per
/// strand, the skein identity, cap absorption and hops, and the partial
/// quantum supertrace scalars.
pub fn suite_bmw(n: usize, t: usize) -> Vec<CheckResult> {
    let (m, rc) = build_tower(n, Fq::gen());
    let caps = cap_maps(&m).expect("caps");
    let v = m.space();
    let q = m.q().clone();
    let two_n = 2 * n as i64;
    let mut out = Vec::new();

    for i in 1..t {
        let r = rc.braid(i, t, v);
        let r_inv = rc.braid_inv(i, t, v);
        let e = cap_idempotent(&caps, v, i, t);
        let id = GradedOperator::identity(r.domain().clone());

        let mut acc = id.clone();
        for ev in rcheck_eigenvalues(n, &q) {
            acc = acc.compose(&r.sub(&id.scale(&ev)));
        }
        out.push(CheckResult::of(
            format!("cubic relation at strand {i} of {t}, n={n}"),
            acc.is_zero(),
            "nonzero",
        ));

        // -R + R^{-1} = (q - q^{-1})(1 - E)
        let lhs = r_inv.sub(&r);
        let rhs = id.sub(&e).scale(&q.sub(&q.pow(-1)));
        out.push(CheckResult::of(
            format!("skein identity at strand {i} of {t}, n={n}"),
            lhs == rhs,
            "sides differ",
        ));

        // E R^{±1} = R^{±1} E = q^{∓2n} E
        let want_plus = e.scale(&q.pow(-two_n));
        let want_minus = e.scale(&q.pow(two_n));
        out.push(CheckResult::of(
            format!("cap absorption E R = R E = q^-2n E at strand {i} of {t}, n={n}"),
            e.compose(&r) == want_plus
                && r.compose(&e) == want_plus
                && e.compose(&r_inv) == want_minus
                && r_inv.compose(&e) == want_minus,
            "absorption fails",
        ));

        // E_i R_{i-1}^{±1} E_i = q^{±2n} E_i
        if i >= 2 {
            let rm = rc.braid(i - 1, t, v);
            let rm_inv = rc.braid_inv(i - 1, t, v);
            let lhs_p = e.compose(&rm).compose(&e);
            let lhs_m = e.compose(&rm_inv).compose(&e);
            out.push(CheckResult::of(
                format!("cap hop E_{i} R_{}^{{±1}} E_{i} = q^{{±2n}} E_{i} on {t} strands, n={n}", i - 1),
                lhs_p == e.scale(&q.pow(two_n)) && lhs_m == e.scale(&q.pow(-two_n)),
                "hop fails",
            ));
        }
    }
    out
}

/// Partial supertrace scalar and the Markov factorisation property.
pub fn suite_trace(n: usize, t: usize) -> Vec<CheckResult> {
    let (m, rc) = build_tower(n, Fq::gen());
    let v = m.space();
    let two_n = 2 * n as i64;
    let mut out = Vec::new();

    // (id (x) str_q)(R^{±1}) = q^{±2n} id
    let idv = GradedOperator::identity(v.clone());
    let plus = m.str_q_partial_last(rc.matrix(), 2);
    let minus = m.str_q_partial_last(rc.inverse(), 2);
    out.push(CheckResult::of(
        format!("partial supertrace of R^(±1) is q^(±2n) id, n={n}"),
        plus == idv.scale(&Fq::gen_pow(two_n)) && minus == idv.scale(&Fq::gen_pow(-two_n)),
        "scalar mismatch",
    ));

    // trace equality psi(Upsilon(e_SS)) = Q_shape / x^level for all levels <= t
    let caps = cap_maps(&m).expect("caps");
    let tables = matrix_unit_tables(&m, &rc, &caps, t).expect("unit tables");
    let mut ok = true;
    let mut bad = String::new();
    for table in &tables {
        for (idx, path) in table.paths().iter().enumerate() {
            let psi = markov_trace(&m, table.projector(idx), table.level).expect("trace");
            let want = abstract_trace(path.shape(), table.level, n, m.q()).expect("closed form");
            if psi != want {
                ok = false;
                bad = format!("path {path}");
                break;
            }
        }
    }
    out.push(CheckResult::of(
        format!("normalised supertrace of diagonal units equals Q/x^t, n={n}, t<={t}"),
        ok,
        bad,
    ));

    // Markov factorisation psi(A R_{t-1} B) = psi(R_{t-1}) psi(A B) for
    // A, B words in the lower braid generators (deterministic word family).
    if t >= 3 {
        let words: Vec<Vec<i64>> = vec![
            vec![],
            vec![1],
            vec![-1],
            vec![1, 1],
            vec![1, -1, 1],
        ];
        let eval_word = |w: &[i64]| -> GradedOperator<Fq> {
            let mut x = GradedOperator::identity(GradedSpace::tensor_power(v, t));
            for &l in w {
                let i = l.unsigned_abs() as usize;
                let g = if l > 0 {
                    rc.braid(i, t, v)
                } else {
                    rc.braid_inv(i, t, v)
                };
                x = x.compose(&g);
            }
            x
        };
        let r_last = rc.braid(t - 1, t, v);
        let psi_r = markov_trace(&m, &r_last, t).expect("trace");
        let mut ok = true;
        let mut bad = String::new();
        'outer: for a in &words {
            for b in &words {
                let am = eval_word(a);
                let bm = eval_word(b);
                let lhs = markov_trace(&m, &am.compose(&r_last).compose(&bm), t).expect("trace");
                let rhs = psi_r.mul(&markov_trace(&m, &am.compose(&bm), t).expect("trace"));
                if lhs != rhs {
                    ok = false;
                    bad = format!("words {a:?}, {b:?}");
                    break 'outer;
                }
            }
        }
        out.push(CheckResult::of(
            format!("Markov factorisation over the last strand, n={n}, t={t}"),
            ok,
            bad,
        ));
    }
    out
}

/// Matrix-unit axioms, symbolically or at a numeric sample.
pub fn suite_units(n: usize, t: usize, q0: Option<&Rational>) -> Vec<CheckResult> {
    match q0 {
        None => {
            let (m, rc) = build_tower(n, Fq::gen());
            let caps = cap_maps(&m).expect("caps");
            let tables = matrix_unit_tables(&m, &rc, &caps, t).expect("unit tables");
            let res = crate::bmw::verify_unit_axioms(&tables[t - 1]);
            vec![CheckResult::of(
                format!("matrix-unit axioms (symbolic), n={n}, t={t}"),
                res.is_ok(),
                res.err().unwrap_or_default(),
            )]
        }
        Some(q0) => {
            let (m, rc) = build_tower(n, q0.clone());
            let caps = cap_maps(&m).expect("caps");
            let tables = matrix_unit_tables(&m, &rc, &caps, t).expect("unit tables");
            let res = crate::bmw::verify_unit_axioms(&tables[t - 1]);
            vec![CheckResult::of(
                format!("matrix-unit axioms at q0={q0}, n={n}, t={t}"),
                res.is_ok(),
                res.err().unwrap_or_default(),
            )]
        }
    }
}

/// Path projections coincide with the images of the diagonal units, and the
/// commutant dimension matches the path count.
pub fn suite_projections(n: usize, t: usize, q0: &Rational) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let (m, rc) = build_tower(n, Fq::gen());
    let caps = cap_maps(&m).expect("caps");
    let tables = matrix_unit_tables(&m, &rc, &caps, t).expect("unit tables");
    let table = &tables[t - 1];
    let projections = path_projection_table(&m, &rc, t).expect("projections");
    let mut ok = true;
    let mut bad = String::new();
    for (idx, path) in table.paths().iter().enumerate() {
        let starred = path.star_image(n);
        let Some(pp) = projections.iter().find(|p| p.path == starred) else {
            ok = false;
            bad = format!("no projection for {starred}");
            break;
        };
        if &pp.matrix != table.projector(idx) {
            ok = false;
            bad = format!("projection differs for {path}");
            break;
        }
    }
    out.push(CheckResult::of(
        format!("path projections equal diagonal matrix units, n={n}, t={t}"),
        ok,
        bad,
    ));

    let want = commutant_dim_from_paths(t, n) as usize;
    let got = commutant_dim_oracle(t, n, q0).expect("oracle");
    out.push(CheckResult::of(
        format!("commutant dimension oracle = path count {want}, n={n}, t={t}"),
        got == want,
        format!("oracle found {got}"),
    ));
    out
}

/// Q-identity and superdimension consistency.
pub fn suite_qpoly(n: usize, max_boxes: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut ok = true;
    let mut bad = String::new();
    for boxes in 0..=max_boxes {
        for lam in partitions(boxes) {
            if q_lambda(&lam, n, QVariant::NegQ2nQ) != q_lambda(&lam, n, QVariant::Q2nNegQ) {
                ok = false;
                bad = lam.to_string();
            }
        }
    }
    out.push(CheckResult::of(
        format!("Q(-q^2n, q) = Q(q^2n, -q) for all diagrams with <= {max_boxes} boxes, n={n}"),
        ok,
        bad,
    ));

    let m = FundamentalModule::new(n, Fq::gen());
    let direct = m.sdim_q();
    let formula = sdim_q(&Weight::eps(1, n), n).expect("sdim");
    let via_q = q_lambda(&crate::roots::YoungDiagram::new(vec![1]), n, QVariant::NegQ2nQ);
    out.push(CheckResult::of(
        format!("str_q(id_V) = closed form = Q_[1](-q^2n, q), n={n}"),
        direct == formula && formula == via_q,
        "superdimension routes disagree",
    ));
    out
}

/// Spectral data of the permuted R-matrix: eigenvalues and projector ranks.
pub fn suite_spectral(n: usize) -> Vec<CheckResult> {
    let (m, rc) = build_tower(n, Fq::gen());
    let projs = spectral_projectors(&m, &rc).expect("projectors");
    let mut out = Vec::new();
    let mut rank_sum = 0u128;
    let mut ok = true;
    let mut bad = String::new();
    for (wt, ev, p) in &projs {
        if rc.matrix().compose(p) != p.scale(ev) {
            ok = false;
            bad = format!("eigenvalue fails on {wt}");
        }
        let want = dim_module(wt, n);
        rank_sum += want;
        if p.trace() != Fq::from_i64(want as i64) {
            ok = false;
            bad = format!("rank of the {wt} projector is not {want}");
        }
    }
    let total = ((2 * n + 1) * (2 * n + 1)) as u128;
    out.push(CheckResult::of(
        format!("spectral projectors have module ranks summing to (2n+1)^2, n={n}"),
        ok && rank_sum == total,
        if bad.is_empty() {
            format!("ranks sum to {rank_sum}, want {total}")
        } else {
            bad
        },
    ));
    out
}

/// Spinor tower: Hecke relations, eigenprojection ranks, partial trace.
pub fn suite_hecke(strands: usize) -> Vec<CheckResult> {
    let m = SpinorModule::new();
    let rc = SpinorRCheck::new(&m);
    let q = q_of_t();
    let mut out = Vec::new();

    for t in 2..=strands {
        let gs = hecke_images(&m, &rc, t);
        let id = GradedOperator::identity(gs[0].domain().clone());
        let mut ok = true;
        let mut bad = String::new();
        for (j, g) in gs.iter().enumerate() {
            let lhs = g.compose(g);
            let rhs = g
                .scale(&q.neg().sub(&crate::scalar::Ft::one()))
                .add(&id.scale(&q.neg()));
            if lhs != rhs {
                ok = false;
                bad = format!("quadratic fails at strand {}", j + 1);
            }
        }
        for j in 0..gs.len().saturating_sub(1) {
            let lhs = gs[j].compose(&gs[j + 1]).compose(&gs[j]);
            let rhs = gs[j + 1].compose(&gs[j]).compose(&gs[j + 1]);
            if lhs != rhs {
                ok = false;
                bad = format!("braid fails at strand {}", j + 1);
            }
        }
        for j in 0..gs.len() {
            for k in (j + 2)..gs.len() {
                if gs[j].compose(&gs[k]) != gs[k].compose(&gs[j]) {
                    ok = false;
                    bad = format!("far commutation fails at {j},{k}");
                }
            }
        }
        out.push(CheckResult::of(
            format!("Hecke relations at parameter -q on {t} strands"),
            ok,
            bad,
        ));
    }

    // eigenprojection ranks 3 and 1 at two strands
    let id = GradedOperator::identity(rc.matrix().domain().clone());
    let [ev1, ev2] = SpinorRCheck::eigenvalues();
    let p1 = rc
        .matrix()
        .sub(&id.scale(&ev2))
        .scale(&ev1.sub(&ev2).inv().expect("distinct"));
    let p0 = rc
        .matrix()
        .sub(&id.scale(&ev1))
        .scale(&ev2.sub(&ev1).inv().expect("distinct"));
    out.push(CheckResult::of(
        "spinor eigenprojections have ranks 3 and 1",
        p1.trace() == crate::scalar::Ft::from_i64(3)
            && p0.trace() == crate::scalar::Ft::from_i64(1),
        "rank mismatch",
    ));

    let idv = GradedOperator::identity(m.space().clone());
    let got_p = spinor_partial_trace(&m, rc.matrix());
    let got_m = spinor_partial_trace(&m, rc.inverse());
    out.push(CheckResult::of(
        "spinor partial trace scalars are -q^(±3/4)",
        got_p == idv.scale(&crate::spinor::tpow(3).neg())
            && got_m == idv.scale(&crate::spinor::tpow(-3).neg()),
        "scalar mismatch",
    ));
    out
}

/// The Bratteli-graph consistency corner: quotient paths map onto
/// fundamental paths bijectively under the star map.
pub fn suite_graphs(n: usize, t: usize) -> Vec<CheckResult> {
    let gq = BrattelliGraph::new(GraphKind::BmwQuotient(n), t);
    let gf = BrattelliGraph::new(GraphKind::FundamentalModule(n), t);
    let pq = gq.paths(t);
    let pf = gf.paths(t);
    let mut images: Vec<_> = pq.iter().map(|p| p.star_image(n)).collect();
    images.sort();
    vec![CheckResult::of(
        format!("quotient paths biject with module paths under star, n={n}, t={t}"),
        images == pf,
        format!("{} vs {} paths", pq.len(), pf.len()),
    )]
}
