//! The Birman-Wenzl-Murakami side: the Young-diagram towers and their
//! Bratteli graphs, the weight function Q_lambda, formal algebra expressions
//! with their evaluation through g_i -> -R-check_i, the abstract trace, and
//! the Ram-Wenzl matrix-unit recursion specialised at r = -q^{2n}.

mod graph;
mod units;

pub use graph::{
    bmw_level_shapes, canonical_tableau_path, tableau_d, BrattelliGraph, GraphKind, Path,
};
pub use units::{matrix_unit_tables, verify_unit_axioms, MatrixUnitTable, TaggedOp, UnitsError};

use crate::graded::{FundamentalModule, GradedOperator, GradedSpace};
use crate::rmatrix::{cap_idempotent, CapMaps, RCheck};
use crate::roots::YoungDiagram;
use crate::scalar::{Field, Fq, ScalarError};

/// Which specialisation of the two-parameter weight function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QVariant {
    /// `Q_lambda(-q^{2n}, q)`
    NegQ2nQ,
    /// `Q_lambda(q^{2n}, -q)`
    Q2nNegQ,
}

/// The two-factor hook/diagonal product form of `Q_lambda(r, s)` with both
/// arguments given as field elements.
pub fn q_lambda_rs<F: Field>(lambda: &YoungDiagram, r: &F, s: &F) -> Result<F, ScalarError> {
    let r_inv = r.inv()?;
    let mut acc = F::one();
    let rows = lambda.num_rows();
    let cols = lambda.row(0);
    for i in 1..=rows {
        for j in 1..=cols.max(rows) {
            // box (i, j) present iff j <= lambda_i
            if j > lambda.row(i - 1) {
                continue;
            }
            let li = lambda.row(i - 1) as i64;
            let lj_col = lambda.col(j - 1) as i64;
            let h = li - i as i64 + lj_col - j as i64 + 1;
            let hook = s.pow(h).sub(&s.pow(-h));
            let num = if i == j {
                // r s^{l_j - l_j'} - r^{-1} s^{-l_j + l_j'} + s^{l_j + l_j' - 2j + 1} - s^{-l_j - l_j' + 2j - 1}
                let lj = lambda.row(j - 1) as i64;
                let a = r.mul(&s.pow(lj - lj_col));
                let b = r_inv.mul(&s.pow(-lj + lj_col));
                let e = lj + lj_col - 2 * j as i64 + 1;
                a.sub(&b).add(&s.pow(e)).sub(&s.pow(-e))
            } else {
                let d = if i < j {
                    lambda.row(i - 1) as i64 + lambda.row(j - 1) as i64 - i as i64 - j as i64 + 1
                } else {
                    -(lambda.col(i - 1) as i64) - lj_col + i as i64 + j as i64 - 1
                };
                r.mul(&s.pow(d)).sub(&r_inv.mul(&s.pow(-d)))
            };
            acc = acc.mul(&num.div(&hook)?);
        }
    }
    Ok(acc)
}

/// `Q_lambda` at the tower specialisation, symbolically over q.
pub fn q_lambda(lambda: &YoungDiagram, n: usize, variant: QVariant) -> Fq {
    let (r, s) = match variant {
        QVariant::NegQ2nQ => (Fq::gen_pow(2 * n as i64).neg(), Fq::gen()),
        QVariant::Q2nNegQ => (Fq::gen_pow(2 * n as i64), Fq::gen().neg()),
    };
    q_lambda_rs(lambda, &r, &s).expect("hooks are nonzero at generic q")
}

/// `Q_lambda(-q^{2n}, q)` over an arbitrary field with `q` given by value.
pub fn q_lambda_in<F: Field>(lambda: &YoungDiagram, n: usize, q: &F) -> Result<F, ScalarError> {
    let r = q.pow(2 * n as i64).neg();
    q_lambda_rs(lambda, &r, q)
}

/// `b_d(x) = x^d (1 - x)/(1 - x^d)`, the Hecke interpolation value at axial
/// distance `d != 0`.
pub fn b_d<F: Field>(d: i64, x: &F) -> Result<F, ScalarError> {
    assert!(d != 0, "b_d needs d != 0");
    let num = x.pow(d).mul(&F::one().sub(x));
    let den = F::one().sub(&x.pow(d));
    num.div(&den)
}

/// The closed form of the abstract trace on a diagonal matrix unit of shape
/// `lambda` at level `t`: `Q_lambda(-q^{2n}, q) / x^t` with
/// `x = (r - r^{-1})/(q - q^{-1}) + 1` at `r = -q^{2n}`.
pub fn abstract_trace<F: Field>(
    lambda: &YoungDiagram,
    t: usize,
    n: usize,
    q: &F,
) -> Result<F, ScalarError> {
    let x = q_lambda_in(&YoungDiagram::new(vec![1]), n, q)?;
    q_lambda_in(lambda, n, q)?.div(&x.pow(t as i64))
}

/// Formal expressions in the generators `g_i^{±1}`, `e_i` and scalars,
/// evaluable in any algebra that supplies their images.
#[derive(Clone, Debug)]
pub enum BmwExpr<F: Field> {
    One,
    Gen(usize),
    GenInv(usize),
    Cap(usize),
    Scalar(F),
    Sum(Vec<BmwExpr<F>>),
    Prod(Vec<BmwExpr<F>>),
    Scale(F, Box<BmwExpr<F>>),
}

impl<F: Field> BmwExpr<F> {
    pub fn gens(factors: &[i64]) -> Self {
        BmwExpr::Prod(
            factors
                .iter()
                .map(|&i| {
                    if i > 0 {
                        BmwExpr::Gen(i as usize)
                    } else {
                        BmwExpr::GenInv((-i) as usize)
                    }
                })
                .collect(),
        )
    }

    /// Rewrite every cap through `(q - q^{-1})(1 - e_i) = g_i - g_i^{-1}`.
    pub fn expand_caps(&self, q: &F) -> BmwExpr<F> {
        match self {
            BmwExpr::Cap(i) => {
                // e_i = 1 - (g_i - g_i^{-1})/(q - q^{-1})
                let c = q.sub(&q.pow(-1)).inv().expect("q - q^{-1} nonzero");
                BmwExpr::Sum(vec![
                    BmwExpr::One,
                    BmwExpr::Scale(c.neg(), Box::new(BmwExpr::Gen(*i))),
                    BmwExpr::Scale(c, Box::new(BmwExpr::GenInv(*i))),
                ])
            }
            BmwExpr::Sum(v) => BmwExpr::Sum(v.iter().map(|e| e.expand_caps(q)).collect()),
            BmwExpr::Prod(v) => BmwExpr::Prod(v.iter().map(|e| e.expand_caps(q)).collect()),
            BmwExpr::Scale(c, e) => BmwExpr::Scale(c.clone(), Box::new(e.expand_caps(q))),
            other => other.clone(),
        }
    }

    /// Largest generator index used.
    pub fn max_index(&self) -> usize {
        match self {
            BmwExpr::Gen(i) | BmwExpr::GenInv(i) | BmwExpr::Cap(i) => *i,
            BmwExpr::Sum(v) | BmwExpr::Prod(v) => {
                v.iter().map(BmwExpr::max_index).max().unwrap_or(0)
            }
            BmwExpr::Scale(_, e) => e.max_index(),
            _ => 0,
        }
    }
}

/// Images of the generators under the representation `g_i -> -R-check_i`,
/// `e_i -> E_i`, on the t-th tensor power.
pub struct UpsilonImages<F: Field> {
    pub t: usize,
    pub id: GradedOperator<F>,
    pub g: Vec<GradedOperator<F>>,
    pub g_inv: Vec<GradedOperator<F>>,
    pub e: Vec<GradedOperator<F>>,
}

impl<F: Field> UpsilonImages<F> {
    pub fn new(m: &FundamentalModule<F>, rc: &RCheck<F>, caps: &CapMaps<F>, t: usize) -> Self {
        assert!(t >= 1);
        let v = m.space();
        let id = GradedOperator::identity(GradedSpace::tensor_power(v, t));
        let mut g = Vec::new();
        let mut g_inv = Vec::new();
        let mut e = Vec::new();
        for i in 1..t {
            g.push(rc.braid(i, t, v).neg());
            g_inv.push(rc.braid_inv(i, t, v).neg());
            e.push(cap_idempotent(caps, v, i, t));
        }
        UpsilonImages {
            t,
            id,
            g,
            g_inv,
            e,
        }
    }

    pub fn eval(&self, expr: &BmwExpr<F>) -> GradedOperator<F> {
        match expr {
            BmwExpr::One => self.id.clone(),
            BmwExpr::Gen(i) => {
                assert!(*i < self.t, "generator index out of range");
                self.g[i - 1].clone()
            }
            BmwExpr::GenInv(i) => {
                assert!(*i < self.t, "generator index out of range");
                self.g_inv[i - 1].clone()
            }
            BmwExpr::Cap(i) => {
                assert!(*i < self.t, "generator index out of range");
                self.e[i - 1].clone()
            }
            BmwExpr::Scalar(c) => self.id.scale(c),
            BmwExpr::Sum(v) => {
                let mut acc = self.id.scale(&F::zero());
                for e in v {
                    acc = acc.add(&self.eval(e));
                }
                acc
            }
            BmwExpr::Prod(v) => {
                let mut acc = self.id.clone();
                for e in v {
                    acc = acc.compose(&self.eval(e));
                }
                acc
            }
            BmwExpr::Scale(c, e) => self.eval(e).scale(c),
        }
    }
}

/// The defining relations of `BW_t(r, q)` as expressions that must vanish
/// under any representation, with `r = -q^{2n}`.
pub fn bmw_defining_relations<F: Field>(t: usize, n: usize, q: &F) -> Vec<(String, BmwExpr<F>)> {
    use BmwExpr::*;
    let r = q.pow(2 * n as i64).neg();
    let r_inv = r.inv().expect("nonzero");
    let mut out: Vec<(String, BmwExpr<F>)> = Vec::new();
    for i in 1..t {
        for j in 1..t {
            if (i as i64 - j as i64).abs() > 1 {
                out.push((
                    format!("far commutation g_{i} g_{j} = g_{j} g_{i}"),
                    Sum(vec![
                        Prod(vec![Gen(i), Gen(j)]),
                        Scale(F::one().neg(), Box::new(Prod(vec![Gen(j), Gen(i)]))),
                    ]),
                ));
            }
        }
        if i + 1 < t {
            out.push((
                format!("braid relation g_{i} g_{} g_{i} = g_{} g_{i} g_{}", i + 1, i + 1, i + 1),
                Sum(vec![
                    Prod(vec![Gen(i), Gen(i + 1), Gen(i)]),
                    Scale(
                        F::one().neg(),
                        Box::new(Prod(vec![Gen(i + 1), Gen(i), Gen(i + 1)])),
                    ),
                ]),
            ));
        }
        // e_i g_i = r^{-1} e_i
        out.push((
            format!("cap absorption e_{i} g_{i} = r^-1 e_{i}"),
            Sum(vec![
                Prod(vec![Cap(i), Gen(i)]),
                Scale(r_inv.neg(), Box::new(Cap(i))),
            ]),
        ));
        // e_i g_{i-1}^{±1} e_i = r^{±1} e_i
        if i >= 2 {
            out.push((
                format!("cap hop e_{i} g_{} e_{i} = r e_{i}", i - 1),
                Sum(vec![
                    Prod(vec![Cap(i), Gen(i - 1), Cap(i)]),
                    Scale(r.neg(), Box::new(Cap(i))),
                ]),
            ));
            out.push((
                format!("cap hop e_{i} g_{}^-1 e_{i} = r^-1 e_{i}", i - 1),
                Sum(vec![
                    Prod(vec![Cap(i), GenInv(i - 1), Cap(i)]),
                    Scale(r_inv.neg(), Box::new(Cap(i))),
                ]),
            ));
        }
        // (q - q^{-1})(1 - e_i) = g_i - g_i^{-1}
        let c = q.sub(&q.pow(-1));
        out.push((
            format!("skein relation on strand {i}"),
            Sum(vec![
                Scale(c.clone(), Box::new(One)),
                Scale(c.neg(), Box::new(Cap(i))),
                Scale(F::one().neg(), Box::new(Gen(i))),
                GenInv(i),
            ]),
        ));
        // (g_i - r^{-1})(g_i + q^{-1})(g_i - q) = 0
        out.push((
            format!("cubic relation on strand {i}"),
            Prod(vec![
                Sum(vec![Gen(i), Scalar(r_inv.neg())]),
                Sum(vec![Gen(i), Scalar(q.pow(-1))]),
                Sum(vec![Gen(i), Scalar(q.neg())]),
            ]),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{build_tower, cap_maps, spectral_projectors};
    use crate::scalar::{qpow, Substitution};

    fn d(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec())
    }

    #[test]
    fn q_single_box_is_superdimension() {
        // Q_[1](-q^{2n}, q) = (r - r^{-1})/(q - q^{-1}) + 1 = sdim_q(V)
        for n in 1..=3usize {
            let got = q_lambda(&d(&[1]), n, QVariant::NegQ2nQ);
            let want = crate::roots::sdim_q(&crate::roots::Weight::eps(1, n), n).unwrap();
            assert_eq!(got, want, "n={n}");
        }
        // and the n = 1 closed form 1 - q - q^-1
        assert_eq!(
            q_lambda(&d(&[1]), 1, QVariant::NegQ2nQ),
            Fq::one().sub(&qpow(1)).sub(&qpow(-1))
        );
    }

    #[test]
    fn q_empty_diagram_is_one() {
        assert!(q_lambda(&YoungDiagram::empty(), 2, QVariant::NegQ2nQ).is_one());
    }

    #[test]
    fn q_two_variant_identity_examples() {
        // Q_lambda(-q^{2n}, q) = Q_lambda(q^{2n}, -q)
        for n in 1..=2usize {
            for boxes in 0..=4usize {
                for lam in crate::roots::partitions(boxes) {
                    assert_eq!(
                        q_lambda(&lam, n, QVariant::NegQ2nQ),
                        q_lambda(&lam, n, QVariant::Q2nNegQ),
                        "n={n} lambda={lam}"
                    );
                }
            }
        }
    }

    #[test]
    fn q_substitution_route_matches() {
        // the q -> -q substitution on Q(q^{2n}, q)-style data reproduces the
        // second variant
        let lam = d(&[2, 1]);
        let n = 2;
        let pos = q_lambda_rs(&lam, &Fq::gen_pow(2 * n as i64), &Fq::gen()).unwrap();
        let via_subst = pos.substitute(Substitution::Negate);
        assert_eq!(via_subst, q_lambda(&lam, n as usize, QVariant::Q2nNegQ));
    }

    #[test]
    fn b_d_closed_form() {
        // b_2(q) = q^2 (1-q)/(1-q^2) = q^2/(1+q)
        let got: Fq = b_d(2, &Fq::gen()).unwrap();
        let want = qpow(2).div(&Fq::one().add(&qpow(1))).unwrap();
        assert_eq!(got, want);
        // b_{-1} = -1, b_1 = q for any argument
        assert_eq!(b_d(-1, &Fq::gen()).unwrap(), Fq::from_i64(-1));
        assert_eq!(b_d(1, &Fq::gen()).unwrap(), Fq::gen());
    }

    #[test]
    fn abstract_trace_values() {
        // t = 1, shape [1]: Q_[1]/x = 1
        let q = Fq::gen();
        assert!(abstract_trace(&d(&[1]), 1, 1, &q).unwrap().is_one());
        // t = 2, shape empty, n = 1: 1/x^2
        let x = q_lambda(&d(&[1]), 1, QVariant::NegQ2nQ);
        assert_eq!(
            abstract_trace(&YoungDiagram::empty(), 2, 1, &q).unwrap(),
            x.pow(2).inv().unwrap()
        );
    }

    #[test]
    fn upsilon_respects_inverses_and_caps() {
        let (m, rc) = build_tower(1, Fq::gen());
        let caps = cap_maps(&m).unwrap();
        let ups = UpsilonImages::new(&m, &rc, &caps, 2);
        // g_1 g_1^{-1} = 1
        let e = BmwExpr::Prod(vec![BmwExpr::Gen(1), BmwExpr::GenInv(1)]);
        assert_eq!(ups.eval(&e), ups.id);
        // e_1 = sdim_q P[0]
        let projs = spectral_projectors(&m, &rc).unwrap();
        let want = projs[2].2.scale(&m.sdim_q());
        assert_eq!(ups.eval(&BmwExpr::Cap(1)), want);
        // the cap expansion through the skein relation matches E_1
        let expanded = BmwExpr::Cap(1).expand_caps(m.q());
        assert_eq!(ups.eval(&expanded), want);
    }

    #[test]
    fn defining_relations_vanish_under_upsilon() {
        for n in 1..=2usize {
            let (m, rc) = build_tower(n, Fq::gen());
            let caps = cap_maps(&m).unwrap();
            let t = 3;
            let ups = UpsilonImages::new(&m, &rc, &caps, t);
            for (name, expr) in bmw_defining_relations(t, n, m.q()) {
                let img = ups.eval(&expr);
                assert!(img.is_zero(), "n={n}: {name}");
            }
        }
    }
}
