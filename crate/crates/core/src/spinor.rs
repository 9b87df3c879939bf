//! The rank-one spinor tower: the two-dimensional module with even highest
//! weight vector, its 4x4 permuted R-matrix over the Gaussian rationals in
//! `t = q^{1/4}`, the Hecke-algebra representation `g_j -> i q^{3/4} R'_j`,
//! the (super)trace data, and the two-row Bratteli bookkeeping.
//!
//! The non-algebraic global phase of the R-matrix is factored out once and
//! for all; every relation below is phase-free.

use std::sync::Arc;

use crate::bmw::{BrattelliGraph, GraphKind};
use crate::graded::{
    coproduct_grouplike, coproduct_lowering, coproduct_raising, GradedOperator, GradedSpace,
};
use crate::roots::{Weight, YoungDiagram};
use crate::scalar::{Field, Ft, GaussianRational, LaurentPoly, ScalarError};

/// `i` as an element of the spinor field.
pub fn i_unit() -> Ft {
    Ft::constant(GaussianRational::i())
}

/// `t^k` (recall `t^4 = q`).
pub fn tpow(k: i64) -> Ft {
    Ft::gen_pow(k)
}

/// `q = t^4` as a spinor-field element.
pub fn q_of_t() -> Ft {
    tpow(4)
}

/// The two-dimensional irreducible module with even highest weight vector:
/// weights are stored doubled (`±1`) so the lattice stays integral.
pub struct SpinorModule {
    space: Arc<GradedSpace>,
    e: GradedOperator<Ft>,
    f: GradedOperator<Ft>,
    k: GradedOperator<Ft>,
    k_inv: GradedOperator<Ft>,
}

impl SpinorModule {
    pub fn new() -> Self {
        let space = GradedSpace::new(
            vec!["w+".into(), "w-".into()],
            vec![Weight::new(vec![1]), Weight::new(vec![-1])],
            vec![0, 1],
        );
        let it2 = i_unit().mul(&tpow(2));
        let it2_inv = it2.inv().unwrap();
        // K w± = i t^{±2} w±
        let mut k = GradedOperator::zero(space.clone(), space.clone(), 0);
        k.set(0, 0, it2.clone());
        k.set(1, 1, i_unit().mul(&tpow(-2)));
        // (i t^{±2})^{-1} = -i t^{∓2}
        let mut k_inv = GradedOperator::zero(space.clone(), space.clone(), 0);
        k_inv.set(0, 0, it2_inv);
        k_inv.set(1, 1, i_unit().neg().mul(&tpow(2)));
        // f w+ = w-
        let mut f = GradedOperator::zero(space.clone(), space.clone(), 1);
        f.set(1, 0, Ft::one());
        // e w- = c w+ forced by the graded commutator:
        // c = (K - K^{-1})/(q - q^{-1}) on w+ = i/(t^2 - t^{-2})
        let c = i_unit()
            .div(&tpow(2).sub(&tpow(-2)))
            .expect("t^2 - t^-2 nonzero");
        let mut e = GradedOperator::zero(space.clone(), space.clone(), 1);
        e.set(0, 1, c);
        SpinorModule {
            space,
            e,
            f,
            k,
            k_inv,
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn e(&self) -> &GradedOperator<Ft> {
        &self.e
    }

    pub fn f(&self) -> &GradedOperator<Ft> {
        &self.f
    }

    pub fn k(&self) -> &GradedOperator<Ft> {
        &self.k
    }

    pub fn k_inv(&self) -> &GradedOperator<Ft> {
        &self.k_inv
    }

    /// Coproduct action of a generator on the t-fold power.
    pub fn tensor_e(&self, strands: usize) -> GradedOperator<Ft> {
        coproduct_raising(&self.e, &self.k, strands)
    }

    pub fn tensor_f(&self, strands: usize) -> GradedOperator<Ft> {
        coproduct_lowering(&self.f, &self.k_inv, strands)
    }

    pub fn tensor_k(&self, strands: usize) -> GradedOperator<Ft> {
        coproduct_grouplike(&self.k, strands)
    }

    /// Quantum supertrace on the t-fold power: supertrace weighted by the
    /// grouplike `K^{(x) strands}` (the rank-one `K_{2 rho}` is `K` itself).
    pub fn str_q(&self, x: &GradedOperator<Ft>, strands: usize) -> Ft {
        let kt = self.tensor_k(strands);
        let w: Vec<Ft> = (0..kt.dim_domain()).map(|i| kt.entry(i, i)).collect();
        x.weighted_supertrace(&|i| w[i].clone())
    }

    /// `str_q(id) = i (t^2 - t^{-2})`; nonzero in the exact field, zero in
    /// the classical limit.
    pub fn sdim_q(&self) -> Ft {
        self.str_q(&GradedOperator::identity(self.space.clone()), 1)
    }
}

impl Default for SpinorModule {
    fn default() -> Self {
        Self::new()
    }
}

/// The phase-stripped 4x4 permuted R-matrix on the square of the spinor
/// module, with its inverse.
pub struct SpinorRCheck {
    matrix: GradedOperator<Ft>,
    inverse: GradedOperator<Ft>,
}

impl SpinorRCheck {
    /// Build from the module: the single truncated factor
    /// `1 + (q^{-1} - q)(e (x) f)`, the diagonal weight pairing
    /// `t^{ab} i^{(a+b)/2}` on doubled weights, then the graded permutation.
    pub fn new(m: &SpinorModule) -> Self {
        let space2 = GradedSpace::tensor_power(m.space(), 2);
        let id2 = GradedOperator::identity(space2.clone());
        let q = q_of_t();
        let x = GradedOperator::kron(&m.e, &m.f);
        let rtilde = id2.add(&x.scale(&q.pow(-1).sub(&q)));
        let mut pairing = GradedOperator::zero(space2.clone(), space2.clone(), 0);
        let d = m.space().dim();
        for a in 0..d {
            for b in 0..d {
                let wa = m.space().weight(a).coord(0);
                let wb = m.space().weight(b).coord(0);
                let phase = match (wa + wb) / 2 {
                    1 => i_unit(),
                    0 => Ft::one(),
                    -1 => i_unit().neg(),
                    _ => unreachable!(),
                };
                pairing.set(a * d + b, a * d + b, tpow(wa * wb).mul(&phase));
            }
        }
        let p = GradedOperator::graded_permutation(m.space(), m.space());
        let matrix = p.compose(&pairing.compose(&rtilde));
        let inverse = matrix.invert().expect("invertible");
        SpinorRCheck { matrix, inverse }
    }

    pub fn matrix(&self) -> &GradedOperator<Ft> {
        &self.matrix
    }

    pub fn inverse(&self) -> &GradedOperator<Ft> {
        &self.inverse
    }

    /// Eigenvalues `i t` and `i t^{-3}`.
    pub fn eigenvalues() -> [Ft; 2] {
        [i_unit().mul(&tpow(1)), i_unit().mul(&tpow(-3))]
    }

    pub fn braid(&self, m: &SpinorModule, j: usize, strands: usize) -> GradedOperator<Ft> {
        self.matrix.embed(m.space(), j, 2, strands)
    }

    pub fn braid_inv(&self, m: &SpinorModule, j: usize, strands: usize) -> GradedOperator<Ft> {
        self.inverse.embed(m.space(), j, 2, strands)
    }
}

/// The Hecke-algebra images `rho(g_j) = i q^{3/4} R'_j = i t^3 R'_j` on the
/// given number of strands; they satisfy the quadratic relation of the
/// parameter `-q` specialisation: `rho(g)^2 = (-q - 1) rho(g) - q`.
pub fn hecke_images(
    m: &SpinorModule,
    rc: &SpinorRCheck,
    strands: usize,
) -> Vec<GradedOperator<Ft>> {
    assert!(strands >= 2);
    let c = i_unit().mul(&tpow(3));
    (1..strands).map(|j| rc.braid(m, j, strands).scale(&c)).collect()
}

/// Markov-trace data for an operator on the spinor tensor power: the raw
/// quantum supertrace and, when the superdimension is invertible, the
/// normalised value `str_q(X)/sdim^t`.
pub struct SpinorTrace {
    pub raw: Ft,
    pub normalised: Option<Ft>,
}

pub fn spinor_markov_trace(
    m: &SpinorModule,
    x: &GradedOperator<Ft>,
    strands: usize,
) -> SpinorTrace {
    let raw = m.str_q(x, strands);
    let sdim = m.sdim_q();
    let normalised = sdim
        .pow(strands as i64)
        .inv()
        .ok()
        .map(|inv| raw.mul(&inv));
    SpinorTrace { raw, normalised }
}

/// Partial supertrace over the last strand with the `K`-weighting:
/// `(id (x) str)((id (x) K) R'^{±1})`.
pub fn spinor_partial_trace(
    m: &SpinorModule,
    op2: &GradedOperator<Ft>,
) -> GradedOperator<Ft> {
    let w: Vec<Ft> = (0..2).map(|i| m.k.entry(i, i)).collect();
    op2.partial_weighted_supertrace(m.space(), m.space(), &|i| w[i].clone())
}

/// Vertex decoration for the two-row spinor Bratteli graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorVertex {
    pub shape: YoungDiagram,
    /// Twice the spin: `mu_1 - mu_2`.
    pub spin2: i64,
    /// Superscript `+` when the level is 0 or 1 mod 4, `-` otherwise.
    pub sign_plus: bool,
    /// Parity-shift flag: odd second row.
    pub pi_flag: bool,
}

/// The two-row graph together with the sign/parity decoration of each vertex.
pub fn spinor_bratteli(levels: usize) -> (BrattelliGraph, Vec<Vec<SpinorVertex>>) {
    let g = BrattelliGraph::new(GraphKind::Spinor, levels);
    let mut labels = Vec::new();
    for level in 0..=levels {
        let sign_plus = level % 4 == 0 || level % 4 == 1;
        labels.push(
            g.vertices(level)
                .iter()
                .map(|d| SpinorVertex {
                    shape: d.clone(),
                    spin2: d.row(0) as i64 - d.row(1) as i64,
                    sign_plus,
                    pi_flag: d.row(1) % 2 == 1,
                })
                .collect(),
        );
    }
    (g, labels)
}

/// Numeric commutant dimension for the spinor tower at an exact Gaussian
/// sample `t0` (must not be 0 or a root of unity).
pub fn spinor_commutant_dim(strands: usize, t0: &GaussianRational) -> Result<usize, ScalarError> {
    let m = SpinorModule::new();
    let eval = |f: &Ft| f.evaluate(t0);
    let space = GradedSpace::tensor_power(m.space(), strands);
    let mut gens = Vec::new();
    for op in [m.tensor_e(strands), m.tensor_f(strands)] {
        gens.push(op.map_scalars(&eval, space.clone(), space.clone())?);
    }
    Ok(crate::centralizer::commutant_dimension(&space, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (SpinorModule, SpinorRCheck) {
        let m = SpinorModule::new();
        let rc = SpinorRCheck::new(&m);
        (m, rc)
    }

    #[test]
    fn module_relations() {
        let m = SpinorModule::new();
        // [e, f] = ef + fe = (K - K^{-1})/(q - q^{-1})
        let q = q_of_t();
        let lhs = m.e.compose(&m.f).add(&m.f.compose(&m.e));
        let rhs = m
            .k
            .sub(&m.k_inv)
            .scale(&q.sub(&q.pow(-1)).inv().unwrap());
        assert_eq!(lhs, rhs);
        // K e K^{-1} = q e, K f K^{-1} = q^{-1} f
        let conj = m.k.compose(&m.e).compose(&m.k_inv);
        assert_eq!(conj, m.e.scale(&q));
        let conj = m.k.compose(&m.f).compose(&m.k_inv);
        assert_eq!(conj, m.f.scale(&q.pow(-1).clone()));
        // f w+ = w-, K w+ = i t^2 w+
        assert_eq!(m.f.entry(1, 0), Ft::one());
        assert_eq!(m.k.entry(0, 0), i_unit().mul(&tpow(2)));
        for op in [&m.e, &m.f, &m.k] {
            op.validate_degree().unwrap();
        }
    }

    #[test]
    fn rcheck_matrix_entries_match_closed_form() {
        let (_, rc) = setup();
        let r = rc.matrix();
        // [[it, 0, 0, 0], [0, 0, t^-1, 0], [0, t^-1, i(t + t^-3), 0], [0,0,0,it]]
        let it = i_unit().mul(&tpow(1));
        assert_eq!(r.entry(0, 0), it);
        assert_eq!(r.entry(2, 1), tpow(-1));
        assert_eq!(r.entry(1, 2), tpow(-1));
        assert_eq!(r.entry(2, 2), i_unit().mul(&tpow(1).add(&tpow(-3))));
        assert_eq!(r.entry(3, 3), it);
        assert_eq!(r.nnz(), 5);
    }

    #[test]
    fn rcheck_intertwines_and_squares() {
        let (m, rc) = setup();
        // intertwining with the coproduct action
        for g in [
            m.tensor_e(2),
            m.tensor_f(2),
            m.tensor_k(2),
        ] {
            assert_eq!(rc.matrix().compose(&g), g.compose(rc.matrix()));
        }
        // quadratic relation (R' - it)(R' - it^{-3}) = 0
        let id = GradedOperator::identity(rc.matrix().domain().clone());
        let [ev1, ev2] = SpinorRCheck::eigenvalues();
        let prod = rc
            .matrix()
            .sub(&id.scale(&ev1))
            .compose(&rc.matrix().sub(&id.scale(&ev2)));
        assert!(prod.is_zero());
    }

    #[test]
    fn eigenprojection_ranks() {
        let (_, rc) = setup();
        let id = GradedOperator::identity(rc.matrix().domain().clone());
        let [ev1, ev2] = SpinorRCheck::eigenvalues();
        let p1 = rc
            .matrix()
            .sub(&id.scale(&ev2))
            .scale(&ev1.sub(&ev2).inv().unwrap());
        let p0 = rc
            .matrix()
            .sub(&id.scale(&ev1))
            .scale(&ev2.sub(&ev1).inv().unwrap());
        assert_eq!(p1.trace(), Ft::from_i64(3));
        assert_eq!(p0.trace(), Ft::from_i64(1));
        assert_eq!(p1.add(&p0), id);
    }

    #[test]
    fn hecke_quadratic_and_braid() {
        let (m, rc) = setup();
        let q = q_of_t();
        // two strands: quadratic
        let g = &hecke_images(&m, &rc, 2)[0];
        let id = GradedOperator::identity(g.domain().clone());
        let lhs = g.compose(g);
        let rhs = g
            .scale(&q.neg().sub(&Ft::one()))
            .add(&id.scale(&q.neg()));
        assert_eq!(lhs, rhs);
        // three strands: braid relation
        let gs = hecke_images(&m, &rc, 3);
        let lhs = gs[0].compose(&gs[1]).compose(&gs[0]);
        let rhs = gs[1].compose(&gs[0]).compose(&gs[1]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_trace_identity() {
        let (m, rc) = setup();
        let idv = GradedOperator::identity(m.space().clone());
        // (id (x) str)((id (x) K) R') = -q^{3/4} id = -t^3 id
        let got = spinor_partial_trace(&m, rc.matrix());
        assert_eq!(got, idv.scale(&tpow(3).neg()));
        let got = spinor_partial_trace(&m, rc.inverse());
        assert_eq!(got, idv.scale(&tpow(-3).neg()));
    }

    #[test]
    fn superdimension_and_trace() {
        let m = SpinorModule::new();
        // regression value: str_q(id) = i t^2 - i t^{-2}
        let want = i_unit().mul(&tpow(2).sub(&tpow(-2)));
        assert_eq!(m.sdim_q(), want);
        // conjugation symmetry of str_q on degree-0 operators
        let rc = SpinorRCheck::new(&m);
        let a = rc.matrix();
        let b = rc.inverse();
        assert_eq!(
            m.str_q(&a.compose(b), 2),
            m.str_q(&b.compose(a), 2)
        );
        // normalised trace exists in the exact field
        let tr = spinor_markov_trace(&m, &GradedOperator::identity(a.domain().clone()), 2);
        assert!(tr.normalised.unwrap().is_one());
    }

    #[test]
    fn bratteli_labels() {
        let (g, labels) = spinor_bratteli(3);
        // level 2: [1,1] -> Pi V^-_0, [2] -> V^-_1
        let l2 = &labels[2];
        assert_eq!(g.vertices(2).len(), 2);
        let v11 = l2.iter().find(|v| v.shape.rows() == [1, 1]).unwrap();
        assert!(v11.pi_flag && !v11.sign_plus && v11.spin2 == 0);
        let v2 = l2.iter().find(|v| v.shape.rows() == [2]).unwrap();
        assert!(!v2.pi_flag && !v2.sign_plus && v2.spin2 == 2);
        // level 3 path counts: 1 + 4 = 5
        let counts = g.path_counts(3);
        let total_sq: u64 = counts.values().map(|c| c * c).sum();
        assert_eq!(total_sq, 5);
    }

    #[test]
    fn spinor_commutant_matches_path_counts() {
        let t0 = GaussianRational::from_rational(<crate::scalar::Rational as Field>::from_i64(2));
        assert_eq!(spinor_commutant_dim(2, &t0).unwrap(), 2);
        assert_eq!(spinor_commutant_dim(3, &t0).unwrap(), 5);
    }
}
