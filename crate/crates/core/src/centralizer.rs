//! The centraliser of the tensor-power action: branching projections built
//! from inverse braid chains, path projections along the fundamental-module
//! Bratteli graph, an independent commutant-dimension oracle by exact
//! nullspace computation, the Markov trace, and braid-word link evaluation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bmw::{BrattelliGraph, GraphKind, Path};
use crate::graded::{FundamentalModule, Gen, GradedOperator, GradedSpace};
use crate::rmatrix::RCheck;
use crate::roots::{bilinear_form, two_rho, Weight, YoungDiagram};
use crate::scalar::{Field, Fq, Rational, ScalarError};

/// Projection from `V^{(x) t}` onto one irreducible summand, labelled by its
/// Bratteli path.
pub struct PathProjection<F: Field> {
    pub path: Path,
    pub matrix: GradedOperator<F>,
}

/// The inverse-braid sandwich realising the action of the ribbon element's
/// coproduct on `V^{(x) t}`:
/// `R-check_{t-1}^{-1} ... R-check_1^{-1} R-check_1^{-1} ... R-check_{t-1}^{-1}`.
fn ribbon_chain<F: Field>(m: &FundamentalModule<F>, rc: &RCheck<F>, t: usize) -> GradedOperator<F> {
    let v = m.space();
    let mut down = rc.braid_inv(1, t, v);
    for i in 2..t {
        down = rc.braid_inv(i, t, v).compose(&down);
    }
    let mut up = rc.braid_inv(1, t, v);
    for i in 2..t {
        up = up.compose(&rc.braid_inv(i, t, v));
    }
    down.compose(&up)
}

/// One branching step: refine a projection onto `V_mu (x) id` at level `t-1`
/// into the projection onto the `lambda`-summand of `V_mu (x) V` at level t.
///
/// The scalar action of the ribbon coproduct on the `nu`-summand is
/// `q^{-(nu + 2rho, nu)}`; interpolation over the branch set extracts one
/// eigenspace.
pub fn branching_projection<F: Field>(
    m: &FundamentalModule<F>,
    rc: &RCheck<F>,
    mu: &YoungDiagram,
    lambda: &YoungDiagram,
    pmu: &GradedOperator<F>,
    t: usize,
) -> Result<GradedOperator<F>, ScalarError> {
    let chain = ribbon_chain(m, rc, t);
    branching_projection_with_chain(m, mu, lambda, pmu, &chain)
}

fn ribbon_scalar<F: Field>(m: &FundamentalModule<F>, w: &Weight) -> F {
    // q^{-(w + 2rho, w)}
    let rho2 = two_rho(m.rank());
    m.q()
        .pow(-(bilinear_form(w, w) + bilinear_form(&rho2, w)))
}

fn branching_projection_with_chain<F: Field>(
    m: &FundamentalModule<F>,
    mu: &YoungDiagram,
    lambda: &YoungDiagram,
    pmu: &GradedOperator<F>,
    chain: &GradedOperator<F>,
) -> Result<GradedOperator<F>, ScalarError> {
    let n = m.rank();
    let branch_set = crate::roots::branch(mu, n).expect("mu has at most n rows");
    assert!(branch_set.contains(lambda), "lambda must lie in branch(mu)");
    let v = m.space();
    let big = GradedOperator::kron(pmu, &GradedOperator::identity(v.clone()));

    // scalar prefactor q^{-(mu+2rho, mu) - (eps_1+2rho, eps_1)}
    let mu_wt = mu.to_weight(n).expect("at most n rows");
    let eps1 = Weight::eps(1, n);
    let prefactor = ribbon_scalar(m, &mu_wt).mul(&ribbon_scalar(m, &eps1));
    let a = big.compose(chain).compose(&big).scale(&prefactor);

    let c_lambda = ribbon_scalar(m, &lambda.to_weight(n).expect("dominant"));
    let mut proj = big.clone();
    for nu in &branch_set {
        if nu == lambda {
            continue;
        }
        let c_nu = ribbon_scalar(m, &nu.to_weight(n).expect("dominant"));
        let denom = c_lambda.sub(&c_nu);
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let factor = a.sub(&big.scale(&c_nu)).scale(&denom.inv()?);
        proj = proj.compose(&factor);
    }
    Ok(proj)
}

/// All path projections of length `t`, keyed by fundamental-graph paths.
pub fn path_projection_table<F: Field>(
    m: &FundamentalModule<F>,
    rc: &RCheck<F>,
    t: usize,
) -> Result<Vec<PathProjection<F>>, ScalarError> {
    assert!(t >= 1);
    let n = m.rank();
    let mut table = vec![PathProjection {
        path: Path::root().extended(YoungDiagram::new(vec![1])),
        matrix: GradedOperator::identity(m.space().clone()),
    }];
    for level in 2..=t {
        let chain = ribbon_chain(m, rc, level);
        let mut next = Vec::new();
        for pp in &table {
            let mu = pp.path.shape().clone();
            for lambda in crate::roots::branch(&mu, n).expect("at most n rows") {
                let matrix =
                    branching_projection_with_chain(m, &mu, &lambda, &pp.matrix, &chain)?;
                next.push(PathProjection {
                    path: pp.path.extended(lambda),
                    matrix,
                });
            }
        }
        next.sort_by(|a, b| a.path.cmp(&b.path));
        table = next;
    }
    Ok(table)
}

/// The normalised Markov trace `psi(X) = str_q(X) / sdim_q(V)^t`.
pub fn markov_trace<F: Field>(
    m: &FundamentalModule<F>,
    x: &GradedOperator<F>,
    t: usize,
) -> Result<F, ScalarError> {
    let sdim = m.sdim_q();
    m.str_q(x).div(&sdim.pow(t as i64))
}

/// Evaluate a braid word through the Markov trace: letters are signed
/// generator indices (`2` means `sigma_2`, `-1` means `sigma_1^{-1}`),
/// generators map through `sigma_i -> -R-check_i`.
pub fn link_invariant(
    word: &[i64],
    strands: usize,
    n: usize,
    writhe_normalised: bool,
) -> Result<Fq, ScalarError> {
    assert!(strands >= 1);
    let (m, rc) = crate::rmatrix::build_tower(n, Fq::gen());
    let v = m.space();
    let mut x = GradedOperator::identity(GradedSpace::tensor_power(v, strands));
    for &letter in word {
        assert!(letter != 0, "letters are signed 1-based indices");
        let i = letter.unsigned_abs() as usize;
        assert!(i + 1 <= strands, "letter index out of range");
        let g = if letter > 0 {
            rc.braid(i, strands, v).neg()
        } else {
            rc.braid_inv(i, strands, v).neg()
        };
        x = x.compose(&g);
    }
    let raw = markov_trace(&m, &x, strands)?;
    if !writhe_normalised {
        return Ok(raw);
    }
    // psi(Upsilon(sigma_1)) = -q^{2n}/sdim_q(V)
    let writhe: i64 = word.iter().map(|&l| l.signum()).sum();
    let per_crossing = Fq::gen_pow(2 * n as i64)
        .neg()
        .div(&crate::roots::sdim_q(&Weight::eps(1, n), n)?)?;
    raw.div(&per_crossing.pow(writhe))
}

/// Exact dimension of the centraliser of the tensor-power action at a
/// generic rational sample point, by nullspace of the commutation
/// constraints. The sample must avoid `0` and `±1`.
pub fn commutant_dim_oracle(t: usize, n: usize, q0: &Rational) -> Result<usize, ScalarError> {
    assert!(t >= 1);
    if Field::is_zero(q0) || Field::is_one(q0) || Field::is_one(&Field::neg(q0)) {
        return Err(ScalarError::Pole);
    }
    let m = FundamentalModule::new(n, q0.clone());
    let space = GradedSpace::tensor_power(m.space(), t);
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(m.tensor_action(Gen::E(i), t));
        gens.push(m.tensor_action(Gen::F(i), t));
    }
    Ok(commutant_dimension(&space, &gens))
}

/// Dimension of `{X : [X, G] = 0 for all listed G}` among weight-preserving
/// operators on the space, over any exact field. Weight preservation is the
/// K-commutation constraint at a generic sample; raising/lowering generators
/// supply the remaining linear conditions, solved by sparse elimination.
pub fn commutant_dimension<F: Field>(
    space: &Arc<GradedSpace>,
    gens: &[GradedOperator<F>],
) -> usize {
    let dim = space.dim();
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for i in 0..dim {
        blocks.entry(space.weight(i).clone()).or_default().push(i);
    }
    let block_of: Vec<&Weight> = (0..dim).map(|i| space.weight(i)).collect();
    let mut unknown_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for members in blocks.values() {
        for &a in members {
            for &b in members {
                let next = unknown_id.len();
                unknown_id.insert((a, b), next);
            }
        }
    }
    let unknowns = unknown_id.len();

    let mut rows: Vec<BTreeMap<usize, F>> = Vec::new();
    for gm in gens {
        let mut g_cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim];
        let mut g_rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim];
        for (r, c, v) in gm.entries() {
            g_cols[c].push((r, v.clone()));
            g_rows[r].push((c, v.clone()));
        }
        for r in 0..dim {
            for c in 0..dim {
                let mut row: BTreeMap<usize, F> = BTreeMap::new();
                // sum_k X[r,k] G[k,c] - sum_k G[r,k] X[k,c]
                for (k, v) in &g_cols[c] {
                    if block_of[r] == block_of[*k] {
                        let id = unknown_id[&(r, *k)];
                        let e = row.entry(id).or_insert_with(F::zero);
                        *e = e.add(v);
                    }
                }
                for (k, v) in &g_rows[r] {
                    if block_of[*k] == block_of[c] {
                        let id = unknown_id[&(*k, c)];
                        let e = row.entry(id).or_insert_with(F::zero);
                        *e = e.sub(v);
                    }
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }

    let mut pivots: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                break;
            };
            let lead_val = lead_val.clone();
            if let Some(prow) = pivots.get(&lead) {
                let factor = lead_val.div(&prow[&lead]).expect("pivot nonzero");
                let mut next = row.clone();
                for (j, v) in prow {
                    let e = next.entry(*j).or_insert_with(F::zero);
                    *e = e.sub(&factor.mul(v));
                }
                next.retain(|_, v| !v.is_zero());
                row = next;
            } else {
                pivots.insert(lead, row);
                break;
            }
        }
    }
    unknowns - pivots.len()
}

/// Independent path-count side of the commutant dimension: the sum of
/// squared path multiplicities at level t of the fundamental-module graph.
pub fn commutant_dim_from_paths(t: usize, n: usize) -> u64 {
    let g = BrattelliGraph::new(GraphKind::FundamentalModule(n), t);
    g.path_counts(t).values().map(|c| c * c).sum()
}
