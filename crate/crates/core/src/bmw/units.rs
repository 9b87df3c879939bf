//! Ram-Wenzl matrix units for the quotient tower at r = -q^{2n}, evaluated
//! through the representation as centraliser matrices on tensor powers.
//!
//! Units are memoised level by level. Square roots from the published
//! coefficients are carried as formal tags ([`TaggedOp`]); every completed
//! projector must come out tag-free, which the builder asserts.
//!
//! Generator normalisation inside the pre-unit (full-box) recursion: the
//! interpolation runs over `q g_i` (whose eigenvalues on the box-adding part
//! are the Hecke values `b_d(q^2)`), while the middle factor of a
//! distinct-parent intertwiner is the bare `g_i`; this combination is forced
//! by `o_MP o_PM = o_MM`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::graph::{canonical_tableau_path, BrattelliGraph, GraphKind, Path};
use super::q_lambda_in;
use crate::graded::{FundamentalModule, GradedOperator, GradedSpace};
use crate::rmatrix::{cap_idempotent, CapMaps, RCheck};
use crate::roots::YoungDiagram;
use crate::scalar::{sqrt::toggle_core_in, Field, Radical, ScalarError, SqrtSplit};

/// Errors from the matrix-unit recursion.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitsError {
    /// The distinct-parent coefficient needs |d| >= 2.
    AxialDistance(String),
    /// A completed projector still carries formal square roots.
    ResidualTag(String),
    Scalar(ScalarError),
}

impl std::fmt::Display for UnitsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnitsError::AxialDistance(s) => write!(f, "axial distance out of range: {s}"),
            UnitsError::ResidualTag(s) => write!(f, "uncancelled square root: {s}"),
            UnitsError::Scalar(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for UnitsError {}

impl From<ScalarError> for UnitsError {
    fn from(e: ScalarError) -> Self {
        UnitsError::Scalar(e)
    }
}

/// A centraliser matrix times a formal product of square roots.
#[derive(Clone, Debug)]
pub struct TaggedOp<F: Field> {
    cores: BTreeMap<String, F>,
    op: GradedOperator<F>,
}

impl<F: Field + SqrtSplit> TaggedOp<F> {
    pub fn plain(op: GradedOperator<F>) -> Self {
        TaggedOp {
            cores: BTreeMap::new(),
            op,
        }
    }

    pub fn is_plain(&self) -> bool {
        self.cores.is_empty()
    }

    /// The underlying matrix; only meaningful together with the tag.
    pub fn raw_op(&self) -> &GradedOperator<F> {
        &self.op
    }

    /// The matrix of a tag-free element.
    pub fn plain_op(&self) -> Result<&GradedOperator<F>, UnitsError> {
        if self.is_plain() {
            Ok(&self.op)
        } else {
            Err(UnitsError::ResidualTag(format!(
                "cores: {:?}",
                self.cores.keys().collect::<Vec<_>>()
            )))
        }
    }

    pub fn core_keys(&self) -> Vec<String> {
        self.cores.keys().cloned().collect()
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut cores = self.cores.clone();
        let mut scale = F::one();
        for c in other.cores.values() {
            toggle_core_in(&mut cores, &mut scale, c.clone());
        }
        let mut op = self.op.compose(&other.op);
        if !scale.is_one() {
            op = op.scale(&scale);
        }
        TaggedOp { cores, op }
    }

    /// Addition requires matching tags (used only on tag-free summands and
    /// same-tag combinations).
    pub fn add(&self, other: &Self) -> Result<Self, UnitsError> {
        if self.cores != other.cores {
            return Err(UnitsError::ResidualTag(format!(
                "adding different tags {:?} vs {:?}",
                self.cores.keys().collect::<Vec<_>>(),
                other.cores.keys().collect::<Vec<_>>()
            )));
        }
        Ok(TaggedOp {
            cores: self.cores.clone(),
            op: self.op.add(&other.op),
        })
    }

    pub fn neg(&self) -> Self {
        TaggedOp {
            cores: self.cores.clone(),
            op: self.op.neg(),
        }
    }

    pub fn scale_radical(&self, r: &Radical<F>) -> Self {
        let mut cores = self.cores.clone();
        let mut scale = r.value().clone();
        for c in r.cores() {
            toggle_core_in(&mut cores, &mut scale, c.clone());
        }
        TaggedOp {
            cores,
            op: self.op.scale(&scale),
        }
    }

    /// Extend by one identity tensor factor on the right.
    pub fn extend(&self, v: &Arc<GradedSpace>) -> Self {
        TaggedOp {
            cores: self.cores.clone(),
            op: GradedOperator::kron(&self.op, &GradedOperator::identity(v.clone())),
        }
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.cores == other.cores && self.op == other.op
    }

    pub fn is_zero(&self) -> bool {
        self.op.is_zero()
    }
}

/// Matrix units at one level of the quotient tower: one tagged centraliser
/// matrix on `V^{(x) level}` per ordered pair of same-shape paths, plus the
/// full-box pre-units feeding the next level.
pub struct MatrixUnitTable<F: Field> {
    pub n: usize,
    pub level: usize,
    paths: Vec<Path>,
    units: BTreeMap<(usize, usize), TaggedOp<F>>,
    pre_units: BTreeMap<(usize, usize), TaggedOp<F>>,
}

impl<F: Field + SqrtSplit> MatrixUnitTable<F> {
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|x| x == p)
    }

    /// Ordered pairs of paths with equal final shape.
    pub fn same_shape_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.paths.len() {
            for b in 0..self.paths.len() {
                if self.paths[a].shape() == self.paths[b].shape() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn unit(&self, row: usize, col: usize) -> Option<&TaggedOp<F>> {
        self.units.get(&(row, col))
    }

    /// The matrix of the diagonal unit; always tag-free.
    pub fn projector(&self, idx: usize) -> &GradedOperator<F> {
        self.units[&(idx, idx)]
            .plain_op()
            .expect("diagonal units are tag-free by construction")
    }

    fn pre_unit(&self, row: usize, col: usize) -> &TaggedOp<F> {
        &self.pre_units[&(row, col)]
    }
}

/// Build the unit tables for levels `1..=t`.
pub fn matrix_unit_tables<F: Field + SqrtSplit>(
    m: &FundamentalModule<F>,
    rc: &RCheck<F>,
    caps: &CapMaps<F>,
    t: usize,
) -> Result<Vec<MatrixUnitTable<F>>, UnitsError> {
    assert!(t >= 1);
    let n = m.rank();
    let graph = BrattelliGraph::new(GraphKind::BmwQuotient(n), t);
    let v = m.space().clone();
    let q = m.q().clone();

    let mut tables: Vec<MatrixUnitTable<F>> = Vec::new();
    for level in 1..=t {
        let paths = graph.paths(level);
        let mut units = BTreeMap::new();
        let mut pre_units = BTreeMap::new();
        if level == 1 {
            let id = TaggedOp::plain(GradedOperator::identity(v.clone()));
            units.insert((0, 0), id.clone());
            pre_units.insert((0, 0), id);
            tables.push(MatrixUnitTable {
                n,
                level,
                paths,
                units,
                pre_units,
            });
            continue;
        }

        let prev = tables.last().unwrap();
        let space = GradedSpace::tensor_power(&v, level);
        let prev_index =
            |p: &Path| -> usize { prev.path_index(p).expect("truncation is a known path") };

        let trace_on = std::env::var("OSPQ_TRACE").is_ok();
        // ---- fewer-box units ----
        let cap_last = cap_idempotent(caps, &v, level - 1, level);
        for a in 0..paths.len() {
            for b in 0..paths.len() {
                let lam = paths[a].shape();
                if paths[b].shape() != lam || lam.num_boxes() == level {
                    continue;
                }
                let mp = &paths[a];
                let pp = &paths[b];
                let mu = mp.truncated().shape().clone();
                let mu_other = pp.truncated().shape().clone();
                // paths S, T of length level-1 through lam at level-2
                let stem = canonical_quotient_path(lam, level - 2, n, &graph);
                let s_path = stem.extended(mu.clone());
                let t_path = stem.extended(mu_other.clone());
                let left = prev.units[&(prev_index(&mp.truncated()), prev_index(&s_path))]
                    .extend(&v);
                let right = prev.units[&(prev_index(&t_path), prev_index(&pp.truncated()))]
                    .extend(&v);
                let t0 = std::time::Instant::now();
                let q_lam = q_lambda_in(lam, n, &q)?;
                let q_mu = q_lambda_in(&mu, n, &q)?;
                let q_mu_other = q_lambda_in(&mu_other, n, &q)?;
                let t1 = std::time::Instant::now();
                let coeff =
                    Radical::inv_sqrt(&[q_mu, q_mu_other]).mul(&Radical::from_value(q_lam));
                let t2 = std::time::Instant::now();
                let prod = left
                    .compose(&TaggedOp::plain(cap_last.clone()))
                    .compose(&right);
                let t3 = std::time::Instant::now();
                let unit = prod.scale_radical(&coeff);
                if trace_on {
                    eprintln!("    fewer-box ({a},{b}): qvals {:.0?} radical {:.0?} composes {:.0?} scale {:.0?}",
                        t1-t0, t2-t1, t3-t2, t3.elapsed());
                }
                if a == b {
                    unit.plain_op()?;
                }
                if trace_on {
                    eprintln!("  built fewer-box unit ({a},{b}) nnz={}", unit.raw_op().nnz());
                }
                units.insert((a, b), unit);
            }
        }

        // the fewer-box diagonal units, applied factor-by-factor below in
        // place of a single (fat) 1 - z matrix
        let mut fewer_diag: Vec<GradedOperator<F>> = Vec::new();
        for a in 0..paths.len() {
            if paths[a].shape().num_boxes() < level {
                fewer_diag.push(units[&(a, a)].plain_op()?.clone());
            }
        }
        let _ = &space;

        // ---- full-box pre-units ----
        // Diagonal: interpolation over all one-box additions of the parent
        // shape in the full Young lattice (the siblings contribute only their
        // Hecke values b_d(q^2)).
        let q_sq = q.mul(&q);
        let hecke_gen = rc.braid(level - 1, level, &v).neg().scale(&q);
        let bare_gen = rc.braid(level - 1, level, &v).neg();
        let mut parents: Vec<usize> = Vec::new();
        for a in 0..paths.len() {
            if paths[a].shape().num_boxes() == level {
                let r_idx = prev_index(&paths[a].truncated());
                if !parents.contains(&r_idx) {
                    parents.push(r_idx);
                }
            }
        }
        let mut corner_cache: BTreeMap<usize, TaggedOp<F>> = BTreeMap::new();
        for &r_idx in &parents {
            let t0 = std::time::Instant::now();
            let o_r = prev.pre_unit(r_idx, r_idx).extend(&v);
            let core = o_r.compose(&TaggedOp::plain(hecke_gen.clone())).compose(&o_r);
            if trace_on {
                eprintln!("    corner for parent {r_idx}: {:.0?} nnz={}", t0.elapsed(), core.raw_op().nnz());
            }
            corner_cache.insert(r_idx, core);
        }
        for a in 0..paths.len() {
            let lam = paths[a].shape().clone();
            if lam.num_boxes() != level {
                continue;
            }
            let parent = paths[a].truncated();
            let r_idx = prev_index(&parent);
            let o_r = prev.pre_unit(r_idx, r_idx).extend(&v);
            let corner = &corner_cache[&r_idx];
            let d_t = super::graph::tableau_d(&paths[a], level - 1);
            let mut acc = o_r.clone();
            for sibling in parent.shape().one_box_additions() {
                if sibling == lam {
                    continue;
                }
                let d_s = super::graph::tableau_d(&parent.clone().extended(sibling), level - 1);
                let b_s = super::b_d(d_s, &q_sq)?;
                let b_t = super::b_d(d_t, &q_sq)?;
                let denom = b_t.sub(&b_s).inv()?;
                let t0 = std::time::Instant::now();
                let factor = corner
                    .add(&o_r.scale_radical(&Radical::from_value(b_s.neg())))?
                    .scale_radical(&Radical::from_value(denom));
                acc = acc.compose(&factor);
                if trace_on {
                    eprintln!("    interp factor for {a}: {:.0?} nnz={}", t0.elapsed(), acc.raw_op().nnz());
                }
            }
            if trace_on {
                eprintln!("  built diagonal pre-unit {a} nnz={}", acc.raw_op().nnz());
            }
            pre_units.insert((a, a), acc);
        }
        // Intertwiner pre-units.
        for a in 0..paths.len() {
            for b in 0..paths.len() {
                let lam = paths[a].shape().clone();
                if a == b || paths[b].shape() != &lam || lam.num_boxes() != level {
                    continue;
                }
                let mp = &paths[a];
                let pp = &paths[b];
                let o_pp = pre_units[&(b, b)].clone();
                if trace_on {
                    eprintln!("  pre-unit ({a},{b}): {mp} / {pp} same_parent_shape={}",
                        mp.truncated().shape() == pp.truncated().shape());
                }
                let unit = if mp.truncated().shape() == pp.truncated().shape() {
                    // o_MP = o_{M'P'} o_PP
                    let upper = prev
                        .pre_unit(prev_index(&mp.truncated()), prev_index(&pp.truncated()))
                        .extend(&v);
                    upper.compose(&o_pp)
                } else {
                    // distinct parents: swap the last two boxes through the
                    // auxiliary pair
                    let beta_m = last_box(mp);
                    let beta_p = last_box(pp);
                    let stem_shape = remove_box(&remove_box(&lam, beta_m), beta_p);
                    let stem = canonical_tableau_path(&stem_shape);
                    let m_bar = stem
                        .extended(add_box(&stem_shape, beta_p))
                        .extended(lam.clone());
                    let p_bar = stem
                        .extended(add_box(&stem_shape, beta_m))
                        .extended(lam.clone());
                    let d = (beta_m.1 as i64 - beta_p.1 as i64)
                        - (beta_m.0 as i64 - beta_p.0 as i64);
                    if d.abs() < 2 {
                        return Err(UnitsError::AxialDistance(format!(
                            "|d| = {} for pair {mp} / {pp}",
                            d.abs()
                        )));
                    }
                    let coeff_num = F::one().sub(&q.pow(2 * d));
                    let rad = Radical::inv_sqrt(&[
                        F::one().sub(&q.pow(2 * (d + 1))),
                        F::one().sub(&q.pow(2 * (d - 1))),
                    ])
                    .mul(&Radical::from_value(coeff_num));
                    let left = prev
                        .pre_unit(prev_index(&mp.truncated()), prev_index(&m_bar.truncated()))
                        .extend(&v);
                    let right = prev
                        .pre_unit(prev_index(&p_bar.truncated()), prev_index(&pp.truncated()))
                        .extend(&v);
                    if trace_on {
                        eprintln!("    distinct-parent d={d} left_nnz={} right_nnz={}",
                            left.raw_op().nnz(), right.raw_op().nnz());
                    }
                    let step1 = left.compose(&TaggedOp::plain(bare_gen.clone()));
                    if trace_on { eprintln!("    step1 done nnz={}", step1.raw_op().nnz()); }
                    let step2 = step1.compose(&right);
                    if trace_on {
                        let m1 = step2.raw_op().entries().map(|(_,_,f)| f.to_string().len()).max().unwrap_or(0);
                        let m2 = o_pp.raw_op().entries().map(|(_,_,f)| f.to_string().len()).max().unwrap_or(0);
                        eprintln!("    step2 done nnz={} max_len={m1}; o_pp max_len={m2}", step2.raw_op().nnz());
                    }
                    let step3 = step2.compose(&o_pp);
                    if trace_on { eprintln!("    step3 done nnz={}", step3.raw_op().nnz()); }
                    step3.scale_radical(&rad)
                };
                if trace_on {
                    eprintln!("  built pre-unit ({a},{b}) nnz={}", unit.raw_op().nnz());
                }
                pre_units.insert((a, b), unit);
            }
        }
        // ---- full-box units: (1 - z) o_MP = o_MP - sum_S e_SS o_MP ----
        for ((a, b), o) in &pre_units {
            let t0 = std::time::Instant::now();
            let mut unit = o.clone();
            for p in &fewer_diag {
                let correction = TaggedOp::plain(p.clone()).compose(o);
                unit = unit.add(&correction.neg())?;
            }
            if trace_on {
                eprintln!("    z-correct ({a},{b}): {:.0?}", t0.elapsed());
            }
            if a == b {
                unit.plain_op()?;
            }
            units.insert((*a, *b), unit);
        }

        tables.push(MatrixUnitTable {
            n,
            level,
            paths,
            units,
            pre_units,
        });
    }
    Ok(tables)
}

fn last_box(p: &Path) -> (usize, usize) {
    let before = p.truncated().shape().clone();
    let after = p.shape();
    assert_eq!(after.num_boxes(), before.num_boxes() + 1);
    for i in 0..after.num_rows() {
        if after.row(i) != before.row(i) {
            return (i, after.row(i) - 1);
        }
    }
    unreachable!()
}

fn add_box(d: &YoungDiagram, cell: (usize, usize)) -> YoungDiagram {
    d.with_box_added(cell.0)
}

fn remove_box(d: &YoungDiagram, cell: (usize, usize)) -> YoungDiagram {
    d.with_box_removed(cell.0)
}

/// A deterministic path of the given length ending at `shape` in the quotient
/// graph: the row-major tableau of `shape`, padded by add/remove bounces.
fn canonical_quotient_path(
    shape: &YoungDiagram,
    len: usize,
    n: usize,
    _graph: &BrattelliGraph,
) -> Path {
    let boxes = shape.num_boxes();
    assert!(len >= boxes && (len - boxes) % 2 == 0, "parity mismatch");
    let mut p = canonical_tableau_path(shape);
    for _ in 0..(len - boxes) / 2 {
        let up = shape.with_box_added(0);
        if up.is_allowable(n) {
            p = p.extended(up.clone()).extended(shape.clone());
        } else {
            let down = shape.with_box_removed(
                shape
                    .removable_cells()
                    .last()
                    .expect("nonempty shape when the row-1 bounce is not allowable")
                    .0,
            );
            p = p.extended(down).extended(shape.clone());
        }
    }
    p
}

/// All the matrix-unit axioms, checked by exact matrix arithmetic:
/// idempotence and orthogonality of the projectors, the identity resolution,
/// the sandwich property of intertwiners, and the triple products
/// `E_ST E_TQ = E_SQ`. Implies `E_ST E_PQ = delta_TP E_SQ` in full.
pub fn verify_unit_axioms<F: Field + SqrtSplit>(
    table: &MatrixUnitTable<F>,
) -> Result<(), String> {
    let paths = table.paths();
    let npaths = paths.len();
    let dim_space = table.projector(0).domain().clone();
    // resolution of identity
    let mut sum = GradedOperator::zero(dim_space.clone(), dim_space.clone(), 0);
    for a in 0..npaths {
        sum = sum.add(table.projector(a));
    }
    if sum != GradedOperator::identity(dim_space) {
        return Err("sum of diagonal units is not the identity".into());
    }
    // diagonal orthogonality / idempotence
    for a in 0..npaths {
        for b in 0..npaths {
            let prod = table.projector(a).compose(table.projector(b));
            let want = if a == b {
                table.projector(a).clone()
            } else {
                prod.scale(&F::zero())
            };
            if prod != want {
                return Err(format!(
                    "projector product failed for {} / {}",
                    paths[a], paths[b]
                ));
            }
        }
    }
    // sandwich: E_SS E_ST = E_ST = E_ST E_TT
    for (a, b) in table.same_shape_pairs() {
        if a == b {
            continue;
        }
        let u = table.unit(a, b).unwrap();
        let left = TaggedOp::plain(table.projector(a).clone()).compose(u);
        let right = u.compose(&TaggedOp::plain(table.projector(b).clone()));
        if !left.equals(u) || !right.equals(u) {
            return Err(format!("sandwich failed for {} / {}", paths[a], paths[b]));
        }
        if u.is_zero() {
            return Err(format!("vanishing intertwiner {} / {}", paths[a], paths[b]));
        }
    }
    // chains: E_ST E_TQ = E_SQ
    for (a, b) in table.same_shape_pairs() {
        for c in 0..npaths {
            if paths[c].shape() != paths[a].shape() {
                continue;
            }
            let prod = table.unit(a, b).unwrap().compose(table.unit(b, c).unwrap());
            if !prod.equals(table.unit(a, c).unwrap()) {
                return Err(format!(
                    "chain failed for {} / {} / {}",
                    paths[a], paths[b], paths[c]
                ));
            }
        }
    }
    Ok(())
}
