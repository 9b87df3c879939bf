//! Root system and Young-diagram combinatorics of osp(1|2n).
//!
//! Weights live in the epsilon-basis where the bilinear form is the standard
//! dot product. The reduced root system (the n^2 positive roots excluding the
//! doubled odd roots 2*eps_k) drives both the normal ordering and the
//! root-vector recursion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::{Field, Fq, ScalarError};

/// Integer weight vector in the epsilon-basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            coords: vec![0; n],
        }
    }

    /// `eps_i` (1-based); `i = 0` gives the zero weight.
    pub fn eps(i: usize, n: usize) -> Self {
        let mut coords = vec![0; n];
        if i >= 1 {
            coords[i - 1] = 1;
        }
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i]
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Parity of the graded module labelled by this weight: sum of the
    /// coordinates mod 2.
    pub fn parity(&self) -> u8 {
        (self.coords.iter().sum::<i64>().rem_euclid(2)) as u8
    }

    /// Integral dominant: weakly decreasing and nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
            && self.coords.last().is_none_or(|&c| c >= 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The standard dot product `(a, b)` in the epsilon-basis.
pub fn bilinear_form(a: &Weight, b: &Weight) -> i64 {
    assert_eq!(a.rank(), b.rank(), "rank mismatch");
    a.coords.iter().zip(&b.coords).map(|(x, y)| x * y).sum()
}

/// `2 rho = sum_i (2n - 2i + 1) eps_i`.
pub fn two_rho(n: usize) -> Weight {
    Weight::new((1..=n).map(|i| (2 * n - 2 * i + 1) as i64).collect())
}

/// A root of osp(1|2n); parity is odd exactly for the roots `eps_k`.
pub type Root = Weight;

/// The n simple roots: `alpha_i = eps_i - eps_{i+1}` for `i < n`, `alpha_n = eps_n`.
pub fn simple_roots(n: usize) -> Vec<Root> {
    (1..=n)
        .map(|i| {
            if i < n {
                Weight::eps(i, n).sub(&Weight::eps(i + 1, n))
            } else {
                Weight::eps(n, n)
            }
        })
        .collect()
}

/// The reduced positive system: `eps_i +- eps_j (i < j)` and `eps_k`.
pub fn reduced_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(Weight::eps(i, n).sub(&Weight::eps(j, n)));
            out.push(Weight::eps(i, n).add(&Weight::eps(j, n)));
        }
    }
    for k in 1..=n {
        out.push(Weight::eps(k, n));
    }
    out
}

/// A convex total order on the reduced positive roots.
#[derive(Clone, Debug)]
pub struct NormalOrder {
    roots: Vec<Root>,
}

impl NormalOrder {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn position(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// Convexity: whenever `alpha` precedes `beta` and `alpha + beta` is a
    /// reduced root, the sum sits strictly between them. Brute force over all
    /// pairs.
    pub fn validate(&self) -> Result<(), String> {
        let set: BTreeMap<&Root, usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        if set.len() != self.roots.len() {
            return Err("duplicate roots in ordering".into());
        }
        for (i, a) in self.roots.iter().enumerate() {
            for (j, b) in self.roots.iter().enumerate().skip(i + 1) {
                let sum = a.add(b);
                if let Some(&p) = set.get(&sum) {
                    if !(i < p && p < j) {
                        return Err(format!(
                            "convexity violated: {a} < {b} but {sum} at position {p}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// All ways to write `gamma` as an ordered sum `alpha + beta` with
    /// `alpha` before `beta`; returned as `(pos_alpha, pos_beta)`.
    pub fn decompositions(&self, gamma: &Root) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.roots.iter().enumerate() {
            for (j, b) in self.roots.iter().enumerate().skip(i + 1) {
                if a.add(b) == *gamma {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn reversed(&self) -> NormalOrder {
        NormalOrder {
            roots: self.roots.iter().rev().cloned().collect(),
        }
    }
}

fn apply_simple_reflection(i: usize, n: usize, w: &Weight) -> Weight {
    let mut c = w.coords().to_vec();
    if i < n {
        c.swap(i - 1, i);
    } else {
        c[n - 1] = -c[n - 1];
    }
    Weight::new(c)
}

/// Normal ordering from the reduced word `(s_1 s_2 ... s_n)^n` for the
/// longest element of the type-B_n Weyl group: the k-th root is
/// `s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`. Validated before returning;
/// failure is a programming error.
pub fn normal_ordering(n: usize) -> NormalOrder {
    assert!(n >= 1);
    let alphas = simple_roots(n);
    let word: Vec<usize> = (0..n).flat_map(|_| 1..=n).collect();
    let mut roots = Vec::with_capacity(n * n);
    for k in 0..word.len() {
        let mut beta = alphas[word[k] - 1].clone();
        for &s in word[..k].iter().rev() {
            beta = apply_simple_reflection(s, n, &beta);
        }
        roots.push(beta);
    }
    let order = NormalOrder { roots };
    order
        .validate()
        .unwrap_or_else(|e| panic!("normal ordering construction failed: {e}"));
    order
}

/// Errors from diagram/weight manipulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramError {
    /// Reflection requested for a diagram with first column <= n.
    NotReflectable,
    /// Weight conversion needs at most n rows.
    TooManyRows,
    /// Malformed text form.
    Parse(String),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::NotReflectable => write!(f, "reflection needs first column > n"),
            DiagramError::TooManyRows => write!(f, "diagram has more rows than the rank"),
            DiagramError::Parse(s) => write!(f, "diagram parse error: {s}"),
        }
    }
}

impl std::error::Error for DiagramError {}

/// A partition drawn as a Young diagram (weakly decreasing rows, no zeros).
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<usize>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        assert!(
            rows.windows(2).all(|w| w[0] >= w[1]),
            "rows must be weakly decreasing"
        );
        YoungDiagram { rows }
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Length of the j-th column (0-based).
    pub fn col(&self, j: usize) -> usize {
        self.rows.iter().filter(|&&r| r > j).count()
    }

    pub fn cols(&self) -> Vec<usize> {
        (0..self.row(0)).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> YoungDiagram {
        YoungDiagram::new(self.cols())
    }

    /// Cells `(row, col)` (0-based) where a box can be added.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.rows.len() {
            let len = self.row(i);
            let above = if i == 0 { usize::MAX } else { self.row(i - 1) };
            if len < above {
                out.push((i, len));
            }
        }
        out
    }

    /// Cells `(row, col)` (0-based) whose box can be removed.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            let len = self.rows[i];
            let below = self.row(i + 1);
            if len > below {
                out.push((i, len - 1));
            }
        }
        out
    }

    pub fn with_box_added(&self, row: usize) -> YoungDiagram {
        let mut rows = self.rows.clone();
        if row == rows.len() {
            rows.push(1);
        } else {
            rows[row] += 1;
        }
        YoungDiagram::new(rows)
    }

    pub fn with_box_removed(&self, row: usize) -> YoungDiagram {
        let mut rows = self.rows.clone();
        rows[row] -= 1;
        YoungDiagram::new(rows)
    }

    /// All diagrams reachable by adding exactly one box.
    pub fn one_box_additions(&self) -> Vec<YoungDiagram> {
        self.addable_cells()
            .into_iter()
            .map(|(r, _)| self.with_box_added(r))
            .collect()
    }

    /// All diagrams reachable by removing exactly one box.
    pub fn one_box_removals(&self) -> Vec<YoungDiagram> {
        self.removable_cells()
            .into_iter()
            .map(|(r, _)| self.with_box_removed(r))
            .collect()
    }

    /// Whether two diagrams differ by exactly one box.
    pub fn adjacent(&self, other: &YoungDiagram) -> bool {
        let (a, b) = (self.num_boxes(), other.num_boxes());
        if a + 1 == b {
            other.one_box_removals().contains(self)
        } else if b + 1 == a {
            self.one_box_removals().contains(other)
        } else {
            false
        }
    }

    /// `lambda_1' + lambda_2' <= 2n + 1`.
    pub fn is_allowable(&self, n: usize) -> bool {
        self.col(0) + self.col(1) <= 2 * n + 1
    }

    /// First-column reflection: `lambda~_1' = 2n + 1 - lambda_1'`, other
    /// columns unchanged. Defined for allowable diagrams with first column
    /// at least n + 1.
    pub fn reflected(&self, n: usize) -> Result<YoungDiagram, DiagramError> {
        if self.col(0) < n + 1 {
            return Err(DiagramError::NotReflectable);
        }
        let mut cols = self.cols();
        if cols.is_empty() {
            return Err(DiagramError::NotReflectable);
        }
        cols[0] = 2 * n + 1 - cols[0];
        // The result is a valid diagram whenever self is allowable.
        while cols.last() == Some(&0) {
            cols.pop();
        }
        if cols.is_empty() {
            return Ok(YoungDiagram::empty());
        }
        if !cols.windows(2).all(|w| w[0] >= w[1]) {
            return Err(DiagramError::NotReflectable);
        }
        Ok(YoungDiagram::new(cols).transpose())
    }

    /// `lambda* = lambda` if it fits in n rows, else the reflection.
    pub fn star(&self, n: usize) -> YoungDiagram {
        if self.col(0) <= n {
            self.clone()
        } else {
            self.reflected(n)
                .expect("star: diagram with first column > n must be reflectable")
        }
    }

    /// The weight `sum_i rows_i eps_i`; requires at most n rows.
    pub fn to_weight(&self, n: usize) -> Result<Weight, DiagramError> {
        if self.rows.len() > n {
            return Err(DiagramError::TooManyRows);
        }
        let mut coords = vec![0i64; n];
        for (i, r) in self.rows.iter().enumerate() {
            coords[i] = *r as i64;
        }
        Ok(Weight::new(coords))
    }

    pub fn from_weight(w: &Weight) -> Result<YoungDiagram, DiagramError> {
        if !w.is_dominant() {
            return Err(DiagramError::Parse(format!("{w} is not dominant")));
        }
        Ok(YoungDiagram::new(
            w.coords().iter().map(|&c| c as usize).collect(),
        ))
    }

    pub fn parse(s: &str) -> Result<YoungDiagram, DiagramError> {
        let s = s.trim();
        if s == "∅" || s == "[]" || s.is_empty() {
            return Ok(YoungDiagram::empty());
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| DiagramError::Parse(format!("expected [r1,r2,...]: {s:?}")))?;
        let rows = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| DiagramError::Parse(format!("{p:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if !rows.windows(2).all(|w| w[0] >= w[1]) {
            return Err(DiagramError::Parse(format!("rows not decreasing: {s:?}")));
        }
        Ok(YoungDiagram::new(rows))
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `k`, in decreasing lexicographic order.
pub fn partitions(k: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram::new(acc.clone()));
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            acc.push(first);
            go(rest - first, first, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k.max(1), &mut Vec::new(), &mut out);
    if k == 0 {
        return vec![YoungDiagram::empty()];
    }
    out
}

/// Highest weights of the irreducible summands of `V_mu (x) V`, as diagrams
/// with at most n rows.
///
/// Realised through the allowable-diagram mechanism: take the allowable
/// preimage of `mu`, move one box in every allowable way, then project with
/// the star map. Both preimages of `mu` (itself and its reflection) give the
/// same set; we use `mu` directly.
pub fn branch(mu: &YoungDiagram, n: usize) -> Result<BTreeSet<YoungDiagram>, DiagramError> {
    if mu.num_rows() > n {
        return Err(DiagramError::TooManyRows);
    }
    let mut out = BTreeSet::new();
    for nu in mu
        .one_box_additions()
        .into_iter()
        .chain(mu.one_box_removals())
    {
        if nu.is_allowable(n) {
            out.insert(nu.star(n));
        }
    }
    Ok(out)
}

/// Quantum superdimension of the irreducible module with dominant highest
/// weight `lambda`, as an exact rational function of q.
pub fn sdim_q(lambda: &Weight, n: usize) -> Result<Fq, ScalarError> {
    assert!(lambda.is_dominant(), "sdim_q needs a dominant weight");
    assert_eq!(lambda.rank(), n, "rank mismatch");
    let rho2 = two_rho(n);
    let sign = if lambda.parity() == 1 {
        Fq::from_i64(-1)
    } else {
        Fq::one()
    };
    let mut acc = sign.mul(&Fq::gen_pow(-bilinear_form(lambda, &rho2)));
    // Even part: eps_i +- eps_j, i < j (the reduced even roots).
    for i in 1..=n {
        for j in (i + 1)..=n {
            for alpha in [
                Weight::eps(i, n).sub(&Weight::eps(j, n)),
                Weight::eps(i, n).add(&Weight::eps(j, n)),
            ] {
                let top = 2 * bilinear_form(lambda, &alpha) + bilinear_form(&rho2, &alpha);
                let bot = bilinear_form(&rho2, &alpha);
                let num = Fq::gen_pow(top).sub(&Fq::one());
                let den = Fq::gen_pow(bot).sub(&Fq::one());
                acc = acc.mul(&num.div(&den)?);
            }
        }
    }
    // Odd part: eps_k.
    for k in 1..=n {
        let beta = Weight::eps(k, n);
        let top = 2 * bilinear_form(lambda, &beta) + bilinear_form(&rho2, &beta);
        let bot = bilinear_form(&rho2, &beta);
        let num = Fq::gen_pow(top).add(&Fq::one());
        let den = Fq::gen_pow(bot).add(&Fq::one());
        acc = acc.mul(&num.div(&den)?);
    }
    Ok(acc)
}

/// Ordinary dimension of the irreducible module with highest weight
/// `lambda`, via the type-B_n Weyl dimension formula (the weight-space
/// structure matches the odd-orthogonal shadow).
pub fn dim_module(lambda: &Weight, n: usize) -> u128 {
    assert!(lambda.is_dominant());
    let l: Vec<i128> = (0..n)
        .map(|i| 2 * lambda.coord(i) as i128 + (2 * (n - i) - 1) as i128)
        .collect();
    let m: Vec<i128> = (0..n).map(|i| (2 * (n - i) - 1) as i128).collect();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..n {
        for j in (i + 1)..n {
            num *= l[i] * l[i] - l[j] * l[j];
            den *= m[i] * m[i] - m[j] * m[j];
        }
        num *= l[i];
        den *= m[i];
    }
    (num / den) as u128
}
