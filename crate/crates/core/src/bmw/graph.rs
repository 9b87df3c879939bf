use std::collections::BTreeMap;
use std::fmt;

use crate::roots::{branch, partitions, YoungDiagram};

/// Which tower a Bratteli graph describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// Partitions of t at level t, edges add one box.
    YoungLattice,
    /// Partitions of t, t-2, ... at level t, edges move one box.
    BmwGeneric,
    /// Same as BmwGeneric restricted to allowable diagrams
    /// (first two columns sum to at most 2n+1).
    BmwQuotient(usize),
    /// Star images of the quotient: diagrams with at most n rows, edges by
    /// the tensor branching rule.
    FundamentalModule(usize),
    /// Two-row diagrams with t boxes at level t, edges add one box.
    Spinor,
}

/// A levelled multiplicity-free graph of Young diagrams.
#[derive(Clone, Debug)]
pub struct BrattelliGraph {
    kind: GraphKind,
    levels: Vec<Vec<YoungDiagram>>,
    /// `edges[l][v]` lists indices into `levels[l+1]`.
    edges: Vec<Vec<Vec<usize>>>,
}

impl BrattelliGraph {
    pub fn new(kind: GraphKind, num_levels: usize) -> Self {
        let mut levels: Vec<Vec<YoungDiagram>> = vec![vec![YoungDiagram::empty()]];
        for t in 1..=num_levels {
            let prev = &levels[t - 1];
            let mut next: Vec<YoungDiagram> = Vec::new();
            for v in prev {
                for w in Self::successors(&kind, v) {
                    if !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
            next.sort();
            levels.push(next);
        }
        let mut edges = Vec::new();
        for t in 0..num_levels {
            let mut lv = Vec::new();
            for v in &levels[t] {
                let succ = Self::successors(&kind, v);
                lv.push(
                    levels[t + 1]
                        .iter()
                        .enumerate()
                        .filter(|(_, w)| succ.contains(w))
                        .map(|(i, _)| i)
                        .collect(),
                );
            }
            edges.push(lv);
        }
        BrattelliGraph {
            kind,
            levels,
            edges,
        }
    }

    fn successors(kind: &GraphKind, v: &YoungDiagram) -> Vec<YoungDiagram> {
        match kind {
            GraphKind::YoungLattice => v.one_box_additions(),
            GraphKind::BmwGeneric => {
                let mut out = v.one_box_additions();
                out.extend(v.one_box_removals());
                out
            }
            GraphKind::BmwQuotient(n) => {
                let mut out: Vec<YoungDiagram> = v.one_box_additions();
                out.extend(v.one_box_removals());
                out.retain(|w| w.is_allowable(*n));
                out
            }
            GraphKind::FundamentalModule(n) => {
                branch(v, *n).expect("vertices have at most n rows").into_iter().collect()
            }
            GraphKind::Spinor => {
                let mut out = v.one_box_additions();
                out.retain(|w| w.num_rows() <= 2);
                out
            }
        }
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertices(&self, level: usize) -> &[YoungDiagram] {
        &self.levels[level]
    }

    pub fn neighbors(&self, level: usize, v: usize) -> &[usize] {
        &self.edges[level][v]
    }

    /// All paths from the root to level `t`, in lexicographic shape order.
    pub fn paths(&self, t: usize) -> Vec<Path> {
        assert!(t <= self.num_levels());
        let mut out = vec![Path {
            shapes: vec![YoungDiagram::empty()],
        }];
        for level in 0..t {
            let mut next = Vec::new();
            for p in &out {
                let vi = self.levels[level]
                    .iter()
                    .position(|d| d == p.shape())
                    .expect("path vertex in graph");
                for &w in &self.edges[level][vi] {
                    let mut shapes = p.shapes.clone();
                    shapes.push(self.levels[level + 1][w].clone());
                    next.push(Path { shapes });
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.shapes.cmp(&b.shapes));
        out
    }

    /// Number of paths from the root to each level-`t` vertex.
    pub fn path_counts(&self, t: usize) -> BTreeMap<YoungDiagram, u64> {
        assert!(t <= self.num_levels());
        let mut counts: Vec<u64> = vec![1];
        for level in 0..t {
            let mut next = vec![0u64; self.levels[level + 1].len()];
            for (v, c) in counts.iter().enumerate() {
                for &w in &self.edges[level][v] {
                    next[w] += c;
                }
            }
            counts = next;
        }
        self.levels[t]
            .iter()
            .cloned()
            .zip(counts)
            .filter(|(_, c)| *c > 0)
            .collect()
    }

    /// GraphViz rendering with one rank per level.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n");
        for (t, level) in self.levels.iter().enumerate() {
            s.push_str("  { rank=same; ");
            for (i, v) in level.iter().enumerate() {
                s.push_str(&format!("\"L{t}_{i}\" [label=\"{v}\"]; "));
            }
            s.push_str("}\n");
        }
        for (t, lv) in self.edges.iter().enumerate() {
            for (v, succ) in lv.iter().enumerate() {
                for w in succ {
                    s.push_str(&format!("  \"L{t}_{v}\" -> \"L{}_{w}\";\n", t + 1));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A path in a Bratteli graph: adjacent shapes starting at the empty diagram.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct Path {
    shapes: Vec<YoungDiagram>,
}

impl Path {
    /// Consecutive shapes must be edges of some tower graph: one-box moves
    /// for the diagram towers, or star images of one-box moves for the
    /// fundamental-module tower (where a shape may repeat, e.g. [1] -> [1]
    /// at rank 1 through the reflected preimage).
    pub fn new(shapes: Vec<YoungDiagram>) -> Self {
        assert!(!shapes.is_empty());
        assert!(shapes[0] == YoungDiagram::empty(), "paths start empty");
        Path { shapes }
    }

    pub fn root() -> Self {
        Path {
            shapes: vec![YoungDiagram::empty()],
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shapes(&self) -> &[YoungDiagram] {
        &self.shapes
    }

    pub fn shape(&self) -> &YoungDiagram {
        self.shapes.last().unwrap()
    }

    pub fn shape_at(&self, level: usize) -> &YoungDiagram {
        &self.shapes[level]
    }

    /// Drop the last shape.
    pub fn truncated(&self) -> Path {
        assert!(self.len() >= 1);
        Path {
            shapes: self.shapes[..self.shapes.len() - 1].to_vec(),
        }
    }

    pub fn extended(&self, shape: YoungDiagram) -> Path {
        let mut shapes = self.shapes.clone();
        shapes.push(shape);
        Path { shapes }
    }

    /// Whether every step adds a box (a standard-tableau path).
    pub fn is_tableau(&self) -> bool {
        self.shapes
            .windows(2)
            .all(|w| w[1].num_boxes() == w[0].num_boxes() + 1)
    }

    /// For a tableau path: the (row, col) of the box added at step `k`
    /// (1-based), i.e. the cell containing the number `k` in the canonical
    /// standard-tableau filling.
    pub fn box_added_at(&self, k: usize) -> (usize, usize) {
        assert!(k >= 1 && k <= self.len());
        let before = &self.shapes[k - 1];
        let after = &self.shapes[k];
        assert_eq!(after.num_boxes(), before.num_boxes() + 1);
        for i in 0..after.num_rows() {
            if after.row(i) != before.row(i) {
                return (i, after.row(i) - 1);
            }
        }
        unreachable!("adjacent diagrams differ in some row")
    }

    /// Replace every shape by its star image (at most n rows); maps paths of
    /// the quotient graph onto paths of the fundamental-module graph.
    pub fn star_image(&self, n: usize) -> Path {
        Path {
            shapes: self.shapes.iter().map(|d| d.star(n)).collect(),
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.shapes.iter().enumerate() {
            if i > 0 {
                write!(f, "<")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Axial distance `d(T, i) = c(i+1) - c(i) - r(i+1) + r(i)` for a tableau
/// path, from the canonical filling that numbers boxes in path order.
pub fn tableau_d(path: &Path, i: usize) -> i64 {
    assert!(path.is_tableau(), "axial distance needs a tableau path");
    assert!(i >= 1 && i + 1 <= path.len());
    let (r0, c0) = path.box_added_at(i);
    let (r1, c1) = path.box_added_at(i + 1);
    (c1 as i64 - c0 as i64) - (r1 as i64 - r0 as i64)
}

/// The canonical tableau path of a shape: boxes added in row-major order.
pub fn canonical_tableau_path(shape: &YoungDiagram) -> Path {
    let mut shapes = vec![YoungDiagram::empty()];
    let mut rows: Vec<usize> = Vec::new();
    for (i, &len) in shape.rows().iter().enumerate() {
        for j in 1..=len {
            if rows.len() <= i {
                rows.push(0);
            }
            rows[i] = j;
            shapes.push(YoungDiagram::new(rows.clone()));
        }
    }
    Path { shapes }
}

/// All partitions appearing at the given level of the generic two-step
/// filtration: `t, t-2, t-4, ...` boxes.
pub fn bmw_level_shapes(t: usize) -> Vec<YoungDiagram> {
    let mut out = Vec::new();
    let mut k = t as i64;
    while k >= 0 {
        out.extend(partitions(k as usize));
        k -= 2;
    }
    out.sort();
    out
}
