//! Graph model, the magic constraint system and the built-in catalog.
//!
//! A graph is a list of vertices `v1..vm` and an ordered list of edges
//! `a1..an` given as 1-indexed endpoint pairs. Loops and parallel edges are
//! permitted. The edge order is fixed at construction and defines the
//! coordinate order of every labelling vector downstream.
//!
//! The magic condition for a labelling `α ∈ ℕⁿ` with magic sum `s` is
//! `A·(α, s)ᵀ = 0`, where `A` is the `m × (n+1)` incidence matrix with a
//! trailing `-1` column for `-s`. A loop contributes its label *once* to
//! its vertex's weight, so every incidence entry is 0 or 1.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::{Error, Result};

/// Names of the built-in catalog graphs.
pub const CATALOG_NAMES: [&str; 6] = ["G1", "G2", "G3", "G4", "G5a", "G5b"];

/// An immutable finite multigraph with numbered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    num_vertices: usize,
    /// 1-indexed endpoint pairs, in the fixed edge order.
    edges: Vec<(usize, usize)>,
    /// Edges incident to each vertex (0-indexed vertex -> 0-indexed edge ids).
    incidence: Vec<Vec<usize>>,
}

/// A vector of edge labels in the graph's fixed edge order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labelling(pub Vec<u32>);

impl Labelling {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Unit-vector sum helper: builds the labelling with value 1 on the given
    /// 1-indexed edges (repeats accumulate).
    pub fn from_support(num_edges: usize, support: &[usize]) -> Self {
        let mut v = vec![0u32; num_edges];
        for &e in support {
            v[e - 1] += 1;
        }
        Labelling(v)
    }
}

impl std::fmt::Display for Labelling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The `m × (n+1)` integer matrix of the magic constraints.
///
/// The first `n` columns are vertex-edge incidence counts (0 or 1; a loop
/// counts once), the last column is the constant `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl ConstraintSystem {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Evaluates `A·z` for an `(n+1)`-vector `z = (α, s)`.
    pub fn apply(&self, z: &[i64]) -> Vec<i64> {
        assert_eq!(z.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(z).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// True iff `(α, s)` lies in the nullspace.
    pub fn is_solution(&self, z: &[i64]) -> bool {
        self.apply(z).iter().all(|&x| x == 0)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    name: String,
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph from 1-indexed endpoint pairs.
    pub fn new(name: impl Into<String>, num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let name = name.into();
        if num_vertices == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        for &(u, v) in &edges {
            if u == 0 || u > num_vertices || v == 0 || v > num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has an endpoint outside 1..={num_vertices}"
                )));
            }
        }
        let mut incidence = vec![Vec::new(); num_vertices];
        for (k, &(u, v)) in edges.iter().enumerate() {
            incidence[u - 1].push(k);
            if v != u {
                incidence[v - 1].push(k);
            }
        }
        Ok(Graph { name, num_vertices, edges, incidence })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// 1-indexed endpoints of the 1-indexed edge `k`.
    pub fn edge(&self, k: usize) -> (usize, usize) {
        self.edges[k - 1]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// 0-indexed ids of the edges incident to 1-indexed vertex `v`
    /// (a loop appears once).
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v - 1]
    }

    /// Degree with loops counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v - 1].len()
    }

    /// Common vertex degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(1);
        (2..=self.num_vertices).all(|v| self.degree(v) == d).then_some(d)
    }

    /// The constraint matrix `A` with the trailing `-s` column.
    pub fn constraint_matrix(&self) -> ConstraintSystem {
        let rows = self.num_vertices;
        let cols = self.num_edges() + 1;
        let mut entries = vec![0i64; rows * cols];
        for v in 0..rows {
            for &k in &self.incidence[v] {
                entries[v * cols + k] = 1;
            }
            entries[v * cols + cols - 1] = -1;
        }
        ConstraintSystem { rows, cols, entries }
    }

    /// Sum of labels over the edges incident to `v` (1-indexed), loops
    /// counted once.
    pub fn weight(&self, lab: &Labelling, v: usize) -> Result<u64> {
        if v == 0 || v > self.num_vertices {
            return Err(Error::VertexOutOfRange { index: v, num_vertices: self.num_vertices });
        }
        if lab.len() != self.num_edges() {
            return Err(Error::LabellingLength { got: lab.len(), expected: self.num_edges() });
        }
        Ok(self.incidence[v - 1].iter().map(|&k| lab.0[k] as u64).sum())
    }

    /// Returns the magic sum if every vertex weight coincides.
    ///
    /// An isolated vertex has weight 0, so it forces `s = 0`; that case is
    /// reported like any other, not rejected.
    pub fn is_magic(&self, lab: &Labelling) -> Result<Option<u64>> {
        if lab.len() != self.num_edges() {
            return Err(Error::LabellingLength { got: lab.len(), expected: self.num_edges() });
        }
        let s = self.weight(lab, 1)?;
        for v in 2..=self.num_vertices {
            if self.weight(lab, v)? != s {
                return Ok(None);
            }
        }
        Ok(Some(s))
    }

    /// All perfect matchings, as sorted lists of 1-indexed edge ids.
    ///
    /// Loops never participate. Used to pin the catalog edge numberings.
    pub fn perfect_matchings(&self) -> Vec<Vec<usize>> {
        let mut covered = vec![false; self.num_vertices];
        let mut current = Vec::new();
        let mut out = Vec::new();
        self.matchings_rec(&mut covered, &mut current, &mut out);
        out.sort();
        out
    }

    fn matchings_rec(&self, covered: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            let mut matching = current.clone();
            matching.sort_unstable();
            out.push(matching);
            return;
        };
        for &k in &self.incidence[v] {
            let (u, w) = self.edges[k];
            if u == w {
                continue;
            }
            let other = if u - 1 == v { w - 1 } else { u - 1 };
            if covered[other] {
                continue;
            }
            covered[v] = true;
            covered[other] = true;
            current.push(k + 1);
            self.matchings_rec(covered, current, out);
            current.pop();
            covered[v] = false;
            covered[other] = false;
        }
    }

    /// Reads the JSON graph format:
    /// `{"name": str, "vertices": int, "edges": [[u,v], ...]}` (1-indexed).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Graph::new(file.name, file.vertices, file.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Graph::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            name: self.name.clone(),
            vertices: self.num_vertices,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph serializes")
    }
}

/// Looks up a built-in graph by name (`G1`, `G2`, `G3`, `G4`, `G5a`, `G5b`).
///
/// Edge numberings are fixed by the equation systems the catalog reproduces,
/// not by drawing geometry; see the module tests for the pinning checks.
pub fn catalog_graph(name: &str) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match name {
        // K4: vertex rows x1+x4+x5, x1+x2+x6, x2+x3+x5, x3+x4+x6.
        "G1" => vec![(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4)],
        // Triangular prism: triangles {v2,v4,v6} (edges 1,2,3) and
        // {v1,v3,v5} (edges 4,5,6), rungs 7,8,9.
        "G2" => vec![(2, 6), (2, 4), (4, 6), (1, 3), (3, 5), (1, 5), (2, 5), (1, 4), (3, 6)],
        // 5-cycle v1..v5 plus a triangle-ish top v6,v7,v8; vertex rows
        // x1+x5+x6 | x1+x2+x7 | x2+x3+x8 | x3+x4+x9 | x4+x5+x10 |
        // x7+x8+x11 | x9+x11+x12 | x6+x10+x12.
        "G3" => vec![
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (1, 8),
            (2, 6),
            (3, 6),
            (4, 7),
            (5, 8),
            (6, 7),
            (7, 8),
        ],
        // Hexagon v1..v6 plus the three antipodal diagonals (a K_{3,3}
        // drawing); numbering chosen so the six perfect matchings are
        // {1,4,8},{2,4,6},{2,5,9},{3,6,7},{1,3,5},{7,8,9}.
        "G4" => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (2, 5), (3, 6), (1, 4)],
        // Only the all-zero labelling is magic: pendant v1 forces the hub's
        // remaining labels to 0, and the leftover 4-cycle-with-chord forces
        // s = 0.
        "G5a" => vec![(1, 2), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)],
        // Triangle v2,v3,v4 with pendant v1: labels of edges 2 and 3 are
        // forced to 0 and the monoid is generated by e1+e4.
        "G5b" => vec![(1, 2), (2, 3), (2, 4), (3, 4)],
        _ => return Err(Error::UnknownGraph(name.to_string())),
    };
    let num_vertices = match name {
        "G1" => 4,
        "G2" => 6,
        "G3" => 8,
        "G4" => 6,
        "G5a" => 5,
        "G5b" => 4,
        _ => unreachable!(),
    };
    Graph::new(name, num_vertices, edges)
}
