//! Plumbings of disk cotangent bundles of homology spheres along a tree.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::chain::{DegreeHomology, HomologyProfile};
use super::TopoError;
use crate::exactlin::{snf, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingVertex {
    pub name: String,
    pub dim: usize,
    pub homology_sphere: bool,
}

/// Vertex as written in a file: a bare name, or an object with optional
/// dimension and homology-sphere flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexEntry {
    Name(String),
    Full {
        name: String,
        #[serde(default)]
        n: Option<usize>,
        #[serde(default = "default_true")]
        homology_sphere: bool,
    },
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingFile {
    pub n: usize,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingTree {
    n: usize,
    vertices: Vec<PlumbingVertex>,
    edges: Vec<(usize, usize)>,
}

impl PlumbingTree {
    /// Checks equal dimensions, edge bounds and that the graph is a tree.
    pub fn new(n: usize, vertices: Vec<PlumbingVertex>, edges: Vec<(usize, usize)>) -> Result<Self, TopoError> {
        if vertices.is_empty() {
            return Err(TopoError::Domain("a plumbing needs at least one vertex".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.dim != n) {
            return Err(TopoError::Domain(format!("vertex {} has dimension {}, the plumbing has {n}", v.name, v.dim)));
        }
        let k = vertices.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= k || b >= k || a == b) {
            return Err(TopoError::Domain(format!("edge ({a}, {b}) is not between two distinct vertices")));
        }
        if edges.len() + 1 != k || !connected(k, &edges) {
            return Err(TopoError::Domain("the plumbing graph is not a tree".into()));
        }
        Ok(Self { n, vertices, edges })
    }

    pub fn from_file(f: &PlumbingFile) -> Result<Self, TopoError> {
        let vertices = f
            .vertices
            .iter()
            .map(|v| match v {
                VertexEntry::Name(name) => PlumbingVertex { name: name.clone(), dim: f.n, homology_sphere: true },
                VertexEntry::Full { name, n, homology_sphere } => {
                    PlumbingVertex { name: name.clone(), dim: n.unwrap_or(f.n), homology_sphere: *homology_sphere }
                }
            })
            .collect();
        Self::new(f.n, vertices, f.edges.clone())
    }

    pub fn from_json(s: &str) -> Result<Self, TopoError> {
        let f: PlumbingFile = serde_json::from_str(s).map_err(|e| TopoError::Input(e.to_string()))?;
        Self::from_file(&f)
    }

    /// The two-vertex plumbing of `Q` with `Sⁿ`.
    pub fn two_vertex(n: usize) -> Self {
        let v = |name: &str| PlumbingVertex { name: name.into(), dim: n, homology_sphere: true };
        Self::new(n, vec![v("Q"), v(&format!("S{n}"))], vec![(0, 1)]).expect("an edge is a tree")
    }

    /// The E8 tree with `Q` at the end of the long arm and spheres elsewhere.
    /// Vertices 0..=6 form a path, vertex 7 hangs off vertex 4.
    pub fn e8(n: usize) -> Self {
        let mut vertices = vec![PlumbingVertex { name: "Q".into(), dim: n, homology_sphere: true }];
        vertices.extend((1..8).map(|i| PlumbingVertex { name: format!("S{n}_{i}"), dim: n, homology_sphere: true }));
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
        edges.push((4, 7));
        Self::new(n, vertices, edges).expect("the E8 graph is a tree")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[PlumbingVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// True when the tree is the E8 Dynkin diagram: one branch vertex with
    /// arms of lengths 1, 2 and 4.
    pub fn is_e8_shape(&self) -> bool {
        if self.vertices.len() != 8 {
            return false;
        }
        let deg = self.degrees();
        let branch: Vec<usize> = (0..8).filter(|&i| deg[i] >= 3).collect();
        if branch.len() != 1 || deg[branch[0]] != 3 {
            return false;
        }
        let c = branch[0];
        let mut arms: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == c { Some(b) } else if b == c { Some(a) } else { None })
            .map(|start| {
                let (mut prev, mut cur, mut len) = (c, start, 1);
                loop {
                    let next = self.edges.iter().find_map(|&(a, b)| {
                        if a == cur && b != prev {
                            Some(b)
                        } else if b == cur && a != prev {
                            Some(a)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            (prev, cur, len) = (cur, nx, len + 1);
                        }
                        None => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        arms == [1, 2, 4]
    }

    /// Intersection form of the plumbing on `H_n`: self-intersection
    /// `±χ(Q)` on the diagonal, `±1` per edge, symmetric for even `n` and
    /// skew for odd `n`.
    pub fn intersection_form(&self) -> IntMatrix {
        let k = self.vertices.len();
        let mut rows = vec![vec![0i64; k]; k];
        if self.n % 2 == 0 {
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = 2;
            }
        }
        for &(a, b) in &self.edges {
            rows[a][b] = 1;
            rows[b][a] = if self.n % 2 == 0 { 1 } else { -1 };
        }
        IntMatrix::from_rows(&rows).expect("square")
    }
}

fn connected(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryStatus {
    True,
    False,
    Unknown,
}

impl fmt::Display for BoundaryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryStatus::True => "true",
            BoundaryStatus::False => "false",
            BoundaryStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingHomology {
    /// Homology of the wedge of the vertex manifolds the plumbing retracts to.
    pub interior: HomologyProfile,
    pub boundary_homology_sphere: BoundaryStatus,
    /// Boundary homology when it is determined.
    pub boundary: Option<HomologyProfile>,
    pub model: &'static str,
}

impl PlumbingHomology {
    pub fn to_json(&self) -> Value {
        json!({
            "interior": self.interior.to_json(),
            "boundary_homology_sphere": self.boundary_homology_sphere,
            "boundary": self.boundary.as_ref().map(HomologyProfile::to_json),
            "model": self.model,
        })
    }
}

/// Interior homology of the wedge model and the boundary homology read off
/// the intersection form: `H_{n−1}(∂N) = coker` and `H_n(∂N) = ker`, so
/// the boundary is a homology sphere exactly when the form is unimodular.
/// Dimension one is left undecided.
pub fn plumbing_homology(t: &PlumbingTree) -> Result<PlumbingHomology, TopoError> {
    if let Some(v) = t.vertices.iter().find(|v| !v.homology_sphere) {
        return Err(TopoError::Domain(format!("vertex {} is not a homology {}-sphere", v.name, t.n)));
    }
    let n = t.n;
    let k = t.vertices.len();
    let mut degrees = vec![DegreeHomology::default(); n + 1];
    degrees[0].free_rank = 1;
    degrees[n].free_rank += k;
    let interior = HomologyProfile::new(degrees);

    if n < 2 {
        return Ok(PlumbingHomology { interior, boundary_homology_sphere: BoundaryStatus::Unknown, boundary: None, model: WEDGE });
    }
    let d = snf(&t.intersection_form());
    let rank = d.rank();
    let torsion: Vec<_> = d.invariant_factors().into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
    let mut b = vec![DegreeHomology::default(); 2 * n];
    b[0].free_rank += 1;
    b[2 * n - 1].free_rank += 1;
    b[n - 1].free_rank += k - rank;
    b[n - 1].torsion = torsion;
    b[n].free_rank += k - rank;
    let boundary = HomologyProfile::new(b);
    let status = if super::is_homology_sphere(&boundary, 2 * n - 1) { BoundaryStatus::True } else { BoundaryStatus::False };
    Ok(PlumbingHomology { interior, boundary_homology_sphere: status, boundary: Some(boundary), model: WEDGE })
}

const WEDGE: &str = "wedge of the vertex manifolds";
