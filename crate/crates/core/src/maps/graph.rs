use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::MapError;
use crate::field::QuadScalar;
use crate::linalg::ExactMatrix;

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

/// JSON layout `{"n": 4, "edges": [[0, 1], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for SimpleGraph {
    type Error = MapError;
    fn try_from(f: GraphFile) -> Result<Self, MapError> {
        SimpleGraph::new(f.n, f.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<SimpleGraph> for GraphFile {
    fn from(g: SimpleGraph) -> Self {
        GraphFile {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl SimpleGraph {
    /// Rejects loops, repeated edges and out-of-range endpoints. Edges are
    /// stored as sorted pairs `(u, v)` with `u < v`.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MapError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(MapError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(MapError::Loop(u));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(MapError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph::new(n, []).expect("no edges")
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, MapError> {
        if n < 3 {
            return Err(MapError::Format(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid")
    }

    /// `K_{a,b}` with side A = `0..a` and side B = `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        SimpleGraph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Non-adjacent pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.has_edge(a, b))
            .collect()
    }

    pub fn complement(&self) -> Self {
        SimpleGraph::new(self.n, self.non_edges()).expect("valid")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// 0/1 adjacency matrix over Q.
    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, QuadScalar::one()).expect("rational");
            m.set(v, u, QuadScalar::one()).expect("rational");
        }
        m
    }

    /// One `u v` line per edge, preceded by a `# vertices n` header so that
    /// isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# vertices {}\n", self.n);
        for &(u, v) in &self.edges {
            writeln!(s, "{u} {v}").expect("string write");
        }
        s
    }

    /// Parses the edge-list format. Without a `# vertices` header the vertex
    /// count is one more than the largest endpoint.
    pub fn from_edge_list(text: &str) -> Result<Self, MapError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(count) = rest.trim().strip_prefix("vertices") {
                    n = Some(count.trim().parse().map_err(|_| {
                        MapError::Format(format!("line {}: bad vertex count", lineno + 1))
                    })?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| MapError::Format(format!("line {}: bad vertex {s:?}", lineno + 1)))
            };
            match parts.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => {
                    return Err(MapError::Format(format!(
                        "line {}: expected two vertices",
                        lineno + 1
                    )))
                }
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        SimpleGraph::new(n, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MapError> {
        serde_json::from_str(text).map_err(|e| MapError::Format(e.to_string()))
    }
}
