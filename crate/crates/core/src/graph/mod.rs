//! Simple graphs and digraphs on dense vertex indices `0..n`.

mod balanced;
mod components;
mod digraph;
mod iso;

pub use balanced::{strictly_2_balanced_subgraph, BalanceError, MAX_BALANCE_VERTICES};
pub(crate) use balanced::lex_smaller;
pub use components::{strong_components, ComponentPartition};
pub use digraph::Digraph;
pub use iso::contains_subgraph;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An undirected edge stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair.
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate arc {0}->{1}")]
    DuplicateArc(usize, usize),
}

/// A simple undirected graph.
///
/// Edges are kept sorted; adjacency is available both as sorted neighbor
/// lists and as a dense bit matrix for constant-time `has_edge`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(repr: GraphRepr) -> Result<Self, Self::Error> {
        Graph::from_edges(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            edges: Vec::new(),
            neighbors: vec![Vec::new(); n],
            words,
            bits: vec![0; words * n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            list.push(edge(u, v));
        }
        list.sort_unstable();
        for &(u, v) in &list {
            g.neighbors[u].push(v);
            g.neighbors[v].push(u);
        }
        for nb in &mut g.neighbors {
            nb.sort_unstable();
        }
        g.edges = list;
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, pairs).expect("complete graph is simple")
    }

    /// The cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    fn set_bit(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Position of the edge `uv` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    /// Neighborhood bitmasks, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| (0..self.n).map(|v| self.bits[v * self.words]).collect())
    }

    /// The spanning subgraph on the same vertex set with the given edges.
    pub fn spanning_subgraph<I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        Graph::from_edges(self.n, edges)
    }

    /// `G - F`: the spanning subgraph of all edges not in `removed`.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut drop: Vec<Edge> = removed.iter().map(|&(u, v)| edge(u, v)).collect();
        drop.sort_unstable();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| drop.binary_search(e).is_err());
        Graph::from_edges(self.n, kept).expect("subgraph of a simple graph is simple")
    }

    /// The subgraph induced by `vertices`, relabelled to `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut label = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            label[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| label[u] != usize::MAX && label[v] != usize::MAX)
            .map(|&(u, v)| (label[u], label[v]));
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph is simple")
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut sets = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            sets.union(u, v);
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            by_root[sets.find(v)].push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// `e - v + c`: the number of independent cycles.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.connected_components().len() - self.n
    }

    /// A shortest path from `from` to `to` in this graph, endpoints included.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.neighbors[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Number of copies of `K4` (as vertex sets).
    pub fn count_k4(&self) -> usize {
        let mut count = 0;
        for &(a, b) in &self.edges {
            let common: Vec<usize> = self.neighbors[a]
                .iter()
                .copied()
                .filter(|&c| c > b && self.has_edge(b, c))
                .collect();
            for (i, &c) in common.iter().enumerate() {
                count += common[i + 1..].iter().filter(|&&d| self.has_edge(c, d)).count();
            }
        }
        count
    }
}

/// True iff `g` has no cycle.
pub fn is_forest(g: &Graph) -> bool {
    let mut sets = DisjointSets::new(g.n());
    g.edges().iter().all(|&(u, v)| sets.union(u, v))
}

/// True iff every connected component has at most one cycle (`e <= v`).
pub fn is_pseudoforest(g: &Graph) -> bool {
    let mut sets = DisjointSets::new(g.n());
    for &(u, v) in g.edges() {
        sets.union(u, v);
    }
    let mut vertices = vec![0usize; g.n()];
    let mut edges = vec![0usize; g.n()];
    for v in 0..g.n() {
        vertices[sets.find(v)] += 1;
    }
    for &(u, _) in g.edges() {
        edges[sets.find(u)] += 1;
    }
    vertices.iter().zip(&edges).all(|(v, e)| e <= v)
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn forest_examples() {
        assert!(is_forest(&Graph::empty(0)));
        assert!(is_forest(&Graph::empty(5)));
        assert!(is_forest(&Graph::path(4)));
        assert!(!is_forest(&Graph::cycle(3)));
    }

    #[test]
    fn pseudoforest_examples() {
        assert!(is_pseudoforest(&Graph::cycle(5)));
        assert!(!is_pseudoforest(&Graph::complete(4)));
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(is_pseudoforest(&two_triangles));
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(!is_pseudoforest(&bowtie));
    }

    #[test]
    fn k4_counting() {
        assert_eq!(Graph::complete(4).count_k4(), 1);
        assert_eq!(Graph::complete(5).count_k4(), 5);
        assert_eq!(Graph::complete(6).count_k4(), 15);
        assert_eq!(Graph::cycle(6).count_k4(), 0);
    }

    #[test]
    fn serde_round_trip() {
        let g = Graph::cycle(5);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn induced_and_without() {
        let k4 = Graph::complete(4);
        let tri = k4.induced_subgraph(&[0, 2, 3]);
        assert_eq!(tri.edge_count(), 3);
        let rest = k4.without_edges(&[(1, 0), (2, 3)]);
        assert_eq!(rest.edge_count(), 4);
        assert!(!rest.has_edge(0, 1));
        assert_eq!(k4.cyclomatic_number(), 3);
    }
}
