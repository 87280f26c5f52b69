use super::{edge, Edge, Graph, GraphError};

/// A simple digraph: no loops, no parallel arcs. Antiparallel pairs are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !d.add_arc(u, v) {
                return Err(GraphError::DuplicateArc(u, v));
            }
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Inserts `u -> v`; false if already present. Panics on loops or bad indices.
    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "invalid arc {u}->{v}");
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                true
            }
        }
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        match self.out[u].binary_search(&v) {
            Ok(pos) => {
                self.out[u].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.arcs().all(|(u, v)| other.has_arc(u, v))
    }

    /// Distinct unordered pairs spanned by arcs.
    pub fn underlying_edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self.arcs().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn underlying_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.underlying_edges()).expect("deduplicated pairs are simple")
    }

    /// Vertices reachable from `start` (including it).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}
