//! Partitioning edges into `k` forests by matroid-union augmentation.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{edge, Edge, Graph};

/// `k` edge-disjoint forests covering every edge of `graph`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestPartition {
    pub graph: Graph,
    pub k: usize,
    pub forests: Vec<Vec<Edge>>,
}

struct Forests {
    adjacency: Vec<Vec<BTreeSet<usize>>>,
    owner: HashMap<Edge, usize>,
}

impl Forests {
    fn new(n: usize, k: usize) -> Self {
        Forests {
            adjacency: vec![vec![BTreeSet::new(); n]; k],
            owner: HashMap::new(),
        }
    }

    fn insert(&mut self, f: usize, (u, v): Edge) {
        self.adjacency[f][u].insert(v);
        self.adjacency[f][v].insert(u);
        self.owner.insert((u, v), f);
    }

    fn remove(&mut self, (u, v): Edge) {
        let f = self.owner.remove(&(u, v)).expect("edge is placed");
        self.adjacency[f][u].remove(&v);
        self.adjacency[f][v].remove(&u);
    }

    /// Edges of the path joining `u` and `v` in forest `f`, if connected.
    fn path(&self, f: usize, u: usize, v: usize) -> Option<Vec<Edge>> {
        let adjacency = &self.adjacency[f];
        let mut parent = vec![usize::MAX; adjacency.len()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut edges = Vec::new();
                let mut y = v;
                while y != u {
                    edges.push(edge(parent[y], y));
                    y = parent[y];
                }
                return Some(edges);
            }
            for &y in &adjacency[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

/// Partitions the edges of `g` into `k` forests, or `None` when `m1(g) > k`.
///
/// Edges are inserted one at a time. An edge that closes a cycle in every
/// forest starts a breadth-first search over exchanges: an edge `x` may enter
/// forest `i` by pushing out an edge of the cycle it closes there. A shortest
/// exchange sequence ending at a forest where the moved edge closes no cycle is
/// applied; if none exists the edges reached span a set with more than
/// `k (v - 1)` edges.
pub fn nash_williams_partition(g: &Graph, k: usize) -> Option<ForestPartition> {
    if k == 0 {
        return (g.edge_count() == 0).then(|| ForestPartition {
            graph: g.clone(),
            k,
            forests: Vec::new(),
        });
    }
    let mut forests = Forests::new(g.n(), k);
    for &e in g.edges() {
        if !augment(&mut forests, k, e) {
            return None;
        }
    }
    let mut parts = vec![Vec::new(); k];
    for &e in g.edges() {
        parts[forests.owner[&e]].push(e);
    }
    Some(ForestPartition {
        graph: g.clone(),
        k,
        forests: parts,
    })
}

fn augment(forests: &mut Forests, k: usize, new: Edge) -> bool {
    // label[x] = (y, i): x was reached by moving y into forest i, which pushes x out.
    let mut label: HashMap<Edge, (Edge, usize)> = HashMap::new();
    let mut queue = VecDeque::from([new]);
    let mut seen: BTreeSet<Edge> = BTreeSet::from([new]);
    while let Some(x) = queue.pop_front() {
        let home = forests.owner.get(&x).copied();
        for i in (0..k).filter(|&i| Some(i) != home) {
            match forests.path(i, x.0, x.1) {
                None => {
                    apply(forests, &label, x, i);
                    return true;
                }
                Some(cycle) => {
                    for y in cycle {
                        if seen.insert(y) {
                            label.insert(y, (x, i));
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
    }
    false
}

fn apply(forests: &mut Forests, label: &HashMap<Edge, (Edge, usize)>, mut x: Edge, mut target: usize) {
    loop {
        if forests.owner.contains_key(&x) {
            forests.remove(x);
        }
        forests.insert(target, x);
        match label.get(&x) {
            None => return,
            Some(&(y, i)) => {
                // x left forest i to make room for y.
                x = y;
                target = i;
            }
        }
    }
}
