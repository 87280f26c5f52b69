//! Spines: out-degree-one forests threaded through the strong components of a digraph.
//!
//! A spine `H` of a digraph `D` is a spanning subdigraph in which every vertex
//! of a non-terminal component has out-degree 1, every terminal component has
//! at most one vertex of out-degree 0 (its root) and all others out-degree 1,
//! and whose underlying graph is a forest.

use std::collections::VecDeque;

use thiserror::Error;

use crate::allocation::Allocation;
use crate::graph::{is_forest, is_pseudoforest, strong_components, ComponentPartition, Digraph, Graph};
use crate::rational::int;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spine {
    pub digraph: Digraph,
    /// One root per terminal component, sorted.
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpineError {
    #[error("root {0} is out of range")]
    RootOutOfRange(usize),
    #[error("root {0} lies in a non-terminal component")]
    RootNotTerminal(usize),
    #[error("terminal component {component:?} has no root")]
    MissingRoot { component: Vec<usize> },
    #[error("terminal component {component:?} has two roots")]
    DuplicateRoot { component: Vec<usize> },
    #[error("arc {0}->{1} is not in the digraph")]
    ForeignArc(usize, usize),
    #[error("vertex {vertex} has out-degree {degree} in the spine")]
    BadOutDegree { vertex: usize, degree: usize },
    #[error("the underlying graph contains a cycle")]
    NotAForest,
}

impl Spine {
    /// The underlying undirected forest.
    pub fn forest(&self) -> Graph {
        self.digraph.underlying_graph()
    }

    /// Checks the spine conditions against `d`, and that the out-degree-0
    /// vertices of non-singleton terminal components are exactly the roots.
    pub fn validate(&self, d: &Digraph) -> Result<(), SpineError> {
        for (u, v) in self.digraph.arcs() {
            if !d.has_arc(u, v) {
                return Err(SpineError::ForeignArc(u, v));
            }
        }
        let parts = strong_components(d);
        check_roots(&parts, d.n(), &self.roots)?;
        let mut is_root = vec![false; d.n()];
        for &r in &self.roots {
            is_root[r] = true;
        }
        for v in 0..d.n() {
            let degree = self.digraph.out_degree(v);
            let expected = if is_root[v] { 0 } else { 1 };
            if degree != expected {
                return Err(SpineError::BadOutDegree { vertex: v, degree });
            }
        }
        if !is_forest(&self.forest()) {
            return Err(SpineError::NotAForest);
        }
        Ok(())
    }
}

fn check_roots(parts: &ComponentPartition, n: usize, roots: &[usize]) -> Result<(), SpineError> {
    let mut hits = vec![0usize; parts.len()];
    for &r in roots {
        if r >= n {
            return Err(SpineError::RootOutOfRange(r));
        }
        let c = parts.component_of(r);
        if !parts.is_terminal(c) {
            return Err(SpineError::RootNotTerminal(r));
        }
        hits[c] += 1;
    }
    for c in parts.terminal_components() {
        let component = parts.components()[c].clone();
        match hits[c] {
            0 => return Err(SpineError::MissingRoot { component }),
            1 => {}
            _ => return Err(SpineError::DuplicateRoot { component }),
        }
    }
    Ok(())
}

/// Builds a spine whose out-degree-0 vertices are exactly `roots`.
///
/// Each strong component gets a spanning in-tree found by reverse BFS from
/// its root; a non-terminal component is rooted at the tail of its
/// lexicographically smallest leaving arc, which is added as the escape arc.
pub fn build_spine(d: &Digraph, roots: &[usize]) -> Result<Spine, SpineError> {
    let parts = strong_components(d);
    check_roots(&parts, d.n(), roots)?;
    let n = d.n();
    let mut predecessors = vec![Vec::new(); n];
    for (u, v) in d.arcs() {
        predecessors[v].push(u);
    }
    let mut root_of = vec![usize::MAX; parts.len()];
    for &r in roots {
        root_of[parts.component_of(r)] = r;
    }
    let mut h = Digraph::empty(n);
    for (c, members) in parts.components().iter().enumerate() {
        let root = if parts.is_terminal(c) {
            root_of[c]
        } else {
            let (x, y) = members
                .iter()
                .flat_map(|&x| d.out_neighbors(x).iter().map(move |&y| (x, y)))
                .filter(|&(_, y)| parts.component_of(y) != c)
                .min()
                .expect("a non-terminal component has a leaving arc");
            h.add_arc(x, y);
            x
        };
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(y) = queue.pop_front() {
            for &x in &predecessors[y] {
                if !seen[x] && parts.component_of(x) == c {
                    seen[x] = true;
                    h.add_arc(x, y);
                    queue.push_back(x);
                }
            }
        }
    }
    let mut roots = roots.to_vec();
    roots.sort_unstable();
    let spine = Spine { digraph: h, roots };
    debug_assert_eq!(spine.validate(d), Ok(()));
    Ok(spine)
}

/// The smallest vertex of every terminal component.
pub fn default_roots(d: &Digraph) -> Vec<usize> {
    let parts = strong_components(d);
    parts.terminal_components().map(|c| parts.components()[c][0]).collect()
}

/// Adds the smallest out-arc of `d` to every spine vertex that has none but
/// has an out-arc in `d`. The underlying graph is a pseudoforest.
pub fn extend_to_pseudospine(s: &Spine, d: &Digraph) -> Digraph {
    let mut h = s.digraph.clone();
    for v in 0..d.n() {
        if h.out_degree(v) == 0 {
            if let Some(&w) = d.out_neighbors(v).first() {
                h.add_arc(v, w);
            }
        }
    }
    debug_assert!(is_pseudoforest(&h.underlying_graph()));
    h
}

/// Why good-arc root selection failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodArcError {
    #[error("good-arc roots need m < 2")]
    BoundTooLarge,
    #[error("terminal component {component:?} is not a directed cycle")]
    NotACycle { component: Vec<usize> },
    #[error("no arc of terminal cycle {component:?} avoids a common fractional neighbor (common neighbor of all: {star_center:?})")]
    NoGoodArc {
        component: Vec<usize>,
        /// A fractional neighbor of every vertex of the component, if one exists.
        star_center: Option<usize>,
    },
}

/// Roots for the forest construction below `m = 2`: for every non-singleton
/// terminal component (a directed cycle), the smallest tail `u` of an arc
/// `(u, v)` whose endpoints share no fractional neighbor; singleton terminal
/// components root themselves.
pub fn choose_roots_good_arcs(a: &Allocation) -> Result<Vec<usize>, GoodArcError> {
    if *a.m() >= int(2) {
        return Err(GoodArcError::BoundTooLarge);
    }
    let d = a.integral_digraph();
    let frac = a.fractional_graph();
    let parts = strong_components(&d);
    let mut roots = Vec::new();
    for c in parts.terminal_components() {
        let component = &parts.components()[c];
        if component.len() == 1 {
            roots.push(component[0]);
            continue;
        }
        if component.iter().any(|&v| d.out_degree(v) != 1) {
            return Err(GoodArcError::NotACycle {
                component: component.clone(),
            });
        }
        let good = component.iter().copied().find(|&u| {
            let v = d.out_neighbors(u)[0];
            !frac.neighbors(u).iter().any(|&x| frac.has_edge(x, v))
        });
        match good {
            Some(u) => roots.push(u),
            None => {
                let star_center = (0..frac.n()).find(|&x| component.iter().all(|&v| frac.has_edge(x, v)));
                return Err(GoodArcError::NoGoodArc {
                    component: component.clone(),
                    star_center,
                });
            }
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

/// `G - F` for the forest underlying `h`.
pub fn complement_of(g: &Graph, h: &Digraph) -> Graph {
    g.without_edges(&h.underlying_edges())
}

/// Re-roots terminal components while that lowers the number of `K4`s in `G - F`.
pub fn minimize_k4_reroot(a: &Allocation, s: &Spine) -> Spine {
    minimize_k4_reroot_traced(a, s).0
}

/// As [`minimize_k4_reroot`], also returning the `K4` count before and after
/// every accepted exchange.
///
/// The exchange at a root `r` with an out-arc `(r, u)` of `D_θ`: `H + (r, u)`
/// has one directed cycle, through `(r, u)`; removing the spine arc `(u, v)`
/// leaving `u` gives a spine rooted at `u`.
pub fn minimize_k4_reroot_traced(a: &Allocation, s: &Spine) -> (Spine, Vec<usize>) {
    let g = a.graph();
    let d = a.integral_digraph();
    let mut current = s.clone();
    let mut count = complement_of(g, &current.digraph).count_k4();
    let mut history = vec![count];
    'search: while count > 0 {
        for (i, &r) in current.roots.iter().enumerate() {
            for &u in d.out_neighbors(r) {
                let v = current.digraph.out_neighbors(u)[0];
                let mut h = current.digraph.clone();
                h.add_arc(r, u);
                h.remove_arc(u, v);
                let next_count = complement_of(g, &h).count_k4();
                if next_count < count {
                    let mut roots = current.roots.clone();
                    roots[i] = u;
                    roots.sort_unstable();
                    current = Spine { digraph: h, roots };
                    debug_assert_eq!(current.validate(&d), Ok(()));
                    count = next_count;
                    history.push(count);
                    continue 'search;
                }
            }
        }
        break;
    }
    (current, history)
}
