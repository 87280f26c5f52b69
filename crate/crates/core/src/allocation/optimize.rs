//! Local search over cycle shifts, driven by the lexicographic potential.
//!
//! Candidate shifts, in the order they are tried:
//!
//! 1. cycles of the fractional graph (both directions), one per non-forest edge;
//! 2. an arc `(v, w)` inside a terminal component closed by the fractional
//!    path from `w` back to `v`;
//! 3. triangles `u, v, w` where `(v, w)` is an arc and `uv`, `uw` are fractional.
//!
//! The first candidate whose result has a strictly smaller potential is
//! applied; the search stops when no candidate improves.

use serde::{Deserialize, Serialize};

use super::{potential_of, Allocation, Potential};
use crate::graph::{strong_components, DisjointSets, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    FractionalCycle,
    ArcWithFractionalPath,
    Triangle,
}

/// One accepted shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub cycle: Vec<usize>,
    pub before: Potential,
    pub after: Potential,
}

/// Upper bound on accepted moves: `((n + 1)(e + 1))^2`, the size of the grid
/// the potential lives in.
pub fn move_budget(n: usize, e: usize) -> u128 {
    let side = (n as u128 + 1) * (e as u128 + 1);
    side * side
}

pub fn optimize(a: &Allocation) -> Allocation {
    optimize_with_trace(a).0
}

/// Runs the local search and returns the fixed point with every accepted move.
///
/// Panics if the move budget is exceeded, which strict decrease of the
/// potential rules out.
pub fn optimize_with_trace(a: &Allocation) -> (Allocation, Vec<MoveRecord>) {
    let budget = move_budget(a.graph().n(), a.graph().edge_count());
    let mut current = a.clone();
    let mut moves = Vec::new();
    while let Some((record, next)) = improving_move(&current) {
        assert!(record.after < record.before);
        moves.push(record);
        assert!((moves.len() as u128) <= budget, "optimizer exceeded its move budget");
        current = next;
    }
    (current, moves)
}

/// The first improving candidate shift, if any.
pub fn improving_move(a: &Allocation) -> Option<(MoveRecord, Allocation)> {
    let d = a.integral_digraph();
    let parts = strong_components(&d);
    let frac = a.fractional_graph();
    let before = potential_of(&d, &parts, frac.edge_count());

    let attempt = |kind: MoveKind, cycle: Vec<usize>| -> Option<(MoveRecord, Allocation)> {
        let next = a.shift_along_cycle(&cycle).ok()?;
        let after = next.potential();
        (after < before).then_some((
            MoveRecord {
                kind,
                cycle,
                before,
                after,
            },
            next,
        ))
    };

    for cycle in fractional_cycles(&frac) {
        let reversed: Vec<usize> = cycle.iter().rev().copied().collect();
        for c in [cycle, reversed] {
            if let Some(found) = attempt(MoveKind::FractionalCycle, c) {
                return Some(found);
            }
        }
    }

    for (v, w) in d.arcs() {
        let c = parts.component_of(v);
        if c != parts.component_of(w) || !parts.is_terminal(c) {
            continue;
        }
        if let Some(path) = frac.shortest_path(w, v) {
            let mut cycle = vec![v];
            cycle.extend_from_slice(&path[..path.len() - 1]);
            if let Some(found) = attempt(MoveKind::ArcWithFractionalPath, cycle) {
                return Some(found);
            }
        }
    }

    for (v, w) in d.arcs() {
        for &u in frac.neighbors(v) {
            if frac.has_edge(u, w) {
                if let Some(found) = attempt(MoveKind::Triangle, vec![u, v, w]) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// One cycle per fractional edge that closes a cycle against a spanning forest.
fn fractional_cycles(frac: &Graph) -> Vec<Vec<usize>> {
    let mut sets = DisjointSets::new(frac.n());
    let mut tree = Vec::new();
    let mut closing = Vec::new();
    for &(u, v) in frac.edges() {
        if sets.union(u, v) {
            tree.push((u, v));
        } else {
            closing.push((u, v));
        }
    }
    if closing.is_empty() {
        return Vec::new();
    }
    let forest = Graph::from_edges(frac.n(), tree).expect("subgraph");
    closing
        .into_iter()
        .map(|(u, v)| forest.shortest_path(u, v).expect("endpoints share a tree"))
        .collect()
}
