use num_bigint::BigInt;
use thiserror::Error;

use super::Graph;
use crate::density;
use crate::rational::Rational;

/// Largest pattern accepted by the exhaustive descent.
pub const MAX_BALANCE_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalanceError {
    #[error("strict 2-balance needs at least 2 edges, got {0}")]
    TooFewEdges(usize),
    #[error("pattern has {0} vertices; exhaustive search supports at most {MAX_BALANCE_VERTICES}")]
    TooLarge(usize),
}

/// A strictly 2-balanced subgraph `h'` of `h` with `m2(h') = m2(h)`, relabelled
/// to `0..v(h')` in increasing order of the original vertices.
///
/// Every subgraph attaining `m2(h)` can be taken induced and without isolated
/// vertices, so the search runs over vertex subsets. Among attaining subsets
/// the one with fewest vertices, then fewest edges, then lexicographically
/// smallest vertex set wins; minimality in `(v, e)` makes it inclusion-minimal
/// among attaining subgraphs, hence strictly 2-balanced.
pub fn strictly_2_balanced_subgraph(h: &Graph) -> Result<Graph, BalanceError> {
    if h.edge_count() < 2 {
        return Err(BalanceError::TooFewEdges(h.edge_count()));
    }
    if h.n() > MAX_BALANCE_VERTICES {
        return Err(BalanceError::TooLarge(h.n()));
    }
    let target = density::m2(h).value;
    let masks = h.adjacency_masks().expect("n <= 20");
    let n = h.n();

    let mut best: Option<(u32, u32, u64)> = None;
    for set in 1u64..(1 << n) {
        let size = set.count_ones();
        if size < 2 {
            continue;
        }
        let mut twice_edges = 0;
        let mut has_isolated = false;
        for v in members(set) {
            let d = (masks[v] & set).count_ones();
            has_isolated |= d == 0;
            twice_edges += d;
        }
        if has_isolated {
            continue;
        }
        let e = twice_edges / 2;
        let value = if size == 2 {
            Rational::new(BigInt::from(1), BigInt::from(2))
        } else {
            Rational::new(BigInt::from(e) - 1, BigInt::from(size - 2))
        };
        if value != target {
            continue;
        }
        let better = match best {
            None => true,
            Some((bs, be, bset)) => {
                (size, e) < (bs, be) || ((size, e) == (bs, be) && lex_smaller(set, bset))
            }
        };
        if better {
            best = Some((size, e, set));
        }
    }
    let (_, _, set) = best.expect("the maximum 2-density is always attained");
    let vertices: Vec<usize> = members(set).collect();
    Ok(h.induced_subgraph(&vertices))
}

fn members(set: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&v| set >> v & 1 == 1)
}

/// Lexicographic order of sorted member lists, for sets of equal size.
pub(crate) fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{contains_subgraph, is_forest};
    use crate::rational::rat;

    #[test]
    fn cycles_are_strictly_balanced() {
        for len in 3..=7 {
            let c = Graph::cycle(len);
            assert_eq!(strictly_2_balanced_subgraph(&c).unwrap(), c);
        }
    }

    #[test]
    fn pendant_edge_is_dropped() {
        let h = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let sub = strictly_2_balanced_subgraph(&h).unwrap();
        assert_eq!(sub, Graph::cycle(4).induced_subgraph(&[0, 1, 2, 3]));
        assert_eq!(sub.edge_count(), 4);
        assert!(contains_subgraph(&Graph::cycle(4), &sub) && contains_subgraph(&sub, &Graph::cycle(4)));
    }

    #[test]
    fn k4_is_strictly_balanced() {
        let k4 = Graph::complete(4);
        assert_eq!(strictly_2_balanced_subgraph(&k4).unwrap(), k4);
    }

    #[test]
    fn diamond_reduces_to_triangle() {
        let diamond = Graph::complete(4).without_edges(&[(2, 3)]);
        assert_eq!(density::m2(&diamond).value, rat(2, 1));
        assert_eq!(strictly_2_balanced_subgraph(&diamond).unwrap(), Graph::cycle(3));
    }

    #[test]
    fn sparse_inputs() {
        assert_eq!(
            strictly_2_balanced_subgraph(&Graph::path(2)),
            Err(BalanceError::TooFewEdges(1))
        );
        // Two disjoint edges: m2 = 1/2, attained by a single edge.
        let matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let sub = strictly_2_balanced_subgraph(&matching).unwrap();
        assert_eq!(sub, Graph::path(2));
        assert!(is_forest(&sub));
    }

    #[test]
    fn lexicographic_tie_break() {
        assert!(lex_smaller(0b0011, 0b0101));
        assert!(!lex_smaller(0b0101, 0b0011));
        assert!(lex_smaller(0b0110, 0b1010));
        assert!(!lex_smaller(0b0110, 0b0110));
    }
}
