//! Exhaustive subset enumeration: the reference oracle for every measure.

use super::Family;
use crate::graph::Graph;

/// Largest graph the oracle accepts (`2^n` subsets are enumerated).
pub const MAX_EXHAUSTIVE_VERTICES: usize = 20;

/// Best subset found: ratio `num/den` (den > 0) attained by `mask`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Best {
    pub num: i128,
    pub den: i128,
    pub mask: u64,
}

/// Edge counts of every vertex subset, indexed by bitmask.
pub(crate) fn subset_edge_counts(g: &Graph) -> Vec<u16> {
    let n = g.n();
    assert!(n <= MAX_EXHAUSTIVE_VERTICES, "exhaustive enumeration limited to {MAX_EXHAUSTIVE_VERTICES} vertices");
    let masks = g.adjacency_masks().expect("n <= 20");
    let mut counts = vec![0u16; 1 << n];
    for set in 1usize..1 << n {
        let low = set.trailing_zeros() as usize;
        let rest = set & (set - 1);
        counts[set] = counts[rest] + (masks[low] & rest as u64).count_ones() as u16;
    }
    counts
}

/// Maximizes the family's ratio over all vertex subsets with at least
/// `min_vertices` vertices. Ties go to fewer vertices, then to the
/// lexicographically smallest sorted vertex list.
pub(crate) fn best_subset(g: &Graph, family: &Family) -> Option<Best> {
    let counts = subset_edge_counts(g);
    let mut best: Option<Best> = None;
    for (set, &e) in counts.iter().enumerate() {
        let size = set.count_ones() as i128;
        let e = e as i128;
        let (num, den) = if family.edge_pair_half && size == 2 {
            if e == 0 {
                continue;
            }
            (1, 2)
        } else {
            if size < family.min_vertices as i128 {
                continue;
            }
            let c_den = family.c_den as i128;
            (c_den * (e - family.a as i128), c_den * size - family.c_num as i128)
        };
        debug_assert!(den > 0);
        let mask = set as u64;
        let better = match &best {
            None => true,
            Some(b) => {
                let lhs = num * b.den;
                let rhs = b.num * den;
                lhs > rhs
                    || (lhs == rhs
                        && (mask.count_ones() < b.mask.count_ones()
                            || (mask.count_ones() == b.mask.count_ones()
                                && crate::graph::lex_smaller(mask, b.mask))))
            }
        };
        if better {
            best = Some(Best { num, den, mask });
        }
    }
    best
}

pub(crate) fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}
