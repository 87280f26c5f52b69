//! Inclusion-minimal vertex sets that break a density bound on `G - F`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::density::brute::{members, subset_edge_counts, MAX_EXHAUSTIVE_VERTICES};
use crate::density::flow::violation;
use crate::density::Measure;
use crate::graph::{lex_smaller, Graph};
use crate::rational::Rational;

/// Which bound a violating set breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationMode {
    /// `e(U) - 1 > m(|U| - 2)` with `|U| >= 3`: `m2 <= m` fails.
    M2,
    /// `e(U) >= m(|U| - 4/3)` with `|U| >= 2`: `m43 < m` fails.
    M43,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatingSet {
    pub vertices: Vec<usize>,
    pub mode: ViolationMode,
    pub edge_count: usize,
}

/// Does a set with `e` edges and `v` vertices violate the bound?
pub fn violates(mode: ViolationMode, m: &Rational, e: usize, v: usize) -> bool {
    let (p, q) = (m.numer(), m.denom());
    let e = BigInt::from(e);
    let v = BigInt::from(v);
    match mode {
        // (e - 1) q > p (v - 2)
        ViolationMode::M2 => v >= BigInt::from(3) && (e - 1) * q > p * (v - 2),
        // 3 e q >= p (3v - 4)
        ViolationMode::M43 => v >= BigInt::from(2) && e * q * 3 >= p * (v * 3 - 4),
    }
}

/// An inclusion-minimal violating set of `g_rest`, if any.
///
/// Up to the exhaustive limit the result has the fewest vertices (ties to the
/// lexicographically smallest). Beyond it a flow witness is shrunk greedily by
/// single-vertex deletions, which needs `m > 0`.
pub fn find_violating_set(g_rest: &Graph, m: &Rational, mode: ViolationMode) -> Option<ViolatingSet> {
    let vertices = if g_rest.n() <= MAX_EXHAUSTIVE_VERTICES {
        smallest(g_rest, m, mode)?
    } else {
        assert!(m.is_positive(), "flow search needs a positive bound");
        let (measure, strict) = match mode {
            ViolationMode::M2 => (Measure::M2, true),
            ViolationMode::M43 => (Measure::M43, false),
        };
        let found = violation(g_rest, &measure.family(), m, strict)?;
        shrink(g_rest, m, mode, found)
    };
    let edge_count = g_rest.induced_edge_count(&vertices);
    debug_assert!(violates(mode, m, edge_count, vertices.len()));
    Some(ViolatingSet {
        vertices,
        mode,
        edge_count,
    })
}

fn smallest(g: &Graph, m: &Rational, mode: ViolationMode) -> Option<Vec<usize>> {
    let counts = subset_edge_counts(g);
    let mut best: Option<u64> = None;
    for (set, &e) in counts.iter().enumerate() {
        let set = set as u64;
        let size = set.count_ones();
        if let Some(b) = best {
            let b_size = b.count_ones();
            if size > b_size || (size == b_size && !lex_smaller(set, b)) {
                continue;
            }
        }
        if violates(mode, m, e as usize, size as usize) {
            best = Some(set);
        }
    }
    best.map(members)
}

/// Removes single vertices while the set keeps violating.
fn shrink(g: &Graph, m: &Rational, mode: ViolationMode, mut set: Vec<usize>) -> Vec<usize> {
    debug_assert!(violates(mode, m, g.induced_edge_count(&set), set.len()));
    'outer: loop {
        for i in 0..set.len() {
            let mut smaller = set.clone();
            smaller.remove(i);
            if violates(mode, m, g.induced_edge_count(&smaller), smaller.len()) {
                set = smaller;
                continue 'outer;
            }
        }
        return set;
    }
}
