//! Min-cut threshold checks and exact maximization at scale.
//!
//! For `λ = p/q`, the largest value of `q·e(J) - p·v(J)` over vertex sets `J`
//! containing a forced set is a maximum-weight closure: edge nodes worth `q`
//! that require both endpoints, vertex nodes costing `p`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::Family;
use crate::flow::dinic::{Amount, Dinic};
use crate::graph::Graph;
use crate::rational::Rational;

/// Largest `q·e(J) - p·v(J)` over `J ⊇ forced`, with the smallest maximizer.
pub(crate) fn max_excess(g: &Graph, q: &BigInt, p: &BigInt, forced: &[usize]) -> (BigInt, Vec<usize>) {
    debug_assert!(q.is_positive() && !p.is_negative());
    // Machine arithmetic while q·e + p·n stays far from overflow.
    let small = |x: &BigInt| x.to_i64().is_some_and(|x| x.abs() < 1 << 40);
    if small(q) && small(p) && g.edge_count() + g.n() < 1 << 20 {
        let (value, set) = solve::<i128>(g, q.to_i64().unwrap().into(), p.to_i64().unwrap().into(), forced);
        (BigInt::from(value), set)
    } else {
        solve::<BigInt>(g, q.clone(), p.clone(), forced)
    }
}

fn solve<T: Amount + From<i64>>(g: &Graph, q: T, p: T, forced: &[usize]) -> (T, Vec<usize>) {
    let (n, e) = (g.n(), g.edge_count());
    let (source, sink) = (0, n + e + 1);
    let mut total = T::zero();
    for _ in 0..e {
        total = total + q.clone();
    }
    let mut infinity = total.clone() + T::from(1);
    for _ in 0..n {
        infinity = infinity + p.clone();
    }
    let mut net = Dinic::new(n + e + 2);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let node = 1 + n + i;
        net.add_arc(source, node, q.clone());
        net.add_arc(node, 1 + u, infinity.clone());
        net.add_arc(node, 1 + v, infinity.clone());
    }
    for v in 0..n {
        net.add_arc(1 + v, sink, p.clone());
    }
    for &v in forced {
        net.add_arc(source, 1 + v, infinity.clone());
    }
    let cut = net.run(source, sink);
    let side = net.source_side(source);
    let set = (0..n).filter(|&v| side[1 + v]).collect();
    (total - cut, set)
}

/// Outcome of the per-edge scan: the best excess over the family threshold
/// and the set attaining it.
struct Scan {
    margin: BigInt,
    set: Vec<usize>,
}

/// Maximizes `(e(J) - a) - λ(v(J) - c)`, scaled by `q·c_den`, over sets that
/// contain an edge (and, with `need_three`, a third vertex).
fn scan(g: &Graph, family: &Family, lambda: &Rational, need_three: bool) -> Option<Scan> {
    let (p, q) = (lambda.numer(), lambda.denom());
    let c_den = BigInt::from(family.c_den);
    let threshold = &c_den * q * family.a - p * family.c_num;
    let mut best: Option<Scan> = None;
    let mut consider = |forced: &[usize]| {
        let (excess, set) = max_excess(g, q, p, forced);
        let margin = &c_den * excess - &threshold;
        if best.as_ref().is_none_or(|b| margin > b.margin) {
            best = Some(Scan { margin, set });
        }
    };
    for &(u, v) in g.edges() {
        if need_three {
            for w in (0..g.n()).filter(|&w| w != u && w != v) {
                consider(&[u, v, w]);
            }
        } else {
            consider(&[u, v]);
        }
    }
    best
}

/// A set violating the bound `λ > 0`: ratio `> λ` when `strict`, `>= λ` otherwise.
pub(crate) fn violation(g: &Graph, family: &Family, lambda: &Rational, strict: bool) -> Option<Vec<usize>> {
    debug_assert!(lambda.is_positive());
    // A single edge scores exactly the threshold under the pair convention, so
    // non-strict checks must look at sets of three or more vertices.
    let need_three = family.edge_pair_half && !strict;
    let found = scan(g, family, lambda, need_three)?;
    let hit = if strict {
        found.margin.is_positive()
    } else {
        !found.margin.is_negative()
    };
    hit.then_some(found.set)
}

/// Exact maximum of the family ratio over sets containing an edge, by
/// Dinkelbach iteration from `start` (which must contain an edge).
pub(crate) fn maximize(g: &Graph, family: &Family, start: Vec<usize>) -> (Rational, Vec<usize>) {
    let mut set = start;
    let mut value = family.ratio(g.induced_edge_count(&set), set.len());
    while let Some(found) = scan(g, family, &value, false) {
        if !found.margin.is_positive() {
            break;
        }
        let next = family.ratio(g.induced_edge_count(&found.set), found.set.len());
        assert!(next > value, "improving set must raise the ratio");
        value = next;
        set = found.set;
    }
    (value, set)
}
