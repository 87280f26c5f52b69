//! Independent oracles for the integration suites: bitmask subset
//! enumeration, backtracking subgraph search, and graph corpora.

#![allow(dead_code)]

use allocdecomp::density::Measure;
use allocdecomp::io::parse_graph6_lines;
use allocdecomp::rational::rat;
use allocdecomp::{Graph, Rational};
use rand::rngs::StdRng;
use rand::Rng;

/// One representative per isomorphism class on 1..=7 vertices.
pub fn atlas() -> Vec<Graph> {
    parse_graph6_lines(include_str!("../data/atlas7.g6")).expect("bundled corpus parses")
}

pub fn adjacency(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 20, "oracle enumerates subsets of at most 20 vertices");
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

pub fn induced_edges(adj: &[u32], set: u32) -> i64 {
    let mut twice = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        twice += (adj[v] & set).count_ones() as i64;
    }
    twice / 2
}

/// `(e - a) / (v - c)` scaled to `scale (e - a) / (scale v - c_scaled)`.
struct Shape {
    scale: i64,
    a: i64,
    c_scaled: i64,
    min_v: i64,
}

fn shape(measure: Measure) -> Shape {
    match measure {
        Measure::M => Shape { scale: 1, a: 0, c_scaled: 0, min_v: 1 },
        Measure::M1 => Shape { scale: 1, a: 0, c_scaled: 1, min_v: 2 },
        Measure::M2 => Shape { scale: 1, a: 1, c_scaled: 2, min_v: 3 },
        Measure::M43 => Shape { scale: 3, a: 0, c_scaled: 4, min_v: 2 },
    }
}

/// Maximum of `measure` by enumerating every vertex subset; `None` where
/// the measure is undefined.
pub fn oracle(g: &Graph, measure: Measure) -> Option<Rational> {
    let n = g.n();
    let s = shape(measure);
    if measure != Measure::M2 && (n as i64) < s.min_v {
        return None;
    }
    let adj = adjacency(g);
    // Best fraction as (numerator, positive denominator).
    let mut best: Option<(i64, i64)> = None;
    if measure == Measure::M2 {
        best = Some(if g.edge_count() > 0 { (1, 2) } else { (0, 1) });
    }
    for set in 1u32..(1u32 << n) {
        let v = set.count_ones() as i64;
        if v < s.min_v {
            continue;
        }
        let e = induced_edges(&adj, set);
        let num = s.scale * (e - s.a);
        let den = s.scale * v - s.c_scaled;
        if best.is_none_or(|(bn, bd)| num * bd > bn * den) {
            best = Some((num, den));
        }
    }
    best.map(|(num, den)| rat(num, den))
}

pub fn oracle_m(g: &Graph) -> Rational {
    oracle(g, Measure::M).unwrap_or_else(|| rat(0, 1))
}

/// Ratio of one vertex set under `measure`; for m2 a set of at most two
/// vertices counts 1/2 with an edge and 0 without.
pub fn ratio(g: &Graph, measure: Measure, set: &[usize]) -> Rational {
    let s = shape(measure);
    let adj = adjacency(g);
    let mask = set.iter().fold(0u32, |acc, &v| acc | 1 << v);
    let e = induced_edges(&adj, mask);
    let v = set.len() as i64;
    if measure == Measure::M2 && v <= 2 {
        return rat(e.min(1), 2);
    }
    rat(s.scale * (e - s.a), s.scale * v - s.c_scaled)
}

/// Does `g` contain a (not necessarily induced) copy of `h`?
pub fn has_copy(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return false;
    }
    let gadj = adjacency(g);
    let hadj = adjacency(h);
    let mut image = vec![usize::MAX; h.n()];
    extend(&gadj, &hadj, &mut image, 0, 0)
}

fn extend(gadj: &[u32], hadj: &[u32], image: &mut [usize], next: usize, used: u32) -> bool {
    if next == image.len() {
        return true;
    }
    for x in 0..gadj.len() {
        if used >> x & 1 == 1 {
            continue;
        }
        let fits = (0..next).all(|y| hadj[next] >> y & 1 == 0 || gadj[x] >> image[y] & 1 == 1);
        if fits {
            image[next] = x;
            if extend(gadj, hadj, image, next + 1, used | 1 << x) {
                return true;
            }
        }
    }
    false
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("distinct pairs")
}

/// Edges of `g` split by `part` must be exactly `E(g)` with nothing repeated.
pub fn is_edge_partition(g: &Graph, parts: &[&[(usize, usize)]]) -> bool {
    let mut all: Vec<(usize, usize)> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    all.sort_unstable();
    all == g.edges()
}
