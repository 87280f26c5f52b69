//! Density measures of graphs, computed exactly.
//!
//! | measure | ratio over vertex sets `J` | sets considered |
//! |---|---|---|
//! | `m` | `e(J) / v(J)` | `v(J) >= 1` |
//! | `m1` | `e(J) / (v(J) - 1)` | `v(J) >= 2` |
//! | `m2` | `(e(J) - 1) / (v(J) - 2)` | `v(J) >= 3`; a single edge counts `1/2`; `0` with no edges |
//! | `m43` | `e(J) / (v(J) - 4/3)` | `v(J) >= 2` |
//!
//! The mixed 2-density of `(H1, H2)` is the maximum over `J ⊆ H1` with
//! `v(J) >= 2` of `e(J) / (v(J) - 2 + 1/m2(H2))`.
//!
//! Values come from exhaustive enumeration up to
//! [`MAX_EXHAUSTIVE_VERTICES`] vertices and from min-cut based maximization
//! beyond that. Witnesses from enumeration are canonical (fewest vertices,
//! then lexicographically smallest); witnesses from the flow path are some
//! maximizer.

pub(crate) mod brute;
pub(crate) mod flow;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use brute::MAX_EXHAUSTIVE_VERTICES;

use crate::graph::Graph;
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    M,
    M1,
    M2,
    M43,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::M, Measure::M1, Measure::M2, Measure::M43];

    /// Fewest vertices a graph needs for the measure to be defined.
    pub fn min_graph_vertices(self) -> usize {
        match self {
            Measure::M => 1,
            Measure::M1 | Measure::M43 => 2,
            Measure::M2 => 0,
        }
    }

    pub(crate) fn family(self) -> Family {
        match self {
            Measure::M => Family::new(0, 0, 1, 1),
            Measure::M1 => Family::new(0, 1, 1, 2),
            Measure::M2 => Family {
                edge_pair_half: true,
                ..Family::new(1, 2, 1, 3)
            },
            Measure::M43 => Family::new(0, 4, 3, 2),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::M => "m",
            Measure::M1 => "m1",
            Measure::M2 => "m2",
            Measure::M43 => "m43",
        })
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m" => Ok(Measure::M),
            "m1" => Ok(Measure::M1),
            "m2" => Ok(Measure::M2),
            "m43" => Ok(Measure::M43),
            other => Err(format!("unknown measure `{other}` (expected m, m1, m2 or m43)")),
        }
    }
}

/// The ratio `(e - a) / (v - c)` with `c = c_num / c_den`, over sets with at
/// least `min_vertices` vertices; `edge_pair_half` adds single edges at `1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Family {
    pub a: i64,
    pub c_num: i64,
    pub c_den: i64,
    pub min_vertices: usize,
    pub edge_pair_half: bool,
}

impl Family {
    const fn new(a: i64, c_num: i64, c_den: i64, min_vertices: usize) -> Self {
        Family {
            a,
            c_num,
            c_den,
            min_vertices,
            edge_pair_half: false,
        }
    }

    /// Ratio of a set with `e` induced edges and `v` vertices.
    pub(crate) fn ratio(&self, e: usize, v: usize) -> Rational {
        if self.edge_pair_half && v == 2 {
            return rat(1, 2);
        }
        let e = e as i64;
        let v = v as i64;
        Rational::new(
            BigInt::from(self.c_den * (e - self.a)),
            BigInt::from(self.c_den * v - self.c_num),
        )
    }
}

/// A density value together with a vertex set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityWitness {
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("{measure} needs at least {needed} vertices, graph has {n}")]
    TooFewVertices { measure: Measure, needed: usize, n: usize },
    #[error("mixed 2-density needs m2(h1) >= m2(h2); got {m2_h1} < {m2_h2}")]
    MixedOrder { m2_h1: String, m2_h2: String },
    #[error("mixed 2-density needs m2(h2) > 0 (h2 must have an edge)")]
    MixedDegenerate,
}

/// Defining ratio of `measure` at the vertex set `set`, or `None` if `set`
/// is not admissible (too small, or an edgeless pair for `m2`).
pub fn ratio_at(g: &Graph, measure: Measure, set: &[usize]) -> Option<Rational> {
    let e = g.induced_edge_count(set);
    let v = set.len();
    match measure {
        Measure::M2 if g.edge_count() == 0 => set.is_empty().then(Rational::zero),
        Measure::M2 if v == 2 => (e == 1).then(|| rat(1, 2)),
        _ => {
            let family = measure.family();
            (v >= family.min_vertices).then(|| family.ratio(e, v))
        }
    }
}

fn require(g: &Graph, measure: Measure) -> Result<(), DensityError> {
    let needed = measure.min_graph_vertices();
    if g.n() < needed {
        return Err(DensityError::TooFewVertices {
            measure,
            needed,
            n: g.n(),
        });
    }
    Ok(())
}

/// Value and witness for a graph without edges.
fn edgeless(g: &Graph, measure: Measure) -> DensityWitness {
    let size = match measure {
        Measure::M2 => 0,
        other => other.family().min_vertices,
    };
    debug_assert!(g.n() >= size);
    DensityWitness {
        value: Rational::zero(),
        witness: (0..size).collect(),
    }
}

fn from_family(g: &Graph, family: &Family, exhaustive: bool) -> DensityWitness {
    if exhaustive {
        let best = brute::best_subset(g, family).expect("admissible set exists");
        DensityWitness {
            value: Rational::new(BigInt::from(best.num), BigInt::from(best.den)),
            witness: brute::members(best.mask),
        }
    } else {
        let (u, v) = g.edges()[0];
        let (value, witness) = flow::maximize(g, family, vec![u, v]);
        DensityWitness { value, witness }
    }
}

/// `measure(g)` by exhaustive enumeration. Panics above
/// [`MAX_EXHAUSTIVE_VERTICES`] vertices.
pub fn exhaustive(g: &Graph, measure: Measure) -> Result<DensityWitness, DensityError> {
    require(g, measure)?;
    if g.edge_count() == 0 {
        return Ok(edgeless(g, measure));
    }
    Ok(from_family(g, &measure.family(), true))
}

/// `measure(g)` by min-cut based maximization (any size).
pub fn by_flow(g: &Graph, measure: Measure) -> Result<DensityWitness, DensityError> {
    require(g, measure)?;
    if g.edge_count() == 0 {
        return Ok(edgeless(g, measure));
    }
    Ok(from_family(g, &measure.family(), false))
}

pub fn density(g: &Graph, measure: Measure) -> Result<DensityWitness, DensityError> {
    if g.n() <= MAX_EXHAUSTIVE_VERTICES {
        exhaustive(g, measure)
    } else {
        by_flow(g, measure)
    }
}

/// `m(g)`; zero with an empty witness for the graph on no vertices.
pub fn max_density(g: &Graph) -> DensityWitness {
    if g.n() == 0 {
        return DensityWitness {
            value: Rational::zero(),
            witness: Vec::new(),
        };
    }
    density(g, Measure::M).expect("n >= 1")
}

pub fn m1(g: &Graph) -> Result<DensityWitness, DensityError> {
    density(g, Measure::M1)
}

pub fn m2(g: &Graph) -> DensityWitness {
    density(g, Measure::M2).expect("m2 is defined on every graph")
}

pub fn m43(g: &Graph) -> Result<DensityWitness, DensityError> {
    density(g, Measure::M43)
}

/// `m2(h1, h2)`; requires `m2(h1) >= m2(h2) > 0`. The witness is a vertex set of `h1`.
pub fn mixed_m2(h1: &Graph, h2: &Graph) -> Result<DensityWitness, DensityError> {
    let d1 = m2(h1).value;
    let d2 = m2(h2).value;
    if !d2.is_positive() {
        return Err(DensityError::MixedDegenerate);
    }
    if d1 < d2 {
        return Err(DensityError::MixedOrder {
            m2_h1: crate::rational::format_rational(&d1),
            m2_h2: crate::rational::format_rational(&d2),
        });
    }
    // c = 2 - 1/m2(h2) = (2p - q)/p for m2(h2) = p/q.
    let p = d2.numer().to_i64().expect("m2 numerator fits i64");
    let q = d2.denom().to_i64().expect("m2 denominator fits i64");
    let family = Family::new(0, 2 * p - q, p, 2);
    if h1.n() < 2 {
        return Err(DensityError::TooFewVertices {
            measure: Measure::M2,
            needed: 2,
            n: h1.n(),
        });
    }
    if h1.edge_count() == 0 {
        return Ok(DensityWitness {
            value: Rational::zero(),
            witness: vec![0, 1],
        });
    }
    Ok(from_family(h1, &family, h1.n() <= MAX_EXHAUSTIVE_VERTICES))
}

/// Mixed ratio of `set ⊆ V(h1)` given `m2(h2)`.
pub fn mixed_ratio_at(h1: &Graph, m2_h2: &Rational, set: &[usize]) -> Option<Rational> {
    if set.len() < 2 || !m2_h2.is_positive() {
        return None;
    }
    let offset = Rational::from_integer(BigInt::from(set.len() as i64 - 2)) + m2_h2.recip();
    Some(Rational::from_integer(BigInt::from(h1.induced_edge_count(set))) / offset)
}

/// Result of a threshold check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCheck {
    pub holds: bool,
    /// A vertex set whose ratio breaks the bound, when `holds` is false.
    pub witness: Option<Vec<usize>>,
}

impl DensityCheck {
    fn pass() -> Self {
        DensityCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        DensityCheck {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Is `measure(g) <= bound`? Flow-based; scales past the exhaustive limit.
pub fn check_density_at_most(g: &Graph, measure: Measure, bound: &Rational) -> DensityCheck {
    check(g, measure, bound, true)
}

/// Is `measure(g) < bound`?
pub fn check_density_below(g: &Graph, measure: Measure, bound: &Rational) -> DensityCheck {
    check(g, measure, bound, false)
}

fn check(g: &Graph, measure: Measure, bound: &Rational, allow_equal: bool) -> DensityCheck {
    if g.n() < measure.min_graph_vertices() {
        // The measure is undefined; nothing can violate a bound.
        return DensityCheck::pass();
    }
    let smallest = || (0..measure.family().min_vertices).collect::<Vec<_>>();
    let first_edge = || vec![g.edges()[0].0, g.edges()[0].1];
    // Every measure is 0 without edges, with the smallest admissible set as witness.
    if g.edge_count() == 0 {
        let zero_ok = if allow_equal { !bound.is_negative() } else { bound.is_positive() };
        return if zero_ok {
            DensityCheck::pass()
        } else if measure == Measure::M2 {
            DensityCheck::fail(Vec::new())
        } else {
            DensityCheck::fail(smallest())
        };
    }
    if !bound.is_positive() {
        // With an edge every measure is positive.
        return DensityCheck::fail(first_edge());
    }
    if measure == Measure::M2 {
        // Single edges contribute exactly 1/2.
        let half = rat(1, 2);
        if *bound < half || (*bound == half && !allow_equal) {
            return DensityCheck::fail(first_edge());
        }
    }
    match flow::violation(g, &measure.family(), bound, allow_equal) {
        None => DensityCheck::pass(),
        Some(set) => DensityCheck::fail(set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn value(g: &Graph, measure: Measure) -> Rational {
        density(g, measure).unwrap().value
    }

    #[test]
    fn complete_graph_values() {
        let k4 = Graph::complete(4);
        assert_eq!(max_density(&k4), DensityWitness { value: rat(3, 2), witness: vec![0, 1, 2, 3] });
        assert_eq!(value(&k4, Measure::M1), int(2));
        assert_eq!(value(&k4, Measure::M2), rat(5, 2));
        assert_eq!(value(&k4, Measure::M43), rat(9, 4));
        assert_eq!(value(&Graph::complete(3), Measure::M1), rat(3, 2));
    }

    #[test]
    fn sparse_values() {
        let edge = Graph::path(2);
        assert_eq!(max_density(&edge).value, rat(1, 2));
        assert_eq!(m2(&edge).value, rat(1, 2));
        assert_eq!(value(&edge, Measure::M43), rat(3, 2));
        assert_eq!(max_density(&Graph::cycle(5)).value, int(1));
        assert_eq!(value(&Graph::path(6), Measure::M1), int(1));
        assert_eq!(m2(&Graph::empty(4)), DensityWitness { value: Rational::zero(), witness: vec![] });
        assert_eq!(value(&Graph::cycle(4), Measure::M43), rat(3, 2));
    }

    #[test]
    fn cycles_have_known_2_density() {
        for len in 3..=9i64 {
            assert_eq!(m2(&Graph::cycle(len as usize)).value, rat(len - 1, len - 2));
        }
    }

    #[test]
    fn too_few_vertices() {
        assert!(matches!(m1(&Graph::empty(1)), Err(DensityError::TooFewVertices { .. })));
        assert!(matches!(m43(&Graph::empty(0)), Err(DensityError::TooFewVertices { .. })));
    }

    #[test]
    fn mixed_examples() {
        let k4 = Graph::complete(4);
        let c4 = Graph::cycle(4);
        assert_eq!(mixed_m2(&k4, &c4).unwrap().value, rat(9, 4));
        assert_eq!(mixed_m2(&c4, &c4).unwrap().value, rat(3, 2));
        assert!(matches!(mixed_m2(&c4, &k4), Err(DensityError::MixedOrder { .. })));
        assert_eq!(mixed_m2(&k4, &Graph::empty(3)), Err(DensityError::MixedDegenerate));
    }

    #[test]
    fn threshold_examples() {
        let k4 = Graph::complete(4);
        assert!(check_density_at_most(&k4, Measure::M2, &rat(5, 2)).holds);
        let failed = check_density_at_most(&k4, Measure::M2, &int(2));
        assert_eq!(failed, DensityCheck { holds: false, witness: Some(vec![0, 1, 2, 3]) });
        assert!(!check_density_below(&k4, Measure::M43, &rat(9, 4)).holds);
        assert!(check_density_below(&k4, Measure::M43, &rat(7, 3)).holds);
        for measure in Measure::ALL {
            assert!(check_density_at_most(&Graph::empty(5), measure, &Rational::zero()).holds);
        }
    }

    #[test]
    fn flow_path_matches_enumeration() {
        let graphs = [
            Graph::complete(5),
            Graph::cycle(7),
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 4)]).unwrap(),
            Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            for measure in Measure::ALL {
                let a = exhaustive(g, measure).unwrap();
                let b = by_flow(g, measure).unwrap();
                assert_eq!(a.value, b.value, "{measure} on {g:?}");
                assert_eq!(ratio_at(g, measure, &b.witness), Some(b.value.clone()));
            }
        }
    }

    #[test]
    fn measure_names_round_trip() {
        for measure in Measure::ALL {
            assert_eq!(measure.to_string().parse::<Measure>().unwrap(), measure);
        }
        assert!("m3".parse::<Measure>().is_err());
    }
}
