//! `m`-allocations: fractional orientations with bounded out-weight.
//!
//! An `m`-allocation of `G` assigns every ordered pair `(u, v)` of an edge a
//! weight `θ(u, v) ∈ [0, 1]` with `θ(u, v) + θ(v, u) = 1` and out-weight
//! `Σ_v θ(u, v) <= m` at every vertex. Weights are stored as integer
//! multiples of a quantum `1/q` fixed at construction, where `m·q` is an
//! integer; shifting along cycles never leaves that grid.

mod optimize;

pub use optimize::{improving_move, move_budget, optimize, optimize_with_trace, MoveKind, MoveRecord};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{allocation_arc, allocation_network, max_flow};
use crate::graph::{strong_components, ComponentPartition, Digraph, Graph};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationError {
    #[error("allocation bound must be non-negative, got {0}")]
    NegativeBound(String),
    #[error("quantum must be positive with m·q integral and small enough for machine arithmetic")]
    BadQuantum,
    #[error("expected {expected} edge weights, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("weight {units}/{quantum} on edge {u}-{v} is outside [0, 1]")]
    WeightOutOfRange { u: usize, v: usize, units: i64, quantum: i64 },
    #[error("vertex {vertex} has out-weight {out}, above the bound {bound}")]
    OverBudget { vertex: usize, out: String, bound: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} repeats in the cycle")]
    RepeatedVertex(usize),
    #[error("{0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("the cycle carries no weight in its direction (ε = 0)")]
    ZeroShift,
}

/// An `m`-allocation of a graph on the quantum grid `1/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    graph: Graph,
    m: Rational,
    quantum: i64,
    capacity: i64,
    /// `q·θ(u, v)` for each edge `(u, v)`, `u < v`, in edge order.
    theta: Vec<i64>,
}

/// The integral digraph `D_θ` and the fractional graph of an allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationViews {
    /// Arcs `(u, v)` with `θ(u, v) = 1`.
    pub integral_digraph: Digraph,
    /// Edges with both weights strictly between 0 and 1.
    pub fractional_graph: Graph,
}

/// Lexicographic quality of an allocation; smaller is better.
///
/// Fields in comparison order: number of terminal components of `D_θ`,
/// number of fractional edges, minus the number of vertices in terminal
/// components, minus the number of arcs of `D_θ` ending in a singleton
/// terminal component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Potential {
    pub terminal_components: i64,
    pub fractional_edges: i64,
    pub neg_terminal_vertices: i64,
    pub neg_arcs_into_singletons: i64,
}

impl Potential {
    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (
            self.terminal_components,
            self.fractional_edges,
            self.neg_terminal_vertices,
            self.neg_arcs_into_singletons,
        )
    }
}

impl Allocation {
    /// Validates and wraps raw weights: `theta_units[i] = q·θ(u, v)` for the
    /// `i`-th edge `(u, v)` of `graph` (with `u < v`).
    pub fn new(graph: Graph, m: Rational, quantum: i64, theta_units: Vec<i64>) -> Result<Self, AllocationError> {
        if m.is_negative() {
            return Err(AllocationError::NegativeBound(format_rational(&m)));
        }
        if quantum <= 0 {
            return Err(AllocationError::BadQuantum);
        }
        let scaled = &m * Rational::from_integer(BigInt::from(quantum));
        if !scaled.is_integer() {
            return Err(AllocationError::BadQuantum);
        }
        let capacity = scaled.to_integer().to_i64().ok_or(AllocationError::BadQuantum)?;
        if theta_units.len() != graph.edge_count() {
            return Err(AllocationError::WrongLength {
                expected: graph.edge_count(),
                got: theta_units.len(),
            });
        }
        let a = Allocation {
            graph,
            m,
            quantum,
            capacity,
            theta: theta_units,
        };
        a.validate()?;
        Ok(a)
    }

    /// Checks every allocation invariant.
    pub fn validate(&self) -> Result<(), AllocationError> {
        let q = self.quantum;
        let mut out = vec![0i64; self.graph.n()];
        for (&(u, v), &t) in self.graph.edges().iter().zip(&self.theta) {
            if !(0..=q).contains(&t) {
                return Err(AllocationError::WeightOutOfRange { u, v, units: t, quantum: q });
            }
            out[u] += t;
            out[v] += q - t;
        }
        for (vertex, &o) in out.iter().enumerate() {
            if o > self.capacity {
                return Err(AllocationError::OverBudget {
                    vertex,
                    out: format_rational(&Rational::new(o.into(), q.into())),
                    bound: format_rational(&self.m),
                });
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// The grid denominator `q`: every weight is a multiple of `1/q`.
    pub fn quantum(&self) -> i64 {
        self.quantum
    }

    /// Raw weights `q·θ(u, v)` per edge `(u, v)` in edge order.
    pub fn theta_units(&self) -> &[i64] {
        &self.theta
    }

    /// `q·θ(u, v)`; zero when `uv` is not an edge.
    pub fn units(&self, u: usize, v: usize) -> i64 {
        match self.graph.edge_index(u, v) {
            None => 0,
            Some(i) if u < v => self.theta[i],
            Some(i) => self.quantum - self.theta[i],
        }
    }

    pub fn theta(&self, u: usize, v: usize) -> Rational {
        Rational::new(self.units(u, v).into(), self.quantum.into())
    }

    /// `Σ_v θ(u, v)`.
    pub fn out_weight(&self, u: usize) -> Rational {
        let total: i64 = self.graph.neighbors(u).iter().map(|&v| self.units(u, v)).sum();
        Rational::new(total.into(), self.quantum.into())
    }

    pub fn is_integral_edge(&self, u: usize, v: usize) -> bool {
        let t = self.units(u, v);
        t == 0 || t == self.quantum
    }

    pub fn integral_digraph(&self) -> Digraph {
        let q = self.quantum;
        let arcs = self
            .graph
            .edges()
            .iter()
            .zip(&self.theta)
            .filter_map(|(&(u, v), &t)| match t {
                0 => Some((v, u)),
                t if t == q => Some((u, v)),
                _ => None,
            });
        Digraph::from_arcs(self.graph.n(), arcs).expect("edges give distinct arcs")
    }

    pub fn fractional_graph(&self) -> Graph {
        let q = self.quantum;
        let edges = self
            .graph
            .edges()
            .iter()
            .zip(&self.theta)
            .filter(|&(_, &t)| 0 < t && t < q)
            .map(|(&e, _)| e);
        Graph::from_edges(self.graph.n(), edges).expect("subgraph of a simple graph")
    }

    pub fn views(&self) -> AllocationViews {
        AllocationViews {
            integral_digraph: self.integral_digraph(),
            fractional_graph: self.fractional_graph(),
        }
    }

    pub fn potential(&self) -> Potential {
        let d = self.integral_digraph();
        potential_of(&d, &strong_components(&d), self.fractional_edge_count())
    }

    pub fn fractional_edge_count(&self) -> usize {
        self.theta.iter().filter(|&&t| 0 < t && t < self.quantum).count()
    }

    /// Shifts weight `ε = min θ(u_{i-1}, u_i)` against the cyclic direction of
    /// `cycle` (the closing pair `(u_k, u_0)` is implicit).
    pub fn shift_along_cycle(&self, cycle: &[usize]) -> Result<Allocation, ShiftError> {
        let k = cycle.len();
        if k < 3 {
            return Err(ShiftError::TooShort(k));
        }
        let mut seen = vec![false; self.graph.n()];
        for &v in cycle {
            if v >= self.graph.n() {
                return Err(ShiftError::NotAnEdge(v, v));
            }
            if seen[v] {
                return Err(ShiftError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect();
        for &(x, y) in &pairs {
            if !self.graph.has_edge(x, y) {
                return Err(ShiftError::NotAnEdge(x, y));
            }
        }
        let eps = pairs.iter().map(|&(x, y)| self.units(x, y)).min().expect("k >= 3");
        if eps == 0 {
            return Err(ShiftError::ZeroShift);
        }
        let mut next = self.clone();
        for &(x, y) in &pairs {
            let i = self.graph.edge_index(x, y).expect("checked above");
            if x < y {
                next.theta[i] -= eps;
            } else {
                next.theta[i] += eps;
            }
        }
        debug_assert!(next.validate().is_ok(), "shift preserves validity");
        assert_shift_bookkeeping(self, &next, &pairs, eps);
        Ok(next)
    }
}

/// `D_θ'` equals `D_θ` minus the saturated forward arcs plus the reversed
/// arcs where the forward weight was exactly `ε`.
fn assert_shift_bookkeeping(before: &Allocation, after: &Allocation, pairs: &[(usize, usize)], eps: i64) {
    let q = before.quantum;
    let mut expected = before.integral_digraph();
    for &(x, y) in pairs {
        if before.units(x, y) == q {
            expected.remove_arc(x, y);
        }
    }
    for &(x, y) in pairs {
        if before.units(x, y) == eps {
            expected.add_arc(y, x);
        }
    }
    assert_eq!(after.integral_digraph(), expected, "integral digraph changed unexpectedly under a shift");
}

pub(crate) fn potential_of(d: &Digraph, parts: &ComponentPartition, fractional_edges: usize) -> Potential {
    let into_singletons = d.arcs().filter(|&(_, y)| parts.is_singleton_terminal(y)).count();
    Potential {
        terminal_components: parts.terminal_count() as i64,
        fractional_edges: fractional_edges as i64,
        neg_terminal_vertices: -(parts.vertices_in_terminal() as i64),
        neg_arcs_into_singletons: -(into_singletons as i64),
    }
}

/// An `m`-allocation of `g` read off a maximum flow, or `None` when
/// `m(g) > m`. Weights use the quantum `q = denominator(m)`.
pub fn compute_allocation(g: &Graph, m: &Rational) -> Result<Option<Allocation>, AllocationError> {
    if m.is_negative() {
        return Err(AllocationError::NegativeBound(format_rational(m)));
    }
    let quantum = m.denom().to_i64().ok_or(AllocationError::BadQuantum)?;
    m.numer().to_i64().ok_or(AllocationError::BadQuantum)?;
    let net = allocation_network(g, m);
    let result = max_flow(&net).expect("every source-sink path has a finite arc");
    if result.value != Rational::from_integer(BigInt::from(g.edge_count())) {
        return Ok(None);
    }
    let q = Rational::from_integer(BigInt::from(quantum));
    let theta = (0..g.edge_count())
        .map(|i| {
            let scaled = &result.flow[allocation_arc(g, i)] * &q;
            assert!(scaled.is_integer(), "flow lies on the 1/q grid");
            scaled.to_integer().to_i64().expect("at most q")
        })
        .collect();
    Allocation::new(g.clone(), m.clone(), quantum, theta).map(Some)
}

/// One ordered pair of an allocation certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub from: usize,
    pub to: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

/// Serializable form: `m`, the quantum, and `θ` on both orientations of every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationRecord {
    #[serde(with = "crate::rational::serde_str")]
    pub m: Rational,
    pub quantum: i64,
    pub theta: Vec<ThetaEntry>,
}

impl Allocation {
    pub fn to_record(&self) -> AllocationRecord {
        let theta = self
            .graph
            .edges()
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .map(|(from, to)| ThetaEntry {
                from,
                to,
                value: self.theta(from, to),
            })
            .collect();
        AllocationRecord {
            m: self.m.clone(),
            quantum: self.quantum,
            theta,
        }
    }

    /// Rebuilds and validates an allocation from its record. Both orientations
    /// of every edge must be listed and sum to 1; nothing else may appear.
    pub fn from_record(graph: Graph, record: &AllocationRecord) -> Result<Self, RecordError> {
        let q = Rational::from_integer(BigInt::from(record.quantum));
        let mut units: Vec<Option<i64>> = vec![None; graph.edge_count()];
        let mut reverse: Vec<Option<Rational>> = vec![None; graph.edge_count()];
        for entry in &record.theta {
            let i = graph
                .edge_index(entry.from, entry.to)
                .ok_or(RecordError::NotAnEdge(entry.from, entry.to))?;
            if entry.from < entry.to {
                let scaled = &entry.value * &q;
                if !scaled.is_integer() {
                    return Err(RecordError::OffGrid(entry.from, entry.to));
                }
                let t = scaled.to_integer().to_i64().ok_or(RecordError::OffGrid(entry.from, entry.to))?;
                if units[i].replace(t).is_some() {
                    return Err(RecordError::Duplicate(entry.from, entry.to));
                }
            } else if reverse[i].replace(entry.value.clone()).is_some() {
                return Err(RecordError::Duplicate(entry.from, entry.to));
            }
        }
        let mut theta = Vec::with_capacity(graph.edge_count());
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            let (Some(t), Some(back)) = (units[i], reverse[i].clone()) else {
                return Err(RecordError::Missing(u, v));
            };
            if Rational::new(t.into(), record.quantum.into()) + back != Rational::from_integer(1.into()) {
                return Err(RecordError::NotComplementary(u, v));
            }
            theta.push(t);
        }
        Ok(Allocation::new(graph, record.m.clone(), record.quantum, theta)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("θ({0},{1}) is not a multiple of the quantum")]
    OffGrid(usize, usize),
    #[error("θ({0},{1}) listed twice")]
    Duplicate(usize, usize),
    #[error("edge {0}-{1} lacks one of its two weights")]
    Missing(usize, usize),
    #[error("θ({0},{1}) + θ({1},{0}) != 1")]
    NotComplementary(usize, usize),
    #[error(transparent)]
    Invalid(#[from] AllocationError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn half_triangle() -> Allocation {
        Allocation::new(Graph::cycle(3), int(1), 2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let c3 = Graph::cycle(3);
        assert!(compute_allocation(&c3, &int(1)).unwrap().is_some());
        assert!(compute_allocation(&c3, &rat(9, 10)).unwrap().is_none());
        let k4 = Graph::complete(4);
        let a = compute_allocation(&k4, &rat(3, 2)).unwrap().unwrap();
        for v in 0..4 {
            assert_eq!(a.out_weight(v), rat(3, 2));
        }
        assert!(matches!(
            compute_allocation(&k4, &rat(-1, 2)),
            Err(AllocationError::NegativeBound(_))
        ));
    }

    #[test]
    fn weights_complement_and_vanish_off_edges() {
        let g = Graph::path(3);
        let a = Allocation::new(g, int(2), 3, vec![1, 2]).unwrap();
        assert_eq!(a.theta(0, 1), rat(1, 3));
        assert_eq!(a.theta(1, 0), rat(2, 3));
        assert_eq!(a.theta(0, 2), int(0));
        assert_eq!(a.fractional_graph().edge_count(), 2);
        assert_eq!(a.integral_digraph().arc_count(), 0);
    }

    #[test]
    fn constructor_rejects_invalid_weights() {
        let g = Graph::path(3);
        assert!(matches!(
            Allocation::new(g.clone(), int(1), 2, vec![3, 0]),
            Err(AllocationError::WeightOutOfRange { .. })
        ));
        // Vertex 1 would send 1/2 + 1 > 1.
        assert!(matches!(
            Allocation::new(g.clone(), int(1), 2, vec![1, 2]),
            Err(AllocationError::OverBudget { vertex: 1, .. })
        ));
        assert_eq!(
            Allocation::new(g.clone(), rat(1, 3), 2, vec![0, 0]),
            Err(AllocationError::BadQuantum)
        );
        assert!(matches!(
            Allocation::new(g, int(1), 2, vec![0]),
            Err(AllocationError::WrongLength { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn shifting_half_triangle_makes_it_integral() {
        let a = half_triangle();
        let b = a.shift_along_cycle(&[0, 1, 2]).unwrap();
        assert_eq!(b.fractional_edge_count(), 0);
        let d = b.integral_digraph();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn shifting_integral_cycle_reverses_it() {
        let a = Allocation::new(Graph::cycle(4), int(1), 1, vec![1, 0, 1, 1]).unwrap();
        // Edges (0,1),(0,3),(1,2),(2,3): arcs 0->1, 3->0, 1->2, 2->3.
        let before: Vec<_> = a.integral_digraph().arcs().collect();
        assert_eq!(before, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = a.shift_along_cycle(&[0, 1, 2, 3]).unwrap();
        let after: Vec<_> = b.integral_digraph().arcs().collect();
        assert_eq!(after, vec![(0, 3), (1, 0), (2, 1), (3, 2)]);
    }

    #[test]
    fn opposite_shifts_cancel() {
        // Forward minimum 1 on (1,2); afterwards the reverse minimum is also 1 on (1,0).
        let a = Allocation::new(Graph::cycle(3), int(2), 4, vec![4, 2, 1]).unwrap();
        let forward = a.shift_along_cycle(&[0, 1, 2]).unwrap();
        assert_eq!(forward.units(1, 2), 0);
        let back = forward.shift_along_cycle(&[2, 1, 0]).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn shift_rejections() {
        let a = half_triangle();
        assert_eq!(a.shift_along_cycle(&[0, 1]), Err(ShiftError::TooShort(2)));
        assert_eq!(a.shift_along_cycle(&[0, 1, 1]), Err(ShiftError::RepeatedVertex(1)));
        let p = Allocation::new(Graph::path(3), int(1), 1, vec![1, 1]).unwrap();
        assert_eq!(p.shift_along_cycle(&[0, 1, 2]), Err(ShiftError::NotAnEdge(2, 0)));
        let c = Allocation::new(Graph::cycle(3), int(2), 1, vec![1, 1, 0]).unwrap();
        // Edges (0,1),(0,2),(1,2): θ(0,1)=1, θ(0,2)=1, θ(1,2)=0, so 1->2 carries nothing.
        assert_eq!(c.shift_along_cycle(&[0, 1, 2]), Err(ShiftError::ZeroShift));
    }

    #[test]
    fn potential_examples() {
        let path = Allocation::new(Graph::path(4), int(1), 1, vec![1, 1, 1]).unwrap();
        assert_eq!(path.potential().fractional_edges, 0);
        assert_eq!(half_triangle().potential().as_tuple(), (3, 3, -3, 0));
        let directed = Allocation::new(Graph::cycle(3), int(1), 1, vec![1, 0, 1]).unwrap();
        assert_eq!(directed.potential().as_tuple(), (1, 0, -3, 0));
    }

    #[test]
    fn record_round_trip() {
        let a = compute_allocation(&Graph::complete(4), &rat(3, 2)).unwrap().unwrap();
        let record = a.to_record();
        assert_eq!(record.theta.len(), 12);
        let json = serde_json::to_string(&record).unwrap();
        let back: AllocationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Allocation::from_record(Graph::complete(4), &back).unwrap(), a);
        let mut broken = record.clone();
        broken.theta.pop();
        assert!(matches!(
            Allocation::from_record(Graph::complete(4), &broken),
            Err(RecordError::Missing(..))
        ));
    }
}
