//! Exact maximum flow / minimum cut over rational capacities.
//!
//! Capacities are scaled by the least common multiple of their denominators
//! and the integer network is solved with Dinic's algorithm (machine integers
//! when the scaled total fits, big integers otherwise). Flows are therefore
//! multiples of `1/q` for that common denominator `q`.

pub(crate) mod dinic;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::Rational;
use dinic::{Amount, Dinic};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rational),
    Infinite,
}

impl Capacity {
    pub fn finite(value: Rational) -> Self {
        Capacity::Finite(value)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Capacity::Infinite)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("source and sink coincide (node {0})")]
    SourceIsSink(usize),
    #[error("node {node} out of range for a network with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("negative capacity on arc {tail}->{head}")]
    NegativeCapacity { tail: usize, head: usize },
    #[error("unbounded flow: an s-t path uses only infinite arcs")]
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self, FlowError> {
        for node in [source, sink] {
            if node >= nodes {
                return Err(FlowError::NodeOutOfRange { node, nodes });
            }
        }
        if source == sink {
            return Err(FlowError::SourceIsSink(source));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    /// Appends an arc and returns its index.
    pub fn add_arc(&mut self, tail: usize, head: usize, capacity: Capacity) -> Result<usize, FlowError> {
        for node in [tail, head] {
            if node >= self.nodes {
                return Err(FlowError::NodeOutOfRange {
                    node,
                    nodes: self.nodes,
                });
            }
        }
        if let Capacity::Finite(c) = &capacity {
            if c.is_negative() {
                return Err(FlowError::NegativeCapacity { tail, head });
            }
        }
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
        });
        Ok(self.arcs.len() - 1)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: Rational,
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub flow: Vec<Rational>,
    /// Source side of a minimum cut (residual reachability from the source).
    pub min_cut: Vec<bool>,
}

impl FlowResult {
    /// Total capacity of arcs leaving the source side; `None` if an infinite arc crosses.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> Option<Rational> {
        let mut total = Rational::zero();
        for arc in &net.arcs {
            if self.min_cut[arc.tail] && !self.min_cut[arc.head] {
                match &arc.capacity {
                    Capacity::Finite(c) => total += c,
                    Capacity::Infinite => return None,
                }
            }
        }
        Some(total)
    }
}

/// Exact maximum flow and a minimum cut.
pub fn max_flow(net: &FlowNetwork) -> Result<FlowResult, FlowError> {
    if infinite_path_exists(net) {
        return Err(FlowError::Unbounded);
    }
    let scale = net
        .arcs
        .iter()
        .filter_map(|a| match &a.capacity {
            Capacity::Finite(c) => Some(c.denom().clone()),
            Capacity::Infinite => None,
        })
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled: Vec<Option<BigInt>> = net
        .arcs
        .iter()
        .map(|a| match &a.capacity {
            Capacity::Finite(c) => Some(c.numer() * (&scale / c.denom())),
            Capacity::Infinite => None,
        })
        .collect();
    // Every s-t path has a finite arc, so the finite arcs form a cut and any
    // value above their total acts as infinity.
    let big: BigInt = scaled.iter().flatten().sum::<BigInt>() + 1;

    let (value, flows, min_cut) = match big.to_i64().filter(|b| b.checked_mul(2).is_some()) {
        Some(inf) => {
            let caps = scaled.iter().map(|c| c.as_ref().map_or(inf, |c| c.to_i64().unwrap()));
            let (v, f, cut) = solve(net, caps);
            (BigInt::from(v), f.into_iter().map(BigInt::from).collect(), cut)
        }
        None => {
            let caps = scaled.iter().map(|c| c.clone().unwrap_or_else(|| big.clone()));
            solve(net, caps)
        }
    };

    // Duality: the value equals the capacity of the cut, and the cut avoids infinite arcs.
    let mut cut_total = BigInt::zero();
    for (arc, cap) in net.arcs.iter().zip(&scaled) {
        if min_cut[arc.tail] && !min_cut[arc.head] {
            let cap = cap.as_ref().expect("minimum cut crosses an infinite arc");
            cut_total += cap;
        }
    }
    assert_eq!(value, cut_total, "max-flow / min-cut mismatch");

    let to_rational = |x: BigInt| Rational::new(x, scale.clone());
    Ok(FlowResult {
        value: to_rational(value),
        flow: flows.into_iter().map(to_rational).collect(),
        min_cut,
    })
}

fn solve<T: Amount>(net: &FlowNetwork, caps: impl Iterator<Item = T>) -> (T, Vec<T>, Vec<bool>) {
    let mut engine = Dinic::new(net.nodes);
    for (arc, cap) in net.arcs.iter().zip(caps) {
        engine.add_arc(arc.tail, arc.head, cap);
    }
    let value = engine.run(net.source, net.sink);
    let flows = (0..net.arcs.len()).map(|i| engine.flow(i)).collect();
    (value, flows, engine.source_side(net.source))
}

fn infinite_path_exists(net: &FlowNetwork) -> bool {
    let mut seen = vec![false; net.nodes];
    seen[net.source] = true;
    let mut stack = vec![net.source];
    while let Some(x) = stack.pop() {
        for arc in net.arcs.iter().filter(|a| a.tail == x && a.capacity.is_infinite()) {
            if !seen[arc.head] {
                seen[arc.head] = true;
                stack.push(arc.head);
            }
        }
    }
    seen[net.sink]
}

/// Node layout of [`allocation_network`]: `s = 0`, vertex `v` at `1 + v`,
/// edge `i` at `1 + n + i`, `t = 1 + n + e`.
///
/// Arcs: `s -> v` (capacity `m`) are arcs `0..n`; for edge `i = (u, v)` with
/// `u < v`, arc `n + 2i` is `u -> e_i` and `n + 2i + 1` is `v -> e_i` (both
/// infinite); `e_i -> t` (capacity 1) is arc `n + 2e + i`.
pub fn allocation_network(g: &Graph, m: &Rational) -> FlowNetwork {
    let (n, e) = (g.n(), g.edge_count());
    let sink = n + e + 1;
    let mut net = FlowNetwork::new(n + e + 2, 0, sink).expect("valid layout");
    let push = |net: &mut FlowNetwork, tail, head, cap| {
        net.add_arc(tail, head, cap).expect("valid allocation network arc");
    };
    for v in 0..n {
        push(&mut net, 0, 1 + v, Capacity::Finite(m.clone()));
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        push(&mut net, 1 + u, 1 + n + i, Capacity::Infinite);
        push(&mut net, 1 + v, 1 + n + i, Capacity::Infinite);
    }
    for i in 0..e {
        push(&mut net, 1 + n + i, sink, Capacity::Finite(Rational::one()));
    }
    net
}

/// Index of the arc carrying `θ(lower endpoint, upper endpoint)` for edge `i`.
pub fn allocation_arc(g: &Graph, edge_index: usize) -> usize {
    g.n() + 2 * edge_index
}
