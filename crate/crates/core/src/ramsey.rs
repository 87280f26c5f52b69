//! Two-colorings of `E(G)` with color 1 `H1`-free and color 2 `H2`-free.
//!
//! For `m2(H1) > m2(H2) > 1` and `m(G) <= m2(H1, H2)` the coloring comes from
//! one of three decompositions, chosen by the density of `G` and the shape of
//! a strictly 2-balanced subgraph `H2'` of `H2`:
//!
//! * `m(G) <= 3/2`: two forests (`m1(G) <= m(G) + 1/2 <= 2`);
//! * `H2'` has two independent cycles: a pseudoforest for color 2, the
//!   `m2`-sparse rest for color 1;
//! * `H2'` is a cycle with `m2(H2') <= 3/2`: a forest for color 2, the
//!   `m43`-sparse rest for color 1.
//!
//! The remaining case, `H2'` a triangle with `m(G) > 3/2`, is reported as
//! unsupported. Every coloring is checked by subgraph search before it is
//! returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{forest_decompose_43, nash_williams_partition, pseudoforest_decompose, DecomposeError};
use crate::density::{self, m2, max_density, mixed_m2};
use crate::graph::{contains_subgraph, strictly_2_balanced_subgraph, Edge, Graph};
use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    TwoForests,
    Pseudoforest,
    Forest43,
}

/// `G` with two patterns satisfying `m2(h1) > m2(h2) > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    g: Graph,
    h1: Graph,
    h2: Graph,
    m2_h1: Rational,
    m2_h2: Rational,
    mixed: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyColoring {
    pub graph: Graph,
    pub h1: Graph,
    pub h2: Graph,
    pub color1_edges: Vec<Edge>,
    pub color2_edges: Vec<Edge>,
    pub branch: Branch,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("patterns must satisfy m2(h1) > m2(h2) > 1; got m2(h1) = {m2_h1}, m2(h2) = {m2_h2}")]
    Hypothesis { m2_h1: String, m2_h2: String },
    #[error("m(G) = {density} exceeds m2(h1, h2) = {mixed}")]
    TooDense { density: String, mixed: String },
    #[error("unsupported: the strictly 2-balanced part of h2 is a triangle and m(G) = {density} > 3/2")]
    Unsupported { density: String },
    #[error("the color classes do not partition the edges of G")]
    MalformedPartition,
    #[error("color {color} contains a copy of its forbidden pattern ({branch:?} branch)")]
    VerificationFailed { color: u8, branch: Branch },
    #[error("the forest partition failed although m(G) <= 3/2")]
    ForestPartitionFailed,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

impl RamseyError {
    /// Process exit status: 1 infeasible or unsupported, 2 bad input,
    /// 3 internal diagnostic.
    pub fn exit_code(&self) -> u8 {
        match self {
            RamseyError::TooDense { .. } | RamseyError::Unsupported { .. } => 1,
            RamseyError::Hypothesis { .. } | RamseyError::MalformedPartition => 2,
            RamseyError::VerificationFailed { .. } | RamseyError::ForestPartitionFailed => 3,
            RamseyError::Decompose(e) => e.exit_code(),
        }
    }
}

impl ProblemInstance {
    /// Checks the pattern hypothesis and the sandwich
    /// `m2(h1) > m2(h1, h2) > m2(h2)`.
    pub fn new(g: Graph, h1: Graph, h2: Graph) -> Result<Self, RamseyError> {
        let m2_h1 = m2(&h1).value;
        let m2_h2 = m2(&h2).value;
        if !(m2_h1 > m2_h2 && m2_h2 > rat(1, 1)) {
            return Err(RamseyError::Hypothesis {
                m2_h1: format_rational(&m2_h1),
                m2_h2: format_rational(&m2_h2),
            });
        }
        let mixed = mixed_m2(&h1, &h2).expect("m2(h1) > m2(h2) > 0").value;
        assert!(m2_h1 > mixed && mixed > m2_h2, "mixed density lies strictly between the two");
        Ok(ProblemInstance {
            g,
            h1,
            h2,
            m2_h1,
            m2_h2,
            mixed,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn h1(&self) -> &Graph {
        &self.h1
    }

    pub fn h2(&self) -> &Graph {
        &self.h2
    }

    pub fn m2_h1(&self) -> &Rational {
        &self.m2_h1
    }

    pub fn m2_h2(&self) -> &Rational {
        &self.m2_h2
    }

    /// `m2(h1, h2)`.
    pub fn mixed(&self) -> &Rational {
        &self.mixed
    }
}

/// The branch the driver takes for `inst`, or the unsupported case.
pub fn select_branch(inst: &ProblemInstance) -> Result<Branch, RamseyError> {
    let density = max_density(&inst.g).value;
    if density <= rat(3, 2) {
        return Ok(Branch::TwoForests);
    }
    let core = strictly_2_balanced_subgraph(&inst.h2).expect("m2(h2) > 1 needs a cycle, so two edges");
    if core.cyclomatic_number() >= 2 {
        return Ok(Branch::Pseudoforest);
    }
    // A strictly 2-balanced graph with one cycle is that cycle.
    if m2(&core).value <= rat(3, 2) {
        Ok(Branch::Forest43)
    } else {
        Err(RamseyError::Unsupported {
            density: format_rational(&density),
        })
    }
}

/// Colors `E(G)` so that color 1 is `h1`-free and color 2 is `h2`-free.
pub fn ramsey_decompose(inst: &ProblemInstance) -> Result<RamseyColoring, RamseyError> {
    ramsey_decompose_with(inst, false)
}

/// As [`ramsey_decompose`]; with `best_effort` the density hypothesis
/// `m(G) <= m2(h1, h2)` is not enforced and the result stands or falls by
/// verification alone.
pub fn ramsey_decompose_with(inst: &ProblemInstance, best_effort: bool) -> Result<RamseyColoring, RamseyError> {
    let g = &inst.g;
    let density = max_density(g).value;
    if density > inst.mixed && !best_effort {
        return Err(RamseyError::TooDense {
            density: format_rational(&density),
            mixed: format_rational(&inst.mixed),
        });
    }
    let branch = select_branch(inst)?;
    let (color1_edges, color2_edges) = match branch {
        Branch::TwoForests => {
            let parts = nash_williams_partition(g, 2).ok_or(RamseyError::ForestPartitionFailed)?;
            let mut forests = parts.forests.into_iter();
            (forests.next().unwrap(), forests.next().unwrap())
        }
        Branch::Pseudoforest => {
            let dec = pseudoforest_decompose(g)?;
            (dec.part_rest, dec.part_f)
        }
        Branch::Forest43 => {
            let dec = forest_decompose_43(g, &density)?;
            if !best_effort {
                // m43(rest) < m(G) <= m2(h1, h2) <= m43(h1): the rest cannot hold h1.
                let rest = dec.certificate.rest_density.as_ref().map(|w| w.value.clone());
                let h1_43 = density::m43(&inst.h1).expect("h1 has at least two vertices").value;
                assert!(rest.is_none_or(|r| r < density));
                assert!(density <= inst.mixed && inst.mixed <= h1_43);
            }
            (dec.part_rest, dec.part_f)
        }
    };
    let mut coloring = RamseyColoring {
        graph: g.clone(),
        h1: inst.h1.clone(),
        h2: inst.h2.clone(),
        color1_edges,
        color2_edges,
        branch,
        verified: false,
    };
    if let Some(color) = forbidden_color(&coloring)? {
        return Err(RamseyError::VerificationFailed { color, branch });
    }
    coloring.verified = true;
    Ok(coloring)
}

/// True iff the classes partition `E(G)`, color 1 is `h1`-free and color 2
/// is `h2`-free. Recorded flags are ignored.
pub fn verify_coloring(c: &RamseyColoring) -> Result<bool, RamseyError> {
    Ok(forbidden_color(c)?.is_none())
}

/// The first color class containing its pattern.
fn forbidden_color(c: &RamseyColoring) -> Result<Option<u8>, RamseyError> {
    let mut all: Vec<Edge> = c.color1_edges.iter().chain(&c.color2_edges).copied().collect();
    all.sort_unstable();
    if all != c.graph.edges() {
        return Err(RamseyError::MalformedPartition);
    }
    let class = |edges: &[Edge]| {
        c.graph
            .spanning_subgraph(edges.iter().copied())
            .expect("classes are subsets of E(G)")
    };
    if contains_subgraph(&class(&c.color1_edges), &c.h1) {
        return Ok(Some(1));
    }
    if contains_subgraph(&class(&c.color2_edges), &c.h2) {
        return Ok(Some(2));
    }
    Ok(None)
}

/// Orders patterns by decreasing `m2` (stable), returning input indices. A
/// tuple reduces to its two densest members; the others get empty colors.
pub fn order_by_m2(patterns: &[Graph]) -> Vec<usize> {
    let values: Vec<Rational> = patterns.iter().map(|h| m2(h).value).collect();
    let mut order: Vec<usize> = (0..patterns.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]));
    order
}
