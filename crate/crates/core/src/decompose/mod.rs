//! Sparse edge partitions built from optimized allocations.
//!
//! [`pseudoforest_decompose`] splits off a pseudoforest `F` so that
//! `m2(G - F) <= m(G)`; [`forest_decompose_43`] splits off a forest so that
//! `m43(G - F) < m` for any `m > 3/2` with `m(G) <= m`. Both take `F` from a
//! spine of the integral digraph of an optimized allocation and certify the
//! result with an exact density check.

mod nash_williams;
mod violating;

pub use nash_williams::{nash_williams_partition, ForestPartition};
pub use violating::{find_violating_set, violates, ViolatingSet, ViolationMode};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::allocation::{compute_allocation, optimize, Allocation};
use crate::density::{self, check_density_at_most, check_density_below, DensityWitness, Measure};
use crate::graph::{is_forest, is_pseudoforest, strong_components, Digraph, Edge, Graph};
use crate::rational::{format_rational, rat, Rational};
use crate::spine::{
    build_spine, choose_roots_good_arcs, default_roots, extend_to_pseudospine, minimize_k4_reroot_traced,
    GoodArcError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionMode {
    /// `F` a pseudoforest, `m2(G - F) <= m`.
    PseudoforestM2,
    /// `F` a forest, `m43(G - F) < m`.
    ForestM43,
}

/// How spine roots were picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootStrategy {
    /// No spine: `m(G) <= 1`, so `G` is itself a pseudoforest and `F = G`.
    WholeGraph,
    /// Smallest vertex of each terminal component.
    Smallest,
    /// Smallest vertices, then re-rooting while the `K4` count of `G - F` drops.
    K4Reroot,
    /// Tails of arcs whose endpoints share no fractional neighbor.
    GoodArcs,
}

/// What was checked when the decomposition was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub measure: Measure,
    #[serde(with = "crate::rational::serde_str")]
    pub bound: Rational,
    /// `measure(G - F) < bound` rather than `<=`.
    pub strict: bool,
    /// The measure of `G - F` with an attaining set, when defined.
    pub rest_density: Option<DensityWitness>,
    pub root_strategy: RootStrategy,
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub graph: Graph,
    pub mode: DecompositionMode,
    #[serde(with = "crate::rational::serde_str")]
    pub m: Rational,
    pub part_f: Vec<Edge>,
    pub part_rest: Vec<Edge>,
    pub certificate: Certificate,
}

/// Why a stored decomposition does not hold up.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidDecomposition {
    #[error("the two parts do not partition the edge set")]
    NotAPartition,
    #[error("F is not a {0}")]
    BadStructure(&'static str),
    #[error("the rest breaks the bound on the set {0:?}")]
    DensityBound(Vec<usize>),
}

impl Decomposition {
    pub fn forest_graph(&self) -> Graph {
        self.graph
            .spanning_subgraph(self.part_f.iter().copied())
            .expect("F is a subgraph")
    }

    pub fn rest_graph(&self) -> Graph {
        self.graph
            .spanning_subgraph(self.part_rest.iter().copied())
            .expect("rest is a subgraph")
    }

    /// Re-derives every claim from the graph and the two edge lists.
    pub fn verify(&self) -> Result<(), InvalidDecomposition> {
        let mut all: Vec<Edge> = self.part_f.iter().chain(&self.part_rest).copied().collect();
        all.sort_unstable();
        if all != self.graph.edges() {
            return Err(InvalidDecomposition::NotAPartition);
        }
        let f = Graph::from_edges(self.graph.n(), self.part_f.iter().copied())
            .map_err(|_| InvalidDecomposition::NotAPartition)?;
        let rest = self.rest_graph();
        let check = match self.mode {
            DecompositionMode::PseudoforestM2 => {
                if !is_pseudoforest(&f) {
                    return Err(InvalidDecomposition::BadStructure("pseudoforest"));
                }
                check_density_at_most(&rest, Measure::M2, &self.m)
            }
            DecompositionMode::ForestM43 => {
                if !is_forest(&f) {
                    return Err(InvalidDecomposition::BadStructure("forest"));
                }
                check_density_below(&rest, Measure::M43, &self.m)
            }
        };
        match check.witness {
            None => Ok(()),
            Some(set) => Err(InvalidDecomposition::DensityBound(set)),
        }
    }
}

/// Structural facts about a minimal violating set found against a spine
/// forest. At an optimal allocation with `m > 3/2` all three hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatorAnalysis {
    /// Number of terminal components of the integral digraph that meet `U`.
    pub terminal_components_met: usize,
    /// `U` meets exactly one terminal component, in at least two vertices.
    pub meets_one_terminal_twice: bool,
    /// `|U| <= 4m/3 + 1`.
    pub size_within_bound: bool,
    /// `m <= 9/5` or `m = 9/4`.
    pub bound_in_exceptional_range: bool,
}

impl ViolatorAnalysis {
    pub fn new(d: &Digraph, m: &Rational, u: &ViolatingSet) -> Self {
        let parts = strong_components(d);
        let mut hits = vec![0usize; parts.len()];
        for &v in &u.vertices {
            hits[parts.component_of(v)] += 1;
        }
        let met: Vec<usize> = parts.terminal_components().map(|c| hits[c]).filter(|&h| h > 0).collect();
        let size = Rational::from_integer(u.vertices.len().into());
        ViolatorAnalysis {
            terminal_components_met: met.len(),
            meets_one_terminal_twice: met.len() == 1 && met[0] >= 2,
            size_within_bound: size <= rat(4, 3) * m + rat(1, 1),
            bound_in_exceptional_range: *m <= rat(9, 5) || *m == rat(9, 4),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.meets_one_terminal_twice && self.size_within_bound && self.bound_in_exceptional_range
    }
}

/// An internal failure: the construction produced something the theory
/// rules out at an optimal allocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub mode: DecompositionMode,
    #[serde(with = "crate::rational::serde_str")]
    pub m: Rational,
    pub message: String,
    pub part_f: Vec<Edge>,
    pub violating_set: Option<ViolatingSet>,
    pub analysis: Option<ViolatorAnalysis>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("the forest decomposition needs m > 3/2, got {0}")]
    BoundTooSmall(String),
    #[error("m(G) = {density} exceeds the bound {bound} (densest set {witness:?})")]
    DensityAboveBound {
        density: String,
        bound: String,
        witness: Vec<usize>,
    },
    #[error("internal diagnostic: {}", .0.message)]
    Diagnostic(Box<Diagnostic>),
}

impl DecomposeError {
    /// Process exit status: 1 infeasible, 2 bad input, 3 internal diagnostic.
    pub fn exit_code(&self) -> u8 {
        match self {
            DecomposeError::BoundTooSmall(_) => 2,
            DecomposeError::DensityAboveBound { .. } => 1,
            DecomposeError::Diagnostic(_) => 3,
        }
    }
}

/// Optimized allocation at bound `m`, assuming `m(g) <= m`.
fn optimized_allocation(g: &Graph, m: &Rational) -> Allocation {
    let a = compute_allocation(g, m)
        .expect("bound is a non-negative machine-sized rational")
        .expect("m(g) <= m");
    optimize(&a)
}

fn split(g: &Graph, h: &Digraph) -> (Vec<Edge>, Vec<Edge>) {
    let f = h.underlying_edges();
    let rest = g.without_edges(&f).edges().to_vec();
    (f, rest)
}

/// A pseudoforest `F` with `m2(G - F) <= m(G)`.
pub fn pseudoforest_decompose(g: &Graph) -> Result<Decomposition, DecomposeError> {
    let m = density::max_density(g).value;
    if m <= rat(1, 1) {
        // The counting argument behind the spine construction needs m > 1.
        return Ok(Decomposition {
            graph: g.clone(),
            mode: DecompositionMode::PseudoforestM2,
            certificate: Certificate {
                measure: Measure::M2,
                bound: m.clone(),
                strict: false,
                rest_density: Some(density::m2(&Graph::empty(g.n()))),
                root_strategy: RootStrategy::WholeGraph,
                roots: Vec::new(),
            },
            m,
            part_f: g.edges().to_vec(),
            part_rest: Vec::new(),
        });
    }
    let a = optimized_allocation(g, &m);
    let d = a.integral_digraph();
    let roots = default_roots(&d);
    let spine = build_spine(&d, &roots).expect("default roots are valid");
    let h = extend_to_pseudospine(&spine, &d);
    let (part_f, part_rest) = split(g, &h);
    let rest = g.without_edges(&part_f);
    if !check_density_at_most(&rest, Measure::M2, &m).holds {
        let violating_set = find_violating_set(&rest, &m, ViolationMode::M2);
        return Err(DecomposeError::Diagnostic(Box::new(Diagnostic {
            mode: DecompositionMode::PseudoforestM2,
            m,
            message: "m2(G - F) exceeds m(G)".into(),
            part_f,
            violating_set,
            analysis: None,
        })));
    }
    Ok(Decomposition {
        graph: g.clone(),
        mode: DecompositionMode::PseudoforestM2,
        certificate: Certificate {
            measure: Measure::M2,
            bound: m.clone(),
            strict: false,
            rest_density: Some(density::m2(&rest)),
            root_strategy: RootStrategy::Smallest,
            roots: spine.roots,
        },
        m,
        part_f,
        part_rest,
    })
}

/// Root strategy used for a bound `m > 3/2`.
pub fn root_strategy_for(m: &Rational) -> RootStrategy {
    if *m == rat(9, 4) {
        RootStrategy::K4Reroot
    } else if *m <= rat(9, 5) {
        RootStrategy::GoodArcs
    } else {
        RootStrategy::Smallest
    }
}

/// A forest `F` with `m43(G - F) < m`, for `m > 3/2` and `m(g) <= m`.
pub fn forest_decompose_43(g: &Graph, m: &Rational) -> Result<Decomposition, DecomposeError> {
    if *m <= rat(3, 2) {
        return Err(DecomposeError::BoundTooSmall(format_rational(m)));
    }
    let densest = density::max_density(g);
    if densest.value > *m {
        return Err(DecomposeError::DensityAboveBound {
            density: format_rational(&densest.value),
            bound: format_rational(m),
            witness: densest.witness,
        });
    }
    let a = optimized_allocation(g, m);
    let d = a.integral_digraph();
    let strategy = root_strategy_for(m);
    let diagnostic = |message: String, part_f: Vec<Edge>, violating_set, analysis| {
        DecomposeError::Diagnostic(Box::new(Diagnostic {
            mode: DecompositionMode::ForestM43,
            m: m.clone(),
            message,
            part_f,
            violating_set,
            analysis,
        }))
    };
    let spine = match strategy {
        RootStrategy::Smallest | RootStrategy::WholeGraph => {
            build_spine(&d, &default_roots(&d)).expect("default roots are valid")
        }
        RootStrategy::K4Reroot => {
            let start = build_spine(&d, &default_roots(&d)).expect("default roots are valid");
            minimize_k4_reroot_traced(&a, &start).0
        }
        RootStrategy::GoodArcs => match choose_roots_good_arcs(&a) {
            Ok(roots) => build_spine(&d, &roots).expect("good-arc roots are valid"),
            Err(e @ GoodArcError::NoGoodArc { .. }) | Err(e @ GoodArcError::NotACycle { .. }) => {
                return Err(diagnostic(e.to_string(), Vec::new(), None, None));
            }
            Err(GoodArcError::BoundTooLarge) => unreachable!("m <= 9/5 < 2"),
        },
    };
    let (part_f, part_rest) = split(g, &spine.digraph);
    let rest = g.without_edges(&part_f);
    if !check_density_below(&rest, Measure::M43, m).holds {
        let violating_set = find_violating_set(&rest, m, ViolationMode::M43);
        let analysis = violating_set.as_ref().map(|u| ViolatorAnalysis::new(&d, m, u));
        return Err(diagnostic(
            "m43(G - F) is not below m".into(),
            part_f,
            violating_set,
            analysis,
        ));
    }
    let rest_density = density::m43(&rest).ok();
    Ok(Decomposition {
        graph: g.clone(),
        mode: DecompositionMode::ForestM43,
        m: m.clone(),
        part_f,
        part_rest,
        certificate: Certificate {
            measure: Measure::M43,
            bound: m.clone(),
            strict: true,
            rest_density,
            root_strategy: strategy,
            roots: spine.roots,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{exhaustive, m2, m43};
    use crate::rational::int;

    #[test]
    fn forest_goes_entirely_into_f() {
        let g = Graph::path(5);
        let dec = pseudoforest_decompose(&g).unwrap();
        assert_eq!(dec.part_f, g.edges());
        assert!(dec.part_rest.is_empty());
        dec.verify().unwrap();
    }

    #[test]
    fn k4_pseudoforest() {
        let g = Graph::complete(4);
        let dec = pseudoforest_decompose(&g).unwrap();
        assert_eq!(dec.m, rat(3, 2));
        assert!(dec.part_f.len() >= 4);
        let rest = dec.rest_graph();
        assert!(exhaustive(&rest, Measure::M2).unwrap().value <= rat(3, 2));
        dec.verify().unwrap();
    }

    #[test]
    fn c5_forest_at_eight_fifths() {
        let g = Graph::cycle(5);
        let dec = forest_decompose_43(&g, &rat(8, 5)).unwrap();
        assert_eq!(dec.part_f.len(), 4);
        assert_eq!(dec.part_rest.len(), 1);
        assert_eq!(m43(&dec.rest_graph()).unwrap().value, rat(3, 2));
        assert_eq!(dec.certificate.root_strategy, RootStrategy::GoodArcs);
        dec.verify().unwrap();
    }

    #[test]
    fn k4_at_nine_quarters() {
        let g = Graph::complete(4);
        let dec = forest_decompose_43(&g, &rat(9, 4)).unwrap();
        assert!(!dec.part_f.is_empty());
        assert_eq!(dec.rest_graph().count_k4(), 0);
        assert!(m43(&dec.rest_graph()).unwrap().value < rat(9, 4));
        assert_eq!(dec.certificate.root_strategy, RootStrategy::K4Reroot);
    }

    #[test]
    fn forest_preconditions() {
        let g = Graph::complete(5);
        assert!(matches!(
            forest_decompose_43(&g, &rat(3, 2)),
            Err(DecomposeError::BoundTooSmall(_))
        ));
        assert!(matches!(
            forest_decompose_43(&g, &rat(7, 4)),
            Err(DecomposeError::DensityAboveBound { .. })
        ));
        forest_decompose_43(&g, &int(2)).unwrap().verify().unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = Graph::complete(4);
        let mut dec = pseudoforest_decompose(&g).unwrap();
        let moved = dec.part_f.pop().unwrap();
        dec.part_rest.push(moved);
        dec.part_rest.sort_unstable();
        // Moving one edge back may or may not break the bound; dropping it must.
        dec.part_rest.pop();
        assert_eq!(dec.verify(), Err(InvalidDecomposition::NotAPartition));
        let mut bad = pseudoforest_decompose(&g).unwrap();
        bad.part_rest.append(&mut bad.part_f);
        bad.part_rest.sort_unstable();
        assert!(matches!(bad.verify(), Err(InvalidDecomposition::DensityBound(_))));
        assert_eq!(m2(&g).value, rat(5, 2));
    }
}
