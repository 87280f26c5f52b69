//! Self-contained JSON certificates and their independent verification.
//!
//! Every document carries the graphs it talks about. [`verify`] recomputes
//! each claim from those graphs and the listed sets; recorded values are only
//! compared against recomputed ones, never trusted.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::allocation::{Allocation, AllocationRecord};
use crate::decompose::{Decomposition, DecompositionMode, ForestPartition};
use crate::density::{self, max_density, mixed_m2, mixed_ratio_at, ratio_at, Measure};
use crate::graph::{is_forest, Edge, Graph};
use crate::ramsey::{verify_coloring, RamseyColoring};
use crate::rational::{format_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Density {
        graph: Graph,
        measure: Measure,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
        witness: Vec<usize>,
    },
    Mixed {
        h1: Graph,
        h2: Graph,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
        /// `-1 / m2(h1, h2)`.
        #[serde(with = "crate::rational::serde_str")]
        exponent: Rational,
        witness: Vec<usize>,
    },
    Allocation {
        graph: Graph,
        allocation: AllocationRecord,
    },
    /// No `m`-allocation exists: `witness` spans more than `m` edges per vertex.
    NoAllocation {
        graph: Graph,
        #[serde(with = "crate::rational::serde_str")]
        m: Rational,
        witness: Vec<usize>,
    },
    Decomposition(Decomposition),
    Forests(ForestPartition),
    /// No partition into `k` forests: `witness` spans more than `k (v - 1)` edges.
    NoForests {
        graph: Graph,
        k: usize,
        witness: Vec<usize>,
    },
    Ramsey(RamseyColoring),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("recorded value {recorded} differs from recomputed {actual}")]
    ValueMismatch { recorded: String, actual: String },
    #[error("witness {0:?} does not attain the recorded value")]
    BadWitness(Vec<usize>),
    #[error("witness {0:?} is not a set of distinct vertices of the graph")]
    MalformedWitness(Vec<usize>),
    #[error("measure undefined: {0}")]
    Undefined(String),
    #[error("invalid allocation: {0}")]
    Allocation(String),
    #[error("invalid decomposition: {0}")]
    Decomposition(String),
    #[error("invalid forest partition: {0}")]
    Forests(String),
    #[error("invalid coloring: {0}")]
    Coloring(String),
}

fn mismatch(recorded: &Rational, actual: &Rational) -> VerifyError {
    VerifyError::ValueMismatch {
        recorded: format_rational(recorded),
        actual: format_rational(actual),
    }
}

fn check_set(g: &Graph, set: &[usize]) -> Result<(), VerifyError> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() || set.iter().any(|&v| v >= g.n()) {
        return Err(VerifyError::MalformedWitness(set.to_vec()));
    }
    Ok(())
}

/// Re-checks a certificate from scratch.
pub fn verify(cert: &Certificate) -> Result<(), VerifyError> {
    match cert {
        Certificate::Density {
            graph,
            measure,
            value,
            witness,
        } => {
            check_set(graph, witness)?;
            let actual = density::density(graph, *measure)
                .map_err(|e| VerifyError::Undefined(e.to_string()))?
                .value;
            if actual != *value {
                return Err(mismatch(value, &actual));
            }
            if ratio_at(graph, *measure, witness).as_ref() != Some(value) {
                return Err(VerifyError::BadWitness(witness.clone()));
            }
            Ok(())
        }
        Certificate::Mixed {
            h1,
            h2,
            value,
            exponent,
            witness,
        } => {
            check_set(h1, witness)?;
            let actual = mixed_m2(h1, h2).map_err(|e| VerifyError::Undefined(e.to_string()))?.value;
            if actual != *value {
                return Err(mismatch(value, &actual));
            }
            let m2_h2 = density::m2(h2).value;
            if mixed_ratio_at(h1, &m2_h2, witness).as_ref() != Some(value) {
                return Err(VerifyError::BadWitness(witness.clone()));
            }
            let expected = -actual.recip();
            if *exponent != expected {
                return Err(mismatch(exponent, &expected));
            }
            Ok(())
        }
        Certificate::Allocation { graph, allocation } => {
            Allocation::from_record(graph.clone(), allocation).map_err(|e| VerifyError::Allocation(e.to_string()))?;
            Ok(())
        }
        Certificate::NoAllocation { graph, m, witness } => {
            check_set(graph, witness)?;
            let e = Rational::from_integer(BigInt::from(graph.induced_edge_count(witness)));
            let v = Rational::from_integer(BigInt::from(witness.len()));
            if witness.is_empty() || e <= m * v {
                return Err(VerifyError::BadWitness(witness.clone()));
            }
            Ok(())
        }
        Certificate::Decomposition(dec) => verify_decomposition(dec),
        Certificate::Forests(p) => verify_forests(p),
        Certificate::NoForests { graph, k, witness } => {
            check_set(graph, witness)?;
            let e = graph.induced_edge_count(witness);
            if witness.len() < 2 || e <= k * (witness.len() - 1) {
                return Err(VerifyError::BadWitness(witness.clone()));
            }
            Ok(())
        }
        Certificate::Ramsey(c) => match verify_coloring(c) {
            Ok(true) => Ok(()),
            Ok(false) => Err(VerifyError::Coloring("a color class contains its forbidden pattern".into())),
            Err(e) => Err(VerifyError::Coloring(e.to_string())),
        },
    }
}

fn verify_decomposition(dec: &Decomposition) -> Result<(), VerifyError> {
    let fail = |s: String| VerifyError::Decomposition(s);
    let densest = max_density(&dec.graph).value;
    match dec.mode {
        DecompositionMode::PseudoforestM2 => {
            if dec.m != densest {
                return Err(fail(format!(
                    "bound {} is not m(G) = {}",
                    format_rational(&dec.m),
                    format_rational(&densest)
                )));
            }
        }
        DecompositionMode::ForestM43 => {
            if dec.m <= rat(3, 2) || densest > dec.m {
                return Err(fail(format!(
                    "bound {} must exceed 3/2 and m(G) = {}",
                    format_rational(&dec.m),
                    format_rational(&densest)
                )));
            }
        }
    }
    dec.verify().map_err(|e| fail(e.to_string()))?;
    if let Some(recorded) = &dec.certificate.rest_density {
        let actual = density::density(&dec.rest_graph(), dec.certificate.measure)
            .map_err(|e| fail(e.to_string()))?
            .value;
        if actual != recorded.value {
            return Err(mismatch(&recorded.value, &actual));
        }
    }
    Ok(())
}

fn verify_forests(p: &ForestPartition) -> Result<(), VerifyError> {
    let fail = |s: &str| VerifyError::Forests(s.to_string());
    if p.forests.len() != p.k {
        return Err(fail("number of forests differs from k"));
    }
    let mut all: Vec<Edge> = p.forests.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != p.graph.edges() {
        return Err(fail("the forests do not partition the edge set"));
    }
    for f in &p.forests {
        let g = Graph::from_edges(p.graph.n(), f.iter().copied()).map_err(|e| VerifyError::Forests(e.to_string()))?;
        if !is_forest(&g) {
            return Err(fail("a part contains a cycle"));
        }
    }
    Ok(())
}
