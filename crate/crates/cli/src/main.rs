//! Command-line front end for exact densities, allocations, decompositions
//! and two-colorings.
//!
//! Exit status: 0 success, 1 infeasible or unsupported, 2 input error,
//! 3 internal diagnostic.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use allocdecomp::allocation::{compute_allocation, optimize};
use allocdecomp::certificate::{verify, Certificate};
use allocdecomp::decompose::{
    forest_decompose_43, nash_williams_partition, pseudoforest_decompose, DecomposeError,
};
use allocdecomp::density::{self, max_density, mixed_m2, Measure};
use allocdecomp::graph::Graph;
use allocdecomp::io::{parse_graph, parse_graph6};
use allocdecomp::ramsey::{order_by_m2, ramsey_decompose_with, ProblemInstance, RamseyError};
use allocdecomp::rational::{format_rational, parse_rational, Rational};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "allocdecomp", version, about = "Exact graph densities and sparse decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum of a density measure, with an attaining vertex set.
    Density {
        graph: PathBuf,
        #[arg(long, default_value = "m")]
        measure: Measure,
        /// Also write a JSON certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Mixed 2-density m2(H1, H2) and the exponent -1/m2(H1, H2).
    Mixed {
        h1: PathBuf,
        h2: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// An m-allocation, or NONE when m(G) > m.
    Allocate {
        graph: PathBuf,
        #[arg(long)]
        m: String,
        /// Run the cycle-shifting optimizer on the allocation first.
        #[arg(long)]
        optimize: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Split E(G) into a sparse structure and a sparse rest; prints a JSON certificate.
    Decompose {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Bound for forest43 (defaults to m(G)).
        #[arg(long)]
        m: Option<String>,
        /// Number of forests for kforests.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Color E(G) so color i avoids pattern i; prints a JSON certificate.
    ///
    /// With more than two patterns the two with largest m2 are used and the
    /// remaining colors are empty.
    Ramsey {
        graph: PathBuf,
        #[arg(required = true, num_args = 2..)]
        patterns: Vec<PathBuf>,
        /// Attempt a coloring even when m(G) > m2(H1, H2).
        #[arg(long)]
        best_effort: bool,
    },
    /// Re-check a JSON certificate from scratch.
    Verify { certificate: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pseudoforest,
    Forest43,
    Kforests,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn infeasible(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Density { graph, measure, cert } => cmd_density(&graph, measure, cert.as_deref()),
        Command::Mixed { h1, h2, cert } => cmd_mixed(&h1, &h2, cert.as_deref()),
        Command::Allocate {
            graph,
            m,
            optimize,
            cert,
        } => cmd_allocate(&graph, &m, optimize, cert.as_deref()),
        Command::Decompose { graph, mode, m, k } => cmd_decompose(&graph, mode, m.as_deref(), k),
        Command::Ramsey {
            graph,
            patterns,
            best_effort,
        } => cmd_ramsey(&graph, &patterns, best_effort),
        Command::Verify { certificate } => cmd_verify(&certificate),
    }
}

/// Reads a graph: graph6 for `.g6` files, the edge-list format otherwise.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|x| x == "g6") {
        parse_graph6(text.trim())
    } else {
        parse_graph(&text)
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_rational(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::input(e.to_string()))
}

fn to_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(cert).expect("certificates serialize")
}

fn write_cert(path: Option<&Path>, cert: &Certificate) -> Outcome {
    if let Some(path) = path {
        fs::write(path, to_json(cert) + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn join(set: &[usize]) -> String {
    set.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_density(path: &Path, measure: Measure, cert: Option<&Path>) -> Outcome {
    let g = read_graph(path)?;
    let w = density::density(&g, measure).map_err(|e| Failure::input(e.to_string()))?;
    println!("{measure} = {}", format_rational(&w.value));
    println!("witness: {}", join(&w.witness));
    write_cert(
        cert,
        &Certificate::Density {
            graph: g,
            measure,
            value: w.value,
            witness: w.witness,
        },
    )
}

fn cmd_mixed(h1_path: &Path, h2_path: &Path, cert: Option<&Path>) -> Outcome {
    let h1 = read_graph(h1_path)?;
    let h2 = read_graph(h2_path)?;
    let w = mixed_m2(&h1, &h2).map_err(|e| Failure::input(e.to_string()))?;
    let exponent = -w.value.recip();
    println!("m2(H1, H2) = {}", format_rational(&w.value));
    println!("exponent = {}", format_rational(&exponent));
    println!("witness: {}", join(&w.witness));
    write_cert(
        cert,
        &Certificate::Mixed {
            h1,
            h2,
            value: w.value,
            exponent,
            witness: w.witness,
        },
    )
}

fn cmd_allocate(path: &Path, m: &str, run_optimizer: bool, cert: Option<&Path>) -> Outcome {
    let g = read_graph(path)?;
    let m = read_rational(m)?;
    let found = compute_allocation(&g, &m).map_err(|e| Failure::input(e.to_string()))?;
    let Some(mut a) = found else {
        let densest = max_density(&g);
        println!("NONE");
        println!(
            "m(G) = {} on witness: {}",
            format_rational(&densest.value),
            join(&densest.witness)
        );
        write_cert(
            cert,
            &Certificate::NoAllocation {
                graph: g,
                m: m.clone(),
                witness: densest.witness,
            },
        )?;
        return Err(Failure::infeasible(format!("no {}-allocation exists", format_rational(&m))));
    };
    if run_optimizer {
        a = optimize(&a);
    }
    println!("allocation with m = {} on the grid 1/{}", format_rational(a.m()), a.quantum());
    for &(u, v) in g.edges() {
        println!(
            "{u} {v} {} {}",
            format_rational(&a.theta(u, v)),
            format_rational(&a.theta(v, u))
        );
    }
    write_cert(
        cert,
        &Certificate::Allocation {
            graph: g,
            allocation: a.to_record(),
        },
    )
}

fn decompose_failure(e: DecomposeError) -> Failure {
    let mut message = e.to_string();
    if let DecomposeError::Diagnostic(d) = &e {
        message.push('\n');
        message.push_str(&serde_json::to_string(d).expect("diagnostics serialize"));
    }
    Failure {
        code: e.exit_code(),
        message,
    }
}

fn cmd_decompose(path: &Path, mode: Mode, m: Option<&str>, k: Option<usize>) -> Outcome {
    let g = read_graph(path)?;
    let cert = match mode {
        Mode::Pseudoforest => Certificate::Decomposition(pseudoforest_decompose(&g).map_err(decompose_failure)?),
        Mode::Forest43 => {
            let m = match m {
                Some(text) => read_rational(text)?,
                None => max_density(&g).value,
            };
            Certificate::Decomposition(forest_decompose_43(&g, &m).map_err(decompose_failure)?)
        }
        Mode::Kforests => {
            let k = k.ok_or_else(|| Failure::input("--mode kforests needs --k"))?;
            match nash_williams_partition(&g, k) {
                Some(p) => Certificate::Forests(p),
                None => {
                    let w = density::m1(&g).expect("a graph with an edge has two vertices");
                    let cert = Certificate::NoForests {
                        graph: g,
                        k,
                        witness: w.witness.clone(),
                    };
                    println!("{}", to_json(&cert));
                    return Err(Failure::infeasible(format!(
                        "no partition into {k} forests: m1(G) = {} > {k} on witness {}",
                        format_rational(&w.value),
                        join(&w.witness)
                    )));
                }
            }
        }
    };
    println!("{}", to_json(&cert));
    Ok(())
}

fn cmd_ramsey(path: &Path, pattern_paths: &[PathBuf], best_effort: bool) -> Outcome {
    let g = read_graph(path)?;
    let patterns = pattern_paths.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>, _>>()?;
    let order = order_by_m2(&patterns);
    if patterns.len() > 2 {
        eprintln!(
            "using patterns {} and {} (largest m2); colors {} stay empty",
            order[0] + 1,
            order[1] + 1,
            join(&order[2..].iter().map(|i| i + 1).collect::<Vec<_>>())
        );
    }
    let (h1, h2) = if patterns.len() == 2 {
        (patterns[0].clone(), patterns[1].clone())
    } else {
        (patterns[order[0]].clone(), patterns[order[1]].clone())
    };
    let inst = ProblemInstance::new(g, h1, h2).map_err(|e| Failure::input(e.to_string()))?;
    match ramsey_decompose_with(&inst, best_effort) {
        Ok(c) => {
            println!("{}", to_json(&Certificate::Ramsey(c)));
            Ok(())
        }
        Err(RamseyError::Decompose(e)) => Err(decompose_failure(e)),
        // Without the density hypothesis a failed coloring is an honest negative.
        Err(e @ RamseyError::VerificationFailed { .. }) if best_effort => Err(Failure::infeasible(e.to_string())),
        Err(e) => Err(Failure {
            code: e.exit_code(),
            message: e.to_string(),
        }),
    }
}

fn cmd_verify(path: &Path) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let cert: Certificate =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    verify(&cert).map_err(|e| Failure::infeasible(format!("certificate rejected: {e}")))?;
    println!("OK");
    Ok(())
}
