//! Command-line front end: parse a graph, dispatch one computation, emit a
//! table (CSV) or a record (JSON) at 15 significant digits.
//!
//! Exit codes: `0` success, `2` usage or input parse failure, `3` input
//! validation, `4` mathematical-contract violation, `5` numerical failure.
//! All failures print one machine-readable JSON error object on stderr.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use graphzeta::error::{ErrorCategory, GraphZetaError};
use graphzeta::graph::{
    random_self_adjoint, ConditionKind, Graph, GraphDescription, NodeCondition,
};
use graphzeta::observables;
use graphzeta::secular::SecularForm;
use graphzeta::spectrum::compute_spectrum;
use graphzeta::zeta::ZetaEvaluator;

#[derive(Parser)]
#[command(
    name = "graphzeta",
    version,
    about = "Spectra, zeta functions, determinants, and Casimir observables \
             of Laplacians on metric star graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the graph comes from: a JSON description file, star-graph flags,
/// or a seeded random self-adjoint matching condition.
#[derive(Args)]
struct GraphArgs {
    /// Graph description JSON file:
    /// {"bonds":[{"length":..}..],"vertices":[{"preset":..}..]}
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Star-graph bond lengths, comma separated (e.g. --lengths 1,0.8,1.7)
    #[arg(long, value_delimiter = ',', value_name = "L1,L2,..", allow_hyphen_values = true)]
    lengths: Option<Vec<f64>>,

    /// Outer node conditions, one letter per bond, N or D (default all N)
    #[arg(long, value_name = "NDND..")]
    nodes: Option<String>,

    /// Coupling strength of the star's central vertex (0 = free junction)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lambda: f64,

    /// Generate a random self-adjoint graph with this many bonds
    #[arg(long, value_name = "B", conflicts_with_all = ["graph", "lengths"])]
    random: Option<usize>,

    /// RNG seed for --random
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Positive eigenvalues k_j up to a scan edge (CSV: k,multiplicity,on_lattice)
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        /// Scan the spectral parameter k over (0, k_max]
        #[arg(long, default_value_t = 30.0)]
        k_max: f64,
        /// Write output here instead of stdout
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Spectral zeta function at one or more s values (JSON)
    Zeta {
        #[command(flatten)]
        graph: GraphArgs,
        /// Evaluation points, comma separated (valid range −0.5 ≤ s < 3.5, s ≠ 0.5)
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        s: Vec<f64>,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Spectral determinant over nonzero modes, exp(−ζ′(0)) (JSON)
    Det {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Vacuum (Casimir) energy and per-bond forces (JSON)
    Casimir {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also report the piston force for this bond pair, e.g. --piston 0,1
        /// (positive pushes toward a longer first bond)
        #[arg(long, value_delimiter = ',', value_name = "GROW,SHRINK")]
        piston: Option<Vec<usize>>,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Small-time heat-trace expansion coefficients (JSON)
    Heat {
        #[command(flatten)]
        graph: GraphArgs,
        /// Also compare against the direct eigenvalue sum at these times
        #[arg(long, value_delimiter = ',', value_name = "T1,T2,..")]
        compare_at: Option<Vec<f64>>,
        /// Scan edge for the direct eigenvalue sum used by --compare-at
        #[arg(long, default_value_t = 80.0)]
        k_max: f64,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Piston force vs cut position on an interval with a δ piston
    /// (CSV: lambda,position,force)
    PistonSweep {
        /// Total length of the interval
        #[arg(long, default_value_t = 1.0)]
        total: f64,
        /// Piston coupling strengths, comma separated
        #[arg(long, value_delimiter = ',', default_value = "0,1,10,100")]
        lambda: Vec<f64>,
        /// Number of interior grid points
        #[arg(long, default_value_t = 99)]
        grid: usize,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Check the closed form of ∫₀^∞ x(a·sech²x − b·csch²x)/(a·tanh x + b·coth x) dx (JSON)
    VerifyIntegral {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

/// CLI-level failure: input that never reached the numerics (exit 2), or a
/// library error carrying its own category (exit 3/4/5).
enum CliError {
    Parse(String),
    Lib(GraphZetaError),
}

impl From<GraphZetaError> for CliError {
    fn from(e: GraphZetaError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Lib(e) => match e.category() {
                ErrorCategory::Validation => 3,
                ErrorCategory::MathContract => 4,
                ErrorCategory::Numerical => 5,
            },
        }
    }

    fn to_json(&self) -> Value {
        let (category, message) = match self {
            CliError::Parse(m) => ("parse", m.clone()),
            CliError::Lib(e) => (
                match e.category() {
                    ErrorCategory::Validation => "validation",
                    ErrorCategory::MathContract => "math-contract",
                    ErrorCategory::Numerical => "numerical",
                },
                e.to_string(),
            ),
        };
        serde_json::json!({
            "error": {
                "category": category,
                "exit_code": self.exit_code(),
                "message": message,
            }
        })
    }
}

/// Round one double to 15 significant digits so repeated runs and
/// cross-platform builds print byte-identical output.
fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Apply [`sig15`] to every number in a JSON tree.
fn round_tree(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(r) = serde_json::Number::from_f64(sig15(f)) {
                        *v = Value::Number(r);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_tree),
        Value::Object(map) => map.values_mut().for_each(round_tree),
        _ => {}
    }
}

fn emit(text: String, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn emit_json<T: Serialize>(value: &T, output: &Option<PathBuf>) -> Result<(), CliError> {
    let mut tree = serde_json::to_value(value)
        .map_err(|e| CliError::Parse(format!("serialization failed: {e}")))?;
    round_tree(&mut tree);
    let text = serde_json::to_string_pretty(&tree)
        .map_err(|e| CliError::Parse(format!("serialization failed: {e}")))?;
    emit(text, output)
}

fn parse_nodes(spec: &str, nb: usize) -> Result<Vec<NodeCondition>, CliError> {
    let nodes: Vec<NodeCondition> = spec
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c.to_ascii_uppercase() {
            'N' => Ok(NodeCondition::Neumann),
            'D' => Ok(NodeCondition::Dirichlet),
            other => Err(CliError::Parse(format!(
                "node condition must be N or D, got {other:?}"
            ))),
        })
        .collect::<Result<_, _>>()?;
    if nodes.len() != nb {
        return Err(CliError::Parse(format!(
            "--nodes lists {} conditions but the graph has {} bonds",
            nodes.len(),
            nb
        )));
    }
    Ok(nodes)
}

impl GraphArgs {
    fn build(&self) -> Result<(Graph, SecularForm), CliError> {
        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            let desc: GraphDescription = serde_json::from_str(&text)
                .map_err(|e| CliError::Parse(format!("{}: invalid graph JSON: {e}", path.display())))?;
            let (graph, kind) = desc.build()?;
            let form = SecularForm::auto(&graph, &kind)?;
            return Ok((graph, form));
        }
        if let Some(lengths) = &self.lengths {
            let graph = Graph::new(lengths.clone())?;
            let nodes = match &self.nodes {
                Some(spec) => parse_nodes(spec, graph.num_bonds())?,
                None => vec![NodeCondition::Neumann; graph.num_bonds()],
            };
            let kind = ConditionKind::Star {
                nodes,
                lambda: self.lambda,
            };
            let form = SecularForm::auto(&graph, &kind)?;
            return Ok((graph, form));
        }
        if let Some(nb) = self.random {
            if nb == 0 || nb > 8 {
                return Err(CliError::Parse(
                    "--random expects a bond count between 1 and 8".into(),
                ));
            }
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
            let lengths: Vec<f64> = (0..nb).map(|_| rng.gen_range(0.5..1.5)).collect();
            let graph = Graph::new(lengths)?;
            let mc = random_self_adjoint(2 * nb, self.seed.wrapping_add(1));
            let form = SecularForm::general(&graph, mc)?;
            return Ok((graph, form));
        }
        Err(CliError::Parse(
            "no graph given: pass --graph FILE, --lengths L1,L2,.., or --random B".into(),
        ))
    }
}

#[derive(Serialize)]
struct ZetaReport {
    form: &'static str,
    total_length: f64,
    values: Vec<graphzeta::zeta::ZetaValue>,
}

#[derive(Serialize)]
struct DetReport {
    form: &'static str,
    total_length: f64,
    zeta_at_zero: f64,
    zeta_prime_at_zero: f64,
    determinant: f64,
}

#[derive(Serialize)]
struct PistonReport {
    grow: usize,
    shrink: usize,
    force: f64,
}

#[derive(Serialize)]
struct CasimirReport {
    form: &'static str,
    #[serde(flatten)]
    energy: observables::CasimirEnergy,
    /// ∂E_c/∂L_β for each bond β — finite even when the energy diverges.
    free_forces: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    piston: Option<PistonReport>,
}

#[derive(Serialize)]
struct HeatComparison {
    t: f64,
    direct: f64,
    expansion: f64,
    difference: f64,
}

#[derive(Serialize)]
struct HeatReport {
    form: &'static str,
    terms: Vec<observables::HeatTerm>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    comparisons: Vec<HeatComparison>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum {
            graph,
            k_max,
            output,
        } => {
            let (_, form) = graph.build()?;
            if !k_max.is_finite() || k_max <= 0.0 {
                return Err(CliError::Parse(format!(
                    "--k-max must be positive and finite, got {k_max}"
                )));
            }
            let spec = compute_spectrum(&form, k_max)?;
            let mut text = String::from("k,multiplicity,on_lattice\n");
            for ev in &spec.eigenvalues {
                text.push_str(&format!(
                    "{:.14e},{},{}\n",
                    ev.k, ev.multiplicity, ev.on_lattice
                ));
            }
            text.pop();
            emit(text, &output)
        }
        Command::Zeta { graph, s, output } => {
            let (g, form) = graph.build()?;
            let ev = ZetaEvaluator::new(form);
            let mut values = Vec::with_capacity(s.len());
            for &point in &s {
                values.push(ev.zeta(point)?);
            }
            emit_json(
                &ZetaReport {
                    form: ev.form().name(),
                    total_length: g.total_length(),
                    values,
                },
                &output,
            )
        }
        Command::Det { graph, output } => {
            let (g, form) = graph.build()?;
            let ev = ZetaEvaluator::new(form);
            emit_json(
                &DetReport {
                    form: ev.form().name(),
                    total_length: g.total_length(),
                    zeta_at_zero: ev.zeta_at_zero(),
                    zeta_prime_at_zero: ev.zeta_prime_at_zero(),
                    determinant: ev.spectral_determinant(),
                },
                &output,
            )
        }
        Command::Casimir {
            graph,
            piston,
            output,
        } => {
            let (g, form) = graph.build()?;
            let energy = observables::casimir_energy(&form)?;
            let mut free_forces = Vec::with_capacity(g.num_bonds());
            for beta in 0..g.num_bonds() {
                free_forces.push(observables::casimir_force_free(&form, beta)?);
            }
            let piston = match piston {
                None => None,
                Some(pair) if pair.len() != 2 => {
                    return Err(CliError::Parse(format!(
                        "--piston expects exactly two bond indices, got {}",
                        pair.len()
                    )));
                }
                Some(pair) => {
                    let (grow, shrink) = (pair[0], pair[1]);
                    Some(PistonReport {
                        grow,
                        shrink,
                        force: observables::casimir_force_piston(&form, grow, shrink)?,
                    })
                }
            };
            emit_json(
                &CasimirReport {
                    form: form.name(),
                    energy,
                    free_forces,
                    piston,
                },
                &output,
            )
        }
        Command::Heat {
            graph,
            compare_at,
            k_max,
            output,
        } => {
            let (g, form) = graph.build()?;
            let expansion = observables::heat_expansion(&form);
            let mut comparisons = Vec::new();
            if let Some(times) = compare_at {
                let spec = compute_spectrum(&form, k_max)?;
                for &t in &times {
                    if !t.is_finite() || t <= 0.0 {
                        return Err(CliError::Parse(format!(
                            "--compare-at times must be positive, got {t}"
                        )));
                    }
                    let direct =
                        observables::heat_trace_direct(&spec, g.total_length(), t);
                    let asym = expansion.eval(t);
                    comparisons.push(HeatComparison {
                        t,
                        direct,
                        expansion: asym,
                        difference: direct - asym,
                    });
                }
            }
            emit_json(
                &HeatReport {
                    form: form.name(),
                    terms: expansion.terms,
                    comparisons,
                },
                &output,
            )
        }
        Command::PistonSweep {
            total,
            lambda,
            grid,
            output,
        } => {
            if !total.is_finite() || total <= 0.0 {
                return Err(CliError::Parse(format!(
                    "--total must be positive and finite, got {total}"
                )));
            }
            if grid == 0 || grid > 100_000 {
                return Err(CliError::Parse(format!(
                    "--grid must be between 1 and 100000, got {grid}"
                )));
            }
            let mut text = String::from("lambda,position,force\n");
            for &lam in &lambda {
                for i in 1..=grid {
                    let x = total * i as f64 / (grid + 1) as f64;
                    let graph = Graph::new(vec![x, total - x])?;
                    let form = SecularForm::star_sum(
                        &graph,
                        &[NodeCondition::Dirichlet, NodeCondition::Dirichlet],
                        lam,
                    )?;
                    let force = observables::casimir_force_piston(&form, 0, 1)?;
                    text.push_str(&format!("{:.14e},{:.14e},{:.14e}\n", lam, x, force));
                }
            }
            text.pop();
            emit(text, &output)
        }
        Command::VerifyIntegral { a, b, output } => {
            let check = observables::integral_identity(a, b)?;
            emit_json(&check, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut tree = e.to_json();
            round_tree(&mut tree);
            let mut stderr = std::io::stderr().lock();
            let _ = writeln!(stderr, "{tree}");
            ExitCode::from(e.exit_code())
        }
    }
}
