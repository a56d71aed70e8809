//! The `qca` command line: argument parsing, dispatch and exit codes.
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success                                             |
//! | 2    | malformed input                                     |
//! | 3    | a resource cap was hit                              |
//! | 4    | empty or degenerate result                          |
//! | 5    | the rule's structure makes the request impossible   |

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::ca::{Config, Region, Rule, RuleError};
use crate::debruijn::{classify_graph, export_dot, lemma_neighborhood, DeBruijnError, PairGraph, PropertyReport};
use crate::locality::{
    auto_setup, falsify_uniform_locality, signalling_experiment, verify_locality, LocalityError, Verdict,
};
use crate::oracle::{brute_injective, brute_local_inverse, brute_preimages, default_support, OracleError};
use crate::quantum::{state_from_json, state_to_json, Quantization, QuantumError};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_PRECONDITION: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "qca",
    version,
    about = "Cellular automata, their linearizations and locality"
)]
pub struct Cli {
    /// Cross-check the result against brute-force enumeration.
    #[arg(long, global = true)]
    oracle: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural properties of a rule and what they imply for its quantization.
    Analyze { rule: PathBuf },
    /// Pair-diagram statistics, optionally written as Graphviz.
    Graph {
        rule: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Classical orbit of a configuration, or one quantum step of a state file.
    Step {
        rule: PathBuf,
        /// `<offset>|<word>`
        #[arg(allow_hyphen_values = true)]
        config: Option<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// State file to evolve instead of a configuration.
        #[arg(long)]
        quantum: Option<PathBuf>,
        /// Apply the adjoint instead.
        #[arg(long)]
        adjoint: bool,
        /// Preimage halo for the adjoint of a rule that is not open.
        #[arg(long)]
        halo: Option<i64>,
    },
    /// Check locality of the quantization at a region.
    Locality {
        rule: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        region: String,
        /// Defaults to the neighborhood guaranteed for open rules.
        #[arg(long, allow_hyphen_values = true)]
        neighborhood: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Find states whose reductions near `A` agree but whose images on `A` differ.
    Falsify {
        rule: PathBuf,
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
    /// Phase-signalling experiment between Bob's cell and Alice's region.
    Signal {
        rule: PathBuf,
        #[arg(long, conflicts_with_all = ["x", "y", "bob", "alice"])]
        auto: bool,
        /// Neighborhood radius used to place the parties with `--auto`.
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "auto")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "auto")]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "auto")]
        bob: Option<i64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "auto")]
        alice: Option<String>,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<RuleError> for CliError {
    fn from(e: RuleError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<DeBruijnError> for CliError {
    fn from(e: DeBruijnError) -> Self {
        let code = match e {
            DeBruijnError::GraphTooLarge { .. } => EXIT_CAP,
            DeBruijnError::NotOpen | DeBruijnError::RuleIsOpen | DeBruijnError::RuleNotInjective => EXIT_PRECONDITION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        let code = match &e {
            QuantumError::ZeroVector => EXIT_DEGENERATE,
            QuantumError::HaloUnavailable => EXIT_PRECONDITION,
            QuantumError::RegionTooLarge { .. } => EXIT_CAP,
            QuantumError::NotNormalized(_) | QuantumError::RegionMismatch | QuantumError::BadState(_) => EXIT_INPUT,
            QuantumError::DeBruijn(inner) => return inner.clone().into(),
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LocalityError> for CliError {
    fn from(e: LocalityError) -> Self {
        let code = match &e {
            LocalityError::WindowTooLarge { .. } => EXIT_CAP,
            LocalityError::WindowTooSmall { .. } | LocalityError::BadOperator | LocalityError::BobCellEqual(_) => {
                EXIT_INPUT
            }
            LocalityError::RuleReversible | LocalityError::RuleNotInjective => EXIT_PRECONDITION,
            LocalityError::SearchExhausted { .. } => EXIT_DEGENERATE,
            LocalityError::Quantum(inner) => return inner.clone().into(),
            LocalityError::DeBruijn(inner) => return inner.clone().into(),
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SpaceTooLarge { .. } => Self {
                code: EXIT_CAP,
                message: e.to_string(),
            },
            OracleError::DeBruijn(inner) => inner.into(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_rule(path: &PathBuf) -> Result<Rule, CliError> {
    Ok(Rule::parse(&read(path)?)?)
}

fn parse_region(text: &str) -> Result<Region, CliError> {
    Ok(Region::parse(text)?)
}

fn analysis(rule: &Rule) -> Result<(PairGraph, PropertyReport), CliError> {
    let g = PairGraph::build(rule)?;
    let report = classify_graph(&g);
    Ok((g, report))
}

/// Brute-force injectivity at the default support bound, and, where the
/// enumeration fits, existence of a local inverse of radius at most 4.
fn oracle_agreement(rule: &Rule, report: &PropertyReport) -> Result<bool, CliError> {
    let brute = brute_injective(rule, default_support(rule.alphabet().len()))?;
    let mut agree = brute.injective == report.injective_finite;
    let max_r = if rule.alphabet().len() <= 2 { 4 } else { 2 };
    let mut inverse = false;
    for r in 1..=max_r {
        match brute_local_inverse(rule, r) {
            Ok(Some(_)) => {
                inverse = true;
                break;
            }
            Ok(None) => {}
            Err(OracleError::SpaceTooLarge { .. }) => break,
            Err(e) => return Err(e.into()),
        }
    }
    agree &= inverse == report.reversible;
    Ok(agree)
}

fn with_oracle(mut results: Value, agree: Option<bool>) -> Value {
    if let (Some(a), Value::Object(map)) = (agree, &mut results) {
        map.insert("oracle_agreement".into(), Value::Bool(a));
    }
    results
}

/// Parses `args` (program name first), runs the command and writes the report
/// to `out`. Returns the exit code; error messages go to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((report, code)) => {
            let _ = out.write_all(report.render().as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, i32), CliError> {
    let oracle = cli.oracle;
    match &cli.command {
        Command::Analyze { rule } => {
            let rule = load_rule(rule)?;
            let (_, report) = analysis(&rule)?;
            let mut results = serde_json::to_value(report).expect("report serializes");
            results["quantization_uniformly_local"] = json!(report.reversible);
            results["quantization_everywhere_local"] = json!(report.open);
            let agree = oracle.then(|| oracle_agreement(&rule, &report)).transpose()?;
            let results = with_oracle(results, agree);
            Ok((
                Report::new("analyze", rule.name(), results).flag("oracle", oracle),
                EXIT_OK,
            ))
        }
        Command::Graph { rule, dot } => {
            let rule = load_rule(rule)?;
            let (g, report) = analysis(&rule)?;
            if let Some(path) = dot {
                std::fs::write(path, export_dot(&g, rule.alphabet()))
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            }
            let results = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "scc_count": g.scc_count(),
                "offdiagonal_scc_count": report.offdiagonal_scc_count,
                "dot": dot.as_ref().map(|p| p.display().to_string()),
            });
            let agree = oracle.then(|| oracle_agreement(&rule, &report)).transpose()?;
            Ok((Report::new("graph", rule.name(), with_oracle(results, agree)), EXIT_OK))
        }
        Command::Step {
            rule,
            config,
            steps,
            quantum,
            adjoint,
            halo,
        } => {
            let rule = load_rule(rule)?;
            let alphabet = rule.alphabet().clone();
            let report = match (quantum, config) {
                (Some(path), None) => {
                    let state = state_from_json(&read(path)?, &alphabet)?;
                    let mut q = Quantization::new(&rule)?;
                    if let Some(h) = halo {
                        q = q.with_halo(*h);
                    }
                    let (out, isometric) = if *adjoint {
                        (q.apply_f_dagger(&state)?, None)
                    } else {
                        let e = q.apply_f(&state);
                        (e.state, Some(e.isometric))
                    };
                    let agree = if oracle {
                        Some(step_oracle(&rule, &state, &out, *adjoint)?)
                    } else {
                        None
                    };
                    let results = json!({
                        "state": state_to_json(&out, &alphabet),
                        "norm_squared": out.norm_sqr(),
                        "isometric": isometric,
                    });
                    Report::new("step", rule.name(), with_oracle(results, agree))
                        .flag("adjoint", *adjoint)
                        .flag("quantum", true)
                }
                (None, Some(literal)) => {
                    if *adjoint {
                        return Err(CliError::input("--adjoint needs --quantum"));
                    }
                    let c = Config::parse(literal, &alphabet)?;
                    let orbit: Vec<String> = rule.orbit(&c, *steps).iter().map(|c| c.format(&alphabet)).collect();
                    let results = json!({ "orbit": orbit, "final": orbit.last() });
                    Report::new("step", rule.name(), results).flag("steps", *steps as u64)
                }
                _ => return Err(CliError::input("give either a configuration or --quantum")),
            };
            Ok((report, EXIT_OK))
        }
        Command::Locality {
            rule,
            region,
            neighborhood,
            window,
        } => {
            let rule = load_rule(rule)?;
            let region = parse_region(region)?;
            let neighborhood = match neighborhood {
                Some(n) => parse_region(n)?,
                None => lemma_neighborhood(&rule, &region)?,
            };
            let window = window.as_deref().map(parse_region).transpose()?;
            let report = verify_locality(&rule, &region, &neighborhood, window.as_ref())?;
            let code = if report.verdict == Verdict::Inconclusive {
                EXIT_CAP
            } else {
                EXIT_OK
            };
            let agree = if oracle {
                Some(oracle_agreement(&rule, &analysis(&rule)?.1)?)
            } else {
                None
            };
            let results = with_oracle(report.to_json(rule.alphabet()), agree);
            Ok((Report::new("locality", rule.name(), results), code))
        }
        Command::Falsify { rule, radius } => {
            let rule = load_rule(rule)?;
            let n = Region::interval(-radius, *radius);
            let w = falsify_uniform_locality(&rule, &n)?;
            let agree = if oracle {
                let brute = brute_injective(&rule, default_support(rule.alphabet().len()))?;
                Some(brute.injective && rule.step(&w.x) != rule.step(&w.y))
            } else {
                None
            };
            let results = with_oracle(w.to_json(rule.alphabet()), agree);
            Ok((
                Report::new("falsify", rule.name(), results).flag("radius", *radius),
                EXIT_OK,
            ))
        }
        Command::Signal {
            rule,
            auto,
            radius,
            x,
            y,
            bob,
            alice,
        } => {
            let rule = load_rule(rule)?;
            let alphabet = rule.alphabet().clone();
            let (x, y, bob, alice) = if *auto {
                auto_setup(&rule, *radius)?
            } else {
                let parse = |s: &Option<String>| -> Result<Config, CliError> {
                    Ok(Config::parse(s.as_deref().unwrap_or_default(), &alphabet)?)
                };
                (
                    parse(x)?,
                    parse(y)?,
                    bob.expect("required by clap"),
                    parse_region(alice.as_deref().unwrap_or_default())?,
                )
            };
            let r = signalling_experiment(&rule, &x, &y, bob, &alice)?;
            let agree = if oracle {
                Some(oracle_agreement(&rule, &analysis(&rule)?.1)?)
            } else {
                None
            };
            let results = with_oracle(r.to_json(&alphabet), agree);
            Ok((Report::new("signal", rule.name(), results).flag("auto", *auto), EXIT_OK))
        }
    }
}

/// Compares a quantum step against the brute-force images or preimages of
/// every basis configuration.
fn step_oracle(
    rule: &Rule,
    input: &crate::quantum::Superposition,
    output: &crate::quantum::Superposition,
    adjoint: bool,
) -> Result<bool, CliError> {
    if !adjoint {
        let expected = input.map_configs(|c| rule.step(c));
        return Ok(expected.max_abs_diff(output) == 0.0);
    }
    let mut terms = Vec::new();
    for (c, a) in input.iter() {
        let bound = c.len() + 2 * (rule.span() + 2);
        let pre = brute_preimages(rule, c, bound)?;
        terms.extend(pre.into_iter().map(|u| (u, *a)));
    }
    let expected = crate::quantum::Superposition::from_pairs(terms);
    Ok(expected.max_abs_diff(output) <= 1e-12)
}
