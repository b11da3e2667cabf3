use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qosp::algebra::{builtin, builtin_names, load_algebra, AlgebraSpec};
use qosp::expr::{parse_element, parse_scalar, ExprContext};
use qosp::rep::{
    build_osp12, build_osp22, central_quadratic_search, typo_oracle, verify_all, CentralityKind,
    RepSet, Vb2Convention,
};
use qosp::report::to_json;
use qosp::rewrite::{declared_order, default_order, orient, Strategy, DEFAULT_STEP_BUDGET};
use qosp::scalar::{parse_rational, Rational, Specialization, Vars};

mod render;

#[derive(Parser, Debug)]
#[command(
    name = "qosp",
    version,
    about = "Exact checks for quommutator deformations of osp(2,2) and osp(1,2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    AtRational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    FermionsFirst,
    Declared,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Convention {
    Printed,
    Corrected,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Commuting,
    Graded,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every relation of an algebra on the P(n-1) ⊕ P(n) representation.
    Verify {
        #[arg(long, default_value = "osp22q")]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Value of t for `--mode at-rational`.
        #[arg(long)]
        t: Option<String>,
        /// Prefactor of Vb2.
        #[arg(long, value_enum, default_value_t = Convention::Corrected)]
        vb2: Convention,
    },
    /// Resolve every critical pair of the normal-ordering rewrite system.
    Confluence {
        #[arg(long, default_value = "osp22prs")]
        algebra: String,
        /// Replace a bracket coefficient, as `A,B:coeff`. Repeatable.
        #[arg(long)]
        perturb: Vec<String>,
        #[arg(long, value_enum, default_value_t = Order::FermionsFirst)]
        order: Order,
        #[arg(long)]
        step_budget: Option<usize>,
    },
    /// Rank of the span of generator words of bounded length.
    Span {
        #[arg(long, default_value = "osp22q")]
        algebra: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Value of q = t^2.
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value_t = 32)]
        max_length: usize,
    },
    /// Search for central elements of degree at most two in osp(1,2).
    Casimir {
        /// Grades, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
        n: Vec<usize>,
        /// Value of q = t^2; `1` gives the classical limit.
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Kind::Commuting)]
        kind: Kind,
    },
    /// Normal-order an expression.
    NormalForm {
        #[arg(long, default_value = "osp22q")]
        algebra: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Order::FermionsFirst)]
        order: Order,
        #[arg(long, value_enum, default_value_t = StrategyArg::Leftmost)]
        strategy: StrategyArg,
        #[arg(long)]
        step_budget: Option<usize>,
    },
    /// Print a relation table with provenance flags.
    DumpAlgebra {
        #[arg(long, default_value = "osp22prs")]
        algebra: String,
    },
    /// Test the doubtful printed relations and Vb2 prefactors on the representation.
    Oracle {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        n: Vec<usize>,
    },
}

/// Configuration or input problem; exit code 2.
struct ConfigError(String);

impl<E: Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    text: String,
    json: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.output {
                Output::Text => print!("{}", out.text),
                Output::Json => print!("{}", out.json),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(ConfigError(msg)) => {
            eprintln!("qosp: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(name: &str) -> Result<AlgebraSpec, ConfigError> {
    if let Some(spec) = builtin(name) {
        return Ok(spec);
    }
    let source = std::fs::read_to_string(name).map_err(|e| {
        ConfigError(format!(
            "`{name}` is neither a built-in algebra ({}) nor a readable file: {e}",
            builtin_names().join(", ")
        ))
    })?;
    Ok(load_algebra(&source)?)
}

fn step_budget(flag: Option<usize>) -> Result<usize, ConfigError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("QOSP_STEP_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| {
            ConfigError(format!(
                "QOSP_STEP_BUDGET must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_STEP_BUDGET),
    }
}

fn rational_arg(flag: &str, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).map_err(|e| ConfigError(format!("--{flag}: {e}")))
}

/// The representation matching the generator names of `spec`, over `t`.
fn representation(
    spec: &AlgebraSpec,
    n: usize,
    vb2: Convention,
) -> Result<(AlgebraSpec, RepSet), ConfigError> {
    let spec = if spec.vars() == &Vars::prs() {
        spec.specialize(Specialization::OneParameter, spec.name())?
    } else {
        spec.clone()
    };
    let mut names = spec.names();
    names.sort();
    let osp22 = ["E11", "E12", "E21", "E22", "V1", "V2", "Vb1", "Vb2"];
    let osp12 = ["H", "Jm", "Jp", "Vm", "Vp"];
    let convention = match vb2 {
        Convention::Printed => Vb2Convention::Printed,
        Convention::Corrected => Vb2Convention::Corrected,
    };
    let reps = if names == osp22 {
        build_osp22(n, convention)?
    } else if names == osp12 {
        build_osp12(n)?
    } else {
        return Err(ConfigError(format!(
            "no representation is known for generators {}",
            spec.names().join(" ")
        )));
    };
    Ok((spec, reps))
}

fn run(command: &Command) -> Result<Outcome, ConfigError> {
    match command {
        Command::Verify {
            algebra,
            n,
            mode,
            t,
            vb2,
        } => {
            let (spec, reps) = representation(&load(algebra)?, *n, *vb2)?;
            let at = match (mode, t) {
                (Mode::Symbolic, None) => None,
                (Mode::Symbolic, Some(_)) => {
                    return Err(ConfigError("--t requires --mode at-rational".into()))
                }
                (Mode::AtRational, Some(v)) => Some(rational_arg("t", v)?),
                (Mode::AtRational, None) => {
                    return Err(ConfigError("--mode at-rational requires --t".into()))
                }
            };
            let report = verify_all(&spec, &reps, at.as_ref())?;
            Ok(Outcome {
                passed: report.passed(),
                text: render::verification(&report),
                json: to_json(&report),
            })
        }
        Command::Confluence {
            algebra,
            perturb,
            order,
            step_budget: budget,
        } => {
            let mut spec = load(algebra)?;
            for p in perturb {
                let (pair, coeff) = p
                    .split_once(':')
                    .ok_or_else(|| ConfigError(format!("--perturb `{p}`: expected A,B:coeff")))?;
                let (a, b) = pair
                    .split_once(',')
                    .ok_or_else(|| ConfigError(format!("--perturb `{p}`: expected A,B:coeff")))?;
                let c = parse_scalar(coeff, spec.vars())
                    .map_err(|e| ConfigError(format!("--perturb `{p}`: {e}")))?;
                spec = spec.perturb(a.trim(), b.trim(), c)?;
            }
            let ord = match order {
                Order::FermionsFirst => default_order(&spec),
                Order::Declared => declared_order(&spec),
            };
            let system = orient(&spec, &ord)?.with_budget(step_budget(*budget)?);
            let report = system.check_confluence()?;
            Ok(Outcome {
                passed: report.is_confluent(),
                text: render::confluence(&report),
                json: to_json(&report),
            })
        }
        Command::Span {
            algebra,
            n,
            q,
            max_length,
        } => {
            let (_, reps) = representation(&load(algebra)?, *n, Convention::Corrected)?;
            let q = rational_arg("q", q)?;
            let report = qosp::rep::span_rank(&reps, *max_length, &q)?;
            Ok(Outcome {
                passed: report.saturated,
                text: render::span(&report),
                json: to_json(&report),
            })
        }
        Command::Casimir { n, q, kind } => {
            let q = rational_arg("q", q)?;
            let kind = match kind {
                Kind::Commuting => CentralityKind::Commuting,
                Kind::Graded => CentralityKind::Graded,
            };
            let report = central_quadratic_search(n, &q, kind)?;
            let passed = report
                .per_n
                .iter()
                .all(|g| g.scalar_acting && g.nonidentity_element.is_some());
            Ok(Outcome {
                passed,
                text: render::casimir(&report),
                json: to_json(&report),
            })
        }
        Command::NormalForm {
            algebra,
            expr,
            order,
            strategy,
            step_budget: budget,
        } => {
            let spec = load(algebra)?;
            let names = spec.names();
            let element = parse_element(expr, &ExprContext::new(spec.vars(), &names))
                .map_err(|e| ConfigError(format!("--expr: {e}")))?;
            let ord = match order {
                Order::FermionsFirst => default_order(&spec),
                Order::Declared => declared_order(&spec),
            };
            let system = orient(&spec, &ord)?.with_budget(step_budget(*budget)?);
            let strategy = match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
            };
            let nf = system.normal_form_with(&element, strategy)?;
            let rendered = nf.display(&names).to_string();
            Ok(Outcome {
                passed: true,
                text: format!("{rendered}\n"),
                json: to_json(&json!({
                    "schema": qosp::report::SCHEMA,
                    "algebra": spec.name(),
                    "input": element.display(&names).to_string(),
                    "normal_form": rendered,
                })),
            })
        }
        Command::DumpAlgebra { algebra } => {
            let spec = load(algebra)?;
            Ok(Outcome {
                passed: true,
                text: spec.to_text(),
                json: to_json(&render::algebra_json(&spec)),
            })
        }
        Command::Oracle { n } => {
            let report = typo_oracle(n)?;
            Ok(Outcome {
                passed: report.consistent(),
                text: render::oracle(&report),
                json: to_json(&report),
            })
        }
    }
}
