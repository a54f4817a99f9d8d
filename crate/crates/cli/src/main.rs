//! `cartan`: command-line front end for the verification suite.
//!
//! Every command prints one JSON document. The exit code is 0 when every
//! report is PASS, DEGENERATE or SKIP, 1 when some report FAILs and 2 on
//! usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cartan::birational::{rationality_demo, single_point_demo, spinor_sample};
use cartan::certify::{self, certificate_maps, m2_quadrics_16, m2_quadrics_27};
use cartan::composition::AlgebraSpec;
use cartan::exactmath::{Field, DEFAULT_PRIME};
use cartan::invariants;
use cartan::jordan::{adjoint, cross, det3, pair, rank_of, sample_rank1, sample_rank2, JordanElement};
use cartan::report::{CheckReport, Status, SCHEMA_VERSION};
use cartan::suite::{self, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cartan", version, about = "Exact verification of cubic Jordan algebra identities")]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value_t = Field::Prime(DEFAULT_PRIME), value_parser = parse_field)]
    field: Field,

    /// Composition algebra for commands that take one.
    #[arg(long, global = true, value_enum, default_value_t = Algebra::O)]
    algebra: Algebra,

    /// Doubling signs of the composition algebra.
    #[arg(long, global = true, value_enum, default_value_t = Signs::Compact)]
    signs: Signs,

    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Overrides the sample count of randomized checks.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one registered check, or `all` of them.
    Verify { target: String },
    /// Exact linear algebra certificates.
    Certify {
        #[arg(value_enum)]
        what: CertifyTarget,
        /// Also write the span matrix of the quadrics as text (m2-16 and m2-27 only).
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Hilbert polynomials, Chern classes and K-theory twists.
    Invariants {
        #[arg(value_enum)]
        what: InvariantTarget,
    },
    /// The birational correspondence between the plane and the cubic.
    Birational {
        #[arg(value_enum)]
        what: BirationalTarget,
    },
    /// Draw a seeded random element.
    Sample {
        #[arg(value_enum)]
        what: SampleTarget,
    },
    /// Evaluate an operation on elements read from a JSON file.
    ///
    /// Unary operations read one element; `cross` and `pair` read
    /// `{"x": .., "y": ..}` or a two-element array.
    Eval {
        #[arg(value_enum)]
        op: EvalOp,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algebra {
    R,
    C,
    H,
    O,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Signs {
    Compact,
    Split,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CertifyTarget {
    #[value(name = "m2-16")]
    M216,
    #[value(name = "m2-27")]
    M227,
    Koszul,
    Threeform,
    #[value(name = "e6-dims")]
    E6Dims,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InvariantTarget {
    Hilbert,
    Chern,
    Ktheory,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BirationalTarget {
    Demo,
    Roundtrip,
    Rationality,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleTarget {
    Rank1,
    Rank2,
    Spinor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalOp {
    Det,
    Adjoint,
    Cross,
    Pair,
    Rank,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    s.parse().map_err(|e: cartan::error::Error| e.to_string())
}

impl Cli {
    fn spec(&self) -> Result<AlgebraSpec> {
        let dim = match self.algebra {
            Algebra::R => 1,
            Algebra::C => 2,
            Algebra::H => 4,
            Algebra::O => 8,
        };
        Ok(match self.signs {
            Signs::Compact => AlgebraSpec::compact(dim)?,
            Signs::Split => AlgebraSpec::split(dim)?,
        })
    }

    fn suite_config(&self) -> SuiteConfig {
        let cfg = SuiteConfig::new(self.field, self.seed);
        match self.trials {
            Some(t) => cfg.with_trials(t),
            None => cfg,
        }
    }
}

/// What a command produced: check reports, or a plain value.
enum Outcome {
    Reports(Vec<CheckReport>),
    Value(Value),
}

fn run(cli: &Cli) -> Result<(String, Outcome)> {
    let outcome = match &cli.command {
        Command::Verify { target } => {
            let cfg = cli.suite_config();
            let reports = if target == "all" {
                suite::run_all(&cfg)
            } else {
                let check = suite::find(target).with_context(|| {
                    let ids: Vec<_> = suite::registry().iter().map(|c| c.id).collect();
                    format!("unknown check {target:?}; known checks: all, {}", ids.join(", "))
                })?;
                vec![check.run(&cfg)]
            };
            Outcome::Reports(reports)
        }
        Command::Certify { what, dump_matrix } => certify_cmd(*what, dump_matrix.as_deref())?,
        Command::Invariants { what } => Outcome::Reports(vec![CheckReport::timed(|| match what {
            InvariantTarget::Hilbert => invariants::check_functional_equations(),
            InvariantTarget::Chern => invariants::chern_compute(),
            InvariantTarget::Ktheory => invariants::ktheory_check(),
        })]),
        Command::Birational { what } => {
            let spec = cli.spec()?;
            let report = match what {
                BirationalTarget::Demo => CheckReport::timed(|| single_point_demo(cli.field, &spec, cli.seed)),
                BirationalTarget::Roundtrip => CheckReport::timed(|| suite::roundtrip_for(&cli.suite_config(), &spec)),
                BirationalTarget::Rationality => {
                    if spec.dim() != 8 {
                        bail!("rationality needs --algebra o");
                    }
                    CheckReport::timed(|| rationality_demo(cli.field, &spec, cli.seed))
                }
            };
            Outcome::Reports(vec![report])
        }
        Command::Sample { what } => {
            let spec = cli.spec()?;
            let value = match what {
                SampleTarget::Rank1 => json!(sample_rank1(cli.field, &spec, cli.seed)),
                SampleTarget::Rank2 => json!(sample_rank2(cli.field, &spec, cli.seed)),
                SampleTarget::Spinor => json!(spinor_sample(cli.field, &spec, cli.seed)?),
            };
            Outcome::Value(value)
        }
        Command::Eval { op, input } => Outcome::Value(eval_cmd(cli, *op, input)?),
    };
    Ok((command_name(&cli.command), outcome))
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Verify { target } => format!("verify {target}"),
        Command::Certify { what, .. } => format!("certify {}", value_name(what)),
        Command::Invariants { what } => format!("invariants {}", value_name(what)),
        Command::Birational { what } => format!("birational {}", value_name(what)),
        Command::Sample { what } => format!("sample {}", value_name(what)),
        Command::Eval { op, .. } => format!("eval {}", value_name(op)),
    }
}

fn certify_cmd(what: CertifyTarget, dump_matrix: Option<&Path>) -> Result<Outcome> {
    if let Some(path) = dump_matrix {
        let spec = AlgebraSpec::octonions();
        let (alpha, beta) = certificate_maps();
        let quadrics = match what {
            CertifyTarget::M216 => m2_quadrics_16(&spec, &alpha, &beta),
            CertifyTarget::M227 => m2_quadrics_27(&spec, &alpha, &beta),
            _ => bail!("--dump-matrix only applies to m2-16 and m2-27"),
        };
        fs::write(path, quadrics.span_matrix().to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    let reports = match what {
        CertifyTarget::M216 => vec![CheckReport::timed(certify::m2_check_16)],
        CertifyTarget::M227 => vec![CheckReport::timed(certify::m2_check_27)],
        CertifyTarget::Koszul => vec![CheckReport::timed(certify::koszul_check)],
        CertifyTarget::E6Dims => vec![CheckReport::timed(certify::e6_dimension_arithmetic)],
        CertifyTarget::Threeform => vec![
            CheckReport::timed(certify::threeform_annihilator_check),
            CheckReport::timed(certify::threeform_value_check),
            CheckReport::timed(certify::threeform_wedge_check),
        ],
    };
    Ok(Outcome::Reports(reports))
}

fn eval_cmd(cli: &Cli, op: EvalOp, input: &Path) -> Result<Value> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
    let spec = cli.spec()?;
    let element = |v: &Value| JordanElement::from_json(v, cli.field, &spec).context("reading element");
    let two = || -> Result<(JordanElement, JordanElement)> {
        let (x, y) = match &doc {
            Value::Array(items) if items.len() == 2 => (&items[0], &items[1]),
            Value::Object(map) if map.contains_key("x") && map.contains_key("y") => (&map["x"], &map["y"]),
            _ => bail!("{} needs {{\"x\": .., \"y\": ..}} or a two-element array", command_name(&cli.command)),
        };
        Ok((element(x)?, element(y)?))
    };
    Ok(match op {
        EvalOp::Det => json!(det3(&element(&doc)?).to_string()),
        EvalOp::Adjoint => json!(adjoint(&element(&doc)?)),
        EvalOp::Rank => json!(rank_of(&element(&doc)?)),
        EvalOp::Cross => {
            let (x, y) = two()?;
            json!(cross(&x, &y))
        }
        EvalOp::Pair => {
            let (x, y) = two()?;
            json!(pair(&x, &y).to_string())
        }
    })
}

fn document(cli: &Cli, command: &str, outcome: &Outcome) -> Value {
    let mut doc = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "field": cli.field.to_string(),
        "seed": cli.seed,
    });
    match outcome {
        Outcome::Reports(reports) => {
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            doc["reports"] = json!(reports);
            doc["summary"] = json!({
                "total": reports.len(),
                "pass": count(Status::Pass),
                "fail": count(Status::Fail),
                "degenerate": count(Status::Degenerate),
                "skip": count(Status::Skip),
            });
        }
        Outcome::Value(v) => {
            doc["signs"] = json!(cli.spec().map(|s| s.signs().to_vec()).unwrap_or_default());
            doc["result"] = v.clone();
        }
    }
    doc
}

fn emit(cli: &Cli, doc: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(command, outcome)| {
        let doc = document(&cli, &command, &outcome);
        emit(&cli, &doc)?;
        Ok(match outcome {
            Outcome::Reports(reports) => reports.iter().all(|r| r.status.is_ok()),
            Outcome::Value(_) => true,
        })
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
