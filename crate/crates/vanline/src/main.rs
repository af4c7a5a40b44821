use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use vanline::arith::{QuadElem, TowerElem};
use vanline::report::{self, Check, Config, Report};
use vanline::{bps, locsys, tropical, vshs};

#[derive(Parser, Debug)]
#[command(name = "vanline", version, about = "Exact checks for van Geemen lines and related identities")]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config JSON: {truncationOrder, floatTolerance, dataDir}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON (default)
    #[arg(long, global = true, conflicts_with = "markdown")]
    json: bool,
    /// Emit Markdown
    #[arg(long, global = true)]
    markdown: bool,
    /// Record wall-clock times (output is then no longer reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lines on the Dwork pencil
    Dwork {
        #[command(subcommand)]
        action: DworkAction,
    },
    /// Balancing of the curves V and V(i; eps), or of a curve read from JSON
    Tropical {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the smoothing V(i; eps) with this i
        #[arg(long, requires = "eps")]
        smoothed: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Homology of the chain-link complement
    Chainlink {
        #[command(subcommand)]
        action: VerifyOnly,
    },
    /// Holonomy equations
    Locsys {
        #[command(subcommand)]
        action: LocsysAction,
    },
    /// Energy spectral sequence
    Floer {
        #[command(subcommand)]
        action: VerifyOnly,
    },
    /// Multiple-cover inversion
    Bps {
        #[command(subcommand)]
        action: BpsAction,
    },
    /// Normal-function identities
    Vshs {
        #[command(subcommand)]
        action: VshsAction,
    },
    /// Volumes from the dilogarithm
    Dilog {
        #[command(subcommand)]
        action: DilogAction,
    },
    /// Every check
    RunAll,
}

#[derive(Subcommand, Debug)]
enum DworkAction {
    Verify,
    Orbits,
    Boundary,
}

#[derive(Subcommand, Debug)]
enum VerifyOnly {
    Verify,
}

#[derive(Subcommand, Debug)]
enum LocsysAction {
    /// Residues of both van Geemen tuples
    VerifyVg,
    /// Residues of a tuple read from JSON {mu: [..5], lambda: [..5]}
    Residues {
        #[arg(long)]
        input: PathBuf,
    },
    /// Extend (mu0, lambda0) from the pair of pants
    Extend {
        /// omega, omega2, -omega, a rational, or c,d for c + d*omega
        #[arg(long, allow_hyphen_values = true)]
        mu0: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
    },
}

#[derive(Subcommand, Debug)]
enum BpsAction {
    /// n~ table to n table
    Invert {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the largest degree in the table
        #[arg(long)]
        order: Option<u64>,
    },
    CheckPaperValues,
}

#[derive(Subcommand, Debug)]
enum VshsAction {
    /// Horizontality and transversality for Psi = sum n~_d Q^d
    Check {
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DilogAction {
    Volumes,
}

/// A failure before any check ran.
struct UsageError(String);

enum Output {
    Report(Report),
    /// Raw data plus whether it counts as a pass
    Data(Value, bool),
}

fn load_config(path: Option<&Path>) -> Result<Config, UsageError> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| UsageError(format!("cannot read config {}: {e}", p.display())))?;
            Config::from_json_str(&text).map_err(|e| UsageError(format!("{}: {e}", p.display())))
        }
    }
}

fn read_json(p: &Path) -> Result<Value, UsageError> {
    let text = fs::read_to_string(p).map_err(|e| UsageError(format!("cannot read {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: malformed JSON: {e}", p.display())))
}

fn select(cfg: &Config, checks: Vec<Check>, names: &[&str]) -> Output {
    Output::Report(Report { config: cfg.clone(), checks: checks.into_iter().filter(|c| names.contains(&c.name.as_str())).collect() })
}

fn whole(cfg: &Config, checks: Vec<Check>) -> Output {
    Output::Report(Report { config: cfg.clone(), checks })
}

fn parse_element(s: &str, what: &str) -> Result<TowerElem, UsageError> {
    QuadElem::parse(s).map(TowerElem::scalar).map_err(|e| UsageError(format!("--{what}: {e}")))
}

fn execute(cmd: &Command, cfg: &Config) -> Result<Output, UsageError> {
    Ok(match cmd {
        Command::Dwork { action } => {
            let names: &[&str] = match action {
                DworkAction::Verify => &["dwork.containment", "dwork.limitForms"],
                DworkAction::Orbits => &["dwork.orbits"],
                DworkAction::Boundary => &["dwork.boundary"],
            };
            select(cfg, report::dwork_suite(cfg), names)
        }
        Command::Tropical { input, smoothed, eps } => match (input, smoothed) {
            (Some(p), _) => {
                let c = tropical::TropCurve::from_json(&read_json(p)?).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
                let ok = tropical::check_balancing(&c);
                Output::Data(json!({ "curve": c.to_json(), "vertexSums": c.vertex_sums(), "balanced": ok }), ok)
            }
            (None, Some(i)) => {
                let e = vanline::arith::parse_rational(eps.as_deref().unwrap_or_default()).map_err(|e| UsageError(format!("--eps: {e}")))?;
                let c = tropical::make_v_smoothed(*i, &e).map_err(|e| UsageError(e.to_string()))?;
                let ok = tropical::check_balancing(&c);
                Output::Data(json!({ "curve": c.to_json(), "vertexSums": c.vertex_sums(), "balanced": ok }), ok)
            }
            (None, None) => whole(cfg, report::tropical_suite(cfg)),
        },
        Command::Chainlink { action: VerifyOnly::Verify } => whole(cfg, report::chainlink_suite(cfg)),
        Command::Locsys { action } => match action {
            LocsysAction::VerifyVg => select(cfg, report::locsys_suite(cfg), &["locsys.vanGeemenResidues"]),
            LocsysAction::Residues { input } => {
                let h = locsys::HolonomyTuple::from_json(&read_json(input)?).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
                let r = locsys::residues(&h).map_err(|e| UsageError(e.to_string()))?;
                let consistent = h.check_consistency().is_ok();
                Output::Data(json!({ "tuple": h.to_json(), "residues": r.to_json(), "unobstructed": r.all_zero(), "longitudesConsistent": consistent }), r.all_zero())
            }
            LocsysAction::Extend { mu0, lambda0 } => {
                let (m, l) = (parse_element(mu0, "mu0")?, parse_element(lambda0, "lambda0")?);
                match locsys::extend_point(&m, &l, None) {
                    Ok(ext) => Output::Data(
                        json!({
                            "mu0": m.pretty(),
                            "lambda0": l.pretty(),
                            "solutions": ext.tuples.iter().map(|h| json!({
                                "tuple": h.to_json(),
                                "residues": locsys::residues(h).map(|r| r.to_json()).unwrap_or(Value::Null),
                            })).collect::<Vec<_>>(),
                            "diagnostics": ext.diagnostics,
                        }),
                        true,
                    ),
                    Err(e) => Output::Data(json!({ "mu0": m.pretty(), "lambda0": l.pretty(), "error": e.to_string() }), false),
                }
            }
        },
        Command::Floer { action: VerifyOnly::Verify } => whole(cfg, report::floer_suite(cfg)),
        Command::Bps { action } => match action {
            BpsAction::Invert { input, order } => {
                let t = bps::table_from_json(&read_json(input)?).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
                let n = order.or_else(|| t.keys().max().copied()).unwrap_or(0);
                let inv = bps::invert(&t, n);
                let ring: Vec<u64> = inv.iter().filter(|(_, x)| !bps::ring_member(x)).map(|(d, _)| *d).collect();
                let even: Vec<u64> = inv.iter().filter(|(_, x)| !bps::even_in_ring(x)).map(|(d, _)| *d).collect();
                Output::Data(
                    json!({
                        "order": n,
                        "nOverSqrtM3": bps::table_to_json(&inv),
                        "outsideRing": ring,
                        "notEvenInRing": even,
                    }),
                    true,
                )
            }
            BpsAction::CheckPaperValues => select(cfg, report::bps_suite(cfg), &["bps.paperValues"]),
        },
        Command::Vshs { action: VshsAction::Check { psi, order } } => {
            let t = bps::table_from_json(&read_json(psi)?).map_err(|e| UsageError(format!("{}: {e}", psi.display())))?;
            if *order == 0 {
                return Err(UsageError("--order must be positive".into()));
            }
            let series = vshs::psi_from_table(&t, *order);
            let m = vshs::ConnectionMatrix::a_model(&vshs::sample_coupling::<QuadElem>(*order));
            let nf = vshs::NormalFunctionCandidate::new(series.clone());
            let h = vshs::horizontality_check(&m, &nf);
            let ext = vshs::build_extension(&m, &nf, 1);
            let ok = h.horizontal && h.e1_is_minus_theta2 && ext.is_ok();
            Output::Data(
                json!({
                    "order": order,
                    "psi": vshs::quad_series_to_json(&series),
                    "componentsOutsideE1Vanish": h.horizontal,
                    "e1Component": vshs::quad_series_to_json(h.e1()),
                    "e1EqualsMinusTheta2Psi": h.e1_is_minus_theta2,
                    "e1EqualsPlusTheta2Psi": h.e1_is_plus_theta2,
                    "transversalAtHalf": ext.as_ref().map(|_| Value::Bool(true)).unwrap_or_else(|e| json!(e.to_string())),
                }),
                ok,
            )
        }
        Command::Dilog { action: DilogAction::Volumes } => whole(cfg, report::dilog_suite(cfg)),
        Command::RunAll => Output::Report(report::run_all(cfg)),
    })
}

fn render(out: &Output, args: &OutputArgs) -> String {
    let mut text = match (out, args.markdown) {
        (Output::Report(r), false) => serde_json::to_string_pretty(&r.to_json(args.timings)).expect("json"),
        (Output::Report(r), true) => r.to_markdown(args.timings),
        (Output::Data(v, _), false) => serde_json::to_string_pretty(v).expect("json"),
        (Output::Data(v, _), true) => format!("```json\n{}\n```", serde_json::to_string_pretty(v).expect("json")),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load_config(cli.out.config.as_deref()).and_then(|cfg| execute(&cli.command, &cfg));
    let out = match result {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = render(&out, &cli.out);
    match &cli.out.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let passed = match &out {
        Output::Report(r) => {
            for c in r.checks.iter().filter(|c| c.status == report::Status::Fail) {
                eprintln!("FAIL {}: {}", c.name, c.details.get("error").or_else(|| c.details.get("note")).map(|v| v.to_string()).unwrap_or_default());
            }
            r.exit_code() == 0
        }
        Output::Data(_, ok) => *ok,
    };
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
