//! Command-line front end: wires JSON specs on disk to the exact-algebra
//! engine and writes deterministic reports and artifacts.
//!
//! Exit codes: 0 = success and all checks passed; 1 = a verification check
//! failed (the report is still written); 2 = input or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use hermod_core::eta::{decompose_target, verify_eta, EtaSpec, TargetAlgebra, TargetSpec};
use hermod_core::gaussian::GaussianRational;
use hermod_core::hss::{build_pair, Family, HermitianPair, PairSpec};
use hermod_core::invariant::{invariant_space, InvariantElement, InvariantSpace, Sign};
use hermod_core::moduli::{emit_system, verify_triple, ModuliTriple, TripleKind};
use hermod_core::report::Report;
use hermod_core::system::{solve_small, QuadraticSystem};

#[derive(Parser)]
#[command(
    name = "hermod",
    about = "Exact Lie-algebra computations for homogeneous Higgs and co-Higgs bundle data \
             on compact Hermitian symmetric spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Higgs,
    Cohiggs,
}

impl KindArg {
    fn to_kind(self) -> TripleKind {
        match self {
            KindArg::Higgs => TripleKind::Higgs,
            KindArg::Cohiggs => TripleKind::CoHiggs,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json is the stable machine contract; text is human-oriented.
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct EtaArgs {
    /// Pair spec, inline JSON or @file. Overrides the pair recorded in the
    /// eta file.
    #[arg(long)]
    pair: Option<String>,
    /// Target algebra, inline JSON or @file. Overrides the target recorded
    /// in the eta file.
    #[arg(long)]
    target: Option<String>,
    /// Path to the eta JSON file ({"pair": …, "target": …, "images": [...]})
    #[arg(long)]
    eta: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog families with parameter constraints and dimension
    /// formulas.
    ListSpaces {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a Hermitian symmetric pair and serialize its full record.
    BuildPair {
        /// Pair spec, inline JSON or @file.
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-verify every structural claim of a pair.
    VerifyPair {
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a homomorphism spec: bracket preservation and center
    /// integrality.
    VerifyEta {
        #[command(flatten)]
        eta: EtaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weight-space decomposition of the target under the center action.
    Decompose {
        #[command(flatten)]
        eta: EtaArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical basis of the invariant tensors for one half of the
    /// complement.
    Invariants {
        #[command(flatten)]
        eta: EtaArgs,
        /// "+" for the tangent half, "-" for the cotangent half.
        #[arg(long)]
        sign: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the vanishing conditions for a candidate triple.
    VerifyTriple {
        #[command(flatten)]
        eta: EtaArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Path to the triple JSON file ({"beta": [...], "phi": [...]},
        /// tensor coordinates with the h-index major).
        #[arg(long)]
        triple: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the quadratic moduli system for a homomorphism and kind.
    EmitSystem {
        #[command(flatten)]
        eta: EtaArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exactly solve a system in at most two variables.
    Solve {
        /// Path to a previously emitted system JSON file. Alternatively give
        /// --eta and --kind to emit and solve in one step.
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        eta: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<hermod_core::Error> for InputError {
    fn from(e: hermod_core::Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn parse_json<T: DeserializeOwned>(content: &str, origin: &str) -> CliResult<T> {
    let mut de = serde_json::Deserializer::from_str(content);
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        let path = e.path().to_string();
        let field = if path.is_empty() || path == "." {
            String::new()
        } else {
            format!(", field '{path}'")
        };
        InputError(format!(
            "{origin}: line {}, column {}{field}: {}",
            inner.line(),
            inner.column(),
            inner
        ))
    })
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Inline JSON (starts with '{') or a path, optionally prefixed with '@'.
fn parse_inline_or_file<T: DeserializeOwned>(arg: &str, what: &str) -> CliResult<T> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        parse_json(trimmed, &format!("inline {what}"))
    } else {
        let path = PathBuf::from(trimmed.strip_prefix('@').unwrap_or(trimmed));
        let content = read_file(&path)?;
        parse_json(&content, &path.display().to_string())
    }
}

struct EtaContext {
    pair: HermitianPair,
    target: TargetAlgebra,
    eta: EtaSpec,
}

fn resolve_eta(args: &EtaArgs) -> CliResult<EtaContext> {
    let content = read_file(&args.eta)?;
    let eta_file = args.eta.display().to_string();
    let mut eta: EtaSpec = parse_json(&content, &eta_file)?;

    let pair_spec: PairSpec = match (&args.pair, &eta.pair) {
        (Some(arg), _) => parse_inline_or_file(arg, "pair spec")?,
        (None, Some(spec)) => spec.clone(),
        (None, None) => {
            return Err(InputError(format!(
                "{eta_file}: no pair given; add a \"pair\" field or pass --pair"
            )))
        }
    };
    let target_spec: TargetSpec = match (&args.target, &eta.target) {
        (Some(arg), _) => parse_inline_or_file(arg, "target spec")?,
        (None, Some(spec)) => spec.clone(),
        (None, None) => {
            return Err(InputError(format!(
                "{eta_file}: no target given; add a \"target\" field or pass --target"
            )))
        }
    };

    let pair = build_pair(&pair_spec)?;
    let target = TargetAlgebra::from_target_spec(&target_spec)?;
    // Rebind the context so downstream consistency checks compare against
    // what was actually resolved.
    eta.pair = Some(pair_spec);
    eta.target = Some(target_spec);
    eta.check_against(&pair, &target)?;
    Ok(EtaContext { pair, target, eta })
}

fn emit<T: Serialize>(output: &OutputArgs, value: &T, text: String) -> CliResult<()> {
    let body = match output.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value)
                .map_err(|e| InputError(format!("serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        OutputFormat::Text => text,
    };
    match &output.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SpaceRow {
    family: &'static str,
    params: &'static str,
    space: &'static str,
    complex_dim: &'static str,
}

#[derive(Serialize)]
struct ReportEnvelope<T: Serialize> {
    subject: T,
    report: Report,
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::ListSpaces { output } => {
            let rows: Vec<SpaceRow> = Family::all()
                .iter()
                .map(|f| SpaceRow {
                    family: f.as_str(),
                    params: f.param_doc(),
                    space: f.space_doc(),
                    complex_dim: f.complex_dim_doc(),
                })
                .collect();
            let mut text = format!(
                "{:<14} {:<28} {:<26} {}\n",
                "family", "params", "space", "complex dim"
            );
            for r in &rows {
                text.push_str(&format!(
                    "{:<14} {:<28} {:<26} {}\n",
                    r.family, r.params, r.space, r.complex_dim
                ));
            }
            emit(&output, &rows, text)?;
            Ok(true)
        }
        Command::BuildPair { pair, output } => {
            let spec: PairSpec = parse_inline_or_file(&pair, "pair spec")?;
            let built = build_pair(&spec)?;
            let text = format!(
                "pair {} / {}\n dim g = {}, dim k = {}, dim p = {}\n lambda = {}\n dim p+ = {}, dim p- = {}\n",
                spec.g_name(),
                spec.k_name(),
                built.g.dim(),
                built.k_basis.dim(),
                built.p_basis.dim(),
                built.lambda,
                built.p_plus.dim(),
                built.p_minus.dim()
            );
            emit(&output, &built, text)?;
            Ok(true)
        }
        Command::VerifyPair { pair, output } => {
            let spec: PairSpec = parse_inline_or_file(&pair, "pair spec")?;
            let built = build_pair(&spec)?;
            let report = built.verify();
            let text = format!("pair {}\n{}", spec.g_name(), report.render_text());
            let passed = report.passed();
            emit(
                &output,
                &ReportEnvelope {
                    subject: spec,
                    report,
                },
                text,
            )?;
            Ok(passed)
        }
        Command::VerifyEta { eta, output } => {
            let ctx = resolve_eta(&eta)?;
            let report = verify_eta(&ctx.pair, &ctx.target, &ctx.eta)?;
            let text = format!(
                "eta into {} over {}\n{}",
                ctx.target.name(),
                ctx.pair.spec.g_name(),
                report.render_text()
            );
            let passed = report.passed();
            emit(
                &output,
                &ReportEnvelope {
                    subject: ctx.eta.fingerprint(&ctx.pair, &ctx.target),
                    report,
                },
                text,
            )?;
            Ok(passed)
        }
        Command::Decompose { eta, output } => {
            let ctx = resolve_eta(&eta)?;
            let dec = decompose_target(&ctx.pair, &ctx.target, &ctx.eta)?;
            let mut text = format!("weights of {}:\n", ctx.target.name());
            for w in &dec.weights {
                text.push_str(&format!(
                    "  {w:>4}: dim {}\n",
                    dec.component(*w).map_or(0, |c| c.dim())
                ));
            }
            emit(&output, &dec, text)?;
            Ok(true)
        }
        Command::Invariants { eta, sign, output } => {
            let parsed_sign = match sign.as_str() {
                "+" | "plus" => Sign::Plus,
                "-" | "minus" => Sign::Minus,
                other => {
                    return Err(InputError(format!(
                        "--sign must be '+' or '-', got '{other}'"
                    )))
                }
            };
            let ctx = resolve_eta(&eta)?;
            let inv = invariant_space(&ctx.pair, &ctx.target, &ctx.eta, parsed_sign)?;
            let text = format!(
                "invariants in h(x)p{}: dim {} (tensor dims {}x{})\n",
                parsed_sign.as_str(),
                inv.dim(),
                inv.dim_h,
                inv.dim_p
            );
            emit(&output, &inv, text)?;
            Ok(true)
        }
        Command::VerifyTriple {
            eta,
            kind,
            triple,
            output,
        } => {
            let ctx = resolve_eta(&eta)?;
            let kind = kind.to_kind();
            #[derive(serde::Deserialize)]
            struct TripleFile {
                beta: Vec<GaussianRational>,
                phi: Vec<GaussianRational>,
            }
            let content = read_file(&triple)?;
            let data: TripleFile = parse_json(&content, &triple.display().to_string())?;

            let beta_space = invariant_space(&ctx.pair, &ctx.target, &ctx.eta, Sign::Plus)?;
            let phi_space = invariant_space(&ctx.pair, &ctx.target, &ctx.eta, kind.phi_sign())?;
            let context = ctx.eta.fingerprint(&ctx.pair, &ctx.target);
            let expect_len =
                |space: &InvariantSpace| space.dim_h * space.dim_p;
            if data.beta.len() != expect_len(&beta_space) {
                return Err(InputError(format!(
                    "beta has {} coordinates, expected {}",
                    data.beta.len(),
                    expect_len(&beta_space)
                )));
            }
            if data.phi.len() != expect_len(&phi_space) {
                return Err(InputError(format!(
                    "phi has {} coordinates, expected {}",
                    data.phi.len(),
                    expect_len(&phi_space)
                )));
            }
            let beta = InvariantElement {
                sign: Sign::Plus,
                dim_h: beta_space.dim_h,
                dim_p: beta_space.dim_p,
                coords: data.beta,
                context: context.clone(),
            };
            let phi = InvariantElement {
                sign: kind.phi_sign(),
                dim_h: phi_space.dim_h,
                dim_p: phi_space.dim_p,
                coords: data.phi,
                context,
            };

            // Well-formedness first: the components must actually be
            // invariant for this homomorphism.
            let mut report = Report::new();
            report.push(
                "beta_invariant",
                beta_space.basis.contains(&beta.coords),
                "beta lies in the invariant space",
            );
            report.push(
                "phi_invariant",
                phi_space.basis.contains(&phi.coords),
                "phi lies in the invariant space",
            );
            let t = ModuliTriple::new(kind, beta, phi)?;
            let conditions = verify_triple(&ctx.target, &t)?;
            report.checks.extend(conditions.checks);
            let text = format!("triple kind {}\n{}", kind.as_str(), report.render_text());
            let passed = report.passed();
            emit(
                &output,
                &ReportEnvelope {
                    subject: kind,
                    report,
                },
                text,
            )?;
            Ok(passed)
        }
        Command::EmitSystem { eta, kind, output } => {
            let ctx = resolve_eta(&eta)?;
            let sys = emit_system(&ctx.pair, &ctx.target, &ctx.eta, kind.to_kind())?;
            let text = render_system_text(&sys);
            emit(&output, &sys, text)?;
            Ok(true)
        }
        Command::Solve {
            system,
            pair,
            target,
            eta,
            kind,
            output,
        } => {
            let sys: QuadraticSystem = match (system, eta) {
                (Some(path), _) => {
                    let content = read_file(&path)?;
                    parse_json(&content, &path.display().to_string())?
                }
                (None, Some(eta_path)) => {
                    let kind = kind.ok_or_else(|| {
                        InputError("--kind is required when solving from --eta".into())
                    })?;
                    let args = EtaArgs {
                        pair,
                        target,
                        eta: eta_path,
                    };
                    let ctx = resolve_eta(&args)?;
                    emit_system(&ctx.pair, &ctx.target, &ctx.eta, kind.to_kind())?
                }
                (None, None) => {
                    return Err(InputError(
                        "solve needs either --system or --eta with --kind".into(),
                    ))
                }
            };
            let zero_set = solve_small(&sys)?;
            let text = format!("{}\n", zero_set.describe());
            emit(&output, &zero_set, text)?;
            Ok(true)
        }
    }
}

fn render_system_text(sys: &QuadraticSystem) -> String {
    let mut text = format!("variables: {}\n", sys.variables.join(", "));
    if sys.equations.is_empty() {
        text.push_str("no equations (the zero set is everything)\n");
    }
    for eq in &sys.equations {
        let terms: Vec<String> = eq
            .monomials
            .iter()
            .map(|m| format!("({})·{}·{}", m.coeff, m.vars[0], m.vars[1]))
            .collect();
        text.push_str(&format!(
            "{} = 0    [{}]\n",
            terms.join(" + "),
            eq.provenance
        ));
    }
    if !sys.identically_zero.is_empty() {
        text.push_str(&format!(
            "identically zero: {}\n",
            sys.identically_zero.join(", ")
        ));
    }
    for d in &sys.duplicates {
        text.push_str(&format!(
            "duplicate of equation {}: {}\n",
            d.equal_to, d.provenance
        ));
    }
    text
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
