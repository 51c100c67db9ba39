use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropreal::hyperbolic::{hyperbolic_wrt_point, hyperbolicity_locus};
use tropreal::intersect::{intersection_components, RealCurve};
use tropreal::io::{self, Analysis, Scenario, SvgOptions};
use tropreal::{Error, Lattice, Z2Pair};

mod verify;

#[derive(Parser)]
#[command(name = "tropreal", version, about = "Real tropical plane curves: twists, real parts, intersections, hyperbolicity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the vertices and edges of a curve.
    Build(SpecArgs),
    /// Twists, admissibility, dividing test and component counts.
    Analyze(SpecArgs),
    /// Classify the intersection of two real curves.
    Intersect(IntersectArgs),
    /// Hyperbolicity report, or a single verdict with --point and --eps.
    Hyperbolic(HyperbolicArgs),
    /// Draw the curve, its dual subdivision and its real part as SVG.
    Render(SpecArgs),
    /// Run randomized oracle cross-checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    spec: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct IntersectArgs {
    /// Scenario with both curves (uses its "second" entry).
    #[arg(long, conflicts_with_all = ["a", "b"])]
    spec: Option<PathBuf>,
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HyperbolicArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Complement component, as its dual lattice point "(i,j)".
    #[arg(long, requires = "eps")]
    point: Option<String>,
    /// Symmetric copy, as "b,b".
    #[arg(long, requires = "point")]
    eps: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Lib(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(io::load_spec(&text)?.build()?)
}

fn emit(output: &Output, text: String, json: impl FnOnce() -> Result<serde_json::Value, Failure>) -> Result<(), Failure> {
    let body = match output.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&json()?).expect("reports serialize") + "\n",
    };
    match &output.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn parse_eps(s: &str) -> Result<Z2Pair, Failure> {
    let bits: Vec<&str> = s.trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')').split(',').map(str::trim).collect();
    match bits.as_slice() {
        [a, b] if ["0", "1"].contains(a) && ["0", "1"].contains(b) => Ok(Z2Pair::new(*a == "1", *b == "1")),
        _ => Err(Failure::Lib(Error::Validation(format!("--eps expects \"b,b\" with b in {{0,1}}, got {s:?}")))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build(a) => {
            let sc = load(&a.spec)?;
            emit(&a.output, io::build_text(&sc.curve), || Ok(io::build_json(&sc.curve)))
        }
        Command::Analyze(a) => {
            let sc = load(&a.spec)?;
            let an = Analysis::new(&sc.curve, &sc.phase, &sc.twists)?;
            emit(&a.output, io::analysis_text(&an), || Ok(io::analysis_json(&an)))
        }
        Command::Intersect(a) => {
            let (first, second) = match (a.spec, a.a, a.b) {
                (Some(s), _, _) => {
                    let mut sc = load(&s)?;
                    let other = sc
                        .second
                        .take()
                        .ok_or_else(|| Failure::Lib(Error::Validation("scenario has no \"second\" curve".into())))?;
                    (sc, *other)
                }
                (None, Some(x), Some(y)) => (load(&x)?, load(&y)?),
                _ => return Err(Failure::Lib(Error::Validation("intersect needs --spec or both --a and --b".into()))),
            };
            let comps = intersection_components(&first.curve, &second.curve)?;
            let (ra, rb) = (RealCurve::new(&first.curve, &first.phase), RealCurve::new(&second.curve, &second.phase));
            let text = io::intersect_text(&comps, ra, rb)?;
            emit(&a.output, text, || Ok(io::intersect_json(&comps, ra, rb)?))
        }
        Command::Hyperbolic(a) => {
            let sc = load(&a.spec)?;
            let query = match (&a.point, &a.eps) {
                (Some(p), Some(e)) => Some((
                    p.parse::<Lattice>().map_err(|m| Failure::Lib(Error::Validation(format!("--point: {m}"))))?,
                    parse_eps(e)?,
                )),
                _ => sc.query,
            };
            match query {
                Some((alpha, eps)) => {
                    let v = hyperbolic_wrt_point(&sc.curve, &sc.phase, alpha, eps)?;
                    let text = match &v.failure {
                        None => format!("component {alpha} copy {eps}: hyperbolic (sample point {})\n", v.sample),
                        Some(f) => format!(
                            "component {alpha} copy {eps}: not hyperbolic, condition {} fails: {f:?} (sample point {})\n",
                            f.condition(),
                            v.sample
                        ),
                    };
                    emit(&a.output, text, || {
                        Ok(serde_json::json!({
                            "component": alpha.to_string(),
                            "eps": eps.to_string(),
                            "sample": v.sample.to_string(),
                            "hyperbolic": v.hyperbolic(),
                            "failed_condition": v.failure.as_ref().map(|f| f.condition()),
                        }))
                    })
                }
                None => {
                    let r = hyperbolicity_locus(&sc.curve, &sc.phase)?;
                    emit(&a.output, io::hyperbolic_text(&r), || Ok(io::hyperbolic_json(&r)))
                }
            }
        }
        Command::Render(a) => {
            let sc = load(&a.spec)?;
            let locus = match sc.curve.degree {
                Some(_) => Some(hyperbolicity_locus(&sc.curve, &sc.phase)?.h),
                None => None,
            };
            let svg = io::render_svg(
                &sc.curve,
                SvgOptions { phase: Some(&sc.phase), twists: Some(&sc.twists), locus: locus.as_ref() },
            );
            emit(&Output { format: Format::Text, out: a.output.out }, svg, || unreachable!())
        }
        Command::Verify(a) => {
            let report = verify::run(a.seed, a.trials);
            let text = report.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n") + "\n";
            let failed = report.iter().any(|c| c.mismatches > 0);
            emit(&a.output, text, || {
                Ok(serde_json::json!(report
                    .iter()
                    .map(|c| serde_json::json!({"check": c.name, "cases": c.cases, "mismatches": c.mismatches}))
                    .collect::<Vec<_>>()))
            })?;
            if failed {
                return Err(Failure::Mismatch("oracle mismatch".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(Error::UnsupportedConfiguration(m))) => {
            eprintln!("error: unsupported configuration: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
