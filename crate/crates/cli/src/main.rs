use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pconvex::analysis::{analyze, AnalysisConfig};
use pconvex::characteristic::{characteristic_set, is_elliptic};
use pconvex::cones::{cone_avoids_zeroset, prop3_predicates, Cone, OpenCone, ZeroSet};
use pconvex::domain::{convexity_verdict, min_principle_check, min_principle_lorentz, ConvexityMode, PlanarDomain};
use pconvex::io::{read_json, to_pretty, write_json};
use pconvex::localization::{lineality_space, ray_localization, PathSpec, Sublinear};
use pconvex::norms::NormMode;
use pconvex::number::{parse_rational, parse_vector, to_f64};
use pconvex::sigma::{probe_with, SigmaDirection, SigmaEngine};
use pconvex::svg::write_svg;
use pconvex::{Error, Polynomial, Rational};

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "pconvex", version, about = "Surjectivity of P(D) on planar polygonal domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Analysis config JSON; falls back to $PCONVEX_CONFIG, then built-in defaults.
    #[arg(long, env = "PCONVEX_CONFIG")]
    config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> Result<AnalysisConfig, Error> {
        match &self.config {
            Some(p) => AnalysisConfig::load(p),
            None => Ok(AnalysisConfig::default()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full surjectivity analysis on C^∞(Ω) and D′(Ω).
    Analyze {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        domain: PathBuf,
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Characteristic directions and the ellipticity flag.
    Characteristics {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Localization along `r·w + r^{p/q}·v + b`.
    Localize {
        #[arg(long)]
        poly: PathBuf,
        /// Integer direction `w`, e.g. "1,0".
        #[arg(long = "dir")]
        dir: String,
        #[arg(long)]
        drift: Option<String>,
        /// Exponent and vector of a sublinear drift, e.g. `--sub 1/2 0,1`.
        #[arg(long, num_args = 2, value_names = ["P/Q", "V"])]
        sub: Option<Vec<String>>,
    },
    /// Estimate of σ_P(span{y}).
    Sigma {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long)]
        mode: Option<NormModeArg>,
        /// Also run the hypoellipticity probe.
        #[arg(long)]
        probe: bool,
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Sweep verdict for one convexity notion.
    Convexity {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_enum, default_value = "supports")]
        mode: ModeArg,
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Cone operations.
    Cones {
        #[command(subcommand)]
        verb: ConeVerb,
    },
    /// Compares the boundary distance on a segment with its endpoint values.
    Minprinciple {
        /// Planar domain; omit together with --lorentz.
        #[arg(long, required_unless_present = "lorentz")]
        domain: Option<PathBuf>,
        /// Use the complement of the closed Lorentz cone instead.
        #[arg(long, conflicts_with = "domain")]
        lorentz: bool,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum ConeVerb {
    Dual {
        #[arg(long)]
        cone: PathBuf,
    },
    Proper {
        #[arg(long)]
        cone: PathBuf,
    },
    /// The four equivalent predicates for `Γ°`, `N`, `c` and `x`.
    Prop3 {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        normal: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Whether an open cone misses the zeros of the principal part.
    Avoid {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Supports,
    Singular,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormModeArg {
    Sup,
    Deriv,
}

fn load_poly(path: &Path) -> Result<Polynomial, Error> {
    Polynomial::from_json(&read_json(path)?)
}

fn load_domain(path: &Path) -> Result<PlanarDomain, Error> {
    PlanarDomain::from_json(&read_json(path)?)
}

fn ints(s: &str) -> Result<Vec<num_bigint::BigInt>, Error> {
    parse_vector(s)?
        .into_iter()
        .map(|q| if q.is_integer() { Ok(q.to_integer()) } else { Err(Error::Parse(format!("direction {s:?} must be integral"))) })
        .collect()
}

fn floats(s: &str) -> Result<Vec<f64>, Error> {
    Ok(parse_vector(s)?.iter().map(to_f64).collect())
}

fn point(s: &str) -> Result<[Rational; 2], Error> {
    let v = parse_vector(s)?;
    match <[Rational; 2]>::try_from(v) {
        Ok(p) => Ok(p),
        Err(v) => Err(Error::DimensionMismatch { expected: 2, got: v.len() }),
    }
}

/// Printed JSON and the process exit code.
type Outcome = (Value, u8);

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Analyze { poly, domain, config, svg, report } => {
            let cfg = config.load()?;
            let p = load_poly(&poly)?;
            let d = load_domain(&domain)?;
            let r = analyze(&p, &d, &cfg)?;
            let out = r.to_json();
            let code = r.exit_code() as u8;
            if let Some(path) = svg.or_else(|| cfg.svg.as_ref().map(PathBuf::from)) {
                write_svg(path, &d, &r)?;
            }
            if let Some(path) = report.or_else(|| cfg.report.as_ref().map(PathBuf::from)) {
                write_json(&path, &out)?;
                return Ok((json!({ "report": path.display().to_string(), "exit_code": code }), code));
            }
            Ok((out, code))
        }
        Command::Characteristics { poly } => {
            let p = load_poly(&poly)?;
            let cs = characteristic_set(&p)?;
            Ok((
                json!({
                    "symbol": p.to_string(),
                    "elliptic": is_elliptic(&p),
                    "principal_degree": cs.source_degree,
                    "directions": cs.directions.iter().map(|d| d.record()).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Localize { poly, dir, drift, sub } => {
            let p = load_poly(&poly)?;
            let w = ints(&dir)?;
            let b = match drift {
                Some(s) => parse_vector(&s)?,
                None => vec![Rational::from_integer(0.into()); w.len()],
            };
            let sub = match sub.as_deref() {
                Some([e, v]) => {
                    let (num, den) = e.split_once('/').ok_or_else(|| Error::Parse(format!("exponent {e:?} must be p/q")))?;
                    let parse = |x: &str| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {e:?}")));
                    Some(Sublinear { p: parse(num)?, q: parse(den)?, v: parse_vector(v)? })
                }
                _ => None,
            };
            let path = PathSpec::new(w, b, sub)?;
            let prof = ray_localization(&p, &path)?;
            let lin = lineality_space(&prof.profile);
            Ok((json!({ "profile": prof.record(), "lineality": lin.record() }), 0))
        }
        Command::Sigma { poly, y, mode, probe, config } => {
            let mut cfg = config.load()?.sigma;
            if let Some(m) = mode {
                cfg.mode = match m {
                    NormModeArg::Sup => NormMode::Sup,
                    NormModeArg::Deriv => NormMode::Deriv,
                };
            }
            let p = load_poly(&poly)?;
            let engine = SigmaEngine::new(&p, &cfg)?;
            let est = engine.estimate(&SigmaDirection::Vector(parse_vector(&y)?))?;
            let mut out = json!({ "estimate": est.to_json() });
            if probe {
                out["hypoellipticity"] = probe_with(&engine)?.to_json();
            }
            Ok((out, 0))
        }
        Command::Convexity { domain, poly, mode, config } => {
            let cfg = config.load()?;
            let p = load_poly(&poly)?;
            let d = load_domain(&domain)?;
            let cs = characteristic_set(&p)?;
            let (zeros, mode) = match mode {
                ModeArg::Supports => (cs.directions, ConvexityMode::Supports),
                ModeArg::Singular => {
                    let engine = SigmaEngine::new(&p, &cfg.sigma)?;
                    let mut zeros = Vec::new();
                    for n in cs.representatives() {
                        if engine.estimate(&SigmaDirection::Planar(n.clone()))?.is_exact_zero() {
                            zeros.push(n);
                        }
                    }
                    (zeros, ConvexityMode::SingularSupports)
                }
            };
            let v = convexity_verdict(&d, &zeros, mode)?;
            let code = if v.passed { 0 } else { 1 };
            Ok((v.to_json(), code))
        }
        Command::Cones { verb } => match verb {
            ConeVerb::Dual { cone } => {
                let c = Cone::from_json(&read_json(cone)?)?;
                Ok((json!({ "cone": c.to_json(), "dual": c.dual()?.to_json() }), 0))
            }
            ConeVerb::Proper { cone } => {
                let c = Cone::from_json(&read_json(cone)?)?;
                let proper = c.is_proper()?;
                Ok((json!({ "cone": c.to_json(), "proper": proper, "degenerate": c.is_degenerate() }), 0))
            }
            ConeVerb::Prop3 { cone, normal, c, x } => {
                let g = Cone::from_json(&read_json(cone)?)?;
                let rec = prop3_predicates(&g, &parse_vector(&normal)?, &parse_rational(&c)?, &parse_vector(&x)?)?;
                Ok((rec.to_json(), 0))
            }
            ConeVerb::Avoid { cone, poly } => {
                let open = match Cone::from_json(&read_json(cone)?)? {
                    Cone::Sector(s) => OpenCone::Sector(s),
                    Cone::Lorentz(l) => OpenCone::LorentzInterior(l),
                    Cone::Polyhedral(_) => {
                        return Err(Error::UnsupportedZeroSet("avoidance is decided for sectors and Lorentz interiors".into()))
                    }
                };
                let p = load_poly(&poly)?;
                let a = cone_avoids_zeroset(&open, &ZeroSet::Principal(&p))?;
                Ok((a.to_json(), 0))
            }
        },
        Command::Minprinciple { domain, lorentz, a, b, tol } => {
            let r = if lorentz {
                min_principle_lorentz(&floats(&a)?, &floats(&b)?, tol)?
            } else {
                let d = load_domain(domain.as_deref().expect("clap requires --domain without --lorentz"))?;
                min_principle_check(&d, &point(&a)?, &point(&b)?, tol)?
            };
            let code = if r.holds { 0 } else { 1 };
            Ok((r.to_json(), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{}", to_pretty(&out));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
