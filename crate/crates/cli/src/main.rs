//! `expcond`: mixed pseudovolumes, tropical fans and intersection indices of
//! exponential sums from the command line.
//!
//! Every command prints a JSON report on stdout and a short summary on
//! stderr. Exit status: 0 on success, 2 on bad input, 3 when a numeric
//! result could not be certified.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use expcond::exactnum::rat::fmt_rat;
use expcond::exactnum::subspace::GaussianVector;
use expcond::expsum::{
    count_zeros_disk, intersection_index, lattice_density, lattice_from_characters, ExpScale, ExpSum,
    QuadratureConfig,
};
use expcond::io::{fan_from_json, fan_to_json, polytope_from_json, polytopes_from_json, ring_element_from_json};
use expcond::polytope::{complex_rank, mixed_volume, rank};
use expcond::polytope_ring::{in_jvol, weighted_fan_of};
use expcond::pseudovolume::{mixed_pseudovolume, mixed_pseudovolume_polarized, pseudovolume, SamplingConfig};
use expcond::tropical::{dual_fan, fan_add, fan_equivalent, stable_product};
use expcond::Error;

#[derive(Parser)]
#[command(name = "expcond", version, about = "Convex and tropical geometry of exponential sums")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo samples per exterior angle.
    #[arg(long, global = true, env = "EXPCOND_ANGLE_SAMPLES", default_value_t = expcond::pseudovolume::DEFAULT_SAMPLES)]
    angle_samples: usize,
    /// Only print the JSON report (no summary on stderr).
    #[arg(long, global = true)]
    json: bool,
    /// Add the wall time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pseudovolume of a polytope, or mixed pseudovolume of a list.
    Pseudovolume {
        file: PathBuf,
        /// Treat the file as a list of n polytopes in ℂⁿ*.
        #[arg(long)]
        mixed: bool,
        /// Evaluate the mixed pseudovolume by inclusion–exclusion.
        #[arg(long, requires = "mixed")]
        polarized: bool,
    },
    /// Exact mixed volume of a list of polytopes.
    MixedVolume { file: PathBuf },
    /// Intersection index of n exponential sums in ℂⁿ.
    Index(IndexArgs),
    /// Weighted fan arithmetic.
    Fan {
        #[command(subcommand)]
        op: FanCommand,
    },
    /// Rank (or complex rank) of a list of polytopes.
    Rank {
        file: PathBuf,
        #[arg(long)]
        complex: bool,
    },
    /// Numeric cross-checks.
    Oracle {
        #[command(subcommand)]
        op: OracleCommand,
    },
}

#[derive(Args)]
struct IndexArgs {
    /// Files holding exponential sums (JSON, a JSON array, or one expression per line).
    files: Vec<PathBuf>,
    /// Exponential sum given inline, e.g. "exp(z) - 1"; repeatable.
    #[arg(long = "expr", short = 'e')]
    exprs: Vec<String>,
}

#[derive(Subcommand)]
enum FanCommand {
    /// The k-dimensional dual fan of a polytope.
    Dual {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Sum of two fans of the same dimension.
    Add { a: PathBuf, b: PathBuf },
    /// Stable intersection product.
    Multiply { a: PathBuf, b: PathBuf },
    /// Whether two fans define the same tropical cycle.
    Equiv { a: PathBuf, b: PathBuf },
    /// Weighted fan of a homogeneous polytope-ring element.
    OfElement { file: PathBuf },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Count zeros of a one-variable exponential sum in |z| < R.
    ZerosDisk {
        #[arg(long = "expr", short = 'e')]
        expr: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Panel budget for the adaptive quadrature.
        #[arg(long, default_value_t = QuadratureConfig::default().max_panels)]
        max_panels: usize,
    },
    /// Density of the zero lattice of {e^{⟨z,λⱼ⟩} = aⱼ}.
    LatticeDensity {
        /// Character as a linear form, e.g. "(2*pi*i)*z1"; repeat n times.
        #[arg(long = "lambda", required = true)]
        lambdas: Vec<String>,
    },
}

enum Failure {
    Input(String),
    Certification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certification(_) | Error::Unstable => Failure::Certification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

/// Input files read so far, hashed into the report.
#[derive(Default)]
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn text(&mut self, path: &Path) -> Result<String, Failure> {
        let s = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.hasher.update(path.display().to_string().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(s.as_bytes());
        self.hasher.update([0]);
        Ok(s)
    }

    /// A JSON input; the `results` of an earlier report are accepted as well.
    fn json(&mut self, path: &Path) -> Result<Value, Failure> {
        let s = self.text(path)?;
        let v: Value = serde_json::from_str(&s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        match v {
            Value::Object(mut map) if map.contains_key("results") && map.contains_key("inputs_digest") => {
                Ok(map.remove("results").expect("checked"))
            }
            v => Ok(v),
        }
    }

    fn inline(&mut self, s: &str) {
        self.hasher.update(s.as_bytes());
        self.hasher.update([0]);
    }

    fn digest(self) -> String {
        self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Outcome {
    let cfg = SamplingConfig {
        samples: cli.angle_samples,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Pseudovolume { file, mixed, polarized } => {
            let v = inputs.json(file)?;
            let r = if *mixed {
                let ps = polytopes_from_json(&v)?;
                if *polarized {
                    mixed_pseudovolume_polarized(&ps, &cfg)?
                } else {
                    mixed_pseudovolume(&ps, &cfg)?
                }
            } else {
                pseudovolume(&polytope_from_json(&v)?, &cfg)?
            };
            let summary = format!(
                "pseudovolume {:.9} ± {:.2e}{}",
                r.value,
                r.error_bound,
                r.exact.as_ref().map(|e| format!(" = {e}")).unwrap_or_default()
            );
            Ok((serde_json::to_value(&r).expect("serializable"), summary))
        }
        Command::MixedVolume { file } => {
            let ps = polytopes_from_json(&inputs.json(file)?)?;
            let mv = mixed_volume(&ps)?;
            let summary = format!("mixed volume {mv}");
            Ok((json!({"value": mv.to_f64(), "exact": mv.to_string(), "error_bound": 0.0}), summary))
        }
        Command::Index(args) => {
            let mut texts: Vec<String> = Vec::new();
            let mut jsons: Vec<Value> = Vec::new();
            for f in &args.files {
                let s = inputs.text(f)?;
                match serde_json::from_str::<Value>(&s) {
                    Ok(Value::Array(items)) => jsons.extend(items),
                    Ok(v) => jsons.push(v),
                    Err(_) => texts.extend(s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from)),
                }
            }
            for e in &args.exprs {
                inputs.inline(e);
                texts.push(e.clone());
            }
            let n = texts.len() + jsons.len();
            if n == 0 {
                return Err(Failure::Input("no exponential sums given".into()));
            }
            let mut fs = Vec::with_capacity(n);
            for v in &jsons {
                fs.push(ExpSum::from_json(v)?);
            }
            for t in &texts {
                fs.push(ExpSum::parse(t, Some(n)).map_err(|e| Failure::Input(format!("{t:?}: {e}")))?);
            }
            let r = intersection_index(&fs, &cfg)?;
            let mut summary = format!("intersection index {:.9} ± {:.2e}", r.value, r.error_bound);
            if let Some(e) = &r.exact {
                summary += &format!(" = {e}");
            }
            if r.vanishes {
                summary += &format!(" (vanishes: complex rank {})", r.complex_rank);
            }
            let mut out = serde_json::to_value(&r).expect("serializable");
            out["sums"] = Value::Array(fs.iter().map(ExpSum::to_json).collect());
            if r.vanishes {
                out["certificate"] = json!({"complex_rank": r.complex_rank});
            }
            Ok((out, summary))
        }
        Command::Fan { op } => fan_command(op, inputs),
        Command::Rank { file, complex } => {
            let ps = polytopes_from_json(&inputs.json(file)?)?;
            if *complex {
                let r = complex_rank(&ps)?;
                Ok((json!({"complex_rank": r}), format!("complex rank {r}")))
            } else {
                let r = rank(&ps)?;
                Ok((json!({"rank": r}), format!("rank {r}")))
            }
        }
        Command::Oracle { op } => oracle_command(op, inputs),
    }
}

fn fan_command(op: &FanCommand, inputs: &mut Inputs) -> Outcome {
    match op {
        FanCommand::Dual { file, dim } => {
            let p = polytope_from_json(&inputs.json(file)?)?;
            let f = dual_fan(&p, *dim)?;
            let summary = format!("{}-dimensional dual fan with {} cones", dim, f.cones().len());
            Ok((fan_to_json(&f), summary))
        }
        FanCommand::Add { a, b } => {
            let (a, b) = (fan_from_json(&inputs.json(a)?)?, fan_from_json(&inputs.json(b)?)?);
            let f = fan_add(&a, &b)?;
            let summary = format!("sum has {} cones", f.cones().len());
            Ok((fan_to_json(&f), summary))
        }
        FanCommand::Multiply { a, b } => {
            let (a, b) = (fan_from_json(&inputs.json(a)?)?, fan_from_json(&inputs.json(b)?)?);
            let f = stable_product(&a, &b)?;
            let mut out = fan_to_json(&f);
            let summary = if f.dim() == 0 {
                let w = f.zero_cone_weight();
                out["zero_cone_weight"] = json!(fmt_rat(&w));
                format!("product is the zero cone with weight {w}")
            } else {
                format!("product has {} cones of dimension {}", f.cones().len(), f.dim())
            };
            Ok((out, summary))
        }
        FanCommand::Equiv { a, b } => {
            let (a, b) = (fan_from_json(&inputs.json(a)?)?, fan_from_json(&inputs.json(b)?)?);
            let eq = fan_equivalent(&a, &b)?;
            Ok((json!({"equivalent": eq}), format!("equivalent: {eq}")))
        }
        FanCommand::OfElement { file } => {
            let x = ring_element_from_json(&inputs.json(file)?)?;
            let f = weighted_fan_of(&x)?;
            let member = in_jvol(&x)?;
            let mut out = fan_to_json(&f);
            out["in_jvol"] = json!(member);
            let summary = format!("fan with {} cones; in J_vol: {member}", f.cones().len());
            Ok((out, summary))
        }
    }
}

fn oracle_command(op: &OracleCommand, inputs: &mut Inputs) -> Outcome {
    match op {
        OracleCommand::ZerosDisk {
            expr,
            file,
            radius,
            tol,
            max_panels,
        } => {
            let f = match (expr, file) {
                (Some(e), None) => {
                    inputs.inline(e);
                    ExpSum::parse(e, Some(1))?
                }
                (None, Some(p)) => {
                    let s = inputs.text(p)?;
                    match serde_json::from_str::<Value>(&s) {
                        Ok(v) => ExpSum::from_json(&v)?,
                        Err(_) => ExpSum::parse(s.trim(), Some(1))?,
                    }
                }
                _ => return Err(Failure::Input("give exactly one of --expr or --file".into())),
            };
            let qc = QuadratureConfig {
                tol: *tol,
                max_panels: *max_panels,
                ..QuadratureConfig::default()
            };
            let z = count_zeros_disk(&f, *radius, &qc)?;
            let density = z.count as f64 / (2.0 * radius);
            let summary = format!("{} zeros in |z| < {} (N/2R = {density:.6})", z.count, z.radius);
            let mut out = serde_json::to_value(&z).expect("serializable");
            out["density_estimate"] = json!(density);
            Ok((out, summary))
        }
        OracleCommand::LatticeDensity { lambdas } => {
            let n = lambdas.len();
            let mut scale: Option<ExpScale> = None;
            let mut chars: Vec<GaussianVector> = Vec::with_capacity(n);
            for l in lambdas {
                inputs.inline(l);
                let f = ExpSum::parse(&format!("exp({l})"), Some(n)).map_err(|e| Failure::Input(format!("{l:?}: {e}")))?;
                match scale {
                    Some(s) if s != f.scale() => return Err(Error::MixedScale.into()),
                    _ => scale = Some(f.scale()),
                }
                chars.push(f.terms()[0].exponent.clone());
            }
            let spec = lattice_from_characters(&chars, scale.unwrap_or(ExpScale::One))?;
            let d = lattice_density(&spec)?;
            let mus: Vec<Vec<String>> = spec.mus.iter().map(|m| m.coords().iter().map(fmt_rat).collect()).collect();
            let gens: Vec<Vec<[f64; 2]>> = spec
                .generators_f64()
                .iter()
                .map(|g| g.iter().map(|c| [c.re, c.im]).collect())
                .collect();
            let summary = format!("lattice density {:.9} = {}", d.value, d.exact);
            let mut out = serde_json::to_value(&d).expect("serializable");
            out["error_bound"] = json!(0.0);
            out["dual_basis"] = json!(mus);
            out["lattice_generators"] = json!(gens);
            out["verified"] = json!(spec.verify());
            out["l_dim"] = json!(spec.l.dim());
            Ok((out, summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = run(&cli, &mut inputs);
    let command: Vec<String> = std::env::args().skip(1).collect();
    match outcome {
        Ok((results, summary)) => {
            let mut report = json!({
                "command": command,
                "inputs_digest": inputs.digest(),
                "seed": cli.seed,
                "samples": cli.angle_samples,
                "results": results,
            });
            if cli.timing {
                report["wall_time_s"] = json!(start.elapsed().as_secs_f64());
            }
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if !cli.json {
                eprintln!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Certification(msg)) => {
            eprintln!("certification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
