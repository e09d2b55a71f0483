use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use shimcover::certificate::{Certificate, Status};
use shimcover::corpus::{poly_to_json, Corpus, RunOptions, Runner, CHECKS};
use shimcover::cover::{BasePoint, T};
use shimcover::exact::{parse_rational, Poly, Rational};

/// Exact checks of a plane-curve cover of the projective line.
#[derive(Parser, Debug)]
#[command(name = "shimcover", version)]
struct Cli {
    /// Corpus file; the built-in corpus when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write certificates here instead of stdout.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Comma-separated primes for Frobenius sampling.
    #[arg(long, global = true, value_delimiter = ',', default_value = "103,109,131")]
    primes: Vec<u64>,
    /// Specializations per prime.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Allowed deviation of sampled frequencies, as a rational.
    #[arg(long, global = true, default_value = "1/20")]
    tolerance: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rational point, constant field, smoothness and genus.
    VerifyCurve,
    /// Degree, branch locus and ramification profiles.
    Ramification {
        /// `infinity`, `branch` (a root of the branch cubic) or a rational.
        #[arg(long)]
        at: Option<String>,
    },
    /// The involution: self-map, order two, fixed points.
    Involution,
    /// Images of the zeros of f.
    DivisorOfF,
    /// The relation between the map and its transform by the involution.
    ModularPoly {
        /// Write the polynomial as JSON.
        #[arg(long)]
        poly_out: Option<PathBuf>,
    },
    /// Rational CM points and their fibers.
    CmPoints,
    /// Weierstrass model and isomorphism with the target curve.
    Weierstrass,
    /// The zeros of f are 2-torsion.
    TwoTorsion,
    /// Group oracle and Frobenius sampling.
    Galois,
    /// Every check.
    All,
}

fn parse_base(s: &str, corpus: &Corpus) -> Result<BasePoint, String> {
    match s {
        "infinity" | "inf" => Ok(BasePoint::Infinity),
        "branch" => {
            let b = &corpus.expectations.branch_cubic;
            let v = b.univariate_var().map_err(|e| e.to_string())?.unwrap_or_else(|| T.into());
            Ok(BasePoint::Algebraic(b.rename(&v, T)))
        }
        _ => parse_rational(s).map(BasePoint::Rational).map_err(|e| e.to_string()),
    }
}

fn run(cli: &Cli) -> Result<Vec<Certificate>, String> {
    let corpus = match &cli.input {
        Some(p) => Corpus::load(p).map_err(|e| e.to_string())?,
        None => Corpus::builtin(),
    };
    let tolerance: Rational = parse_rational(&cli.tolerance).map_err(|e| e.to_string())?;
    let options = RunOptions { seed: cli.seed, primes: cli.primes.clone(), samples: cli.samples, tolerance };
    let base = match &cli.command {
        Command::Ramification { at: Some(s) } => Some(parse_base(s, &corpus)?),
        _ => None,
    };
    let runner = Runner::new(corpus, options);
    let group = |name: &str| runner.run_group(name).map_err(|e| e.to_string());
    let certs = match &cli.command {
        Command::VerifyCurve => group("verify-curve")?,
        Command::Ramification { .. } => match &base {
            Some(b) => vec![runner.profile_at(b)],
            None => group("ramification")?,
        },
        Command::Involution => group("involution")?,
        Command::DivisorOfF => group("divisor-of-f")?,
        Command::ModularPoly { poly_out } => {
            let certs = group("modular-poly")?;
            if let Some(path) = poly_out {
                let phi = runner.modular_polynomial().map_err(|e| e.to_string())?;
                write_poly(path, &phi.poly)?;
            }
            certs
        }
        Command::CmPoints => group("cm-points")?,
        Command::Weierstrass => group("weierstrass")?,
        Command::TwoTorsion => group("two-torsion")?,
        Command::Galois => group("galois")?,
        Command::All => {
            let mut out = Vec::new();
            for name in CHECKS {
                out.extend(group(name)?);
            }
            out
        }
    };
    Ok(certs)
}

fn write_poly(path: &PathBuf, p: &Poly) -> Result<(), String> {
    let text = serde_json::to_string_pretty(&poly_to_json(p)).map_err(|e| e.to_string())?;
    std::fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let certs = match run(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    for c in &certs {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        eprintln!("{tag:5} {} ({} ms): {}", c.check, c.timing_ms.unwrap_or(0), c.reason);
    }
    let json = serde_json::to_string_pretty(&certs).expect("certificates serialize");
    match &cli.emit {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    if certs.iter().any(|c| c.status == Status::Error) {
        ExitCode::from(2)
    } else if certs.iter().all(Certificate::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
