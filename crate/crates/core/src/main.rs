use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_diamond::commands;
use witt_diamond::module::Certificate;
use witt_diamond::oracle::TruncationPolicy;
use witt_diamond::report::Report;
use witt_diamond::spec::{action_data_from_json, ModuleSpec};
use witt_diamond::{scalar, Error, Result, Scalar};

#[derive(Parser)]
#[command(name = "witt-diamond", version, about = "Exact checks for modules over the Witt algebra extended by the loop Diamond algebra")]
struct Cli {
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled vectors.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Ab,
    Abgg,
}

#[derive(clap::Args)]
struct Policy {
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    #[arg(long, default_value_t = 1)]
    window: u32,
    #[arg(long, default_value_t = 30)]
    max_steps: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry and Jacobi identity of the bracket.
    VerifyBrackets {
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Homomorphism check and generator preimages for one of the two maps.
    VerifyHom {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "0")]
        gamma: String,
        /// Polynomial in t.
        #[arg(long, default_value = "0")]
        g: String,
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
    /// Apply a U(L) expression (e.g. "Q" or "b[0]*a[0] - 2*d[1]") to a vector.
    Act {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "1")]
        vector: String,
    },
    /// Simplicity certificates and closure oracle.
    Simplicity {
        #[arg(long)]
        module: PathBuf,
        #[command(flatten)]
        policy: Policy,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Generalized Vandermonde determinant sweep.
    DetLemma {
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_s: u32,
        #[arg(long, default_value_t = 2)]
        max_r: u32,
        /// Comma-separated distinct nonzero rationals.
        #[arg(long, default_value = "1,2,3,5,7,-2")]
        alphas: String,
    },
    /// U(H)-rank of an Omega module, or R_g of a tensor vector.
    Rank {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        vector: Option<String>,
    },
    /// Recognize a rank-one module from its structure functions.
    Classify {
        #[arg(long)]
        data: PathBuf,
    },
    /// Isomorphism test for Omega / tensor product specs.
    Iso {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Reduction certificate of a vector (Omega: to 1, T: to 1⊗…⊗1).
    Reduce {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        vector: String,
        /// Write the certificate list here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Recompute every step of saved certificates.
    Replay {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))
}

fn module(path: &PathBuf) -> Result<ModuleSpec> {
    ModuleSpec::from_str(&read(path)?)
}

fn parse_scalar(text: &str) -> Result<Scalar> {
    scalar::parse(text)
}

fn run(cli: &Cli) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::VerifyBrackets { window } => Ok(commands::verify_brackets(*window)),
        Command::VerifyHom { map, alpha, beta, gamma, g, window } => {
            let (a, b) = (parse_scalar(alpha)?, parse_scalar(beta)?);
            match map {
                MapKind::Ab => commands::verify_hom_ab(a, b, *window),
                MapKind::Abgg => {
                    let g = witt_diamond::poly::SparsePoly::parse(&witt_diamond::hom::t_signature(), g)?;
                    commands::verify_hom_abgg(a, b, parse_scalar(gamma)?, g, *window)
                }
            }
        }
        Command::Act { module: path, expr, vector } => commands::act(&module(path)?, expr, vector),
        Command::Simplicity { module: path, policy, samples } => {
            let policy = TruncationPolicy::new(policy.max_degree, policy.window, policy.max_steps)?;
            commands::simplicity(&module(path)?, policy, *samples, cli.seed, &mut rng)
        }
        Command::DetLemma { max_m, max_s, max_r, alphas } => {
            let alphas = alphas.split(',').map(|a| parse_scalar(a.trim())).collect::<Result<Vec<_>>>()?;
            commands::det_lemma(&alphas, *max_m, *max_s, *max_r)
        }
        Command::Rank { module: path, vector } => commands::rank(&module(path)?, vector.as_deref()),
        Command::Classify { data } => {
            let value: serde_json::Value =
                serde_json::from_str(&read(data)?).map_err(|e| Error::Schema { pointer: String::new(), message: e.to_string() })?;
            commands::classify(&action_data_from_json(&value)?)
        }
        Command::Iso { left, right } => commands::iso(&module(left)?, &module(right)?),
        Command::Reduce { module: path, vector, certificate } => {
            let cert = commands::reduce(&module(path)?, vector)?;
            if let Some(p) = certificate {
                let text = serde_json::to_string_pretty(&[&cert]).expect("certificate serializes");
                std::fs::write(p, text).map_err(|e| Error::InvalidSpec(format!("{}: {e}", p.display())))?;
            }
            let mut report = Report::new("reduce", None);
            let summary = format!("{} steps from {} to {}", cert.steps.len(), cert.start, cert.result);
            report.push("reduce", true, serde_json::json!({ "summary": summary })).certificate = vec![cert];
            Ok(report)
        }
        Command::Replay { module: path, certificate } => {
            let certs: Vec<Certificate> = serde_json::from_str(&read(certificate)?)
                .map_err(|e| Error::Schema { pointer: String::new(), message: format!("certificate file: {e}") })?;
            Ok(commands::replay(&module(path)?, &certs))
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::Schema { .. } | Error::Parse(_) | Error::InvalidSpec(_) | Error::VariableMismatch(_) | Error::UnsupportedVariable(_) | Error::AlgebraMismatch(_))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            if let Some(p) = &cli.out {
                if let Err(e) = std::fs::write(p, &json) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                println!("{json}");
            } else {
                print!("{}", report.summary());
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
