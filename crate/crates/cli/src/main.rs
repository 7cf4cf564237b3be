use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nijenhuis_cli::{build, decompose, describe, emit, fragment, load_manifest, run_all, to_json, torsion_report};
use nijenhuis_cli::{Format, Manifest, Settings};

#[derive(Parser)]
#[command(
    name = "nijenhuis",
    version,
    about = "Exact checks of Frölicher–Nijenhuis identities and Lie algebroid constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Seed for random probe fields, overriding the manifest.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Polynomial degree of random probe fields, overriding the manifest.
    #[arg(long, global = true)]
    probe_degree: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check listed in a manifest.
    Verify { manifest: PathBuf },
    /// Nijenhuis torsion of one endomorphism, pair by pair.
    Torsion { manifest: PathBuf, endo: String },
    /// Split a derivation, or an algebroid's de Rham operator, into `𝓛_K + ι_L`.
    Decompose { manifest: PathBuf, derivation: String },
    /// Build an algebroid (`idempotent:N`, `complex:J`, `product:P`,
    /// `foliation:G`, `invertible:K`, `connection:S`, `algebroid:A`) and
    /// print it as a manifest fragment.
    Build { manifest: PathBuf, construction: String },
}

fn settings(cli: &Cli, m: &Manifest) -> Settings {
    let base = Settings::from_manifest(m);
    Settings { seed: cli.seed.unwrap_or(base.seed), probe_degree: cli.probe_degree.unwrap_or(base.probe_degree) }
}

fn load(path: &Path) -> Result<Manifest, ExitCode> {
    load_manifest(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    match &cli.command {
        Command::Verify { manifest } => {
            let m = load(manifest)?;
            let report = run_all(&m, settings(cli, &m));
            print!("{}", emit(&report, cli.format));
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Torsion { manifest, endo } => {
            let m = load(manifest)?;
            let report = torsion_report(&m, endo, settings(cli, &m)).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            print!("{}", emit(&report, cli.format));
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Decompose { manifest, derivation } => {
            let m = load(manifest)?;
            let d = decompose(&m, derivation).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            match cli.format {
                Format::Json => print!("{}", to_json(&fragment(derivation, &d.k, &d.l))),
                Format::Text => print!("{}", describe(derivation, &d.k, &d.l)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Build { manifest, construction } => {
            let m = load(manifest)?;
            let (id, alg) = build(&m, construction).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            match cli.format {
                Format::Json => print!("{}", to_json(&fragment(&id, alg.anchor(), alg.correction()))),
                Format::Text => print!("{}", describe(&id, alg.anchor(), alg.correction())),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).unwrap_or_else(|code| code)
}
