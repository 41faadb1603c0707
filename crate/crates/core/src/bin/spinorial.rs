use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinorial::report::{execute, Command, IdealSource, Report};
use spinorial::text::{parse_generators, parse_multivector, parse_signature};
use spinorial::{Error, Signature};

#[derive(Parser)]
#[command(
    name = "spinorial",
    version,
    about = "Exact Clifford algebra idempotents and U(n)-structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SigArg {
    /// Signature as P,Q.
    #[arg(long, value_parser = sig_parser)]
    signature: Signature,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matrix algebra, k and minimal ideal dimension of R_{p,q}.
    Classify(SigArg),
    /// Primitive idempotent and left ideal basis.
    Ideal {
        #[command(flatten)]
        sig: SigArg,
        /// U(n) structure, written uN.
        #[arg(
            long,
            conflicts_with = "generators",
            required_unless_present = "generators"
        )]
        structure: Option<String>,
        /// Commuting involutive blades, e.g. e13,e24.
        #[arg(long)]
        generators: Option<String>,
    },
    /// Projection decomposition for signatures outside (p,p), (p,p+1), (p,p+2).
    Project(SigArg),
    /// Recover omega and J from an idempotent stored in FILE.
    Recover {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_name = "FILE")]
        idempotent: PathBuf,
    },
    /// Verify an idempotent stored in FILE.
    Verify {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_name = "FILE")]
        idempotent: PathBuf,
    },
    /// Kahler polynomial of the standard form on R^{2n}.
    Kahler {
        #[arg(long)]
        n: usize,
        /// Divide by 2^n.
        #[arg(long)]
        rational: bool,
    },
}

fn sig_parser(s: &str) -> Result<Signature, String> {
    parse_signature(s).map_err(|e| e.to_string())
}

fn parse_structure(s: &str) -> Result<usize, String> {
    s.strip_prefix('u')
        .or_else(|| s.strip_prefix('U'))
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| format!("structure must look like uN, got '{s}'"))
}

fn read_multivector(path: &PathBuf, sig: Signature) -> Result<spinorial::Multivector, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_multivector(&text, sig).map_err(|e| format!("{}: {e}", path.display()))
}

fn build(cmd: Cmd) -> Result<Command, String> {
    Ok(match cmd {
        Cmd::Classify(a) => Command::Classify { sig: a.signature },
        Cmd::Ideal {
            sig,
            structure,
            generators,
        } => {
            let sig = sig.signature;
            let source = match (structure, generators) {
                (Some(s), _) => IdealSource::Structure(parse_structure(&s)?),
                (None, Some(g)) => {
                    IdealSource::Generators(parse_generators(&g, sig).map_err(|e| e.to_string())?)
                }
                (None, None) => return Err("one of --structure or --generators is required".into()),
            };
            Command::Ideal { sig, source }
        }
        Cmd::Project(a) => Command::Project { sig: a.signature },
        Cmd::Recover { sig, idempotent } => Command::Recover {
            sig: sig.signature,
            idempotent: read_multivector(&idempotent, sig.signature)?,
        },
        Cmd::Verify { sig, idempotent } => Command::Verify {
            sig: sig.signature,
            idempotent: read_multivector(&idempotent, sig.signature)?,
        },
        Cmd::Kahler { n, rational } => Command::Kahler { n, rational },
    })
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(cli.command).and_then(|c| execute(&c).map_err(|e: Error| e.to_string()));
    let report = match result {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::FAILURE;
        }
    };
    let out = render(&report, cli.format);
    match cli.output {
        Some(path) => {
            if let Err(e) = fs::write(&path, out) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{out}"),
    }
    ExitCode::SUCCESS
}
