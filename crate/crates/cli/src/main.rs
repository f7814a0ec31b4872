//! `lierack`: verify Lie-Leibniz triples and finite rack triples, integrate
//! triples into local Lie racks, and run seeded corpora.

mod commands;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Family, Format, Input, IntegrateFlags, Rendered, STRUCTURAL};
use lierack::{Builtin, Scheme};

#[derive(Parser)]
#[command(name = "lierack", version, about = "Lie-Leibniz triples, racks and their local integration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable checker on a triple or rack specification.
    Verify(VerifyArgs),
    /// Build the local rack model of a triple and run the integration suites.
    Integrate(IntegrateArgs),
    /// Generate seeded triples or racks and check each one.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct Source {
    /// JSON specification file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// sl2-adjoint | scaling:<λ> | heisenberg-ideal | s3-conjugation
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Central,
    Richardson,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    /// Residual tolerance for every checker.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct IntegrateArgs {
    #[command(flatten)]
    source: Source,
    /// Radius r_U of the coordinate ball (default min(0.3, 0.6 × chart radius)).
    #[arg(long)]
    radius: Option<f64>,
    /// Finite-difference step (default 1e-4).
    #[arg(long)]
    step: Option<f64>,
    /// Samples per law suite (default 200).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Bound on the round-trip residual (default 1e-4).
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    All,
    StrictFromIdeal,
    Scaling,
    PerturbedInvalid,
    ConjugationRacks,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per family.
    #[arg(long, default_value_t = 5)]
    count: usize,
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    family: FamilyArg,
    /// Samples per law suite when integrating.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

fn load(source: &Source, tol: f64, format: Format) -> Result<(String, Input), Rendered> {
    let structural = |name: &str, msg: String| Rendered {
        code: STRUCTURAL,
        stdout: match format {
            Format::Json => format!(
                "{}\n",
                serde_json::to_string_pretty(&serde_json::json!({"source": name, "exit_code": STRUCTURAL, "error": msg}))
                    .expect("json")
            ),
            Format::Text => format!("source: {name}\nerror: {msg}\nexit_code: {STRUCTURAL}\n"),
        },
    };
    if let Some(name) = &source.builtin {
        let label = format!("builtin:{name}");
        return match name.parse::<Builtin>() {
            Ok(b) => Ok((label, commands::input_from_builtin(b))),
            Err(e) => Err(structural(&label, e.to_string())),
        };
    }
    let path = source.file.as_ref().expect("clap enforces a source");
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| structural(&label, format!("cannot read file: {e}")))?;
    let parsed = spec::parse(&text).map_err(|e| structural(&label, format!("parse error: {e}")))?;
    match commands::input_from_file(parsed, tol) {
        Ok(input) => Ok((label, input)),
        Err(e) => Err(Rendered { code: commands::exit_code(&e), ..structural(&label, e.to_string()) }),
    }
}

fn run(cli: Cli) -> Rendered {
    match cli.command {
        Command::Verify(a) => {
            let format = a.format.into();
            match load(&a.source, a.tolerance, format) {
                Ok((label, input)) => commands::verify(&label, input, a.tolerance, format),
                Err(r) => r,
            }
        }
        Command::Integrate(a) => {
            let format = a.format.into();
            let flags = IntegrateFlags {
                radius: a.radius,
                step: a.step,
                samples: a.samples,
                seed: a.seed,
                scheme: a.scheme.map(|s| match s {
                    SchemeArg::Central => Scheme::Central,
                    SchemeArg::Richardson => Scheme::Richardson,
                }),
                tolerance: a.tolerance,
            };
            match load(&a.source, lierack::default_tolerance(), format) {
                Ok((label, input)) => commands::integrate_input(&label, input, flags, format),
                Err(r) => r,
            }
        }
        Command::Corpus(a) => {
            let families: Vec<Family> = match a.family {
                FamilyArg::All => Family::ALL.to_vec(),
                FamilyArg::StrictFromIdeal => vec![Family::StrictFromIdeal],
                FamilyArg::Scaling => vec![Family::Scaling],
                FamilyArg::PerturbedInvalid => vec![Family::PerturbedInvalid],
                FamilyArg::ConjugationRacks => vec![Family::ConjugationRacks],
            };
            commands::corpus(&families, a.seed, a.count, a.samples, a.format.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(STRUCTURAL) } else { ExitCode::SUCCESS };
        }
    };
    let out = run(cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(out.code)
}
