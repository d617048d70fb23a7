use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tracelab::commands::{self, CliError, Outcome};
use tracelab::complexfile::write_complex;
use tracelab::render::render_text;
use tracelab::report::{Envelope, Report, ToolInfo, SCHEMA_VERSION};
use tracelab_core::covers::{build_finite_cover, presentation_complex, CoverSpec};
use tracelab_core::subgroups::SubgroupKind;

/// Trace polynomials, essential representations, subgroup presentations and
/// cover homology for generalised triangle groups <x, y | x^3, y^5, W^2>.
#[derive(Parser, Debug)]
#[command(name = "tracelab", version)]
struct Cli {
    /// Seed for randomised checks.
    #[arg(long, global = true, env = "TRACELAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Emit the JSON report instead of its text rendering.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    C,
    V,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace polynomial, root classification and verdict for one word.
    Analyze {
        word: String,
        /// Add representations, the index-30 presentation and jet checks.
        #[arg(long)]
        deep: bool,
    },
    /// Classify every word with 1 <= k <= kmax syllables.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        /// Include one line per word.
        #[arg(long)]
        list: bool,
    },
    /// Check the edge-midpoint lattice statements; exits 1 if any fails.
    VerifyLemma2,
    /// Reidemeister-Schreier presentation of the preimage of C or V.
    Subgroup {
        word: String,
        /// Exceptional root (0, 1, phi, phi-1); defaults to the first root of tau.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::C)]
        kind: Kind,
        /// Write the presentation in the presentation file format.
        #[arg(long)]
        write_presentation: Option<PathBuf>,
    },
    /// Z_n x Z_n covers of a presentation complex and their F_2 homology.
    Cover {
        #[arg(long)]
        presentation_file: PathBuf,
        /// Moduli, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        n: Vec<u64>,
        /// Assignment `name=u,v;name=u,v` to Z^2, reduced mod n.
        #[arg(long)]
        assign: Option<String>,
        /// Emit the growth table as CSV.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Write the cover of K at the first modulus as an edge list.
        #[arg(long)]
        export_edges: Option<PathBuf>,
    },
    /// Dual-number checks of the multiple-root criterion.
    JetsCheck {
        #[arg(long, default_value = "xy")]
        word: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn command_line() -> Vec<String> {
    std::iter::once("tracelab".to_string()).chain(std::env::args().skip(1)).collect()
}

fn emit(envelope: &Envelope, json: bool) -> std::io::Result<()> {
    let value = serde_json::to_value(envelope).map_err(std::io::Error::other)?;
    let mut out = std::io::stdout().lock();
    if json {
        let text = serde_json::to_string_pretty(&value).map_err(std::io::Error::other)?;
        writeln!(out, "{text}")
    } else {
        write!(out, "{}", render_text(&value))
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mut csv = None;
    let outcome: Outcome = match &cli.command {
        Command::Analyze { word, deep } => commands::analyze(word, *deep, cli.seed)?,
        Command::Enumerate { kmax, list } => commands::enumerate(*kmax, *list)?,
        Command::VerifyLemma2 => commands::verify_lemma2()?,
        Command::Subgroup { word, alpha, kind, write_presentation } => {
            let kind = match kind {
                Kind::C => SubgroupKind::C,
                Kind::V => SubgroupKind::V,
            };
            let (o, p) = commands::subgroup(word, alpha.as_deref(), kind)?;
            if let Some(path) = write_presentation {
                std::fs::write(path, commands::subgroup_presentation_file(&p, word))?;
            }
            o
        }
        Command::Cover { presentation_file, n, assign, csv: want_csv, export_edges } => {
            let text = std::fs::read_to_string(presentation_file)?;
            let c = commands::cover(&text, n, assign.as_deref())?;
            if let Some(path) = export_edges {
                let k = presentation_complex(&c.presentation.presentation);
                let spec = CoverSpec::from_integer(n[0], &c.assignment);
                let cover = build_finite_cover(&k, &spec).map_err(|e| CliError::Input(e.to_string()))?;
                std::fs::write(path, write_complex(&cover.complex))?;
            }
            if *want_csv {
                if let Report::Cover(r) = &c.outcome.report {
                    csv = Some(commands::cover_csv(r));
                }
            }
            c.outcome
        }
        Command::JetsCheck { word, samples } => commands::jets_check(word, *samples, cli.seed)?,
    };
    let passed = outcome.passed;
    if let Some(text) = csv {
        print!("{text}");
    } else {
        let envelope = Envelope {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::current(),
            command_line: command_line(),
            seed: cli.seed,
            passed,
            result: outcome.report,
        };
        emit(&envelope, cli.json)?;
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
