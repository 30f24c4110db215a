use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use folham::cli::{
    corpus, find_example, run_bracket, run_classify, run_cohomology, run_corpus, run_verify, Report, Spec, Theory,
};

#[derive(Parser)]
#[command(
    name = "folham",
    version,
    about = "Exact checks for hamiltonian structures on foliations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the structure, run the identity suite and pointwise image checks.
    Verify {
        spec: PathBuf,
        /// Write the JSON report to a file, or to stdout with `-`.
        #[arg(long)]
        json: Option<String>,
    },
    /// Classification only.
    Classify {
        spec: PathBuf,
        #[arg(long)]
        json: Option<String>,
    },
    /// Poisson bracket of two functions.
    Bracket {
        spec: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Use the extended bracket, defined for all functions when k = 0.
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// Truncated cohomology dimensions.
    Cohomology {
        spec: PathBuf,
        #[arg(long)]
        theory: Theory,
        #[arg(long)]
        k: usize,
        #[arg(long = "max-degree")]
        max_degree: u32,
        /// Print a basis of the kernel.
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: Option<String>,
    },
    /// The bundled examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the bundled examples.
    List,
    /// Verify every example and compare with its expected exit code.
    Run,
    /// Print an example's spec file.
    Show { name: String },
}

fn load(path: &Path) -> Result<Spec, ExitCode> {
    Spec::load(path).map_err(|e| {
        eprintln!("folham: {e}");
        ExitCode::from(2)
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &Report, json: Option<&str>) -> ExitCode {
    match json {
        Some("-") => out(&format!("{}\n", report.to_json())),
        Some(path) => {
            out(&report.render_text());
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("folham: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => out(&report.render_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    Ok(match cli.command {
        Command::Verify { spec, json } => emit(&run_verify(&load(&spec)?), json.as_deref()),
        Command::Classify { spec, json } => emit(&run_classify(&load(&spec)?), json.as_deref()),
        Command::Bracket {
            spec,
            f,
            g,
            extended,
            json,
        } => emit(&run_bracket(&load(&spec)?, &f, &g, extended), json.as_deref()),
        Command::Cohomology {
            spec,
            theory,
            k,
            max_degree,
            basis,
            json,
        } => emit(
            &run_cohomology(&load(&spec)?, theory, k, max_degree, basis),
            json.as_deref(),
        ),
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            for e in corpus() {
                let desc = e.spec().ok().and_then(|s| s.description).unwrap_or_default();
                out(&format!("{:<6} expect exit {}  {desc}\n", e.name, e.expected_exit));
            }
            ExitCode::SUCCESS
        }
        Command::Corpus {
            action: CorpusAction::Run,
        } => {
            let outcomes = run_corpus();
            for o in &outcomes {
                let status = if o.matches() { "ok" } else { "MISMATCH" };
                out(&format!(
                    "{:<6} exit {} (expected {})  {status}\n",
                    o.name, o.exit, o.expected_exit
                ));
            }
            if outcomes.iter().all(|o| o.matches()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Corpus {
            action: CorpusAction::Show { name },
        } => match find_example(&name) {
            Some(e) => {
                out(e.json);
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("folham: no example named '{name}'");
                ExitCode::from(2)
            }
        },
    })
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
