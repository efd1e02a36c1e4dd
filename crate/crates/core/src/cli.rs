//! The `cookmodel` command line.
//!
//! Exit codes: 0 success, 1 parse or validation diagnostics, 2 usage errors
//! (bad flags, unreadable input, unwritable output). Nothing is written to
//! standard output when the exit code is non-zero.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{affordability_report, compare_reports};
use crate::io::{emit, load_scenario, Built, Diagnostic, Format};
use crate::scenario::Scenario;

#[derive(Debug, Parser)]
#[command(
    name = "cookmodel",
    version,
    about = "Energy, CO₂ and cost scenarios for household cooking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a scenario file.
    Validate { file: PathBuf },
    /// Evaluate one scenario.
    Run {
        file: PathBuf,
        /// national | household:<appliance> | mix | affordability
        #[arg(long, default_value = "national", value_parser = parse_selector)]
        report: Selector,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare an alternative scenario against a reference one. Deltas and
    /// ratios are alternative relative to reference; subsidy savings and
    /// emission reduction are reference minus alternative.
    Compare {
        reference: PathBuf,
        alternative: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the generation-mix table of a scenario.
    Mix {
        file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// table | csv | structured
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
enum Selector {
    National,
    Household(String),
    Mix,
    Affordability,
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    match s {
        "national" => Ok(Selector::National),
        "mix" => Ok(Selector::Mix),
        "affordability" => Ok(Selector::Affordability),
        _ => match s.strip_prefix("household:") {
            Some(name) if !name.is_empty() => Ok(Selector::Household(name.to_string())),
            _ => Err("expected national, household:<appliance>, mix or affordability".to_string()),
        },
    }
}

/// Why a command did not produce a report.
enum Failure {
    Usage(String),
    Diagnostics(String),
}

struct Context {
    color: bool,
    warnings: String,
}

impl Context {
    fn load(&mut self, path: &Path) -> Result<Scenario, Failure> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read `{shown}`: {e}")))?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".into());
        match load_scenario(&text, &stem) {
            Ok(Built { scenario, warnings }) => {
                self.warnings.push_str(&render_all(&warnings, &shown, self.color));
                Ok(scenario)
            }
            Err(diags) => Err(Failure::Diagnostics(render_all(&diags, &shown, self.color))),
        }
    }
}

fn render_all(diags: &[Diagnostic], file: &str, color: bool) -> String {
    diags.iter().map(|d| d.render(file, color)).collect()
}

fn model_failure(e: crate::error::ModelError) -> Failure {
    Failure::Diagnostics(format!("error: {e}\n"))
}

/// Runs the command line; `stderr_is_terminal` enables styled diagnostics
/// unless `COOKMODEL_NO_COLOR` is set.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, stderr_is_terminal: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let mut ctx = Context {
        color: stderr_is_terminal && std::env::var_os("COOKMODEL_NO_COLOR").is_none(),
        warnings: String::new(),
    };
    let result = execute(cli.command, &mut ctx);
    let _ = stderr.write_all(ctx.warnings.as_bytes());
    match result {
        Ok((text, None)) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write `{}`: {e}", path.display());
                2
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Diagnostics(text)) => {
            let _ = stderr.write_all(text.as_bytes());
            1
        }
    }
}

fn execute(command: Command, ctx: &mut Context) -> Result<(String, Option<PathBuf>), Failure> {
    match command {
        Command::Validate { file } => {
            let s = ctx.load(&file)?;
            Ok((
                format!(
                    "{}: ok ({} sources, {} appliances, {} households)\n",
                    file.display(),
                    s.mix.sources().len(),
                    s.appliances.len(),
                    s.demographics.households
                ),
                None,
            ))
        }
        Command::Run { file, report, out } => {
            let s = ctx.load(&file)?;
            let text = match report {
                Selector::National => emit(&s.evaluate().map_err(model_failure)?, out.format),
                Selector::Household(name) => emit(&s.household_report(&name).map_err(model_failure)?, out.format),
                Selector::Mix => emit(&s.mix.report().map_err(model_failure)?, out.format),
                Selector::Affordability => emit(&affordability_report(&s).map_err(model_failure)?, out.format),
            };
            Ok((text, out.output))
        }
        Command::Compare {
            reference,
            alternative,
            out,
        } => {
            let a = ctx.load(&reference)?.evaluate().map_err(model_failure)?;
            let b = ctx.load(&alternative)?.evaluate().map_err(model_failure)?;
            Ok((emit(&compare_reports(&a, &b), out.format), out.output))
        }
        Command::Mix { file, out } => {
            let s = ctx.load(&file)?;
            Ok((emit(&s.mix.report().map_err(model_failure)?, out.format), out.output))
        }
    }
}
