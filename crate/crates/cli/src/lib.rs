//! Command-line front end for `fmcurves`.
//!
//! Exit codes: 0 success, 1 input error, 2 failed mathematical check.

pub mod kernel_file;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use fmcurves::checks::{self, DEFAULT_SEED};
use fmcurves::{catalog_kernel, fm, CatalogName, CatalogParams, KernelClass};

use crate::kernel_file::{emit_kernel, parse_kernel_file};
use crate::report::{verdict, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fmcurves", version, about = "Numerical Fourier-Mukai calculus for curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the induced maps and equivalence flags of a kernel.
    Analyze {
        file: PathBuf,
        /// Emit a canonical JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Convolve two kernels: the transform of A followed by that of B.
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kernel of the left or right adjoint transform.
    Adjoint {
        side: Side,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare numerical equivalence with the Jacobian criterion.
    Check { file: PathBuf },
    /// Emit a named kernel, or list the available names.
    Catalog {
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        genus_target: Option<usize>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist_source: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist_target: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the randomized invariant suites.
    Selftest {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<KernelClass, Failure> {
    parse_kernel_file(path).map_err(|e| input_error(e.to_string()))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| input_error(format!("cannot write output: {e}")))
}

fn emit(kernel: &KernelClass, target: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let text = emit_kernel(kernel);
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?,
        None => write_out(stdout, &text)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze { file, json } => {
            let report = Report::new(&load(&file)?);
            let text = if json { report.render_json() } else { report.render_text() };
            write_out(stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Convolve { a, b, output } => {
            let e = fm::convolve(&load(&a)?, &load(&b)?).map_err(|e| input_error(e.to_string()))?;
            emit(&e, output.as_deref(), stdout)
        }
        Command::Adjoint { side, file, output } => {
            let e = load(&file)?;
            let adj = match side {
                Side::Left => fm::left_adjoint(&e),
                Side::Right => fm::right_adjoint(&e),
            };
            emit(&adj, output.as_deref(), stdout)
        }
        Command::Check { file } => {
            let e = load(&file)?;
            write_out(stdout, &format!("{}\n", verdict(&e)))?;
            Ok(if fm::torelli_report(&e).consistent { EXIT_OK } else { EXIT_CHECK })
        }
        Command::Catalog {
            emit: name,
            genus,
            genus_target,
            twist_source,
            twist_target,
            output,
        } => {
            let Some(name) = name else {
                let names: Vec<&str> = CatalogName::ALL.iter().map(CatalogName::as_str).collect();
                write_out(stdout, &format!("{}\n", names.join("\n")))?;
                return Ok(EXIT_OK);
            };
            let params = CatalogParams {
                genus,
                genus_target,
                twist_source,
                twist_target,
            };
            let entry = catalog_kernel(&name, &params).map_err(|e| input_error(e.to_string()))?;
            emit(&entry.kernel, output.as_deref(), stdout)
        }
        Command::Selftest { trials, seed } => {
            let outcomes = checks::run_selftest(trials, seed);
            let mut failed = false;
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                write_out(stdout, &format!("{status} {:<18} {} checks, {} failures\n", o.name, o.trials, o.failures.len()))?;
                for f in o.failures.iter().take(3) {
                    write_out(stdout, &format!("    {f}\n"))?;
                }
                failed |= !o.passed();
            }
            write_out(stdout, &format!("seed {seed}, {trials} trials per suite\n"))?;
            Ok(if failed { EXIT_CHECK } else { EXIT_OK })
        }
    }
}
