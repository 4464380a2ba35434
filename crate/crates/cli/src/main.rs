mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hirzebruch::verify::Fault;
use hirzebruch::Error;

use crate::render::Rendered;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Exact invariants of rank-two bundles on Hirzebruch surfaces and their scrolls.
#[derive(Debug, Parser)]
#[command(name = "hirzebruch", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Write output to PATH instead of stdout.
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scroll invariants, uniformity and cohomology for one member.
    #[command(allow_negative_numbers = true)]
    Report {
        #[arg(short)]
        e: i64,
        #[arg(short)]
        b: i64,
        #[arg(short)]
        t: i64,
    },
    /// Uniformity evidence: r, ℓ-values and splitting type.
    #[command(allow_negative_numbers = true)]
    Uniformity {
        #[arg(short)]
        e: i64,
        #[arg(short)]
        b: i64,
        #[arg(short)]
        t: i64,
    },
    /// Hilbert polynomial of the scroll, optionally evaluated.
    #[command(allow_negative_numbers = true)]
    Hilbpoly {
        #[arg(short)]
        e: i64,
        #[arg(short)]
        b: i64,
        #[arg(short)]
        t: i64,
        /// Evaluate P at these values.
        #[arg(long = "at", value_name = "M")]
        at: Vec<i64>,
    },
    /// Hilbert-scheme component through the scroll with b = 2e+3+t.
    #[command(allow_negative_numbers = true)]
    Hilbert {
        #[arg(short)]
        e: i64,
        #[arg(short)]
        t: i64,
        /// Use this b instead of 2e+3+t.
        #[arg(long = "force-b", value_name = "B")]
        force_b: Option<i64>,
    },
    /// Cohomology of the line bundle aC0 + cf on F_e.
    #[command(allow_negative_numbers = true)]
    Cohomology {
        #[arg(short)]
        e: i64,
        #[arg(short)]
        a: i64,
        #[arg(short)]
        c: i64,
    },
    /// One row per valid (e, b, t) with e ≤ e_max, t ≤ t_max.
    #[command(allow_negative_numbers = true)]
    Table {
        #[arg(long = "e-max")]
        e_max: i64,
        #[arg(long = "t-max")]
        t_max: i64,
        #[arg(long = "paper-regime-only")]
        paper_regime_only: bool,
    },
    /// Run the identity suite over the grid.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long = "e-max")]
        e_max: i64,
        #[arg(long = "t-max")]
        t_max: i64,
        #[arg(long = "inject-fault", value_name = "FAULT", hide = true)]
        inject_fault: Option<Fault>,
    },
}

fn dispatch(cli: &Cli) -> Result<Rendered, Error> {
    let format = cli.format;
    match cli.command {
        Command::Report { e, b, t } => render::report(e, b, t, format),
        Command::Uniformity { e, b, t } => render::uniformity(e, b, t, format),
        Command::Hilbpoly { e, b, t, ref at } => render::hilbpoly(e, b, t, at, format),
        Command::Hilbert { e, t, force_b } => render::hilbert(e, t, force_b, format),
        Command::Cohomology { e, a, c } => render::cohomology(e, a, c, format),
        Command::Table {
            e_max,
            t_max,
            paper_regime_only,
        } => render::table(e_max, t_max, paper_regime_only, format),
        Command::Verify {
            e_max,
            t_max,
            inject_fault,
        } => render::verify(e_max, t_max, inject_fault, format),
    }
}

fn emit(body: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // usage errors share the invalid-input code
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    match dispatch(&cli) {
        Ok(rendered) => {
            if let Err(err) = emit(&rendered.body, cli.out.as_ref()) {
                eprintln!("error: cannot write output: {err}");
                return ExitCode::from(1);
            }
            match rendered.status {
                Some(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(err.exit_code() as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
