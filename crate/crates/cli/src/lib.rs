//! Command-line front end for `wavenum`.

pub mod commands;
pub mod eval;
pub mod expr;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wavenum::integral::Side;
use wavenum::{Precision, Tolerance};

use crate::commands::Output;
use crate::eval::{EvalError, Evaluator};
use crate::expr::{Expr, SyntaxError};

#[derive(Debug, Parser)]
#[command(name = "wavenum", version, about = "Arithmetic of rational wave numbers")]
pub struct Cli {
    /// Sampling precision for wave numbers.
    #[arg(long, global = true, value_enum, default_value = "double")]
    pub precision: PrecisionArg,
    /// Zero tolerance for divisions, root detection and zero-sum checks.
    #[arg(long, global = true, default_value_t = 1e-9, allow_negative_numbers = true)]
    pub tol: f64,
    /// Emit JSON on stdout, and errors as one JSON line on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PrecisionArg {
    Double,
    High,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Polar form A·w(f,g) of a sum of wave-number terms.
    Polar {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Orthogonal (or orthonormal) phase basis of size n.
    Basis {
        n: usize,
        #[arg(long)]
        orthonormal: bool,
        /// Also build the basis from translated wave numbers and report the deviation.
        #[arg(long)]
        construct: bool,
    },
    /// Cumulative phase sums of an expression.
    Integral {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Recursive n-gon construction for t iterations.
    Ngon { n: usize, t: usize },
    /// Particulate wave number with support ±n over [-W, W].
    Particulate {
        n: u64,
        window: u64,
        #[arg(long, default_value_t = 1)]
        scale: u64,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Primes up to a limit via cumulative co-number products.
    Sieve {
        limit: u64,
        #[arg(long)]
        trace_csv: Option<PathBuf>,
    },
    /// Largest identifiable prime after each of k iterations.
    Frontier { k: usize },
    /// Fixed points of (Aω+B)/(Cω+D); each argument is an expression.
    SolveMobius {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// First terms w(f1,g1) with w(f1,g1) + w(f2,g2) = 0.
    SolveTwo {
        #[arg(allow_hyphen_values = true)]
        f2: String,
        #[arg(allow_hyphen_values = true)]
        g2: String,
    },
    /// Factored zero conditions of a 3- to 8-term sum.
    SolveSum {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Syntax(SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Lib(wavenum::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn domain(e: &Expr, source: wavenum::Error) -> Self {
        CliError::Eval(EvalError { context: e.to_string(), source })
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Syntax(_) => 2,
            CliError::Eval(_) | CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let body = match self {
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Syntax(s) => json!({
                "kind": "syntax",
                "message": s.to_string(),
                "offset": s.offset,
                "column": s.column(),
                "expected": s.expected,
            }),
            CliError::Eval(e) => json!({ "kind": "domain", "message": e.to_string(), "context": e.context }),
            CliError::Lib(e) => json!({ "kind": "domain", "message": e.to_string() }),
            CliError::Io(m) => json!({ "kind": "io", "message": m }),
        };
        json!({ "error": body })
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::Usage(format!("--tol must be finite and >= 0, got {}", cli.tol)));
    }
    let precision = match cli.precision {
        PrecisionArg::Double => Precision::Double,
        PrecisionArg::High => Precision::High,
    };
    let tol = Tolerance::new(cli.tol, cli.tol).map_err(|e| CliError::Usage(e.to_string()))?;
    let ev = Evaluator::new(precision, tol);
    match &cli.command {
        Command::Eval { expr } => commands::eval(&ev, expr),
        Command::Polar { expr } => commands::polar(&ev, expr),
        Command::Basis { n, orthonormal, construct } => commands::basis(&ev, *n, *orthonormal, *construct),
        Command::Integral { expr } => commands::integral(&ev, expr),
        Command::Ngon { n, t } => commands::ngon(*n, *t),
        Command::Particulate { n, window, scale, side } => {
            let side = side.map(|s| match s {
                SideArg::Plus => Side::Plus,
                SideArg::Minus => Side::Minus,
            });
            commands::particulate(*n, *window, *scale, side)
        }
        Command::Sieve { limit, trace_csv } => commands::sieve(*limit, trace_csv.as_deref()),
        Command::Frontier { k } => commands::frontier(*k),
        Command::SolveMobius { a, b, c, d } => commands::solve_mobius(&ev, [a, b, c, d]),
        Command::SolveTwo { f2, g2 } => commands::solve_two(f2, g2),
        Command::SolveSum { expr } => commands::solve_sum(&ev, expr),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if json_mode {
                let rendered = e.to_string();
                let message = rendered
                    .lines()
                    .take_while(|l| !l.trim().is_empty())
                    .map(str::trim)
                    .collect::<Vec<_>>()
                    .join(" ");
                let message = message.trim_start_matches("error: ");
                let line = json!({ "error": { "kind": "usage", "message": message } });
                let _ = writeln!(err, "{line}");
            } else {
                let _ = write!(err, "{e}");
            }
            return 2;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.json);
            } else {
                let _ = writeln!(out, "{}", o.text);
            }
            0
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(err, "{}", e.to_json());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}
