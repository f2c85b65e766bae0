//! Command-line front end.
//!
//! Exit codes: 0 success, 2 argument error, 3 unsupported homological
//! degree. Reports go to stdout, diagnostics to stderr.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::ext::{compute_ext_basis, ExtOptions};
use crate::families::{stem_power, sweep_stu, SweepOptions, SweepResult};
use crate::pattern::{discover_patterns, render_theorem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "steenrod-ext", version, about = "Bases of Ext_A^{k,k+n}(Z/2, Z/2) for k <= 5")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Apply the general h-relations only from k = 3.
    #[arg(long, global = true)]
    pub paper_compat: bool,

    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of Ext_A^{k, k+n}.
    Basis {
        #[arg(long, allow_negative_numbers = true)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// The case n = 2^(s+1) - m, m in {2, 3}.
    SweepS {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Grid sweep over n = 2^(s+t+u) + 2^(s+t) + 2^s - 3.
    SweepStu {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        s_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        u_max: i64,
        /// Mine closed-form patterns and print the summary block.
        #[arg(long)]
        discover: bool,
    },
}

fn exit_for(err: &Error) -> i32 {
    match err {
        Error::UnsupportedRank(_) => EXIT_UNSUPPORTED,
        Error::Case { source, .. } => exit_for(source),
        _ => EXIT_USAGE,
    }
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    exit_for(e)
}

fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ext = ExtOptions {
        paper_compat: cli.paper_compat,
    };
    match cli.command {
        Command::Basis { k, n } => basis(k, n, cli.format, ext, out, err),
        Command::SweepS { k, s, m } => {
            let banner = "=".repeat(52);
            if cli.format == Format::Text {
                let _ = writeln!(out, "{banner}");
                let _ = writeln!(
                    out,
                    "Calculating for Case n = 2^{} - m with k={k}, s={s}, m={m}",
                    s + 1
                );
                let _ = writeln!(out, "{banner}\n");
            }
            if !(1..=5).contains(&k) {
                return fail(err, &Error::UnsupportedRank(k));
            }
            match stem_power(s, m) {
                Ok(n) => {
                    if cli.format == Format::Text {
                        let _ = writeln!(out, "----Case: n = 2^{} - {m} = {n} ----", s + 1);
                    }
                    basis(k, n as i64, cli.format, ext, out, err)
                }
                Err(Error::InvalidStem(n)) => {
                    let msg = format!("--- Skipping case because n = {n} is negative ---");
                    let _ = writeln!(err, "{msg}");
                    match cli.format {
                        Format::Text => {
                            let _ = writeln!(out, "{msg}");
                        }
                        Format::Json => {
                            let _ = write!(out, "{}", to_json_line(&json!({ "skipped": true, "n": n })));
                        }
                    }
                    EXIT_OK
                }
                Err(e) => fail(err, &e),
            }
        }
        Command::SweepStu {
            k,
            s_max,
            t_max,
            u_max,
            discover,
        } => {
            let bound = |v: i64| u32::try_from(v).ok().filter(|&v| v >= 1);
            let (Some(s_max), Some(t_max), Some(u_max)) = (bound(s_max), bound(t_max), bound(u_max))
            else {
                return fail(
                    err,
                    &Error::InvalidParameter("sweep bounds must be >= 1".to_string()),
                );
            };
            if !(1..=5).contains(&k) {
                return fail(err, &Error::UnsupportedRank(k));
            }
            if discover && k != 4 {
                return fail(
                    err,
                    &Error::InvalidParameter("--discover requires --k 4".to_string()),
                );
            }
            let _ = writeln!(err, "sweeping {} cases", s_max as u64 * t_max as u64 * u_max as u64);
            let options = SweepOptions { jobs: cli.jobs, ext };
            match sweep_stu(k, s_max, t_max, u_max, options) {
                Ok(result) => {
                    emit_sweep(&result, discover, cli.format, out);
                    EXIT_OK
                }
                Err(e) => fail(err, &e),
            }
        }
    }
}

fn basis(
    k: u32,
    n: i64,
    format: Format,
    ext: ExtOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match compute_ext_basis(k, n, ext) {
        Ok(report) => {
            match format {
                Format::Text => {
                    let _ = write!(out, "{}", report.render_text());
                }
                Format::Json => {
                    let _ = write!(out, "{}", to_json_line(&report.to_json()));
                }
            }
            EXIT_OK
        }
        Err(e) => fail(err, &e),
    }
}

fn emit_sweep(result: &SweepResult, discover: bool, format: Format, out: &mut dyn Write) {
    let patterns = discover.then(|| discover_patterns(&result.one_dimensional()));
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(result).expect("serializable");
            if let Some(p) = &patterns {
                value["patterns"] = serde_json::to_value(p).expect("serializable");
            }
            let _ = write!(out, "{}", to_json_line(&value));
        }
        Format::Text => {
            if let Some(patterns) = &patterns {
                let _ = writeln!(out, "Starting the computation of Ext^{{4, 4+n}}_A...");
                let _ = writeln!(
                    out,
                    "Case n = n_{{s,t,u}} = 2^{{s+t+u}} + 2^{{s+t}} + 2^{{s}} - 3, for s, t, u >= 1"
                );
                let _ = write!(
                    out,
                    "{}",
                    render_theorem(
                        patterns,
                        result.totals.cases,
                        result.s_max,
                        result.t_max,
                        result.u_max
                    )
                );
                let _ = writeln!(out, "\nComputation successfully completed!");
            } else {
                for c in &result.cases {
                    let reps = if c.representatives.is_empty() {
                        "0".to_string()
                    } else {
                        c.representatives.join(", ")
                    };
                    let _ = writeln!(
                        out,
                        "(s={}, t={}, u={}) n={} dim={} -> {reps}",
                        c.s, c.t, c.u, c.n, c.dimension
                    );
                }
                let _ = writeln!(
                    out,
                    "Computed {} cases, {} nonzero.",
                    result.totals.cases, result.totals.nonzero
                );
            }
        }
    }
}
