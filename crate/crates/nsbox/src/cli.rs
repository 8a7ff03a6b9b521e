//! The `nsbox` command-line front end.
//!
//! Commands consume a box from a file or from the generator spec
//! `isotropic:N:E` and emit machine-readable reports, either as pretty
//! JSON (`text`) or as CSV rows with floats at 12 significant digits.
//! Exit status is a stable scripting contract: 0 when the computation
//! succeeds and every checked property holds, 1 on a semantic violation
//! (a box that signals where it must not), 2 on unreadable or malformed
//! input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::boxes::{Bias, ConditionalBox, NoSignalingReport};
use crate::error::{Error, Result};
use crate::icgame::{
    concatenated_rac_analytic, end_to_end_multipartite_ic, ic_violation_scan,
    tripartite_guess_game, ICGameResult,
};
use crate::svetlichny::{evaluate, SvetlichnyReport};
use crate::wiring::{merge_parties, GroupSplit};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nsbox",
    version,
    about = "No-signaling boxes, Svetlichny functionals, and information-causality games"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Pretty-printed JSON.
    Text,
    /// One header line plus data rows, floats at 12 significant digits.
    Csv,
}

/// Flags shared by every command.
#[derive(Debug, Args)]
pub struct Common {
    /// Tolerance for normalization and no-signaling checks.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Random seed. Every current command computes exactly; the flag is
    /// part of the stable interface so configs can carry one.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output format; defaults to text, except for sweep which emits CSV.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check normalization and no-signaling; exit 0 only if both hold.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Box file path or generator spec "isotropic:N:E".
        #[arg(long = "box")]
        box_source: String,
    },
    /// Evaluate the Svetlichny functional in probability and correlator form.
    Svetlichny {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box")]
        box_source: String,
    },
    /// Play the tripartite guessing game (the box must have 3 parties), or,
    /// with --depth, run the merge-restrict-concatenate pipeline on an
    /// isotropic generator box.
    Icgame {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box")]
        box_source: String,
        /// Left block size for the pipeline; used only with --depth.
        #[arg(long, default_value_t = 1)]
        split: usize,
        /// Concatenation depth: switch from the guessing game to the
        /// pipeline (requires an "isotropic:N:E" box spec).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Merge the left k parties and the rest into an effective bipartite box.
    Merge {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box")]
        box_source: String,
        /// Size of the left block, 1 <= k < N.
        #[arg(long)]
        split: usize,
    },
    /// Scan bias values for the smallest RAC depth that breaks information
    /// causality.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated bias values in [0, 1].
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<f64>,
        /// Largest depth to try per bias value.
        #[arg(long, default_value_t = 25)]
        kmax: usize,
    },
}

/// One line of sweep output: the threshold depth for one bias value, with
/// the success probability and Fano information at that depth (at `kmax`
/// when no depth violates).
#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub e: f64,
    pub k: Option<usize>,
    pub p: f64,
    pub i_fano: f64,
    pub violates: bool,
}

/// Parse and run the process arguments; returns the exit status.
pub fn run() -> i32 {
    let config = RunConfig::parse();
    match execute(&config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

/// Exit status for a failed run: signaling boxes are semantic violations,
/// everything else is an input problem.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::SignalingBox { .. } => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

pub fn execute(config: &RunConfig) -> Result<i32> {
    match &config.command {
        Command::Verify { common, box_source } => {
            let b = load_box(box_source)?;
            let report = b.verify_no_signaling(common.tol);
            emit(
                common,
                OutputFormat::Text,
                &report,
                Some(verify_csv(&report)),
            )?;
            Ok(if report.normalized && report.no_signaling {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Svetlichny { common, box_source } => {
            let b = load_box(box_source)?;
            let report = evaluate(&b);
            emit(
                common,
                OutputFormat::Text,
                &report,
                Some(svetlichny_csv(&report)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Icgame {
            common,
            box_source,
            split,
            depth,
        } => {
            let result = match depth {
                None => tripartite_guess_game(&load_box(box_source)?)?,
                Some(depth) => {
                    let (n, bias) = parse_isotropic_spec(box_source)?;
                    end_to_end_multipartite_ic(n, bias, *split, *depth)?
                }
            };
            emit(
                common,
                OutputFormat::Text,
                &result,
                Some(icgame_csv(&result)),
            )?;
            Ok(EXIT_OK)
        }
        Command::Merge {
            common,
            box_source,
            split,
        } => {
            let b = load_box(box_source)?;
            let merged = merge_parties(&b, GroupSplit::new(b.n_parties(), *split)?)?;
            emit(common, OutputFormat::Text, &merged, None)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { common, grid, kmax } => {
            let rows = sweep_rows(grid, *kmax)?;
            emit(common, OutputFormat::Csv, &rows, Some(sweep_csv(&rows)))?;
            Ok(EXIT_OK)
        }
    }
}

/// Load a box from a file path or build it from `isotropic:N:E`.
pub fn load_box(source: &str) -> Result<ConditionalBox> {
    if source.starts_with("isotropic:") {
        let (n, bias) = parse_isotropic_spec(source)?;
        return ConditionalBox::isotropic(n, bias);
    }
    Ok(serde_json::from_str(&fs::read_to_string(source)?)?)
}

/// Parse the generator spec "isotropic:N:E" into its parameters.
pub fn parse_isotropic_spec(source: &str) -> Result<(usize, Bias)> {
    let bad = || Error::BadBoxSource(source.to_string());
    let spec = source.strip_prefix("isotropic:").ok_or_else(bad)?;
    let (n_text, e_text) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n_text.parse().map_err(|_| bad())?;
    let e: f64 = e_text.parse().map_err(|_| bad())?;
    Ok((n, Bias::new(e)?))
}

/// Compute the sweep table for a bias grid.
pub fn sweep_rows(grid: &[f64], kmax: usize) -> Result<Vec<SweepRow>> {
    grid.iter()
        .map(|&e| {
            let bias = Bias::new(e)?;
            let found = ic_violation_scan(bias, kmax);
            let level = concatenated_rac_analytic(bias, found.unwrap_or(kmax.max(1)))?;
            Ok(SweepRow {
                e,
                k: found,
                p: level.per_bit_success,
                i_fano: level.fano_information(),
                violates: found.is_some(),
            })
        })
        .collect()
}

fn emit(
    common: &Common,
    default_format: OutputFormat,
    payload: &impl Serialize,
    csv: Option<String>,
) -> Result<()> {
    let format = common.format.unwrap_or(default_format);
    let rendered = match format {
        OutputFormat::Text => {
            let mut text = serde_json::to_string_pretty(payload)?;
            text.push('\n');
            text
        }
        OutputFormat::Csv => csv.ok_or(Error::Unsupported("this command has no CSV form"))?,
    };
    match &common.out {
        Some(path) => fs::write(path, rendered.as_bytes())?,
        None => io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

/// Format with 12 significant digits; the CSV contract for floats.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn verify_csv(report: &NoSignalingReport) -> String {
    format!(
        "normalized,no_signaling,max_normalization_error,max_marginal_discrepancy\n{},{},{},{}\n",
        report.normalized,
        report.no_signaling,
        fmt_sig(report.max_normalization_error),
        fmt_sig(report.max_marginal_discrepancy),
    )
}

fn svetlichny_csv(report: &SvetlichnyReport) -> String {
    format!(
        "n_parties,avg_probability,correlator_value,violates_hybrid_bound,exceeds_quantum,at_algebraic_max\n{},{},{},{},{},{}\n",
        report.n_parties,
        fmt_sig(report.avg_probability),
        fmt_sig(report.correlator_value),
        report.violates_hybrid_bound,
        report.exceeds_quantum,
        report.at_algebraic_max,
    )
}

fn icgame_csv(result: &ICGameResult) -> String {
    format!(
        "n_database_bits,n_message_bits,p_x,p_y,i_exact,i_fano,violates_ic\n{},{},{},{},{},{},{}\n",
        result.n_database_bits,
        result.n_message_bits,
        fmt_sig(result.success_probs[0]),
        fmt_sig(result.success_probs[1]),
        fmt_sig(result.i_exact),
        fmt_sig(result.i_fano),
        result.violates_ic,
    )
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("e,k,p,i_fano,violates\n");
    for row in rows {
        let k = row.k.map_or_else(|| "none".to_string(), |k| k.to_string());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig(row.e),
            k,
            fmt_sig(row.p),
            fmt_sig(row.i_fano),
            row.violates,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(8.0), "8.00000000000");
        assert_eq!(fmt_sig(0.75), "0.750000000000");
        assert_eq!(fmt_sig(5.656_854_249_492_38), "5.65685424949");
        assert_eq!(fmt_sig(-0.5), "-0.500000000000");
        assert_eq!(fmt_sig(256.0), "256.000000000");
    }

    #[test]
    fn box_source_parsing() {
        let b = load_box("isotropic:3:0.5").unwrap();
        assert_eq!(b.n_parties(), 3);
        assert!(load_box("isotropic:3").is_err());
        assert!(load_box("isotropic:x:0.5").is_err());
        assert!(load_box("isotropic:3:nope").is_err());
        assert!(load_box("isotropic:3:1.5").is_err());
        assert!(load_box("/no/such/file.json").is_err());
    }

    #[test]
    fn sweep_rows_reflect_the_threshold() {
        let rows = sweep_rows(&[0.0, 1.0], 25).unwrap();
        assert_eq!(rows[0].k, None);
        assert!(!rows[0].violates);
        assert_eq!(rows[1].k, Some(1));
        assert!(rows[1].violates);
        assert!(sweep_rows(&[1.5], 25).is_err());
    }

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(
            exit_code_for(&Error::SignalingBox { discrepancy: 1.0 }),
            EXIT_VIOLATION
        );
        assert_eq!(exit_code_for(&Error::BadBoxSource("x".into())), EXIT_INPUT);
        assert_eq!(exit_code_for(&Error::PartyCount(1)), EXIT_INPUT);
    }
}
