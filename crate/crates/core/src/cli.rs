//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cone_series::{ConeSeries, SeriesError};
use crate::datum_file::{read_datum, render_datum, DatumFileError};
use crate::lattice::LatticeVector;
use crate::li_oracle::LiError;
use crate::rep_chars::RepError;
use crate::root_weyl::RootDatum;
use crate::spherical::{
    basic_asymptotics, inverse_satake_lfun, macdonald_p, parse_preset, representation,
    SphericalDatum, SphericalError,
};
use crate::verify::{
    antidominant_ball, verify_basic_pairing, verify_denominator, verify_li, verify_orthogonality,
    verify_whittaker_schur, SuiteReport,
};

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "satake",
    version,
    about = "Inverse Satake transforms of L-function series on spherical varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Built-in datum: group:<H>, whittaker:<H> or sp2n_gl2n:<n>, with H one of gl1..gl8, sl2, sp4
    #[arg(long, global = true)]
    pub preset: Option<String>,

    /// TOML datum file (alternative to --preset)
    #[arg(long, global = true, value_name = "PATH")]
    pub datum_file: Option<PathBuf>,

    /// Named representation of the dual group (std or sym2; GL-type data only)
    #[arg(long, global = true)]
    pub rep: Option<String>,

    /// Explicit antidominant weight, comma separated, e.g. `0,0,1`
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "COORDS")]
    pub lowest_weight: Option<String>,

    /// Truncation degree (or norm radius for the pairing suites)
    #[arg(long, global = true, value_name = "N", allow_hyphen_values = true)]
    pub truncate: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,

    /// Write output here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the inverse Satake transform of L(rho) on antidominant coweights
    InverseSatake,
    /// Coefficients of the asymptotic expansion of the basic function
    Basic,
    /// The polynomial P_lambda for lambda given by --lowest-weight
    Macdonald,
    /// Weights of the dual-group representation
    Char,
    /// Run a property suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print the datum as a TOML datum file
    Datum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Li,
    Orthogonality,
    Denominator,
    WhittakerSchur,
    BasicPairing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn math(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MATH,
            message: message.into(),
        }
    }
}

impl From<SphericalError> for CliError {
    fn from(e: SphericalError) -> Self {
        match e {
            SphericalError::InvalidDatum(_)
            | SphericalError::UnknownPreset(_)
            | SphericalError::BadParameters(_)
            | SphericalError::Rep(_)
            | SphericalError::Root(_) => CliError::config(e.to_string()),
            SphericalError::NotPolynomial { .. }
            | SphericalError::RhoInConeSpan(_)
            | SphericalError::Series(_) => CliError::math(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        CliError::math(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<DatumFileError> for CliError {
    fn from(e: DatumFileError) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<LiError> for CliError {
    fn from(e: LiError) -> Self {
        match e {
            LiError::Spherical(s) => s.into(),
            other => CliError::math(other.to_string()),
        }
    }
}

/// Text to emit and the exit status to return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn load_datum(cli: &Cli) -> Result<SphericalDatum, CliError> {
    match (&cli.preset, &cli.datum_file) {
        (Some(_), Some(_)) => Err(CliError::config(
            "give either --preset or --datum-file, not both",
        )),
        (Some(p), None) => Ok(parse_preset(p)?),
        (None, Some(path)) => Ok(read_datum(path)?),
        (None, None) => Err(CliError::config(
            "a datum is required: pass --preset or --datum-file",
        )),
    }
}

fn parse_weight(text: &str, rank: usize) -> Result<LatticeVector, CliError> {
    let v: LatticeVector = text
        .parse()
        .map_err(|e| CliError::config(format!("--lowest-weight `{text}`: {e}")))?;
    if v.rank() != rank {
        return Err(CliError::config(format!(
            "--lowest-weight {v} has {} coordinates, the datum has rank {rank}",
            v.rank()
        )));
    }
    Ok(v)
}

/// The lowest weight selected by `--lowest-weight` or `--rep` (default `std`).
fn resolve_weight(cli: &Cli, datum: &SphericalDatum) -> Result<LatticeVector, CliError> {
    let rank = datum.rank();
    let weight = match (&cli.lowest_weight, &cli.rep) {
        (Some(_), Some(_)) => {
            return Err(CliError::config(
                "give either --rep or --lowest-weight, not both",
            ))
        }
        (Some(w), None) => parse_weight(w, rank)?,
        (None, rep) => {
            let name = rep.as_deref().unwrap_or("std");
            if datum.roots() != &RootDatum::gl(rank) {
                return Err(CliError::config(format!(
                    "--rep {name} is only defined for GL-type data; pass --lowest-weight instead"
                )));
            }
            let top = LatticeVector::unit(rank, rank - 1);
            match name {
                "std" => top,
                "sym2" => top.scale(2),
                other => {
                    return Err(CliError::config(format!(
                        "unknown representation `{other}` (expected std or sym2)"
                    )))
                }
            }
        }
    };
    if !datum.is_antidominant(&weight) {
        return Err(CliError::config(format!(
            "lowest weight {weight} is not antidominant for the roots of {}",
            datum.name()
        )));
    }
    Ok(weight)
}

fn bound(cli: &Cli, default: i64) -> Result<i64, CliError> {
    let n = cli.truncate.unwrap_or(default);
    if n < 0 {
        return Err(CliError::config(format!(
            "--truncate must be nonnegative, got {n}"
        )));
    }
    Ok(n)
}

#[derive(Serialize)]
struct CoefficientRow {
    lambda: LatticeVector,
    coefficient: String,
}

#[derive(Serialize)]
struct SeriesRecord {
    bound: i64,
    witness: Vec<i64>,
    rows: Vec<CoefficientRow>,
}

fn render_series(s: &ConeSeries, format: Format) -> String {
    match format {
        Format::Tsv => s.to_tsv(),
        Format::Json => {
            let rec = SeriesRecord {
                bound: s.bound(),
                witness: s.spec().witness().to_vec(),
                rows: s
                    .terms()
                    .map(|(k, c)| CoefficientRow {
                        lambda: k.clone(),
                        coefficient: c.to_string(),
                    })
                    .collect(),
            };
            json(&rec)
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("record serializes");
    s.push('\n');
    s
}

fn render_report(report: &SuiteReport, format: Format) -> Outcome {
    let output = match format {
        Format::Tsv => format!("{report}\n"),
        Format::Json => json(report),
    };
    Outcome {
        output,
        code: if report.passed() {
            0
        } else {
            EXIT_VERIFY_FAILED
        },
    }
}

fn is_group_datum(datum: &SphericalDatum) -> bool {
    let coroots = datum.roots().positive_coroots();
    datum.cone() == coroots
        && datum.theta_plus().len() == coroots.len()
        && datum
            .theta_plus()
            .iter()
            .zip(coroots)
            .all(|(t, g)| &t.theta == g && t.sigma == 1 && t.r.twice() == 2)
}

/// Runs a parsed command and returns its output without writing anything.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let datum = load_datum(cli)?;
    let ok = |output: String| Ok(Outcome { output, code: 0 });
    match &cli.command {
        Command::InverseSatake => {
            let rho = resolve_weight(cli, &datum)?;
            let n = bound(cli, 10)?;
            let table = inverse_satake_lfun(&datum, &rho, n)?;
            ok(match cli.format {
                Format::Tsv => table.to_tsv(),
                Format::Json => json(&table),
            })
        }
        Command::Basic => {
            let n = bound(cli, 6)?;
            ok(render_series(&basic_asymptotics(&datum, n)?, cli.format))
        }
        Command::Macdonald => {
            let text = cli.lowest_weight.as_deref().ok_or_else(|| {
                CliError::config("macdonald needs the index lambda via --lowest-weight")
            })?;
            let lambda = parse_weight(text, datum.rank())?;
            let p = macdonald_p(&datum, &lambda)?;
            let rows: Vec<CoefficientRow> = p
                .poly()
                .terms()
                .map(|(k, c)| CoefficientRow {
                    lambda: k.clone(),
                    coefficient: c.to_string(),
                })
                .collect();
            ok(match cli.format {
                Format::Tsv => {
                    let mut s = String::from("lambda\tcoefficient\n");
                    for r in &rows {
                        s.push_str(&format!("{}\t{}\n", r.lambda.to_csv(), r.coefficient));
                    }
                    s
                }
                Format::Json => json(&rows),
            })
        }
        Command::Char => {
            let rho = resolve_weight(cli, &datum)?;
            let weights = representation(&datum, &rho)?;
            #[derive(Serialize)]
            struct WeightRow {
                weight: LatticeVector,
                multiplicity: u64,
            }
            let rows: Vec<WeightRow> = weights
                .iter()
                .map(|(k, m)| WeightRow {
                    weight: k.clone(),
                    multiplicity: m,
                })
                .collect();
            ok(match cli.format {
                Format::Tsv => {
                    let mut s = String::from("weight\tmultiplicity\n");
                    for r in &rows {
                        s.push_str(&format!("{}\t{}\n", r.weight.to_csv(), r.multiplicity));
                    }
                    s
                }
                Format::Json => json(&rows),
            })
        }
        Command::Verify { suite } => {
            let report = match suite {
                Suite::Denominator => verify_denominator(&datum),
                Suite::WhittakerSchur => {
                    let radius = bound(cli, 3)?;
                    verify_whittaker_schur(&datum, &antidominant_ball(&datum, radius))?
                }
                Suite::Orthogonality => verify_orthogonality(&datum, bound(cli, 4)?)?,
                Suite::BasicPairing => verify_basic_pairing(&datum, bound(cli, 4)?)?,
                Suite::Li => {
                    if !is_group_datum(&datum) {
                        return Err(CliError::config(format!(
                            "verify li needs a group datum (Theta+ = positive coroots with sigma = 1, r = 1, C_X = positive coroots); {} is not one",
                            datum.name()
                        )));
                    }
                    let rho = resolve_weight(cli, &datum)?;
                    verify_li(&datum, &rho, bound(cli, 8)?)?
                }
            };
            Ok(render_report(&report, cli.format))
        }
        Command::Datum => ok(render_datum(&datum)),
    }
}

/// Parses arguments, runs, writes output, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => std::io::stdout().write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_CONFIG;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, CliError> {
        let cli =
            Cli::try_parse_from(std::iter::once("satake").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn inverse_satake_gl2_row() {
        let out = run(&[
            "inverse-satake",
            "--preset",
            "group:gl2",
            "--rep",
            "std",
            "--truncate",
            "10",
        ])
        .unwrap();
        assert!(
            out.output.contains("\n1,2\tq^-1\tq^-3/2\n"),
            "{}",
            out.output
        );
        let zero = run(&["inverse-satake", "--preset", "group:gl2", "--truncate", "0"]).unwrap();
        assert_eq!(zero.output, "lambda\tseries\thecke\n0,0\t1\t1\n");
    }

    #[test]
    fn exit_codes() {
        let e = run(&[
            "inverse-satake",
            "--preset",
            "group:sl2",
            "--lowest-weight",
            "-1",
        ])
        .unwrap_err();
        assert_eq!(e.code, EXIT_MATH);
        assert!(e.message.contains("span of C_X"));
        let e = run(&["basic", "--preset", "nope:gl2"]).unwrap_err();
        assert_eq!(e.code, EXIT_CONFIG);
        let e = run(&[
            "inverse-satake",
            "--preset",
            "group:gl2",
            "--lowest-weight",
            "1,0",
        ])
        .unwrap_err();
        assert_eq!(e.code, EXIT_CONFIG);
        let e = run(&["basic", "--preset", "group:gl2", "--truncate", "-1"]).unwrap_err();
        assert_eq!(e.code, EXIT_CONFIG);
        let e = run(&["verify", "li", "--preset", "whittaker:gl2"]).unwrap_err();
        assert_eq!(e.code, EXIT_CONFIG);
        let e = run(&["char", "--preset", "group:sp4", "--rep", "std"]).unwrap_err();
        assert_eq!(e.code, EXIT_CONFIG);
    }

    #[test]
    fn basic_tables() {
        let out = run(&["basic", "--preset", "whittaker:gl2", "--truncate", "3"]).unwrap();
        assert_eq!(out.output, "lambda\tcoefficient\n0,0\t1\n1,-1\t-1\n");
        let out = run(&["basic", "--preset", "sp2n_gl2n:2", "--truncate", "3"]).unwrap();
        assert!(out.output.contains("1,-1\tq^-2 - 1\n"), "{}", out.output);
    }

    #[test]
    fn verify_suites() {
        for (suite, preset) in [
            ("denominator", "group:gl3"),
            ("li", "group:gl2"),
            ("whittaker-schur", "group:gl2"),
            ("orthogonality", "sp2n_gl2n:2"),
            ("basic-pairing", "group:gl2"),
        ] {
            let out = run(&["verify", suite, "--preset", preset]).unwrap();
            assert_eq!(out.code, 0, "{suite}: {}", out.output);
            assert!(out.output.contains("status: pass"));
        }
    }

    #[test]
    fn json_output_parses() {
        let out = run(&[
            "inverse-satake",
            "--preset",
            "group:gl2",
            "--truncate",
            "2",
            "--format",
            "json",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["rows"][0]["lambda"], serde_json::json!([0, 0]));
        assert_eq!(v["rows"][0]["hecke"], "1");
    }

    #[test]
    fn char_and_macdonald() {
        let out = run(&["char", "--preset", "group:gl3", "--rep", "sym2"]).unwrap();
        assert_eq!(out.output.lines().count(), 7);
        let out = run(&[
            "macdonald",
            "--preset",
            "group:gl2",
            "--lowest-weight",
            "0,0",
        ])
        .unwrap();
        assert_eq!(out.output, "lambda\tcoefficient\n0,0\tq^-1 + 1\n");
    }
}
