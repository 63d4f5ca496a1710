//! Command-line front end. `main` parses arguments and calls [`run`].
//!
//! Exit codes: 0 success, 1 theorem violation, 2 usage or validation
//! error, 3 inconsistent recovery.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cyclotomic::{CycInt, Prime, Valuation};
use crate::error::Error;
use crate::fourier_minors::{
    composite_counterexample, proof_trace, verify_all_minors, FourierMinor, IndexSet,
    SparseCycPoly, Verdict, VerifyOptions,
};
use crate::fp_poly::{lemma2_scan_exhaustive, lemma2_scan_random, FpPoly, FpScalar};
use crate::recovery::{recover, MeasurementSet};
use crate::uncertainty::{uncertainty_check, Signal};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_SCAN_COUNT: usize = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "chebotarev",
    version,
    about = "Exact checks on minors of the prime-order Fourier matrix"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for randomized scans.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PrimeArg {
    /// The prime modulus.
    #[arg(long = "p")]
    pub p: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every square minor of (ω^(ij)) is non-zero.
    VerifyMinors {
        #[command(flatten)]
        prime: PrimeArg,
        /// Only minors of this size.
        #[arg(long)]
        size: Option<usize>,
        /// Allow p above the default limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Exact determinant of one minor.
    Det {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        #[arg(long, allow_hyphen_values = true)]
        cols: String,
    },
    /// (1 - ω)-adic valuation of an element of Z[ω].
    Valuation {
        #[command(flatten)]
        prime: PrimeArg,
        /// JSON file holding a coefficient array.
        #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
        element: Option<PathBuf>,
        /// Inline comma-separated coefficients.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Check the multiplicity bound for one polynomial and root.
    Lemma2 {
        #[command(flatten)]
        prime: PrimeArg,
        /// Comma-separated coefficients, lowest degree first.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        root: i64,
    },
    /// Check the multiplicity bound over many polynomials.
    Lemma2Scan {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        exhaustive: bool,
        #[arg(long)]
        random: bool,
        /// Number of random polynomials.
        #[arg(long, default_value_t = DEFAULT_SCAN_COUNT)]
        count: usize,
    },
    /// Check |supp f| + |supp f^| >= p + 1 for a signal file.
    Uncertainty {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long)]
        signal: PathBuf,
    },
    /// Recover a sparse signal from Fourier samples.
    Recover {
        #[command(flatten)]
        prime: PrimeArg,
        /// Sparsity bound.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        measurements: PathBuf,
    },
    /// Walk the kernel argument on a concrete coefficient vector.
    Trace {
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// The vanishing minor for n = 4.
    CompositeCounterexample,
}

/// What a command produced: the report, its text rendering, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn ok(report: impl Serialize, text: String) -> Self {
        Outcome {
            exit_code: EXIT_OK,
            json: serde_json::to_value(report).expect("reports serialize"),
            text,
        }
    }

    fn with_exit(mut self, code: i32) -> Self {
        self.exit_code = code;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json renders");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub exit_code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::TheoremViolation(_) => EXIT_VIOLATION,
            Error::Inconsistent(_) => EXIT_INCONSISTENT,
            _ => EXIT_USAGE,
        };
        Failure {
            exit_code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        exit_code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn same_prime(flag: Prime, file: Prime) -> Result<(), Failure> {
    if flag == file {
        Ok(())
    } else {
        Err(usage(format!("file is for p = {file} but --p is {flag}")))
    }
}

/// Runs one command on a rayon pool sized by `--jobs`.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let jobs = cli.jobs as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::VerifyMinors {
            prime,
            size,
            allow_large,
        } => {
            let prime = Prime::new(prime.p)?;
            let report = verify_all_minors(
                prime,
                VerifyOptions {
                    size: *size,
                    jobs: cli.jobs as usize,
                    allow_large: *allow_large,
                },
            )?;
            let mut text = format!(
                "p = {}\npairs checked: {}\nall non-zero: {}\nelapsed: {} ms\n",
                report.p, report.pairs_checked, report.all_nonzero, report.elapsed_ms
            );
            if let Some(c) = &report.counterexample {
                let _ = writeln!(text, "COUNTEREXAMPLE: I = {:?}, J = {:?}", c.rows, c.cols);
            }
            let code = if report.all_nonzero {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok(Outcome::ok(&report, text).with_exit(code))
        }
        Command::Det { prime, rows, cols } => {
            let prime = Prime::new(prime.p)?;
            let rows = IndexSet::parse(prime, rows)?;
            let cols = IndexSet::parse(prime, cols)?;
            let minor = FourierMinor::build(prime, &rows, &cols)?;
            let det = minor.determinant_integral();
            #[derive(Serialize)]
            struct DetReport<'a> {
                p: u32,
                rows: &'a IndexSet,
                cols: &'a IndexSet,
                det: &'a CycInt,
                nonzero: bool,
            }
            let text = format!(
                "p = {prime}, I = {:?}, J = {:?}\ndet = {det}\n",
                rows.elems(),
                cols.elems()
            );
            Ok(Outcome::ok(
                DetReport {
                    p: prime.get(),
                    rows: &rows,
                    cols: &cols,
                    det: &det,
                    nonzero: !det.is_zero(),
                },
                text,
            ))
        }
        Command::Valuation {
            prime,
            element,
            coeffs,
        } => {
            let prime = Prime::new(prime.p)?;
            let a = match (element, coeffs) {
                (Some(path), _) => CycInt::from_json(prime, &read_file(path)?)?,
                (None, Some(list)) => {
                    let items: Vec<&str> = list.split(',').collect();
                    CycInt::from_strings(prime, &items)?
                }
                (None, None) => return Err(usage("need --element or --coeffs")),
            };
            let (valuation, cofactor) = a.split_one_minus_omega();
            #[derive(Serialize)]
            struct ValuationReport {
                valuation: Valuation,
                #[serde(skip_serializing_if = "Option::is_none")]
                cofactor: Option<CycInt>,
            }
            let text = match &cofactor {
                Some(u) => format!("{a} = (1 - w)^{valuation} * ({u})\n"),
                None => "valuation: infinite\n".to_string(),
            };
            Ok(Outcome::ok(
                ValuationReport {
                    valuation,
                    cofactor,
                },
                text,
            ))
        }
        Command::Lemma2 { prime, poly, root } => {
            let prime = Prime::new(prime.p)?;
            let coeffs = poly
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|e| usage(format!("bad coefficient {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let g = FpPoly::new(prime, &coeffs);
            let a = FpScalar::new(prime, *root);
            let w = g.lemma2_holds(a)?;
            #[derive(Serialize)]
            struct Lemma2Report<'a> {
                p: u32,
                poly: &'a FpPoly,
                root: u64,
                multiplicity: usize,
                nonzero_coeffs: usize,
                holds: bool,
            }
            let text = format!(
                "g = {g} over F_{prime}, a = {}\nmultiplicity {} < {} non-zero coefficients: {}\n",
                a.value(),
                w.multiplicity,
                w.nonzero_coeffs,
                w.holds
            );
            Ok(Outcome::ok(
                Lemma2Report {
                    p: prime.get(),
                    poly: &g,
                    root: a.value(),
                    multiplicity: w.multiplicity,
                    nonzero_coeffs: w.nonzero_coeffs,
                    holds: w.holds,
                },
                text,
            ))
        }
        Command::Lemma2Scan {
            prime,
            exhaustive,
            count,
            ..
        } => {
            let prime = Prime::new(prime.p)?;
            let report = if *exhaustive {
                lemma2_scan_exhaustive(prime)?
            } else {
                lemma2_scan_random(prime, *count, cli.seed)?
            };
            let text = format!(
                "p = {} ({:?})\npolynomials: {}\nchecks: {}\nviolations: {}\n",
                report.p, report.mode, report.polynomials, report.checks, report.violations
            );
            let code = if report.violations == 0 {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok(Outcome::ok(&report, text).with_exit(code))
        }
        Command::Uncertainty { prime, signal } => {
            let prime = Prime::new(prime.p)?;
            let f = Signal::from_json(&read_file(signal)?)?;
            same_prime(prime, f.prime())?;
            let report = uncertainty_check(&f)?;
            let text = format!(
                "|supp f| = {}, |supp f^| = {}, sum = {} >= {}: {}\n",
                report.supp_f,
                report.supp_fhat,
                report.sum,
                prime.get() + 1,
                report.holds
            );
            Ok(Outcome::ok(&report, text))
        }
        Command::Recover {
            prime,
            k,
            measurements,
        } => {
            let prime = Prime::new(prime.p)?;
            let m = MeasurementSet::from_json(&read_file(measurements)?)?;
            same_prime(prime, m.prime())?;
            let result = recover(&m, *k)?;
            let mut text = format!("support: {:?}\n", result.support.elems());
            for &i in result.support.elems() {
                let _ = writeln!(text, "f({i}) = {}", result.signal.values()[i as usize]);
            }
            Ok(Outcome::ok(&result, text))
        }
        Command::Trace {
            prime,
            rows,
            coeffs,
        } => {
            let prime = Prime::new(prime.p)?;
            let rows = IndexSet::parse(prime, rows)?;
            let g = SparseCycPoly::from_json(&read_file(coeffs)?)?;
            same_prime(prime, g.prime())?;
            let trace = proof_trace(&rows, &g)?;
            let mut text = String::new();
            for r in &trace.residuals {
                let _ = writeln!(text, "row {}: residual {}", r.row, r.value);
            }
            let _ = writeln!(text, "min valuation: {}", trace.min_valuation);
            if let Some(g_bar) = &trace.reduced_poly {
                let _ = writeln!(
                    text,
                    "reduced polynomial: {g_bar}\nmultiplicity at 1: {}\nnon-zero coefficients: {}",
                    trace.multiplicity_at_one.unwrap_or(0),
                    trace.nonzero_coeffs.unwrap_or(0)
                );
            }
            let _ = writeln!(text, "verdict: {:?}", trace.verdict);
            let code = match trace.verdict {
                Verdict::ContradictionImpossible => EXIT_VIOLATION,
                _ => EXIT_OK,
            };
            Ok(Outcome::ok(&trace, text).with_exit(code))
        }
        Command::CompositeCounterexample => {
            let report = composite_counterexample();
            let text = format!(
                "n = {}, I = J = {:?}: det = {} + {}i (zero: {})\np = {} control: det = {} (non-zero: {})\n",
                report.n,
                report.rows,
                report.det.re,
                report.det.im,
                report.det_is_zero,
                report.prime_control.p,
                report.prime_control.det,
                report.prime_control.nonzero
            );
            Ok(Outcome::ok(&report, text))
        }
    }
}
