//! Command-line driver: enumerate candidates for (q, g) under optional
//! point-count constraints, sieve each one, and write one report per
//! candidate.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{ArithError, Effort, PrimePower};
use crate::enumerate::{enumerate_real_weil, EnumConstraints, PlaceHorizon};
use crate::intpoly::IntPoly;
use crate::sieve::{run_pipeline, SieveConfig, SieveReport, TestName, UnknownTest, Verdict};
use crate::weil::{RealWeilPoly, WeilError};

/// Candidates sieved in parallel before their reports are written in order.
const BATCH: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Jsonlines,
}

#[derive(Debug, Parser)]
#[command(name = "weilsieve", version, about = "Sieve isogeny classes of abelian varieties for Jacobians")]
pub struct Args {
    /// Size of the base field, a prime power.
    #[arg(long)]
    pub q: u64,
    /// Genus; implied by --h when a single polynomial is given.
    #[arg(long)]
    pub g: Option<usize>,
    /// Required #C(F_q).
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<i64>,
    /// Maximum defect g·⌊2√q⌋ + t.
    #[arg(long)]
    pub defect: Option<u64>,
    /// Check place and point counts over F_{q^n} for n up to this (default 2g).
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Comma-separated test names, or `all`.
    #[arg(long, value_delimiter = ',')]
    pub tests: Option<Vec<String>>,
    /// Run every selected test even after an elimination.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Iteration budget for integer factorization.
    #[arg(long)]
    pub effort: Option<u64>,
    /// Output file (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Analyze one real Weil polynomial given by ascending coefficients "c0,c1,...,1".
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Field(#[from] ArithError),
    #[error("genus must be positive")]
    ZeroGenus,
    #[error("--g is required unless --h is given")]
    MissingGenus,
    #[error("--g {given} disagrees with the degree {degree} of --h")]
    GenusMismatch { given: usize, degree: usize },
    #[error("horizon must be positive")]
    ZeroHorizon,
    #[error("--points {points} gives defect {implied}, above --defect {max}")]
    InconsistentConstraints { points: i64, implied: i64, max: u64 },
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
    #[error(transparent)]
    BadPolynomial(#[from] WeilError),
    #[error(transparent)]
    UnknownTest(#[from] UnknownTest),
    #[error("cannot open {path}: {source}")]
    Sink { path: PathBuf, source: io::Error },
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage errors, 3 for failures after the run started.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Json(_) => 3,
            _ => 2,
        }
    }
}

/// What to enumerate or analyze, and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub q: PrimePower,
    pub g: usize,
    pub points: Option<i64>,
    pub defect: Option<u64>,
    /// A single candidate instead of an enumeration.
    pub single: Option<Vec<BigInt>>,
    pub sieve: SieveConfig,
    pub format: Format,
}

fn parse_coefficients(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|c| {
            let c = c.trim();
            c.parse().map_err(|_| CliError::BadCoefficient(c.to_string()))
        })
        .collect()
}

fn parse_tests(names: &[String]) -> Result<Vec<TestName>, CliError> {
    if names.iter().any(|n| n == "all") {
        return Ok(TestName::ALL.to_vec());
    }
    Ok(names.iter().map(|n| n.trim().parse()).collect::<Result<_, _>>()?)
}

impl RunConfig {
    pub fn from_args(args: &Args) -> Result<Self, CliError> {
        let q = PrimePower::new(args.q)?;
        let single = args.h.as_deref().map(parse_coefficients).transpose()?;
        let g = match (&single, args.g) {
            (Some(c), given) => {
                let degree = IntPoly::new(c.clone()).deg();
                match given {
                    Some(g) if g != degree => {
                        return Err(CliError::GenusMismatch { given: g, degree })
                    }
                    _ => degree,
                }
            }
            (None, Some(g)) => g,
            (None, None) => return Err(CliError::MissingGenus),
        };
        if g == 0 {
            return Err(CliError::ZeroGenus);
        }
        if let (Some(points), Some(max)) = (args.points, args.defect) {
            let implied = (g as u64 * q.m()) as i64 + q.q as i64 + 1 - points;
            if implied > max as i64 {
                return Err(CliError::InconsistentConstraints { points, implied, max });
            }
        }
        let mut sieve = SieveConfig::for_genus(g);
        if let Some(h) = args.horizon {
            if h == 0 {
                return Err(CliError::ZeroHorizon);
            }
            sieve.horizon = h;
        }
        if let Some(names) = &args.tests {
            sieve.tests = parse_tests(names)?;
        }
        sieve.exhaustive = args.exhaustive;
        if let Some(e) = args.effort {
            sieve.effort = Effort(e);
        }
        Ok(RunConfig {
            q,
            g,
            points: args.points,
            defect: args.defect,
            single,
            sieve,
            format: args.format,
        })
    }

    /// Enumeration constraints; place counts are checked up to the horizon.
    pub fn constraints(&self) -> EnumConstraints {
        EnumConstraints {
            exact_point_count: self.points,
            max_defect: self.defect,
            nonneg_places: PlaceHorizon::To(self.sieve.horizon),
            extra_lower_bounds: Vec::new(),
        }
    }
}

/// Count of candidates per verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub candidates: usize,
    pub eliminated: usize,
    pub constrained: usize,
    pub open: usize,
}

impl Summary {
    fn add(&mut self, v: Verdict) {
        self.candidates += 1;
        match v {
            Verdict::Eliminated => self.eliminated += 1,
            Verdict::Constrained => self.constrained += 1,
            Verdict::Open => self.open += 1,
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} candidates: {} ELIMINATED, {} CONSTRAINED, {} OPEN",
            self.candidates, self.eliminated, self.constrained, self.open
        )
    }
}

/// Run the pipeline on one candidate.
pub fn analyze_single(coeffs: &[BigInt], q: PrimePower, config: &SieveConfig) -> Result<SieveReport, CliError> {
    let h = RealWeilPoly::new(IntPoly::new(coeffs.to_vec()), q)?;
    Ok(run_pipeline(&h, config))
}

fn emit(report: &SieveReport, format: Format, sink: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Jsonlines => {
            serde_json::to_writer(&mut *sink, report)?;
            writeln!(sink)?;
        }
        Format::Text => writeln!(sink, "{}", report.text())?,
    }
    Ok(())
}

/// Sieve every candidate in order, writing reports to `sink`.
pub fn run(config: &RunConfig, sink: &mut dyn Write) -> Result<Summary, CliError> {
    let candidates = match &config.single {
        Some(c) => vec![RealWeilPoly::new(IntPoly::new(c.clone()), config.q)?],
        None => enumerate_real_weil(config.q, config.g, &config.constraints()),
    };
    let mut summary = Summary::default();
    for batch in candidates.chunks(BATCH) {
        let reports: Vec<SieveReport> = batch.par_iter().map(|h| run_pipeline(h, &config.sieve)).collect();
        for r in &reports {
            summary.add(r.verdict);
            emit(r, config.format, sink)?;
        }
    }
    sink.flush()?;
    Ok(summary)
}

/// Parse, run and report; returns the process exit code.
pub fn main_with(args: &Args) -> i32 {
    let result = RunConfig::from_args(args).and_then(|config| {
        let summary = match &args.out {
            Some(path) => {
                let file = File::create(path).map_err(|source| CliError::Sink {
                    path: path.clone(),
                    source,
                })?;
                run(&config, &mut BufWriter::new(file))?
            }
            None => run(&config, &mut BufWriter::new(io::stdout().lock()))?,
        };
        eprintln!("{summary}");
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
