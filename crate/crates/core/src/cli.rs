//! Command-line front end: configuration from flags and/or a JSON file,
//! suite execution, and the JSON report.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::chart::ChartSpec;
use crate::verifier::{self, IdentityCheck, IdentityReport, Summary, REGISTRY};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "derivkit", version, about = "Exact checks of conjugation identities for graded derivations")]
struct Args {
    /// Chart: standard:N or twisted:N
    #[arg(long)]
    chart: Option<String>,
    /// Rank of the trivial bundle
    #[arg(long)]
    rank: Option<usize>,
    /// Total degree bound of random polynomial coefficients
    #[arg(long)]
    degree: Option<u32>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated identity ids (default: all)
    #[arg(long, value_delimiter = ',')]
    ids: Option<Vec<String>>,
    /// JSON configuration file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run checks concurrently
    #[arg(long)]
    parallel: bool,
    /// Print the identity registry and exit
    #[arg(long)]
    list_ids: bool,
}

/// A complete run configuration. Every field is optional in a config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub chart: String,
    pub rank: usize,
    pub degree: u32,
    pub seed: u64,
    pub ids: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            chart: "twisted:2".into(),
            rank: 2,
            degree: 2,
            seed: 0,
            ids: None,
            out: None,
            parallel: false,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Validates the configuration and expands it into one check per id.
    pub fn checks(&self) -> Result<Vec<IdentityCheck>> {
        let chart: ChartSpec = self.chart.parse()?;
        if self.rank == 0 {
            return Err(Error::Config("field `rank`: must be at least 1".into()));
        }
        let ids: Vec<String> = match &self.ids {
            Some(ids) => ids.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            None => verifier::all_ids().into_iter().map(String::from).collect(),
        };
        if ids.is_empty() {
            return Err(Error::Config("field `ids`: no identity selected".into()));
        }
        ids.iter()
            .map(|id| {
                verifier::lookup(id)?;
                Ok(IdentityCheck {
                    id: id.clone(),
                    chart,
                    rank: self.rank,
                    seed: self.seed,
                    degree: self.degree,
                    parallel: self.parallel,
                })
            })
            .collect()
    }
}

/// The report document.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the suite described by `config`.
pub fn execute(config: &RunConfig) -> Result<SuiteReport> {
    let checks = config.checks()?;
    let reports = verifier::run_suite(&checks, config.parallel)?;
    let summary = Summary::of(&reports);
    Ok(SuiteReport { config: config.clone(), reports, summary })
}

fn merge(args: Args) -> Result<RunConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_json(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(chart) = args.chart {
        config.chart = chart;
    }
    if let Some(rank) = args.rank {
        config.rank = rank;
    }
    if let Some(degree) = args.degree {
        config.degree = degree;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if args.ids.is_some() {
        config.ids = args.ids;
    }
    if args.out.is_some() {
        config.out = args.out;
    }
    config.parallel |= args.parallel;
    Ok(config)
}

fn status_word(r: &IdentityReport) -> &'static str {
    if r.passed() {
        "PASS"
    } else if r.skipped() {
        "SKIP"
    } else {
        "FAIL"
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    if args.list_ids {
        for info in REGISTRY {
            let _ = writeln!(stdout, "{:<12} {}", info.id, info.summary);
        }
        return EXIT_OK;
    }
    let config = match merge(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = match execute(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let json = report.to_json();
    match &config.out {
        Some(path) => {
            if let Err(e) = fs::write(path, json + "\n") {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
            for r in &report.reports {
                let _ = writeln!(stdout, "{} {:<12} {} ({} ms)", status_word(r), r.id, r.chart, r.millis);
            }
            let s = report.summary;
            let _ = writeln!(stdout, "pass {} fail {} skip {}", s.pass, s.fail, s.skip);
        }
        None => {
            let _ = writeln!(stdout, "{json}");
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
