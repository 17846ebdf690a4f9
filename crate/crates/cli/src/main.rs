//! `fuzzymetric`: distances, generators, oracle cross-checks and property
//! campaigns from the command line.
//!
//! Exit codes: 0 success, 1 certified violation found, 2 usage or input
//! error, 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzymetric::generators::generate_str;
use fuzzymetric::propsuite::{
    self, check_oracle_agreement, CampaignReport, DimChoice, OracleMetric, DEFAULT_H, DEFAULT_Q,
    DEFAULT_QUAD_N, DEFAULT_TRIALS, THEOREM_IDS,
};
use fuzzymetric::{
    default_h, from_json_str, metric_D, metric_Gamma, metric_dinf, metric_dq, to_json_string, FuzzyError,
    FuzzyNumber,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fuzzymetric", version, about = "Certified metrics on fuzzy numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    #[value(name = "D")]
    D,
    #[value(name = "gamma", alias = "Gamma")]
    Gamma,
    #[value(name = "dinf")]
    Dinf,
    #[value(name = "dq")]
    Dq,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckedMetric {
    #[value(name = "D")]
    D,
    #[value(name = "gamma", alias = "Gamma")]
    Gamma,
    #[value(name = "dq")]
    Dq,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two fuzzy numbers, printed as JSON.
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        /// Exponent for dq.
        #[arg(long, default_value_t = DEFAULT_Q)]
        q: f64,
        /// Absolute resolution for D and gamma; defaults to 1% of the joint
        /// diameter.
        #[arg(long)]
        h: Option<f64>,
        /// Quadrature subdivisions per merged segment for dq.
        #[arg(long, default_value_t = DEFAULT_QUAD_N)]
        n: usize,
        a: PathBuf,
        b: PathBuf,
    },
    /// Run the campaigns behind one theorem identifier.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(THEOREM_IDS))]
        theorem: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "mixed", value_parser = parse_dim)]
        dim: DimChoice,
        /// Relative resolution (fraction of each trial's joint diameter).
        #[arg(long, default_value_t = DEFAULT_H)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the fast path against the brute-force oracle on seeded pairs.
    OracleCheck {
        #[arg(long, value_enum)]
        metric: CheckedMetric,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "mixed", value_parser = parse_dim)]
        dim: DimChoice,
        /// Relative resolution shared by the fast path and the oracle lattice.
        #[arg(long, default_value_t = DEFAULT_H)]
        h: f64,
        /// Maximum number of oracle lattice points per evaluation.
        #[arg(long, default_value_t = fuzzymetric::oracle::DEFAULT_POINT_BUDGET)]
        point_budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a fuzzy number from a spec string.
    Gen {
        /// e.g. `triangular:0,1,2` or `random:seed=42,dim=1,levels=5,scale=10`.
        #[arg(long)]
        spec: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every campaign with defaults and write a JSON and CSV summary.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_H)]
        h: f64,
        /// Directory for `verify-all.json` and `verify-all.csv`.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn parse_dim(s: &str) -> Result<DimChoice, String> {
    DimChoice::parse(s).ok_or_else(|| format!("`{s}` is not 1, 2 or mixed"))
}

/// A failure mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Resource(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Io(m) => m,
        }
    }
}

impl From<FuzzyError> for Failure {
    fn from(e: FuzzyError) -> Self {
        match e {
            FuzzyError::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_number(path: &Path) -> Result<FuzzyNumber, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    from_json_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes through a sibling temporary file so readers never see a partial
/// artifact.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn to_pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Prints the summaries and, for failures, the first violation's
/// reproduction data. Returns whether every campaign passed.
fn report(reports: &[CampaignReport], out: Option<&Path>) -> Outcome {
    for r in reports {
        println!("{}", r.summary_line());
        if let Some(v) = r.violations.first() {
            println!(
                "  reproduce: {}",
                serde_json::to_string(v).expect("violations serialize")
            );
        }
    }
    if let Some(path) = out {
        write_atomic(path, &to_pretty(&reports))?;
    }
    Ok(reports.iter().all(CampaignReport::passed))
}

fn dist(metric: Metric, q: f64, h: Option<f64>, n: usize, a: &Path, b: &Path) -> Outcome {
    let (u, v) = (read_number(a)?, read_number(b)?);
    let h = h.unwrap_or_else(|| default_h(&u, &v));
    let (name, value) = match metric {
        Metric::D => ("D", metric_D(&u, &v, h)?),
        Metric::Gamma => ("gamma", metric_Gamma(&u, &v, h)?),
        Metric::Dinf => ("dinf", metric_dinf(&u, &v)?),
        Metric::Dq => ("dq", metric_dq(&u, &v, q, n)?),
    };
    let mut out = json!({"metric": name, "value": value.value, "half_width": value.half_width});
    match metric {
        Metric::D | Metric::Gamma => out["h"] = json!(h),
        Metric::Dq => {
            out["q"] = json!(q);
            out["n"] = json!(n);
        }
        Metric::Dinf => {}
    }
    println!("{out}");
    Ok(true)
}

fn gen(spec: &str, out: Option<&Path>) -> Outcome {
    let u = generate_str(spec)?;
    let text = to_json_string(&u);
    match out {
        Some(path) => write_atomic(path, &(text + "\n"))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn verify_all(seed: u64, trials: u64, h: f64, out_dir: &Path) -> Outcome {
    let reports = propsuite::verify_all(seed, trials, h)?;
    fs::create_dir_all(out_dir).map_err(|e| Failure::Io(format!("{}: {e}", out_dir.display())))?;
    let mut csv = csv::Writer::from_writer(Vec::new());
    for r in &reports {
        csv.serialize(r.summary_row())
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    let csv = csv.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    let csv = String::from_utf8(csv).expect("csv output is utf-8");
    let combined = json!({
        "seed": seed,
        "trials": trials,
        "h": h,
        "passed": reports.iter().all(CampaignReport::passed),
        "campaigns": reports,
    });
    let passed = report(&reports, None)?;
    write_atomic(&out_dir.join("verify-all.json"), &to_pretty(&combined))?;
    write_atomic(&out_dir.join("verify-all.csv"), &csv)?;
    Ok(passed)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Dist {
            metric,
            q,
            h,
            n,
            a,
            b,
        } => dist(metric, q, h, n, &a, &b),
        Command::Verify {
            theorem,
            trials,
            seed,
            dim,
            h,
            out,
        } => report(
            &propsuite::run_theorem(&theorem, trials, seed, dim, h)?,
            out.as_deref(),
        ),
        Command::OracleCheck {
            metric,
            trials,
            seed,
            dim,
            h,
            point_budget,
            out,
        } => {
            let metric = match metric {
                CheckedMetric::D => OracleMetric::D,
                CheckedMetric::Gamma => OracleMetric::Gamma,
                CheckedMetric::Dq => OracleMetric::Dq,
            };
            let r = check_oracle_agreement(metric, trials, seed, dim, h, point_budget)?;
            report(&[r], out.as_deref())
        }
        Command::Gen { spec, out } => gen(&spec, out.as_deref()),
        Command::VerifyAll {
            seed,
            trials,
            h,
            out_dir,
        } => verify_all(seed, trials, h, &out_dir),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
