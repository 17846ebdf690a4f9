use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::certified::CertifiedValue;

/// Absolute tolerance added on top of certified enclosures when deciding a
/// violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Which dimensions a campaign draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimChoice {
    One,
    Two,
    /// 70% dimension 1, 30% dimension 2.
    Mixed,
}

impl DimChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "1" => Some(DimChoice::One),
            "2" => Some(DimChoice::Two),
            "mixed" => Some(DimChoice::Mixed),
            _ => None,
        }
    }
}

impl Serialize for DimChoice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DimChoice::One => s.serialize_u8(1),
            DimChoice::Two => s.serialize_u8(2),
            DimChoice::Mixed => s.serialize_str("mixed"),
        }
    }
}

impl fmt::Display for DimChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimChoice::One => write!(f, "1"),
            DimChoice::Two => write!(f, "2"),
            DimChoice::Mixed => write!(f, "mixed"),
        }
    }
}

/// How a failed inequality is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// A proved statement: a violation is a bug.
    Theorem,
    /// A stated but unproved inequality: a violation is a potential
    /// counterexample.
    Conjecture,
    /// Metric axioms and other consistency checks.
    Sanity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub inputs: serde_json::Value,
    pub lhs: CertifiedValue,
    pub rhs: CertifiedValue,
}

/// Settings that shaped a campaign, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Defaults {
    /// `h` is relative: each evaluation uses `h` times the joint diameter
    /// of the fuzzy numbers involved.
    pub h_mode: String,
    pub q: f64,
    pub quadrature_n: usize,
    pub violation_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub theorem_id: String,
    pub category: Category,
    pub seed: u64,
    pub trials: u64,
    pub dim: serde_json::Value,
    pub h: f64,
    pub prng: String,
    pub defaults: Defaults,
    /// Smallest `rhs.lower − lhs.upper` over all comparisons; `None` when no
    /// comparison was made.
    pub max_slack: Option<f64>,
    /// `lhs.half_width + rhs.half_width` at the comparison attaining
    /// `max_slack`.
    pub slack_budget: f64,
    pub comparisons: u64,
    pub violations: Vec<Violation>,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Whether the extremal comparison is an equality up to twice the
    /// enclosure widths.
    pub fn is_tight(&self) -> bool {
        self.max_slack
            .is_some_and(|s| s.abs() <= 2.0 * self.slack_budget + VIOLATION_TOL)
    }

    /// One line per campaign for terminal output.
    pub fn summary_line(&self) -> String {
        let status = match (self.passed(), self.category) {
            (true, _) => "PASS",
            (false, Category::Conjecture) => "POTENTIAL COUNTEREXAMPLE",
            (false, _) => "FAIL",
        };
        let slack = self
            .max_slack
            .map_or_else(|| "n/a".to_string(), |s| format!("{s:.3e}"));
        format!(
            "{:<22} dim={:<5} trials={:<5} violations={:<3} max_slack={:<10} runtime={}ms {}",
            self.theorem_id,
            self.dim.to_string().trim_matches('"'),
            self.trials,
            self.violations.len(),
            slack,
            self.runtime_ms,
            status
        )
    }

    pub fn summary_row(&self) -> SummaryRow {
        SummaryRow {
            theorem_id: self.theorem_id.clone(),
            category: self.category,
            dim: self.dim.to_string().trim_matches('"').to_string(),
            trials: self.trials,
            h: self.h,
            violations: self.violations.len(),
            max_slack: self.max_slack,
            runtime_ms: self.runtime_ms,
            passed: self.passed(),
        }
    }
}

/// A flat record of one campaign, for CSV tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub theorem_id: String,
    pub category: Category,
    pub dim: String,
    pub trials: u64,
    pub h: f64,
    pub violations: usize,
    pub max_slack: Option<f64>,
    pub runtime_ms: u64,
    pub passed: bool,
}

/// Running slack accounting for one campaign.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    max_slack: Option<f64>,
    slack_budget: f64,
    comparisons: u64,
    violations: Vec<Violation>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the claim `lhs ≤ rhs`. It is violated only when the
    /// enclosures are disjoint the wrong way round; `inputs` is evaluated
    /// only then.
    pub fn record(
        &mut self,
        trial: u64,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
        inputs: impl FnOnce() -> serde_json::Value,
    ) {
        self.comparisons += 1;
        let slack = rhs.lower() - lhs.upper();
        if self.max_slack.is_none_or(|m| slack < m) {
            self.max_slack = Some(slack);
            self.slack_budget = lhs.half_width + rhs.half_width;
        }
        if lhs.lower() > rhs.upper() + VIOLATION_TOL {
            self.violations.push(Violation {
                trial,
                inputs: inputs(),
                lhs,
                rhs,
            });
        }
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn max_slack(&self) -> Option<f64> {
        self.max_slack
    }
}

/// Static description of a campaign, combined with a [`Tally`] at the end.
#[derive(Debug, Clone)]
pub struct Header {
    pub theorem_id: String,
    pub category: Category,
    pub seed: u64,
    pub trials: u64,
    pub dim: serde_json::Value,
    pub h: f64,
    pub q: f64,
    pub quadrature_n: usize,
}

impl Header {
    pub fn finish(
        self,
        tally: Tally,
        started: std::time::Instant,
        details: serde_json::Value,
    ) -> CampaignReport {
        CampaignReport {
            theorem_id: self.theorem_id,
            category: self.category,
            seed: self.seed,
            trials: self.trials,
            dim: self.dim,
            h: self.h,
            prng: crate::generators::PRNG_NAME.to_string(),
            defaults: Defaults {
                h_mode: "relative".to_string(),
                q: self.q,
                quadrature_n: self.quadrature_n,
                violation_tol: VIOLATION_TOL,
            },
            max_slack: tally.max_slack,
            slack_budget: tally.slack_budget,
            comparisons: tally.comparisons,
            violations: tally.violations,
            runtime_ms: started.elapsed().as_millis() as u64,
            details,
        }
    }
}
