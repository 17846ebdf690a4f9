//! Seeded property campaigns over the metric inequalities, with certified
//! slack accounting.
//!
//! Every campaign draws trial `i` from its own ChaCha8 stream, so reports
//! are reproducible from `(seed, trials, h)` alone. Resolutions are
//! relative: an evaluation at `h` uses the pitch `h` times the joint
//! diameter of the fuzzy numbers in that trial, which keeps the work per
//! trial independent of the drawn scale.

mod report;

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::certified::CertifiedValue;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::{add, convex_combo, make_fuzzy_number, triangular, FuzzyNumber, FuzzyPath, RawCut};
use crate::generators::{
    generate_str, make_sequence, random_scale, random_with, sample_path, trial_rng, SequenceKind, JUMP_RAMP,
};
use crate::metrics::{joint_diameter, metric_D, metric_Gamma, metric_dinf, metric_dq};
use crate::oracle::{oracle_D_with_budget, oracle_Gamma_with_budget, oracle_dq_estimate};

pub use report::{
    CampaignReport, Category, Defaults, DimChoice, Header, SummaryRow, Tally, Violation, VIOLATION_TOL,
};

pub const DEFAULT_TRIALS: u64 = 1000;
/// Relative resolution for D and Γ.
pub const DEFAULT_H: f64 = 0.02;
pub const DEFAULT_Q: f64 = 2.0;
pub const DEFAULT_QUAD_N: usize = 64;
/// Length of the designed convergent sequences.
pub const DEFAULT_M_MAX: usize = 64;
/// Samples per path for the support-boundedness check.
pub const DEFAULT_PATH_SAMPLES: usize = 128;
pub const DEFAULT_EPSILONS: [f64; 3] = [0.0, 0.25, 0.5];

/// Campaign identifiers accepted by [`run_theorem`].
pub const THEOREM_IDS: [&str; 9] = [
    "thm2.1",
    "cor2.1",
    "thm2.2",
    "thm2.3",
    "thm2.4",
    "chain",
    "convergence",
    "endograph",
    "axioms",
];

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// One trial's randomness: a stream keyed by campaign and index, the drawn
/// dimension and a log-uniform scale.
struct Trial {
    rng: ChaCha8Rng,
    dim: usize,
    scale: f64,
}

impl Trial {
    fn new(campaign: &str, seed: u64, index: u64, choice: DimChoice) -> Self {
        let mut rng = trial_rng(seed, fnv1a(campaign).wrapping_add(index));
        let dim = match choice {
            DimChoice::One => 1,
            DimChoice::Two => 2,
            DimChoice::Mixed => {
                if rng.random_bool(0.7) {
                    1
                } else {
                    2
                }
            }
        };
        let scale = random_scale(&mut rng);
        Self { rng, dim, scale }
    }

    fn number(&mut self) -> Result<FuzzyNumber> {
        let max_levels = if self.dim == 1 { 4 } else { 3 };
        let levels = self.rng.random_range(2..=max_levels);
        random_with(&mut self.rng, self.dim, levels, self.scale)
    }

    fn numbers(&mut self, k: usize) -> Result<Vec<FuzzyNumber>> {
        (0..k).map(|_| self.number()).collect()
    }
}

fn pitch(h: f64, us: &[&FuzzyNumber]) -> f64 {
    h * joint_diameter(us)
}

fn header(id: &str, category: Category, seed: u64, trials: u64, dim: Value, h: f64) -> Header {
    Header {
        theorem_id: id.to_string(),
        category,
        seed,
        trials,
        dim,
        h,
        q: DEFAULT_Q,
        quadrature_n: DEFAULT_QUAD_N,
    }
}

fn dim_value(choice: DimChoice) -> Value {
    serde_json::to_value(choice).expect("dim choice serializes")
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(FuzzyError::Domain("a campaign needs at least one trial".into()))
    } else {
        Ok(())
    }
}

/// `D(αu + (1−α)v, w) ≤ √(D(u,w)² + D(v,w)²)` and the weaker
/// `D(αu + (1−α)v, w) ≤ √2·max(D(u,w), D(v,w))`. Returns both reports.
pub fn check_convex_combo(trials: u64, seed: u64, dim: DimChoice, h: f64) -> Result<Vec<CampaignReport>> {
    check_trials(trials)?;
    let started = Instant::now();
    let (mut thm, mut cor) = (Tally::new(), Tally::new());
    for i in 0..trials {
        let mut t = Trial::new("thm2.1", seed, i, dim);
        let [u, v, w]: [FuzzyNumber; 3] = t.numbers(3)?.try_into().expect("three numbers");
        let alpha: f64 = t.rng.random();
        let x = convex_combo(alpha, &u, &v)?;
        let p = pitch(h, &[&u, &v, &w]);
        let lhs = metric_D(&x, &w, p)?;
        let (duw, dvw) = (metric_D(&u, &w, p)?, metric_D(&v, &w, p)?);
        let inputs = || json!({"seed": seed, "trial": i, "alpha": alpha, "pitch": p, "u": u, "v": v, "w": w});
        thm.record(i, lhs, duw.hypot(&dvw), inputs);
        cor.record(i, lhs, duw.max(&dvw).scaled(2f64.sqrt()), inputs);
    }
    Ok(vec![
        header("thm2.1", Category::Theorem, seed, trials, dim_value(dim), h).finish(
            thm,
            started,
            Value::Null,
        ),
        header("cor2.1", Category::Theorem, seed, trials, dim_value(dim), h).finish(
            cor,
            started,
            Value::Null,
        ),
    ])
}

/// `D(αu, βu) ≤ |α − β|·max{‖y‖ : y ∈ [u]_0}` with `α, β ∈ [−3, 3]`.
pub fn check_scalar(trials: u64, seed: u64, dim: DimChoice, h: f64) -> Result<CampaignReport> {
    check_trials(trials)?;
    let started = Instant::now();
    let mut tally = Tally::new();
    for i in 0..trials {
        let mut t = Trial::new("thm2.3", seed, i, dim);
        let u = t.number()?;
        let a: f64 = t.rng.random_range(-3.0..=3.0);
        let b: f64 = t.rng.random_range(-3.0..=3.0);
        let (ua, ub) = (u.scalar_mul(a), u.scalar_mul(b));
        let p = pitch(h, &[&ua, &ub]);
        let lhs = metric_D(&ua, &ub, p)?;
        let rhs = CertifiedValue::exact((a - b).abs() * u.support_radius(0.0)?);
        tally.record(
            i,
            lhs,
            rhs,
            || json!({"seed": seed, "trial": i, "alpha": a, "beta": b, "pitch": p, "u": u}),
        );
    }
    Ok(
        header("thm2.3", Category::Theorem, seed, trials, dim_value(dim), h).finish(
            tally,
            started,
            Value::Null,
        ),
    )
}

/// `D(Σu_j, Σv_j) ≤ Σ D(u_j, v_j)`. With `n_terms = None` the number of
/// terms cycles through 2, 3 and 5.
pub fn check_sum(
    trials: u64,
    seed: u64,
    dim: DimChoice,
    n_terms: Option<usize>,
    h: f64,
) -> Result<CampaignReport> {
    check_trials(trials)?;
    let started = Instant::now();
    let mut tally = Tally::new();
    for i in 0..trials {
        let mut t = Trial::new("thm2.4", seed, i, dim);
        let n = n_terms.unwrap_or([2, 3, 5][(i % 3) as usize]);
        let us = t.numbers(n)?;
        let vs = t.numbers(n)?;
        let (su, sv) = (add(&us)?, add(&vs)?);
        let p = pitch(h, &[&su, &sv]);
        let lhs = metric_D(&su, &sv, p)?;
        let parts = us
            .iter()
            .zip(&vs)
            .map(|(u, v)| metric_D(u, v, pitch(h, &[u, v])))
            .collect::<Result<Vec<_>>>()?;
        tally.record(
            i,
            lhs,
            CertifiedValue::sum(&parts),
            || json!({"seed": seed, "trial": i, "pitch": p, "us": us, "vs": vs}),
        );
    }
    Ok(
        header("thm2.4", Category::Theorem, seed, trials, dim_value(dim), h).finish(
            tally,
            started,
            Value::Null,
        ),
    )
}

/// `Γ(u, v) ≤ D(u, v) ≤ d_∞(u, v)` on seeded pairs. The largest observed
/// `d_q / d_∞` ratio goes into the details.
pub fn check_chain(trials: u64, seed: u64, dim: DimChoice, h: f64, q: f64) -> Result<CampaignReport> {
    check_trials(trials)?;
    let started = Instant::now();
    let mut tally = Tally::new();
    let mut dq_ratio: f64 = 0.0;
    for i in 0..trials {
        let mut t = Trial::new("chain", seed, i, dim);
        let (u, v) = (t.number()?, t.number()?);
        let p = pitch(h, &[&u, &v]);
        let g = metric_Gamma(&u, &v, p)?;
        let d = metric_D(&u, &v, p)?;
        let s = metric_dinf(&u, &v)?;
        let lq = metric_dq(&u, &v, q, DEFAULT_QUAD_N)?;
        if s.value > 0.0 {
            dq_ratio = dq_ratio.max(lq.value / s.value);
        }
        let inputs = || json!({"seed": seed, "trial": i, "pitch": p, "u": u, "v": v});
        tally.record(i, g, d, inputs);
        tally.record(i, d, s, inputs);
    }
    let mut rep = header("chain", Category::Theorem, seed, trials, dim_value(dim), h);
    rep.q = q;
    Ok(rep.finish(tally, started, json!({"max_dq_over_dinf": dq_ratio})))
}

/// Checks a designed sequence against its limit for `m = 1..=m_max`.
///
/// For `dinf_convergent` and `scaling`, all four metrics to the limit stay
/// below the d_∞ rate (`1/m`, resp. `R/m` with `R` the support radius).
/// For `D_not_dinf`, D and Γ stay below `1/m` and d_q below its closed form
/// while d_∞ is pinned at 1.
pub fn check_convergence(
    kind: SequenceKind,
    u: &FuzzyNumber,
    m_max: usize,
    h: f64,
    q: f64,
) -> Result<CampaignReport> {
    let started = Instant::now();
    let seq = make_sequence(kind, u, m_max)?;
    let mut tally = Tally::new();
    let mut table = Vec::new();
    let radius = u.support_radius(0.0)?;
    for (k, um) in seq.terms.iter().enumerate() {
        let m = (k + 1) as f64;
        let limit = &seq.limit;
        let p = pitch(h, &[um, limit]);
        let s = metric_dinf(um, limit)?;
        let d = metric_D(um, limit, p)?;
        let g = metric_Gamma(um, limit, p)?;
        let lq = metric_dq(um, limit, q, DEFAULT_QUAD_N)?;
        let inputs = || json!({"kind": kind.name(), "m": k + 1, "pitch": p, "u_m": um, "limit": limit});
        let trial = (k + 1) as u64;
        match kind {
            SequenceKind::DinfConvergent | SequenceKind::Scaling => {
                let rate = match kind {
                    SequenceKind::DinfConvergent => 1.0 / m,
                    _ => radius / m,
                };
                for val in [s, d, g, lq] {
                    tally.record(trial, val, CertifiedValue::exact(rate), inputs);
                }
            }
            SequenceKind::DNotDinf => {
                let rate = 1.0 / m;
                tally.record(trial, d, CertifiedValue::exact(rate), inputs);
                tally.record(trial, g, CertifiedValue::exact(rate), inputs);
                let lq_bound = (rate + 2.0 * JUMP_RAMP).powf(1.0 / q);
                tally.record(trial, lq, CertifiedValue::exact(lq_bound), inputs);
                tally.record(trial, s, CertifiedValue::exact(1.0), inputs);
                tally.record(trial, CertifiedValue::exact(1.0), s, inputs);
            }
        }
        table.push(json!({
            "m": k + 1,
            "dinf": s.value,
            "D": [d.value, d.half_width],
            "Gamma": [g.value, g.half_width],
            "dq": [lq.value, lq.half_width],
        }));
    }
    let mut rep = header(
        &format!("convergence:{}", kind.name()),
        Category::Theorem,
        0,
        m_max as u64,
        json!(u.dim()),
        h,
    );
    rep.q = q;
    Ok(rep.finish(tally, started, json!({"table": table})))
}

/// Maximum of `D(F(t_i), F(t_{i+1}))` over `n` uniform samples, at a pitch
/// proportional to the sample spacing.
fn max_increment(path: &FuzzyPath, interval: (f64, f64), n: usize, h: f64) -> Result<CertifiedValue> {
    let samples = sample_path(path, interval, n)?;
    let all: Vec<&FuzzyNumber> = samples.iter().map(|(_, u)| u).collect();
    let p = h * joint_diameter(&all) * (interval.1 - interval.0).max(f64::MIN_POSITIVE) / (n - 1) as f64;
    let mut best = CertifiedValue::exact(0.0);
    for w in samples.windows(2) {
        best = best.max(&metric_D(&w[0].1, &w[1].1, p)?);
    }
    Ok(best)
}

/// An a-priori support radius bound for the built-in path families.
fn path_radius_bound(path: &FuzzyPath, interval: (f64, f64)) -> Result<f64> {
    let tmax = interval.0.abs().max(interval.1.abs());
    Ok(match path {
        FuzzyPath::Translation { base, direction } => {
            base.support_radius(0.0)? + tmax * direction.iter().map(|d| d * d).sum::<f64>().sqrt()
        }
        FuzzyPath::Scaling { base } => tmax * base.support_radius(0.0)?,
        FuzzyPath::Mixture { u, v } => u.support_radius(0.0)? + v.support_radius(0.0)?,
    })
}

/// Samples a path and reports a uniform support radius `R` over the samples,
/// then checks sampled D-continuity: the largest adjacent increment at `2n`
/// samples is at most 0.55 of the one at `n` samples.
pub fn check_support_bounded(
    path: &FuzzyPath,
    interval: (f64, f64),
    n: usize,
    h: f64,
) -> Result<CampaignReport> {
    let started = Instant::now();
    let samples = sample_path(path, interval, n)?;
    let radius = samples
        .iter()
        .map(|(_, u)| u.support_radius(0.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let bound = path_radius_bound(path, interval)?;
    let coarse = max_increment(path, interval, n, h)?;
    let fine = max_increment(path, interval, 2 * n, h)?;
    let mut tally = Tally::new();
    let inputs = || json!({"path": path.name(), "interval": [interval.0, interval.1], "n": n});
    tally.record(
        0,
        CertifiedValue::exact(radius),
        CertifiedValue::exact(bound),
        inputs,
    );
    tally.record(1, fine, coarse.scaled(0.55), inputs);
    let mut rep = header(
        &format!("thm2.2:{}", path.name()),
        Category::Theorem,
        0,
        n as u64,
        json!(path.dim()),
        h,
    );
    rep.category = if radius.is_finite() {
        Category::Theorem
    } else {
        Category::Sanity
    };
    let ratio = if fine.value > 0.0 {
        coarse.value / fine.value
    } else {
        f64::INFINITY
    };
    Ok(rep.finish(
        tally,
        started,
        json!({
            "support_radius": radius,
            "radius_bound": bound,
            "max_increment_n": [coarse.value, coarse.half_width],
            "max_increment_2n": [fine.value, fine.half_width],
            "increment_ratio": ratio,
        }),
    ))
}

/// The stated endograph inequalities: convex combinations, the ε-form of
/// the scalar bound for each `ε` in `eps_set`, and sums. These are not
/// proved, so violations are reported as potential counterexamples.
pub fn check_endograph(
    trials: u64,
    seed: u64,
    dim: DimChoice,
    h: f64,
    eps_set: &[f64],
) -> Result<Vec<CampaignReport>> {
    check_trials(trials)?;
    if let Some(e) = eps_set.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(FuzzyError::Domain(format!("ε = {e} is outside [0, 1]")));
    }
    let mut out = Vec::new();

    let started = Instant::now();
    let mut tally = Tally::new();
    for i in 0..trials {
        let mut t = Trial::new("endo:convex", seed, i, dim);
        let [u, v, w]: [FuzzyNumber; 3] = t.numbers(3)?.try_into().expect("three numbers");
        let alpha: f64 = t.rng.random();
        let x = convex_combo(alpha, &u, &v)?;
        let p = pitch(h, &[&u, &v, &w]);
        let lhs = metric_Gamma(&x, &w, p)?;
        let rhs = metric_Gamma(&u, &w, p)?.hypot(&metric_Gamma(&v, &w, p)?);
        tally.record(
            i,
            lhs,
            rhs,
            || json!({"seed": seed, "trial": i, "alpha": alpha, "pitch": p, "u": u, "v": v, "w": w}),
        );
    }
    out.push(
        header(
            "endo:convex",
            Category::Conjecture,
            seed,
            trials,
            dim_value(dim),
            h,
        )
        .finish(tally, started, Value::Null),
    );

    for &eps in eps_set {
        let started = Instant::now();
        let id = format!("endo:scalar:eps={eps}");
        let mut tally = Tally::new();
        for i in 0..trials {
            let mut t = Trial::new("endo:scalar", seed, i, dim);
            let u = t.number()?;
            let b: f64 = t.rng.random_range(-3.0..=3.0);
            let c: f64 = t.rng.random_range(-3.0..=3.0);
            let (ub, uc) = (u.scalar_mul(b), u.scalar_mul(c));
            let p = pitch(h, &[&ub, &uc]);
            let lhs = metric_Gamma(&ub, &uc, p)?;
            let rhs = CertifiedValue::exact((b - c).abs() * u.support_radius(eps)? + eps);
            tally.record(
                i,
                lhs,
                rhs,
                || json!({"seed": seed, "trial": i, "eps": eps, "beta": b, "gamma": c, "pitch": p, "u": u}),
            );
        }
        out.push(
            header(&id, Category::Conjecture, seed, trials, dim_value(dim), h).finish(
                tally,
                started,
                Value::Null,
            ),
        );
    }

    let started = Instant::now();
    let mut tally = Tally::new();
    for i in 0..trials {
        let mut t = Trial::new("endo:sum", seed, i, dim);
        let n = [2, 3, 5][(i % 3) as usize];
        let us = t.numbers(n)?;
        let vs = t.numbers(n)?;
        let (su, sv) = (add(&us)?, add(&vs)?);
        let p = pitch(h, &[&su, &sv]);
        let lhs = metric_Gamma(&su, &sv, p)?;
        let parts = us
            .iter()
            .zip(&vs)
            .map(|(u, v)| metric_Gamma(u, v, pitch(h, &[u, v])))
            .collect::<Result<Vec<_>>>()?;
        tally.record(
            i,
            lhs,
            CertifiedValue::sum(&parts),
            || json!({"seed": seed, "trial": i, "pitch": p, "us": us, "vs": vs}),
        );
    }
    out.push(
        header("endo:sum", Category::Conjecture, seed, trials, dim_value(dim), h).finish(
            tally,
            started,
            Value::Null,
        ),
    );
    Ok(out)
}

/// Identity, symmetry and the triangle inequality for D, Γ, d_∞ and d_q on
/// seeded triples, all within summed enclosures.
pub fn check_metric_axioms(trials: u64, seed: u64, dim: DimChoice, h: f64) -> Result<CampaignReport> {
    check_trials(trials)?;
    let started = Instant::now();
    let mut tally = Tally::new();
    type Metric = fn(&FuzzyNumber, &FuzzyNumber, f64) -> Result<CertifiedValue>;
    let metrics: [(&str, Metric); 4] = [
        ("D", metric_D),
        ("Gamma", metric_Gamma),
        ("dinf", |u, v, _| metric_dinf(u, v)),
        ("dq", |u, v, _| metric_dq(u, v, DEFAULT_Q, DEFAULT_QUAD_N)),
    ];
    let zero = CertifiedValue::exact(0.0);
    for i in 0..trials {
        let mut t = Trial::new("axioms", seed, i, dim);
        let [u, v, w]: [FuzzyNumber; 3] = t.numbers(3)?.try_into().expect("three numbers");
        let p = pitch(h, &[&u, &v, &w]);
        for (name, m) in metrics {
            let inputs =
                || json!({"seed": seed, "trial": i, "metric": name, "pitch": p, "u": u, "v": v, "w": w});
            let uu = m(&u, &u, p)?;
            tally.record(i, uu, zero, inputs);
            let (uv, vu) = (m(&u, &v, p)?, m(&v, &u, p)?);
            tally.record(i, uv, vu, inputs);
            tally.record(i, vu, uv, inputs);
            let (uw, vw) = (m(&u, &w, p)?, m(&v, &w, p)?);
            tally.record(i, uw, uv.plus(&vw), inputs);
        }
    }
    Ok(
        header("axioms", Category::Sanity, seed, trials, dim_value(dim), h).finish(
            tally,
            started,
            Value::Null,
        ),
    )
}

/// Equality case of the scalar bound: `u = [−2, 2]`, `α = 1`, `β = 0`,
/// where both sides equal 2.
pub fn witness_scalar(h: f64) -> Result<CampaignReport> {
    let started = Instant::now();
    let u = generate_str("crisp_interval:-2,2")?;
    let z = u.scalar_mul(0.0);
    let p = pitch(h, &[&u, &z]);
    let lhs = metric_D(&u, &z, p)?;
    let rhs = CertifiedValue::exact(u.support_radius(0.0)?);
    let mut tally = Tally::new();
    tally.record(
        0,
        lhs,
        rhs,
        || json!({"u": u, "alpha": 1.0, "beta": 0.0, "pitch": p}),
    );
    Ok(
        header("thm2.3:witness", Category::Theorem, 0, 1, json!(1), h).finish(
            tally,
            started,
            json!({"lhs": lhs, "rhs": rhs}),
        ),
    )
}

/// Equality case of the sum bound: `u = ({0}, {0})`, `v = ({1}, {2})`,
/// where both sides equal 3.
pub fn witness_sum(h: f64) -> Result<CampaignReport> {
    let started = Instant::now();
    let pt = |a: f64| generate_str(&format!("crisp_point:{a}"));
    let us = vec![pt(0.0)?, pt(0.0)?];
    let vs = vec![pt(1.0)?, pt(2.0)?];
    let (su, sv) = (add(&us)?, add(&vs)?);
    let p = pitch(h, &[&su, &sv]);
    let lhs = metric_D(&su, &sv, p)?;
    let parts = us
        .iter()
        .zip(&vs)
        .map(|(u, v)| metric_D(u, v, pitch(h, &[u, v])))
        .collect::<Result<Vec<_>>>()?;
    let rhs = CertifiedValue::sum(&parts);
    let mut tally = Tally::new();
    tally.record(0, lhs, rhs, || json!({"us": us, "vs": vs, "pitch": p}));
    Ok(
        header("thm2.4:witness", Category::Theorem, 0, 1, json!(1), h).finish(
            tally,
            started,
            json!({"lhs": lhs, "rhs": rhs}),
        ),
    )
}

/// Base fuzzy number for the sequence and path checks.
fn base_number(dim: usize) -> Result<FuzzyNumber> {
    match dim {
        1 => triangular(0.0, 1.0, 2.0),
        _ => make_fuzzy_number(
            2,
            vec![
                (
                    0.0,
                    RawCut::Vertices(vec![[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]),
                ),
                (1.0, RawCut::Vertices(vec![[1.0, 0.5]])),
            ],
        ),
    }
}

/// Metrics with an independent oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMetric {
    D,
    Gamma,
    Dq,
}

impl OracleMetric {
    pub fn name(self) -> &'static str {
        match self {
            OracleMetric::D => "D",
            OracleMetric::Gamma => "gamma",
            OracleMetric::Dq => "dq",
        }
    }
}

impl std::str::FromStr for OracleMetric {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(OracleMetric::D),
            "gamma" | "Gamma" => Ok(OracleMetric::Gamma),
            "dq" => Ok(OracleMetric::Dq),
            _ => Err(FuzzyError::Spec(format!(
                "no oracle for metric `{s}`; expected D, gamma or dq"
            ))),
        }
    }
}

/// Nodes for the reference d_q quadrature.
pub const ORACLE_DQ_NODES: usize = 2048;

/// Fast path against oracle on seeded pairs. Each pair records the claim in
/// both directions, so a violation means the two enclosures are disjoint.
/// `h` is relative, as in every campaign; the oracle lattice uses the same
/// pitch as the fast path.
pub fn check_oracle_agreement(
    metric: OracleMetric,
    trials: u64,
    seed: u64,
    dim: DimChoice,
    h: f64,
    point_budget: u64,
) -> Result<CampaignReport> {
    check_trials(trials)?;
    let started = Instant::now();
    let mut tally = Tally::new();
    let id = format!("oracle:{}", metric.name());
    for i in 0..trials {
        let mut t = Trial::new(&id, seed, i, dim);
        let (u, v) = (t.number()?, t.number()?);
        let p = pitch(h, &[&u, &v]);
        let (fast, slow) = match metric {
            OracleMetric::D => (
                metric_D(&u, &v, p)?,
                oracle_D_with_budget(&u, &v, p, point_budget)?,
            ),
            OracleMetric::Gamma => (
                metric_Gamma(&u, &v, p)?,
                oracle_Gamma_with_budget(&u, &v, p, 1.0, point_budget)?,
            ),
            OracleMetric::Dq => (
                metric_dq(&u, &v, DEFAULT_Q, DEFAULT_QUAD_N)?,
                oracle_dq_estimate(&u, &v, DEFAULT_Q, ORACLE_DQ_NODES)?,
            ),
        };
        let inputs = || json!({"seed": seed, "trial": i, "pitch": p, "u": u, "v": v});
        tally.record(i, fast, slow, inputs);
        tally.record(i, slow, fast, inputs);
    }
    Ok(header(&id, Category::Sanity, seed, trials, dim_value(dim), h).finish(tally, started, Value::Null))
}

/// The three built-in path families around [`base_number`].
pub fn builtin_paths(dim: usize) -> Result<Vec<FuzzyPath>> {
    let base = base_number(dim)?;
    let (direction, far) = match dim {
        1 => (vec![1.0], generate_str("crisp_point:4")?),
        _ => (
            vec![1.0, 0.5],
            make_fuzzy_number(
                2,
                vec![
                    (0.0, RawCut::Vertices(vec![[4.0, 1.0]])),
                    (1.0, RawCut::Vertices(vec![[4.0, 1.0]])),
                ],
            )?,
        ),
    };
    Ok(vec![
        FuzzyPath::Translation {
            base: base.clone(),
            direction,
        },
        FuzzyPath::Scaling { base: base.clone() },
        FuzzyPath::Mixture { u: base, v: far },
    ])
}

fn single_dim(dim: DimChoice) -> usize {
    match dim {
        DimChoice::Two => 2,
        _ => 1,
    }
}

/// Runs the campaigns behind one identifier from [`THEOREM_IDS`].
pub fn run_theorem(id: &str, trials: u64, seed: u64, dim: DimChoice, h: f64) -> Result<Vec<CampaignReport>> {
    match id {
        "thm2.1" | "cor2.1" => Ok(check_convex_combo(trials, seed, dim, h)?
            .into_iter()
            .filter(|r| r.theorem_id == id)
            .collect()),
        "thm2.2" => builtin_paths(single_dim(dim))?
            .iter()
            .map(|p| check_support_bounded(p, (0.0, 1.0), DEFAULT_PATH_SAMPLES, h))
            .collect(),
        "thm2.3" => Ok(vec![check_scalar(trials, seed, dim, h)?, witness_scalar(h)?]),
        "thm2.4" => Ok(vec![check_sum(trials, seed, dim, None, h)?, witness_sum(h)?]),
        "chain" => Ok(vec![check_chain(trials, seed, dim, h, DEFAULT_Q)?]),
        "convergence" => {
            let u = base_number(single_dim(dim))?;
            SequenceKind::ALL
                .into_iter()
                .map(|k| check_convergence(k, &u, DEFAULT_M_MAX, h, DEFAULT_Q))
                .collect()
        }
        "endograph" => check_endograph(trials, seed, dim, h, &DEFAULT_EPSILONS),
        "axioms" => Ok(vec![check_metric_axioms(trials, seed, dim, h)?]),
        other => Err(FuzzyError::Spec(format!(
            "unknown theorem `{other}`; expected one of {}",
            THEOREM_IDS.join(", ")
        ))),
    }
}

/// Every campaign with defaults: randomized ones over mixed dimensions,
/// sequences and paths in dimensions 1 and 2.
pub fn verify_all(seed: u64, trials: u64, h: f64) -> Result<Vec<CampaignReport>> {
    let mut out = Vec::new();
    out.extend(check_convex_combo(trials, seed, DimChoice::Mixed, h)?);
    out.extend(run_theorem("thm2.3", trials, seed, DimChoice::Mixed, h)?);
    out.extend(run_theorem("thm2.4", trials, seed, DimChoice::Mixed, h)?);
    out.extend(run_theorem("chain", trials, seed, DimChoice::Mixed, h)?);
    out.extend(run_theorem("axioms", trials, seed, DimChoice::Mixed, h)?);
    for dim in [DimChoice::One, DimChoice::Two] {
        out.extend(run_theorem("convergence", trials, seed, dim, h)?);
        out.extend(run_theorem("thm2.2", trials, seed, dim, h)?);
    }
    out.extend(run_theorem("endograph", trials, seed, DimChoice::Mixed, h)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaigns_pass_and_are_deterministic() {
        let a = check_convex_combo(20, 7, DimChoice::Mixed, 0.05).unwrap();
        let b = check_convex_combo(20, 7, DimChoice::Mixed, 0.05).unwrap();
        assert_eq!(a.len(), 2);
        for (x, y) in a.iter().zip(&b) {
            assert!(x.passed(), "{}", x.summary_line());
            assert_eq!(x.max_slack, y.max_slack);
        }
        assert!(check_scalar(20, 7, DimChoice::Two, 0.05).unwrap().passed());
        assert!(check_sum(9, 7, DimChoice::One, None, 0.05).unwrap().passed());
        assert!(check_chain(20, 7, DimChoice::Mixed, 0.05, 2.0).unwrap().passed());
        assert!(check_metric_axioms(10, 7, DimChoice::Mixed, 0.05)
            .unwrap()
            .passed());
    }

    #[test]
    fn oracle_agreement_on_a_few_pairs() {
        for m in [OracleMetric::D, OracleMetric::Gamma, OracleMetric::Dq] {
            let r = check_oracle_agreement(m, 6, 3, DimChoice::Mixed, 0.05, 5_000_000).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
        }
        assert!("dinf".parse::<OracleMetric>().is_err());
    }

    #[test]
    fn witnesses_are_tight() {
        for r in [witness_scalar(0.01).unwrap(), witness_sum(0.01).unwrap()] {
            assert!(r.passed() && r.is_tight(), "{}", r.summary_line());
        }
    }

    #[test]
    fn sequences_behave_as_designed() {
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        for kind in SequenceKind::ALL {
            let r = check_convergence(kind, &u, 16, 0.02, 2.0).unwrap();
            assert!(r.passed(), "{}", r.summary_line());
        }
    }

    #[test]
    fn paths_are_support_bounded() {
        for p in builtin_paths(1).unwrap() {
            let r = check_support_bounded(&p, (0.0, 1.0), 16, 0.02).unwrap();
            assert!(r.passed(), "{} {}", r.summary_line(), r.details);
        }
        let r = check_support_bounded(&builtin_paths(1).unwrap()[0], (0.0, 1.0), 8, 0.02).unwrap();
        assert_eq!(r.details["support_radius"], 3.0);
    }

    #[test]
    fn unknown_theorem_is_a_spec_error() {
        assert!(matches!(
            run_theorem("thm9", 1, 0, DimChoice::One, 0.02),
            Err(FuzzyError::Spec(_))
        ));
        assert!(check_scalar(0, 0, DimChoice::One, 0.02).is_err());
    }
}
