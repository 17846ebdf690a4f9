//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fuzzymetric::generators::{random_fuzzy, SequenceKind};
use fuzzymetric::oracle::DEFAULT_POINT_BUDGET;
use fuzzymetric::propsuite::{
    check_convergence, check_endograph, check_oracle_agreement, run_theorem, witness_scalar, witness_sum,
    CampaignReport, DimChoice, OracleMetric, DEFAULT_EPSILONS, DEFAULT_M_MAX, VIOLATION_TOL,
};
use fuzzymetric::{
    crisp_interval, make_fuzzy_number, metric_D, metric_Gamma, metric_dq, triangular, CertifiedValue,
    FuzzyNumber, RawCut,
};
use serde_json::Value;

/// Wall-clock limit for `verify-all --seed 42`.
const VERIFY_ALL_LIMIT: Duration = Duration::from_secs(600);
/// Minimum randomized trials per theorem campaign.
const MIN_TRIALS: u64 = 1000;
/// Resolution for spot values.
const SPOT_H: f64 = 0.01;
/// Extra absolute tolerance on spot values beyond the enclosure.
const SPOT_TOL: f64 = 1e-9;
/// Pairs per metric in the oracle agreement check.
const ORACLE_PAIRS: u64 = 200;
/// Relative resolution for the oracle agreement check.
const ORACLE_H: f64 = 0.02;
/// Required shrink factor of the D and Γ enclosures per halving of h.
const MIN_SHRINK: f64 = 1.8;
/// Resolutions for the shrink check.
const SHRINK_HS: [f64; 3] = [0.04, 0.02, 0.01];
/// Required ratio of adjacent path increments when the sample count doubles.
const MIN_INCREMENT_RATIO: f64 = 1.8;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_violations(reports: &[CampaignReport]) -> Result<(), String> {
    for r in reports {
        ensure(r.passed(), || {
            format!("{} has {} violations", r.theorem_id, r.violations.len())
        })?;
    }
    Ok(())
}

fn verify_all_seed_42() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fuzzymetric"))
        .args(["verify-all", "--seed", "42", "--out-dir"])
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        )
    })?;
    ensure(elapsed < VERIFY_ALL_LIMIT, || format!("took {elapsed:?}"))?;
    let text = std::fs::read_to_string(dir.path().join("verify-all.json")).map_err(|e| e.to_string())?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let campaigns = doc["campaigns"].as_array().ok_or("no campaigns")?;
    let mut dims = [false; 2];
    for id in [
        "thm2.1",
        "cor2.1",
        "thm2.3",
        "thm2.4",
        "chain",
        "axioms",
        "endo:convex",
        "endo:sum",
    ] {
        let c = campaigns
            .iter()
            .find(|c| c["theorem_id"] == id)
            .ok_or_else(|| format!("missing campaign {id}"))?;
        ensure(c["trials"].as_u64() >= Some(MIN_TRIALS), || {
            format!("{id}: too few trials")
        })?;
        ensure(c["h"] == 0.02, || format!("{id}: h = {}", c["h"]))?;
        ensure(c["dim"] == "mixed", || format!("{id}: dim = {}", c["dim"]))?;
    }
    for c in campaigns {
        ensure(c["violations"].as_array().is_some_and(Vec::is_empty), || {
            format!("{} has violations", c["theorem_id"])
        })?;
        match c["dim"].as_u64() {
            Some(1) => dims[0] = true,
            Some(2) => dims[1] = true,
            _ => {}
        }
    }
    ensure(dims == [true, true], || "per-dimension campaigns missing".into())?;
    Ok(format!(
        "{} campaigns, 0 violations, {:.1}s",
        campaigns.len(),
        elapsed.as_secs_f64()
    ))
}

fn tightness_witnesses() -> Check {
    let mut notes = vec![];
    for (r, expect) in [(witness_scalar(0.02), 2.0), (witness_sum(0.02), 3.0)] {
        let r = r.map_err(|e| e.to_string())?;
        let lhs: CertifiedValue =
            serde_json::from_value(r.details["lhs"].clone()).map_err(|e| e.to_string())?;
        let rhs: CertifiedValue =
            serde_json::from_value(r.details["rhs"].clone()).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.is_tight(), || {
            format!("{}: {}", r.theorem_id, r.summary_line())
        })?;
        ensure(
            lhs.contains(expect, VIOLATION_TOL) && rhs.contains(expect, VIOLATION_TOL),
            || format!("{}: lhs {lhs}, rhs {rhs}, expected {expect}", r.theorem_id),
        )?;
        notes.push(format!("{} lhs={lhs} rhs={rhs}", r.theorem_id));
    }
    Ok(notes.join("; "))
}

fn point(a: f64) -> FuzzyNumber {
    crisp_interval(a, a).expect("valid point")
}

fn spot_values() -> Check {
    let e = |r: fuzzymetric::Result<CertifiedValue>| r.map_err(|e| e.to_string());
    let cases: Vec<(&str, CertifiedValue, f64)> = vec![
        (
            "D([0,1],[0,3])",
            e(metric_D(
                &crisp_interval(0.0, 1.0).unwrap(),
                &crisp_interval(0.0, 3.0).unwrap(),
                SPOT_H,
            ))?,
            2.0,
        ),
        (
            "D({-1.5},{2.25})",
            e(metric_D(&point(-1.5), &point(2.25), SPOT_H))?,
            3.75,
        ),
        ("D({7},{7})", e(metric_D(&point(7.0), &point(7.0), SPOT_H))?, 0.0),
        (
            "Gamma({0},{5})",
            e(metric_Gamma(&point(0.0), &point(5.0), SPOT_H))?,
            1.0,
        ),
        (
            "Gamma({0},{0.4})",
            e(metric_Gamma(&point(0.0), &point(0.4), SPOT_H))?,
            0.4,
        ),
        (
            "d2([0,1],tri(0,0.5,1))",
            e(metric_dq(
                &crisp_interval(0.0, 1.0).unwrap(),
                &triangular(0.0, 0.5, 1.0).unwrap(),
                2.0,
                64,
            ))?,
            (1.0f64 / 12.0).sqrt(),
        ),
    ];
    for (name, got, want) in &cases {
        ensure(got.contains(*want, SPOT_TOL), || {
            format!("{name} = {got}, expected {want}")
        })?;
    }
    Ok(format!("{} spot values inside their enclosures", cases.len()))
}

fn oracle_agreement() -> Check {
    let mut notes = vec![];
    for m in [OracleMetric::D, OracleMetric::Gamma, OracleMetric::Dq] {
        let r = check_oracle_agreement(
            m,
            ORACLE_PAIRS,
            42,
            DimChoice::Mixed,
            ORACLE_H,
            DEFAULT_POINT_BUDGET,
        )
        .map_err(|e| e.to_string())?;
        no_violations(std::slice::from_ref(&r))?;
        notes.push(format!("{}: {} pairs overlap", m.name(), r.trials));
    }
    let mut worst = f64::INFINITY;
    for seed in 0..20u64 {
        let dim = 1 + (seed % 2) as usize;
        let u = random_fuzzy(seed, dim, 4, 1.0).map_err(|e| e.to_string())?;
        let v = random_fuzzy(seed + 1000, dim, 4, 1.0).map_err(|e| e.to_string())?;
        for f in [metric_D, metric_Gamma] {
            let widths = SHRINK_HS
                .iter()
                .map(|&h| f(&u, &v, h).map(|c| c.half_width))
                .collect::<fuzzymetric::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            for w in widths.windows(2) {
                worst = worst.min(w[0] / w[1]);
            }
        }
    }
    ensure(worst >= MIN_SHRINK, || {
        format!("half-width shrink factor {worst}")
    })?;
    notes.push(format!("min shrink {worst:.3}"));
    Ok(notes.join("; "))
}

fn convergence_chain() -> Check {
    let mut notes = vec![];
    for dim in [1usize, 2] {
        let u = match dim {
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
        .map_err(|e| e.to_string())?;
        for kind in [SequenceKind::DinfConvergent, SequenceKind::DNotDinf] {
            let r = check_convergence(kind, &u, DEFAULT_M_MAX, 0.02, 2.0).map_err(|e| e.to_string())?;
            no_violations(std::slice::from_ref(&r))?;
            let table = r.details["table"].as_array().ok_or("no table")?;
            ensure(table.len() == DEFAULT_M_MAX, || "short sequence".into())?;
            if kind == SequenceKind::DNotDinf {
                ensure(table.iter().all(|row| row["dinf"] == 1.0), || {
                    "d_inf is not exactly 1".into()
                })?;
            }
            notes.push(format!("{} dim {dim}", kind.name()));
        }
    }
    Ok(format!("m <= {DEFAULT_M_MAX}: {}", notes.join(", ")))
}

fn support_bounded_paths() -> Check {
    let mut notes = vec![];
    for (dim, choice) in [(1, DimChoice::One), (2, DimChoice::Two)] {
        let reports = run_theorem("thm2.2", 1, 0, choice, 0.02).map_err(|e| e.to_string())?;
        ensure(reports.len() == 3, || {
            format!("dim {dim}: {} path families", reports.len())
        })?;
        no_violations(&reports)?;
        for r in &reports {
            ensure(r.trials == 128, || format!("{}: n = {}", r.theorem_id, r.trials))?;
            let radius = r.details["support_radius"].as_f64().unwrap_or(f64::NAN);
            let ratio = r.details["increment_ratio"].as_f64().unwrap_or(f64::NAN);
            ensure(radius.is_finite(), || format!("{}: R = {radius}", r.theorem_id))?;
            ensure(ratio >= MIN_INCREMENT_RATIO, || {
                format!("{}: increment ratio {ratio}", r.theorem_id)
            })?;
            if dim == 1 && r.theorem_id == "thm2.2:translation" {
                ensure(radius == 3.0, || format!("translation R = {radius}, expected 3"))?;
            }
            notes.push(format!("{}[{dim}] R={radius} ratio={ratio:.2}", r.theorem_id));
        }
    }
    Ok(notes.join(", "))
}

fn endograph_campaigns() -> Check {
    let run = || check_endograph(MIN_TRIALS, 42, DimChoice::Mixed, 0.02, &DEFAULT_EPSILONS);
    let first = run().map_err(|e| e.to_string())?;
    let mut notes = vec![];
    for eps in DEFAULT_EPSILONS {
        let id = format!("endo:scalar:eps={eps}");
        ensure(first.iter().any(|r| r.theorem_id == id), || {
            format!("missing {id}")
        })?;
    }
    let found: usize = first.iter().map(|r| r.violations.len()).sum();
    if found > 0 {
        let again = run().map_err(|e| e.to_string())?;
        for (a, b) in first.iter().zip(&again) {
            ensure(a.violations == b.violations, || {
                format!("{}: counterexample not reproducible", a.theorem_id)
            })?;
        }
        for r in first.iter().filter(|r| !r.passed()) {
            notes.push(format!(
                "{} reproducible counterexample(s): {}",
                r.theorem_id,
                r.violations.len()
            ));
        }
    }
    for r in &first {
        if r.passed() {
            notes.push(format!("{} 0 violations", r.theorem_id));
        }
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 verify-all --seed 42", verify_all_seed_42),
        ("2 tightness witnesses", tightness_witnesses),
        ("3 spot values", spot_values),
        ("4 oracle agreement and refinement", oracle_agreement),
        ("5 convergence chain", convergence_chain),
        ("6 support-bounded paths", support_bounded_paths),
        ("7 endograph campaigns", endograph_campaigns),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let result = check();
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("ACCEPTANCE PASS [{name}] ({secs:.1}s) {note}"),
            Err(why) => {
                failed += 1;
                println!("ACCEPTANCE FAIL [{name}] ({secs:.1}s) {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
