//! Deterministic families and seeded random fuzzy numbers, sequences and
//! paths.
//!
//! All randomness comes from ChaCha8 seeded by a `u64`; campaign trials use
//! one stream per trial index so they can be generated in any order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cut::Cut;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::{make_fuzzy_number, FuzzyNumber, FuzzyPath, Level, RawCut};
use crate::planar::{ConvexPolygon, Vec2};

/// Name of the generator recorded in report headers.
pub const PRNG_NAME: &str = "ChaCha8";

/// Width of the linear ramp that stands in for a jump in α.
pub const JUMP_RAMP: f64 = 1e-9;

/// A parsed generator spec, e.g. `triangular:0,1,2` or
/// `random:seed=42,dim=1,levels=5,scale=10`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Triangular(f64, f64, f64),
    Trapezoidal(f64, f64, f64, f64),
    CrispInterval(f64, f64),
    CrispPoint(f64),
    Random {
        seed: u64,
        dim: usize,
        levels: usize,
        scale: f64,
    },
}

fn spec_err(msg: impl Into<String>) -> FuzzyError {
    FuzzyError::Spec(msg.into())
}

fn numbers(args: &str, want: usize, name: &str) -> Result<Vec<f64>> {
    let vals = args
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| spec_err(format!("{name}: `{}` is not a number", s.trim())))
        })
        .collect::<Result<Vec<f64>>>()?;
    if vals.len() != want {
        return Err(spec_err(format!(
            "{name} takes {want} parameters, got {}",
            vals.len()
        )));
    }
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(spec_err(format!("{name}: parameters must be finite")));
    }
    Ok(vals)
}

impl FromStr for GenSpec {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| spec_err(format!("`{s}` is not of the form kind:params")))?;
        match kind.trim() {
            "triangular" => {
                let v = numbers(args, 3, "triangular")?;
                Ok(GenSpec::Triangular(v[0], v[1], v[2]))
            }
            "trapezoidal" => {
                let v = numbers(args, 4, "trapezoidal")?;
                Ok(GenSpec::Trapezoidal(v[0], v[1], v[2], v[3]))
            }
            "crisp_interval" => {
                let v = numbers(args, 2, "crisp_interval")?;
                Ok(GenSpec::CrispInterval(v[0], v[1]))
            }
            "crisp_point" => {
                let v = numbers(args, 1, "crisp_point")?;
                Ok(GenSpec::CrispPoint(v[0]))
            }
            "random" => {
                let (mut seed, mut dim, mut levels, mut scale) = (0u64, 1usize, 5usize, 1.0f64);
                for kv in args.split(',').filter(|kv| !kv.trim().is_empty()) {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| spec_err(format!("random: `{kv}` is not key=value")))?;
                    let bad = || spec_err(format!("random: bad value `{v}` for {k}"));
                    match k.trim() {
                        "seed" => seed = v.trim().parse().map_err(|_| bad())?,
                        "dim" => dim = v.trim().parse().map_err(|_| bad())?,
                        "levels" => levels = v.trim().parse().map_err(|_| bad())?,
                        "scale" => scale = v.trim().parse().map_err(|_| bad())?,
                        other => return Err(spec_err(format!("random: unknown key `{other}`"))),
                    }
                }
                Ok(GenSpec::Random {
                    seed,
                    dim,
                    levels,
                    scale,
                })
            }
            other => Err(spec_err(format!("unknown generator `{other}`"))),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Triangular(a, b, c) => write!(f, "triangular:{a},{b},{c}"),
            GenSpec::Trapezoidal(a, b, c, d) => write!(f, "trapezoidal:{a},{b},{c},{d}"),
            GenSpec::CrispInterval(a, b) => write!(f, "crisp_interval:{a},{b}"),
            GenSpec::CrispPoint(a) => write!(f, "crisp_point:{a}"),
            GenSpec::Random {
                seed,
                dim,
                levels,
                scale,
            } => write!(f, "random:seed={seed},dim={dim},levels={levels},scale={scale}"),
        }
    }
}

/// Builds the fuzzy number described by `spec`.
pub fn generate(spec: &GenSpec) -> Result<FuzzyNumber> {
    match *spec {
        GenSpec::Triangular(a, b, c) => trapezoidal(a, b, b, c),
        GenSpec::Trapezoidal(a, b, c, d) => trapezoidal(a, b, c, d),
        GenSpec::CrispInterval(a, b) => {
            if a > b {
                return Err(spec_err(format!("crisp_interval needs a <= b, got {a}, {b}")));
            }
            trapezoidal(a, a, b, b)
        }
        GenSpec::CrispPoint(a) => trapezoidal(a, a, a, a),
        GenSpec::Random {
            seed,
            dim,
            levels,
            scale,
        } => random_fuzzy(seed, dim, levels, scale),
    }
}

/// Parses and builds in one step.
pub fn generate_str(spec: &str) -> Result<FuzzyNumber> {
    generate(&spec.parse()?)
}

/// Support `[a, d]`, core `[b, c]`.
pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<FuzzyNumber> {
    if !(a <= b && b <= c && c <= d) {
        return Err(spec_err(format!(
            "trapezoidal needs a <= b <= c <= d, got {a}, {b}, {c}, {d}"
        )));
    }
    make_fuzzy_number(
        1,
        vec![
            (0.0, RawCut::Interval { lo: a, hi: d }),
            (1.0, RawCut::Interval { lo: b, hi: c }),
        ],
    )
}

/// The rng for trial `index` of a campaign seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `seed` → a reproducible fuzzy number with `levels` stored levels.
pub fn random_fuzzy(seed: u64, dim: usize, levels: usize, scale: f64) -> Result<FuzzyNumber> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_with(&mut rng, dim, levels, scale)
}

fn sorted_unit(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// A random fuzzy number drawn from `rng`: a support cut, a core inside it,
/// and intermediate cuts blended from support toward core with increasing
/// factors, so nestedness holds by construction.
pub fn random_with(rng: &mut impl Rng, dim: usize, levels: usize, scale: f64) -> Result<FuzzyNumber> {
    if levels < 2 {
        return Err(spec_err(format!("random needs at least 2 levels, got {levels}")));
    }
    if !(scale.is_finite() && scale > 0.0) {
        return Err(spec_err(format!("random needs a positive scale, got {scale}")));
    }
    let mut alphas = vec![0.0];
    for a in sorted_unit(rng, levels - 2) {
        // Keep levels strictly increasing and inside (0, 1).
        let a = a.clamp(1e-6, 1.0 - 1e-6);
        if a > *alphas.last().expect("nonempty") {
            alphas.push(a);
        }
    }
    alphas.push(1.0);
    let mut lambdas = vec![0.0];
    lambdas.extend(sorted_unit(rng, alphas.len() - 2));
    lambdas.push(1.0);

    let (support, core) = match dim {
        1 => {
            let c = scale * (rng.random::<f64>() - 0.5);
            let lo = c - scale * rng.random::<f64>();
            let hi = c + scale * rng.random::<f64>();
            let mut k = sorted_unit(rng, 2);
            if rng.random_bool(0.3) {
                k[1] = k[0];
            }
            let support = Cut::interval(lo, hi)?;
            let core = Cut::interval(lo + k[0] * (hi - lo), lo + k[1] * (hi - lo))?;
            (support, core)
        }
        2 => {
            let n = rng.random_range(3..=6);
            let center = Vec2::new(
                scale * (rng.random::<f64>() - 0.5),
                scale * (rng.random::<f64>() - 0.5),
            );
            let cloud: Vec<Vec2> = (0..n)
                .map(|_| {
                    let r = 0.5 * scale * (0.2 + 0.8 * rng.random::<f64>());
                    let t = std::f64::consts::TAU * rng.random::<f64>();
                    center + Vec2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            let p = ConvexPolygon::hull_of(&cloud);
            let k = rng.random_range(1..=3);
            let inner: Vec<Vec2> = (0..k)
                .map(|_| {
                    let w: Vec<f64> = p.vertices().iter().map(|_| rng.random::<f64>()).collect();
                    let total: f64 = w.iter().sum();
                    p.vertices()
                        .iter()
                        .zip(&w)
                        .fold(Vec2::new(0.0, 0.0), |acc, (v, wi)| acc + *v * (wi / total))
                })
                .collect();
            let q = ConvexPolygon::hull_of(&inner);
            (Cut::Polygon(p), Cut::Polygon(q))
        }
        _ => {
            return Err(spec_err(format!("random: dimension {dim} is not 1 or 2")));
        }
    };
    let cuts = alphas
        .iter()
        .zip(&lambdas)
        .map(|(&alpha, &l)| {
            let cut = if l == 0.0 {
                support.clone()
            } else if l == 1.0 {
                core.clone()
            } else {
                support.blend(&core, l)?
            };
            Ok(Level { alpha, cut })
        })
        .collect::<Result<Vec<_>>>()?;
    FuzzyNumber::from_levels(dim, cuts)
}

/// Log-uniform scale in `[0.1, 100]`.
pub fn random_scale(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.random_range(-1.0..=2.0))
}

/// A fuzzy number that is the wide cut (`[0, 1]` or the unit right triangle,
/// both at Hausdorff distance 1 from the origin) for
/// `α ≤ t` and the origin above, with the jump replaced by a ramp of width
/// [`JUMP_RAMP`]. For `t < 0` it is the crisp origin.
pub fn threshold_number(dim: usize, t: f64) -> Result<FuzzyNumber> {
    let wide = match dim {
        1 => RawCut::Interval { lo: 0.0, hi: 1.0 },
        2 => RawCut::Vertices(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
        _ => return Err(spec_err(format!("threshold: dimension {dim} is not 1 or 2"))),
    };
    let origin = match dim {
        1 => RawCut::Interval { lo: 0.0, hi: 0.0 },
        _ => RawCut::Vertices(vec![[0.0, 0.0]]),
    };
    if t.is_nan() || t >= 1.0 - JUMP_RAMP {
        return Err(spec_err(format!("threshold {t} must lie below 1")));
    }
    let mut levels = vec![];
    if t < 0.0 {
        levels.push((0.0, origin.clone()));
    } else {
        levels.push((0.0, wide.clone()));
        if t > 0.0 {
            levels.push((t, wide));
        }
        levels.push((t + JUMP_RAMP, origin.clone()));
    }
    levels.push((1.0, origin));
    make_fuzzy_number(dim, levels)
}

/// Designed convergent sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// `u_m = u + (1/m)·e_1`: converges in d_∞, hence in every weaker metric.
    DinfConvergent,
    /// Threshold `1/2 − 1/m` against threshold `1/2`: converges in D but
    /// stays at d_∞ distance 1.
    DNotDinf,
    /// `u_m = (1 + 1/m)·u`.
    Scaling,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [
        SequenceKind::DinfConvergent,
        SequenceKind::DNotDinf,
        SequenceKind::Scaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::DinfConvergent => "dinf_convergent",
            SequenceKind::DNotDinf => "D_not_dinf",
            SequenceKind::Scaling => "scaling",
        }
    }
}

impl FromStr for SequenceKind {
    type Err = FuzzyError;

    fn from_str(s: &str) -> Result<Self> {
        SequenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| spec_err(format!("unknown sequence kind `{s}`")))
    }
}

/// A sequence `u_1, …, u_{m_max}` with its designed limit.
#[derive(Debug, Clone)]
pub struct Sequence {
    pub kind: SequenceKind,
    pub terms: Vec<FuzzyNumber>,
    pub limit: FuzzyNumber,
}

/// Builds the `kind` sequence around `u` (ignored for `DNotDinf`, which
/// only takes its dimension).
pub fn make_sequence(kind: SequenceKind, u: &FuzzyNumber, m_max: usize) -> Result<Sequence> {
    if m_max == 0 {
        return Err(spec_err("a sequence needs m_max >= 1"));
    }
    let ms = 1..=m_max;
    let (terms, limit) = match kind {
        SequenceKind::DinfConvergent => {
            let terms = ms
                .map(|m| {
                    let mut shift = vec![0.0; u.dim()];
                    shift[0] = 1.0 / m as f64;
                    u.translate(&shift)
                })
                .collect::<Result<Vec<_>>>()?;
            (terms, u.clone())
        }
        SequenceKind::DNotDinf => {
            let terms = ms
                .map(|m| threshold_number(u.dim(), 0.5 - 1.0 / m as f64))
                .collect::<Result<Vec<_>>>()?;
            (terms, threshold_number(u.dim(), 0.5)?)
        }
        SequenceKind::Scaling => {
            let terms = ms.map(|m| u.scalar_mul(1.0 + 1.0 / m as f64)).collect();
            (terms, u.clone())
        }
    };
    Ok(Sequence { kind, terms, limit })
}

/// `n` uniform samples of `path` over `[t0, t1]`, endpoints included.
pub fn sample_path(path: &FuzzyPath, interval: (f64, f64), n: usize) -> Result<Vec<(f64, FuzzyNumber)>> {
    let (t0, t1) = interval;
    if n < 2 {
        return Err(spec_err(format!("a path sample needs n >= 2, got {n}")));
    }
    if !(t0.is_finite() && t1.is_finite() && t0 <= t1) {
        return Err(spec_err(format!("[{t0}, {t1}] is not a compact interval")));
    }
    (0..n)
        .map(|i| {
            let t = if i + 1 == n {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / (n - 1) as f64
            };
            Ok((t, path.eval(t)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::triangular;

    fn ends(u: &FuzzyNumber) -> Vec<(f64, f64, f64)> {
        u.levels()
            .iter()
            .map(|l| {
                let i = l.cut.as_interval().unwrap();
                (l.alpha, i.lo(), i.hi())
            })
            .collect()
    }

    #[test]
    fn named_families() {
        let u = generate_str("triangular:0,1,2").unwrap();
        assert_eq!(ends(&u), vec![(0.0, 0.0, 2.0), (1.0, 1.0, 1.0)]);
        let u = generate_str("crisp_point:5").unwrap();
        assert_eq!(ends(&u), vec![(0.0, 5.0, 5.0), (1.0, 5.0, 5.0)]);
        let u = generate_str("trapezoidal:0,1,2,4").unwrap();
        assert_eq!(ends(&u), vec![(0.0, 0.0, 4.0), (1.0, 1.0, 2.0)]);
        assert!(matches!(
            generate_str("triangular:2,1,0"),
            Err(FuzzyError::Spec(_))
        ));
        assert!(matches!(
            generate_str("crisp_interval:3,1"),
            Err(FuzzyError::Spec(_))
        ));
        assert!(matches!(generate_str("gaussian:0,1"), Err(FuzzyError::Spec(_))));
        assert!(matches!(generate_str("triangular:0,1"), Err(FuzzyError::Spec(_))));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["triangular:0,1,2", "random:seed=42,dim=1,levels=5,scale=10"] {
            let spec: GenSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = generate_str("random:seed=42,dim=1,levels=5,scale=10").unwrap();
        let b = generate_str("random:seed=42,dim=1,levels=5,scale=10").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.levels().len(), 5);
        let c = generate_str("random:seed=43,dim=1,levels=5,scale=10").unwrap();
        assert_ne!(a, c);
        let p = random_fuzzy(7, 2, 4, 3.0).unwrap();
        assert_eq!(p, random_fuzzy(7, 2, 4, 3.0).unwrap());
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let x: f64 = trial_rng(42, 5).random();
        let _: f64 = trial_rng(42, 4).random();
        let y: f64 = trial_rng(42, 5).random();
        assert_eq!(x, y);
        assert_ne!(x, trial_rng(42, 6).random::<f64>());
    }

    #[test]
    fn sequences() {
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        let s = make_sequence(SequenceKind::DinfConvergent, &u, 10).unwrap();
        assert!(s.terms[9].approx_eq(&triangular(0.1, 1.1, 2.1).unwrap(), 1e-15));
        let p = generate_str("crisp_point:1").unwrap();
        let s = make_sequence(SequenceKind::Scaling, &p, 4).unwrap();
        assert!(s.terms[3].approx_eq(&generate_str("crisp_point:1.25").unwrap(), 1e-15));
        let s = make_sequence(SequenceKind::DNotDinf, &u, 10).unwrap();
        let l = s.terms[9].levels();
        assert!((l[1].alpha - 0.4).abs() < 1e-15);
        assert_eq!(s.terms[0], FuzzyNumber::crisp(Cut::origin(1)));
        assert_eq!(s.terms[1].levels()[1].alpha, JUMP_RAMP);
        assert!("nope".parse::<SequenceKind>().is_err());
    }

    #[test]
    fn path_samples() {
        let path = FuzzyPath::Translation {
            base: triangular(0.0, 1.0, 2.0).unwrap(),
            direction: vec![1.0],
        };
        let s = sample_path(&path, (0.0, 1.0), 3).unwrap();
        let ts: Vec<f64> = s.iter().map(|(t, _)| *t).collect();
        assert_eq!(ts, vec![0.0, 0.5, 1.0]);
        assert!(s[2].1.approx_eq(&triangular(1.0, 2.0, 3.0).unwrap(), 1e-15));
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        let v = generate_str("crisp_point:4").unwrap();
        let mix = FuzzyPath::Mixture { u, v: v.clone() };
        assert_eq!(sample_path(&mix, (0.0, 1.0), 2).unwrap()[0].1, v);
        assert!(sample_path(&mix, (0.0, 1.0), 1).is_err());
    }
}
