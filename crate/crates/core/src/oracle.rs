//! Brute-force reference values for D, Γ and d_q.
//!
//! Nothing here reuses the fast-path geometry: cuts are re-derived from the
//! stored level data, planar hulls and point-to-polygon distances are
//! recomputed locally, and the graphs are rasterized on a regular lattice
//! and compared by exact point-set Hausdorff distance.

use crate::certified::CertifiedValue;
use crate::cut::Cut;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::FuzzyNumber;

/// Default cap on the number of lattice points per rasterized set.
pub const DEFAULT_POINT_BUDGET: u64 = 5_000_000;

/// An α-slice as the oracle sees it.
enum Slice {
    Interval(f64, f64),
    /// Counter-clockwise hull vertices; one or two entries for degenerate cuts.
    Polygon(Vec<[f64; 2]>),
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain. Collinear points are dropped.
fn hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = out.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while out.len() >= start + 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= 0.0 {
                out.pop();
            }
            out.push(p);
        }
        out.pop();
    }
    if out.is_empty() {
        out.push(pts[0]);
    }
    out
}

fn seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len = dx * dx + dy * dy;
    let t = if len > 0.0 {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len).clamp(0.0, 1.0)
    } else {
        0.0
    };
    ((p[0] - a[0] - t * dx).powi(2) + (p[1] - a[1] - t * dy).powi(2)).sqrt()
}

impl Slice {
    fn distance(&self, x: [f64; 2]) -> f64 {
        match self {
            Slice::Interval(lo, hi) => (lo - x[0]).max(x[0] - hi).max(0.0),
            Slice::Polygon(v) => {
                let n = v.len();
                if n >= 3 && (0..n).all(|i| cross(v[i], v[(i + 1) % n], x) >= 0.0) {
                    return 0.0;
                }
                if n == 1 {
                    return seg_dist(x, v[0], v[0]);
                }
                (0..n)
                    .map(|i| seg_dist(x, v[i], v[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    fn hausdorff(&self, other: &Slice) -> f64 {
        match (self, other) {
            (Slice::Interval(a, b), Slice::Interval(c, d)) => (a - c).abs().max((b - d).abs()),
            (Slice::Polygon(p), Slice::Polygon(q)) => {
                // Distance to a convex set is convex, so each directed part
                // peaks at a vertex.
                let one = p.iter().map(|&x| other.distance(x)).fold(0.0, f64::max);
                let two = q.iter().map(|&x| self.distance(x)).fold(0.0, f64::max);
                one.max(two)
            }
            _ => f64::NAN,
        }
    }

    fn bbox(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            Slice::Interval(lo, hi) => ([*lo, 0.0], [*hi, 0.0]),
            Slice::Polygon(v) => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for p in v {
                    for k in 0..2 {
                        lo[k] = lo[k].min(p[k]);
                        hi[k] = hi[k].max(p[k]);
                    }
                }
                (lo, hi)
            }
        }
    }
}

fn raw_slice(c: &Cut) -> Slice {
    match c {
        Cut::Interval(i) => Slice::Interval(i.lo(), i.hi()),
        Cut::Polygon(p) => Slice::Polygon(p.vertices().iter().map(|v| [v.x, v.y]).collect()),
    }
}

/// `[u]_α` from the stored levels: linear in the endpoints for p = 1, the
/// hull of all pairwise vertex blends for p = 2.
fn slice_at(u: &FuzzyNumber, alpha: f64) -> Slice {
    let levels = u.levels();
    let mut i = 0;
    while i + 1 < levels.len() && levels[i + 1].alpha <= alpha {
        i += 1;
    }
    if i + 1 == levels.len() || levels[i].alpha == alpha {
        return raw_slice(&levels[i].cut);
    }
    let (lower, upper) = (&levels[i], &levels[i + 1]);
    let t = (alpha - lower.alpha) / (upper.alpha - lower.alpha);
    match (raw_slice(&lower.cut), raw_slice(&upper.cut)) {
        (Slice::Interval(a, b), Slice::Interval(c, d)) => {
            Slice::Interval((1.0 - t) * a + t * c, (1.0 - t) * b + t * d)
        }
        (Slice::Polygon(p), Slice::Polygon(q)) => {
            let mut pts = Vec::with_capacity(p.len() * q.len());
            for a in &p {
                for b in &q {
                    pts.push([(1.0 - t) * a[0] + t * b[0], (1.0 - t) * a[1] + t * b[1]]);
                }
            }
            Slice::Polygon(hull(pts))
        }
        _ => unreachable!("levels share one dimension"),
    }
}

fn check(u: &FuzzyNumber, v: &FuzzyNumber, h: f64) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(FuzzyError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(FuzzyError::Domain(format!("grid pitch h = {h} must be positive")));
    }
    Ok(())
}

/// The lattice: per-axis origin and counts, α rows `k·h` for `k = 0..=K`.
struct Lattice {
    dim: usize,
    h: f64,
    origin: [f64; 2],
    counts: [usize; 2],
    rows: usize,
}

impl Lattice {
    fn over(us: &[&FuzzyNumber], h: f64, pad: f64, budget: u64) -> Result<Self> {
        let dim = us[0].dim();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for u in us {
            let (a, b) = raw_slice(&u.levels()[0].cut).bbox();
            for k in 0..dim {
                lo[k] = lo[k].min(a[k] - pad);
                hi[k] = hi[k].max(b[k] + pad);
            }
        }
        let mut counts = [1usize; 2];
        let mut origin = [0.0; 2];
        for k in 0..dim {
            origin[k] = lo[k];
            counts[k] = ((hi[k] - lo[k]) / h).ceil() as usize + 1;
        }
        let rows = (1.0 / h + 1e-9).floor() as usize + 1;
        let needed = (counts[0] as u64)
            .saturating_mul(counts[1] as u64)
            .saturating_mul(rows as u64);
        if needed > budget {
            return Err(FuzzyError::ResourceLimit { needed, budget });
        }
        Ok(Self {
            dim,
            h,
            origin,
            counts,
            rows,
        })
    }

    fn alpha(&self, k: usize) -> f64 {
        (k as f64 * self.h).min(1.0)
    }

    /// Radius within which every point of a graph has a kept lattice point.
    fn covering(&self) -> f64 {
        self.h * (1.0 + self.dim as f64 / 4.0).sqrt()
    }

    /// Half the lattice diagonal in the spatial directions.
    fn slack(&self) -> f64 {
        (self.dim as f64).sqrt() * self.h / 2.0
    }

    /// Lattice points within `slack` of the slice of `u` in each row; with
    /// `floor`, every lattice point of row 0.
    fn raster(&self, u: &FuzzyNumber, floor: bool) -> Vec<[f64; 3]> {
        let tau = self.slack();
        let mut out = Vec::new();
        for k in 0..self.rows {
            let a = self.alpha(k);
            let s = slice_at(u, a);
            let (blo, bhi) = s.bbox();
            let full = floor && k == 0;
            for j in 0..self.counts[1] {
                let y = self.origin[1] + j as f64 * self.h;
                if self.dim == 2 && !full && (y < blo[1] - tau || y > bhi[1] + tau) {
                    continue;
                }
                for i in 0..self.counts[0] {
                    let x = self.origin[0] + i as f64 * self.h;
                    if !full {
                        if x < blo[0] - tau || x > bhi[0] + tau {
                            continue;
                        }
                        if s.distance([x, y]) > tau {
                            continue;
                        }
                    }
                    out.push([x, y, a]);
                }
            }
        }
        out
    }
}

fn d2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

/// Exact directed Hausdorff distance between finite sets. The inner scan
/// stops once a point closer than the running maximum is found, which
/// cannot change the result; it starts where the previous nearest point was.
fn directed(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let mut worst: f64 = 0.0;
    let mut start = 0;
    for p in a {
        let (mut best, mut at) = (f64::INFINITY, start);
        for off in 0..b.len() {
            let idx = (start + off) % b.len();
            let d = d2(p, &b[idx]);
            if d < best {
                best = d;
                at = idx;
                if best <= worst {
                    break;
                }
            }
        }
        start = at;
        worst = worst.max(best);
    }
    worst.sqrt()
}

fn point_set_hausdorff(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    directed(a, b).max(directed(b, a))
}

/// Reference `D(u, v)` on a lattice of pitch `h`, with the default budget.
#[allow(non_snake_case)]
pub fn oracle_D(u: &FuzzyNumber, v: &FuzzyNumber, h: f64) -> Result<CertifiedValue> {
    oracle_D_with_budget(u, v, h, DEFAULT_POINT_BUDGET)
}

/// Reference `D(u, v)`: both sendographs rasterized on a common lattice of
/// pitch `h`, compared by exact point-set Hausdorff distance.
///
/// Each rasterized set lies within `√p·h/2` of its graph and covers it to
/// `h·√(1 + p/4)`, so the enclosure half-width is twice the latter.
#[allow(non_snake_case)]
pub fn oracle_D_with_budget(u: &FuzzyNumber, v: &FuzzyNumber, h: f64, budget: u64) -> Result<CertifiedValue> {
    check(u, v, h)?;
    let grid = Lattice::over(&[u, v], h, 0.0, budget)?;
    let (a, b) = (grid.raster(u, false), grid.raster(v, false));
    Ok(CertifiedValue::new(
        point_set_hausdorff(&a, &b),
        2.0 * grid.covering(),
    ))
}

/// Reference `Γ(u, v)` with the default budget.
#[allow(non_snake_case)]
pub fn oracle_Gamma(u: &FuzzyNumber, v: &FuzzyNumber, h: f64, window_pad: f64) -> Result<CertifiedValue> {
    oracle_Gamma_with_budget(u, v, h, window_pad, DEFAULT_POINT_BUDGET)
}

/// Reference `Γ(u, v)`: both endographs are clipped to the window (joint
/// support box inflated by `window_pad`) × [0, 1], rasterized including the
/// whole α = 0 floor of the window, and compared by exact point-set
/// Hausdorff distance. Enclosure as for [`oracle_D`].
#[allow(non_snake_case)]
pub fn oracle_Gamma_with_budget(
    u: &FuzzyNumber,
    v: &FuzzyNumber,
    h: f64,
    window_pad: f64,
    budget: u64,
) -> Result<CertifiedValue> {
    check(u, v, h)?;
    if !(window_pad.is_finite() && window_pad >= 1.0) {
        return Err(FuzzyError::Domain(format!(
            "window pad {window_pad} must be at least 1"
        )));
    }
    let grid = Lattice::over(&[u, v], h, window_pad, budget)?;
    let (a, b) = (grid.raster(u, true), grid.raster(v, true));
    Ok(CertifiedValue::new(
        point_set_hausdorff(&a, &b),
        2.0 * grid.covering(),
    ))
}

/// Reference `d_q(u, v)` by the midpoint rule at `n` uniform α nodes with
/// exact cutwise Hausdorff distances.
pub fn oracle_dq(u: &FuzzyNumber, v: &FuzzyNumber, q: f64, n: usize) -> Result<f64> {
    check(u, v, 1.0)?;
    if !(q.is_finite() && q >= 1.0) || n == 0 {
        return Err(FuzzyError::Domain(format!(
            "need q >= 1 and n >= 1, got q = {q}, n = {n}"
        )));
    }
    let sum: f64 = (0..n)
        .map(|k| {
            let a = (k as f64 + 0.5) / n as f64;
            slice_at(u, a).hausdorff(&slice_at(v, a)).powf(q)
        })
        .sum();
    Ok((sum / n as f64).powf(1.0 / q))
}

/// [`oracle_dq`] at `n` and `2n`, with twice their difference as an
/// empirical error bar around the finer value.
pub fn oracle_dq_estimate(u: &FuzzyNumber, v: &FuzzyNumber, q: f64, n: usize) -> Result<CertifiedValue> {
    let coarse = oracle_dq(u, v, q, n)?;
    let fine = oracle_dq(u, v, q, 2 * n)?;
    Ok(CertifiedValue::new(
        fine,
        2.0 * (fine - coarse).abs() + 1e-12 * (1.0 + fine),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{crisp_interval, make_fuzzy_number, triangular, RawCut};

    fn point(a: f64) -> FuzzyNumber {
        crisp_interval(a, a).unwrap()
    }

    #[test]
    fn boxes_and_translates() {
        let d = oracle_D(
            &crisp_interval(0.0, 1.0).unwrap(),
            &crisp_interval(0.0, 3.0).unwrap(),
            0.01,
        )
        .unwrap();
        assert!(d.contains(2.0, 1e-9) && d.half_width <= 0.04, "{d}");
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        let d = oracle_D(&u, &triangular(1.0, 2.0, 3.0).unwrap(), 0.01).unwrap();
        assert!(d.contains(1.0, 1e-9), "{d}");
        assert_eq!(oracle_D(&u, &u, 0.01).unwrap().value, 0.0);
    }

    #[test]
    fn endograph_clamp_values() {
        let g = oracle_Gamma(&point(0.0), &point(5.0), 0.01, 1.0).unwrap();
        assert!(g.contains(1.0, 1e-9) && g.half_width <= 0.04, "{g}");
        let g = oracle_Gamma(&point(0.0), &point(0.4), 0.01, 1.0).unwrap();
        assert!(g.contains(0.4, 1e-9), "{g}");
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        assert_eq!(oracle_Gamma(&u, &u, 0.05, 1.0).unwrap().value, 0.0);
        assert!(oracle_Gamma(&u, &u, 0.05, 0.5).is_err());
    }

    #[test]
    fn lq_reference() {
        let u = crisp_interval(0.0, 1.0).unwrap();
        let v = triangular(0.0, 0.5, 1.0).unwrap();
        let d = oracle_dq(&u, &v, 2.0, 100_000).unwrap();
        assert!((d - (1.0f64 / 12.0).sqrt()).abs() < 1e-4);
        assert_eq!(oracle_dq(&point(2.0), &point(-1.0), 3.0, 10).unwrap(), 3.0);
        let w = crisp_interval(0.0, 3.0).unwrap();
        assert!((oracle_dq(&u, &w, 1.0, 1000).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn planar_slices_are_recomputed() {
        let sq = |s: f64| RawCut::Vertices(vec![[0.0, 0.0], [s, 0.0], [s, s], [0.0, s]]);
        let u =
            make_fuzzy_number(2, vec![(0.0, sq(2.0)), (1.0, RawCut::Vertices(vec![[1.0, 1.0]]))]).unwrap();
        match slice_at(&u, 0.5) {
            Slice::Polygon(v) => {
                assert_eq!(v.len(), 4);
                assert!(v.contains(&[0.5, 0.5]) && v.contains(&[1.5, 1.5]));
            }
            Slice::Interval(..) => panic!("planar slice expected"),
        }
        let w = make_fuzzy_number(2, vec![(0.0, sq(1.0)), (1.0, sq(1.0))]).unwrap();
        let d = oracle_D(&w, &w, 0.05).unwrap();
        assert_eq!(d.value, 0.0);
    }

    #[test]
    fn budget_is_enforced() {
        let u = crisp_interval(0.0, 100.0).unwrap();
        let err = oracle_D_with_budget(&u, &u, 0.01, 1000).unwrap_err();
        assert!(matches!(err, FuzzyError::ResourceLimit { budget: 1000, .. }));
    }

    #[test]
    fn early_break_scan_is_exact() {
        use rand::Rng;
        for seed in 0..50 {
            let mut rng = crate::generators::trial_rng(seed, 0);
            let mut cloud = |n: usize| -> Vec<[f64; 3]> {
                (0..n)
                    .map(|_| {
                        [
                            rng.random_range(-3.0..3.0),
                            rng.random_range(-1.0..1.0),
                            rng.random(),
                        ]
                    })
                    .collect()
            };
            let (a, b) = (cloud(60), cloud(45));
            let brute = a
                .iter()
                .map(|p| b.iter().map(|q| d2(p, q)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max)
                .sqrt();
            assert_eq!(directed(&a, &b), brute, "seed {seed}");
        }
    }
}
