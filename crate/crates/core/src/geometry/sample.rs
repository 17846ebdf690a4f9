use crate::certified::CertifiedValue;
use crate::cut::Cut;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::FuzzyNumber;
use crate::planar::Vec2;

/// A finite inner sample of a compact set in R^(p+1) together with a bound on
/// how far any point of the set can be from the sample.
///
/// Points are stored as `[x, α, 0]` for p = 1 and `[x, y, α]` for p = 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SetSample {
    ambient_dim: usize,
    points: Vec<[f64; 3]>,
    covering_radius: f64,
}

impl SetSample {
    pub fn new(ambient_dim: usize, points: Vec<[f64; 3]>, covering_radius: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(FuzzyError::Empty("a set sample needs at least one point"));
        }
        if !covering_radius.is_finite() || covering_radius < 0.0 {
            return Err(FuzzyError::Domain(format!(
                "covering radius {covering_radius} must be finite and nonnegative"
            )));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(FuzzyError::NonFiniteCoordinate {
                context: "set sample".into(),
            });
        }
        Ok(Self {
            ambient_dim,
            points,
            covering_radius,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn covering_radius(&self) -> f64 {
        self.covering_radius
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_step(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(FuzzyError::Domain(format!(
            "sample spacing h = {h} must be positive"
        )))
    }
}

/// Points along `[a, b]` at spacing at most `step`, endpoints included.
/// Returns the points and the largest gap between consecutive ones.
fn subdivide(a: Vec2, b: Vec2, step: f64) -> (Vec<Vec2>, f64) {
    let len = (b - a).norm();
    if len == 0.0 {
        return (vec![a], 0.0);
    }
    let n = (len / step).ceil().max(1.0) as usize;
    let pts = (0..=n).map(|k| a + (b - a) * (k as f64 / n as f64)).collect();
    (pts, len / n as f64)
}

/// Samples one α-slice; returns planar points and the slice covering radius.
fn sample_slice(cut: &Cut, h: f64) -> (Vec<Vec2>, f64) {
    match cut {
        Cut::Interval(i) => {
            let (pts, gap) = subdivide(Vec2::new(i.lo(), 0.0), Vec2::new(i.hi(), 0.0), h);
            (pts, gap / 2.0)
        }
        Cut::Polygon(p) => {
            let vs = p.vertices();
            match vs.len() {
                1 => (vec![vs[0]], 0.0),
                2 => {
                    let (pts, gap) = subdivide(vs[0], vs[1], h / 2.0);
                    (pts, gap / 2.0)
                }
                n => {
                    let (b, g) = (h / 2.0, h / 2.0);
                    let mut pts = Vec::new();
                    let mut max_gap: f64 = 0.0;
                    for i in 0..n {
                        let (mut e, gap) = subdivide(vs[i], vs[(i + 1) % n], b);
                        e.pop();
                        pts.extend(e);
                        max_gap = max_gap.max(gap);
                    }
                    let (lo, hi) = p.bbox();
                    let i0 = (lo.x / g).ceil() as i64;
                    let i1 = (hi.x / g).floor() as i64;
                    let j0 = (lo.y / g).ceil() as i64;
                    let j1 = (hi.y / g).floor() as i64;
                    for i in i0..=i1 {
                        for j in j0..=j1 {
                            let q = Vec2::new(i as f64 * g, j as f64 * g);
                            if p.contains_exact(q) {
                                pts.push(q);
                            }
                        }
                    }
                    // A point of the polygon is within g/√2 of its nearest grid
                    // node; if that node is outside, the segment to it crosses
                    // the boundary first, and the boundary is sampled at max_gap.
                    (pts, g / std::f64::consts::SQRT_2 + max_gap / 2.0)
                }
            }
        }
    }
}

/// Worst-case slice covering radius for a given support, used to pick the
/// α spacing before any slice is sampled.
fn slice_cover_bound(support: &Cut, h: f64) -> f64 {
    match support {
        Cut::Interval(i) if i.width() == 0.0 => 0.0,
        Cut::Interval(_) => h / 2.0,
        Cut::Polygon(p) => match p.len() {
            1 => 0.0,
            2 => h / 4.0,
            _ => h / 2.0 / std::f64::consts::SQRT_2 + h / 4.0,
        },
    }
}

/// Inner point sample of `send u` with covering radius at most `h`.
///
/// Every stored level is a slice. Between slices a point `(x, α)` drops to
/// the slice below, which contains `x` by nestedness, so the covering radius
/// is `max √(gap² + c²)` over slices with in-slice covering radius `c`.
pub fn sendograph_sample(u: &FuzzyNumber, h: f64) -> Result<SetSample> {
    check_step(h)?;
    let c_bound = slice_cover_bound(u.support(), h);
    let delta = (h * h - c_bound * c_bound).sqrt();
    let stored: Vec<f64> = u.alphas().collect();
    let mut alphas = Vec::new();
    for w in stored.windows(2) {
        let k = ((w[1] - w[0]) / delta).ceil().max(1.0) as usize;
        for j in 0..k {
            alphas.push(w[0] + (w[1] - w[0]) * j as f64 / k as f64);
        }
    }
    alphas.push(1.0);

    let ambient = u.dim() + 1;
    let mut points = Vec::new();
    let mut covers = Vec::with_capacity(alphas.len());
    for &alpha in &alphas {
        let (pts, c) = sample_slice(&u.cut_at(alpha)?, h);
        covers.push(c);
        points.extend(pts.into_iter().map(|q| match ambient {
            2 => [q.x, alpha, 0.0],
            _ => [q.x, q.y, alpha],
        }));
    }
    let mut radius = covers[covers.len() - 1];
    for j in 0..alphas.len() - 1 {
        radius = radius.max((alphas[j + 1] - alphas[j]).hypot(covers[j]));
    }
    SetSample::new(ambient, points, radius)
}

/// Counter-clockwise boundary polygon of `send u` for a one-dimensional `u`:
/// the bottom edge, the right endpoint chain upward, the top edge, and the
/// left endpoint chain downward.
pub fn sendograph_boundary(u: &FuzzyNumber) -> Result<Vec<[f64; 2]>> {
    if u.dim() != 1 {
        return Err(FuzzyError::DimensionMismatch {
            expected: 1,
            found: u.dim(),
        });
    }
    let ends: Vec<(f64, f64, f64)> = u
        .levels()
        .iter()
        .map(|l| {
            let i = l.cut.as_interval().expect("dimension checked");
            (l.alpha, i.lo(), i.hi())
        })
        .collect();
    let mut out = Vec::with_capacity(2 * ends.len());
    out.push([ends[0].1, ends[0].0]);
    out.extend(ends.iter().map(|&(a, _, r)| [r, a]));
    out.extend(ends.iter().rev().map(|&(a, l, _)| [l, a]));
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    Ok(out)
}

fn dist_sq(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

/// Directed Hausdorff distance between point sets with the early-break scan:
/// once some `b` is closer to `a` than the running maximum, `a` cannot raise
/// it, so the inner loop stops.
fn directed_sq(from: &[[f64; 3]], to: &[[f64; 3]]) -> f64 {
    let mut cmax: f64 = 0.0;
    let mut start = 0;
    for a in from {
        let mut cmin = f64::INFINITY;
        let mut broke = false;
        for k in 0..to.len() {
            let idx = (start + k) % to.len();
            let d = dist_sq(a, &to[idx]);
            if d < cmax {
                start = idx;
                broke = true;
                break;
            }
            if d < cmin {
                cmin = d;
            }
        }
        if !broke && cmin > cmax {
            cmax = cmin;
        }
    }
    cmax
}

/// Exact Hausdorff distance between two finite samples, enclosed with the
/// sum of their covering radii as the bound for the represented sets.
pub fn hausdorff_sample(s: &SetSample, t: &SetSample) -> Result<CertifiedValue> {
    if s.ambient_dim != t.ambient_dim {
        return Err(FuzzyError::DimensionMismatch {
            expected: s.ambient_dim,
            found: t.ambient_dim,
        });
    }
    let d = directed_sq(&s.points, &t.points)
        .max(directed_sq(&t.points, &s.points))
        .sqrt();
    Ok(CertifiedValue::new(d, s.covering_radius + t.covering_radius))
}
