//! The sendograph metric D, the endograph metric Γ, the supremum metric d_∞
//! and the L_q metric d_q, each returned as a certified enclosure.

use crate::certified::CertifiedValue;
use crate::error::{FuzzyError, Result};
use crate::fuzzy::{merged_alphas, FuzzyNumber};
use crate::geometry::solid::{certified_hausdorff, Graph, Solid};

/// Relative widening applied to bracketed floating-point results to absorb
/// rounding in the per-level Hausdorff evaluations.
const ROUNDING_RTOL: f64 = 1e-12;

fn same_dim(u: &FuzzyNumber, v: &FuzzyNumber) -> Result<()> {
    if u.dim() == v.dim() {
        Ok(())
    } else {
        Err(FuzzyError::DimensionMismatch {
            expected: u.dim(),
            found: v.dim(),
        })
    }
}

fn check_h(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(FuzzyError::Domain(format!("resolution h = {h} must be positive")))
    }
}

/// Diameter of the joint bounding box of the sendographs, in R^(p+1).
/// Never less than 1, the extent of the α axis.
pub fn joint_diameter(us: &[&FuzzyNumber]) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for u in us {
        let (a, b) = u.support().bbox();
        for k in 0..a.len() {
            lo[k] = lo[k].min(a[k]);
            hi[k] = hi[k].max(b[k]);
        }
    }
    let spatial: f64 = lo
        .iter()
        .zip(&hi)
        .filter(|(l, h)| l.is_finite() && h.is_finite())
        .map(|(l, h)| (h - l).powi(2))
        .sum();
    (spatial + 1.0).sqrt()
}

/// A resolution of 1% of the joint diameter, the default for D and Γ.
pub fn default_h(u: &FuzzyNumber, v: &FuzzyNumber) -> f64 {
    0.01 * joint_diameter(&[u, v])
}

/// `D(u, v) = H(send u, send v)`, to half-width `h / 2`.
///
/// Distances to a sendograph are evaluated exactly on its piecewise convex
/// decomposition; the supremum over the other sendograph is bracketed by
/// Lipschitz branch and bound on its boundary. The value is attained at a
/// boundary point, so it never exceeds the true distance.
#[allow(non_snake_case)]
pub fn metric_D(u: &FuzzyNumber, v: &FuzzyNumber, h: f64) -> Result<CertifiedValue> {
    same_dim(u, v)?;
    check_h(h)?;
    Ok(certified_hausdorff(
        &Solid::new(u),
        &Solid::new(v),
        Graph::Send,
        0.5 * h,
    ))
}

/// `Γ(u, v) = H(end u, end v)`, to half-width `h / 2`.
///
/// Every endograph contains the whole plane α = 0, so the distance from
/// `(x, α)` to `end v` is `min(α, d((x, α), send v))` and only sendograph
/// points of the other side matter.
#[allow(non_snake_case)]
pub fn metric_Gamma(u: &FuzzyNumber, v: &FuzzyNumber, h: f64) -> Result<CertifiedValue> {
    same_dim(u, v)?;
    check_h(h)?;
    Ok(certified_hausdorff(
        &Solid::new(u),
        &Solid::new(v),
        Graph::End,
        0.5 * h,
    ))
}

/// Cutwise Hausdorff distance `H([u]_α, [v]_α)`.
pub fn level_distance(u: &FuzzyNumber, v: &FuzzyNumber, alpha: f64) -> Result<f64> {
    u.cut_at(alpha)?.hausdorff(&v.cut_at(alpha)?)
}

/// `d_∞(u, v) = sup_α H([u]_α, [v]_α)`.
///
/// Between merged breakpoints both cuts are Minkowski blends, so each
/// support-function difference is affine in α and the cutwise distance is
/// convex there. The supremum sits at a breakpoint and is returned exactly.
pub fn metric_dinf(u: &FuzzyNumber, v: &FuzzyNumber) -> Result<CertifiedValue> {
    same_dim(u, v)?;
    let mut best: f64 = 0.0;
    for a in merged_alphas([u, v]) {
        best = best.max(level_distance(u, v, a)?);
    }
    Ok(CertifiedValue::exact(best))
}

/// `d_q(u, v) = (∫_0^1 H([u]_α, [v]_α)^q dα)^(1/q)` with `n` subdivisions per
/// merged segment.
///
/// The integrand is convex on each merged segment (a convex nonnegative
/// function raised to `q ≥ 1`), so the midpoint rule bounds the integral from
/// below and the trapezoid rule from above.
pub fn metric_dq(u: &FuzzyNumber, v: &FuzzyNumber, q: f64, n: usize) -> Result<CertifiedValue> {
    same_dim(u, v)?;
    if !(q.is_finite() && q >= 1.0) {
        return Err(FuzzyError::Domain(format!(
            "exponent q = {q} must be finite and at least 1"
        )));
    }
    if n == 0 {
        return Err(FuzzyError::Domain(
            "subdivision count n must be at least 1".into(),
        ));
    }
    let grid = merged_alphas([u, v]);
    let f = |a: f64| -> Result<f64> { Ok(level_distance(u, v, a)?.powf(q)) };
    let (mut mid, mut trap) = (0.0, 0.0);
    for w in grid.windows(2) {
        let step = (w[1] - w[0]) / n as f64;
        let mut left = f(w[0])?;
        for k in 0..n {
            let a = w[0] + step * k as f64;
            let b = if k + 1 == n {
                w[1]
            } else {
                w[0] + step * (k + 1) as f64
            };
            let right = f(b)?;
            mid += (b - a) * f(0.5 * (a + b))?;
            trap += 0.5 * (b - a) * (left + right);
            left = right;
        }
    }
    let lower = mid.min(trap).powf(1.0 / q) * (1.0 - ROUNDING_RTOL);
    let upper = trap.max(mid).powf(1.0 / q) * (1.0 + ROUNDING_RTOL);
    if lower == upper {
        return Ok(CertifiedValue::exact(lower));
    }
    Ok(CertifiedValue::from_bounds(lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{crisp_interval, make_fuzzy_number, triangular, RawCut};

    fn point(a: f64) -> FuzzyNumber {
        crisp_interval(a, a).unwrap()
    }

    #[test]
    fn sendograph_spot_values() {
        let d = metric_D(
            &crisp_interval(0.0, 1.0).unwrap(),
            &crisp_interval(0.0, 3.0).unwrap(),
            0.01,
        )
        .unwrap();
        assert!(d.contains(2.0, 1e-9), "{d}");
        let d = metric_D(&point(-1.5), &point(2.25), 0.01).unwrap();
        assert!(d.contains(3.75, 1e-9), "{d}");
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        let d = metric_D(&u, &u, 0.01).unwrap();
        assert!(d.contains(0.0, 1e-12) && d.half_width <= 0.005);
    }

    #[test]
    fn endograph_spot_values() {
        let g = metric_Gamma(&point(0.0), &point(5.0), 0.01).unwrap();
        assert!(g.contains(1.0, 1e-9), "{g}");
        let g = metric_Gamma(&point(0.0), &point(0.4), 0.01).unwrap();
        assert!(g.contains(0.4, 1e-9), "{g}");
    }

    #[test]
    fn translated_triangles() {
        let u = triangular(0.0, 1.0, 2.0).unwrap();
        let v = triangular(1.0, 2.0, 3.0).unwrap();
        assert!(metric_D(&u, &v, 0.01).unwrap().contains(1.0, 1e-9));
        assert_eq!(metric_dinf(&u, &v).unwrap().value, 1.0);
    }

    #[test]
    fn supremum_metric_sees_the_slice_mismatch() {
        let eta = 1e-9;
        let threshold = |t: f64| {
            make_fuzzy_number(
                1,
                vec![
                    (0.0, RawCut::Interval { lo: 0.0, hi: 1.0 }),
                    (t, RawCut::Interval { lo: 0.0, hi: 1.0 }),
                    (t + eta, RawCut::Interval { lo: 0.0, hi: 0.0 }),
                    (1.0, RawCut::Interval { lo: 0.0, hi: 0.0 }),
                ],
            )
            .unwrap()
        };
        let (u, v) = (threshold(0.5), threshold(0.4));
        assert_eq!(metric_dinf(&u, &v).unwrap().value, 1.0);
        let d = metric_D(&u, &v, 0.01).unwrap();
        assert!(d.value <= 0.1 + 1e-6, "{d}");
        assert!(d.contains(0.1, 1e-8), "{d}");
    }

    #[test]
    fn lq_spot_values() {
        let u = crisp_interval(0.0, 1.0).unwrap();
        let v = triangular(0.0, 0.5, 1.0).unwrap();
        let d = metric_dq(&u, &v, 2.0, 64).unwrap();
        assert!(d.contains((1.0f64 / 12.0).sqrt(), 1e-9), "{d}");
        assert!(d.half_width < 1e-4);
        let d = metric_dq(&point(1.0), &point(4.0), 3.0, 8).unwrap();
        assert!(d.contains(3.0, 1e-9));
        let d = metric_dq(&v, &v, 2.0, 8).unwrap();
        assert_eq!((d.value, d.half_width), (0.0, 0.0));
    }

    #[test]
    fn chain_on_a_fixed_pair() {
        let u = triangular(-1.0, 0.0, 3.0).unwrap();
        let v = make_fuzzy_number(
            1,
            vec![
                (0.0, RawCut::Interval { lo: 0.0, hi: 4.0 }),
                (0.3, RawCut::Interval { lo: 1.0, hi: 3.5 }),
                (1.0, RawCut::Interval { lo: 2.0, hi: 2.0 }),
            ],
        )
        .unwrap();
        let g = metric_Gamma(&u, &v, 0.01).unwrap();
        let d = metric_D(&u, &v, 0.01).unwrap();
        let s = metric_dinf(&u, &v).unwrap();
        assert!(g.lower() <= d.upper() && d.lower() <= s.upper());
    }

    #[test]
    fn halving_h_halves_the_enclosure() {
        let u = triangular(0.0, 1.0, 2.5).unwrap();
        let v = triangular(0.5, 0.7, 4.0).unwrap();
        let a = metric_D(&u, &v, 0.04).unwrap();
        let b = metric_D(&u, &v, 0.02).unwrap();
        assert!(a.half_width >= 1.8 * b.half_width);
        assert!(a.overlaps(&b, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let u = point(0.0);
        assert!(matches!(metric_D(&u, &u, 0.0), Err(FuzzyError::Domain(_))));
        assert!(matches!(metric_dq(&u, &u, 0.5, 4), Err(FuzzyError::Domain(_))));
        assert!(matches!(metric_dq(&u, &u, 2.0, 0), Err(FuzzyError::Domain(_))));
        let w = FuzzyNumber::crisp(crate::cut::Cut::origin(2));
        assert!(matches!(
            metric_Gamma(&u, &w, 0.1),
            Err(FuzzyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn default_resolution_tracks_scale() {
        let u = crisp_interval(0.0, 100.0).unwrap();
        let v = point(0.0);
        assert!((default_h(&u, &v) - 0.01 * (10001f64).sqrt()).abs() < 1e-12);
    }
}
