//! Level sets of fuzzy numbers: nonempty compact convex subsets of R or R².

use crate::error::{FuzzyError, Result};
use crate::planar::{ConvexPolygon, PolygonDefect, Vec2};

/// A closed interval `[lo, hi]` with `lo ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(FuzzyError::NonFiniteCoordinate {
                context: format!("interval [{lo}, {hi}]"),
            });
        }
        if lo > hi {
            return Err(FuzzyError::Domain(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(a: f64) -> Self {
        Self { lo: a, hi: a }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn blend(&self, other: &Self, t: f64) -> Self {
        Self {
            lo: (1.0 - t) * self.lo + t * other.lo,
            hi: (1.0 - t) * self.hi + t * other.hi,
        }
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    pub fn hausdorff(&self, other: &Self) -> f64 {
        (self.lo - other.lo).abs().max((self.hi - other.hi).abs())
    }
}

/// An element of K_c(R^p) for p ∈ {1, 2}.
#[derive(Debug, Clone, PartialEq)]
pub enum Cut {
    Interval(Interval),
    Polygon(ConvexPolygon),
}

/// Relative slack allowed when checking containment of one cut in another.
pub(crate) const CONTAINMENT_RTOL: f64 = 1e-9;

impl Cut {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Interval::new(lo, hi).map(Cut::Interval)
    }

    /// A convex polygon from counter-clockwise vertices.
    pub fn polygon(vertices: &[Vec2]) -> Result<Self> {
        Self::polygon_at(vertices, None)
    }

    pub(crate) fn polygon_at(vertices: &[Vec2], alpha: Option<f64>) -> Result<Self> {
        ConvexPolygon::from_ccw(vertices)
            .map(Cut::Polygon)
            .map_err(|d| match d {
                PolygonDefect::NonFinite => FuzzyError::NonFiniteCoordinate {
                    context: match alpha {
                        Some(a) => format!("polygon cut at alpha = {a}"),
                        None => "polygon cut".into(),
                    },
                },
                PolygonDefect::Empty | PolygonDefect::NotConvexCcw => FuzzyError::NonConvexCut { alpha },
            })
    }

    /// The crisp point at the origin of R^dim.
    pub fn origin(dim: usize) -> Self {
        match dim {
            1 => Cut::Interval(Interval::point(0.0)),
            _ => Cut::Polygon(ConvexPolygon::point(Vec2::ZERO)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Cut::Interval(_) => 1,
            Cut::Polygon(_) => 2,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            Cut::Interval(i) => Some(i),
            Cut::Polygon(_) => None,
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Cut::Polygon(p) => Some(p),
            Cut::Interval(_) => None,
        }
    }

    fn expect_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(FuzzyError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// `(1 − t)·self ⊕ t·other`.
    pub fn blend(&self, other: &Self, t: f64) -> Result<Self> {
        self.expect_same_dim(other)?;
        Ok(match (self, other) {
            (Cut::Interval(a), Cut::Interval(b)) => Cut::Interval(a.blend(b, t)),
            (Cut::Polygon(a), Cut::Polygon(b)) => Cut::Polygon(a.blend(b, t)),
            _ => unreachable!(),
        })
    }

    /// Minkowski sum `{x + y : x ∈ self, y ∈ other}`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.expect_same_dim(other)?;
        Ok(match (self, other) {
            (Cut::Interval(a), Cut::Interval(b)) => Cut::Interval(Interval {
                lo: a.lo + b.lo,
                hi: a.hi + b.hi,
            }),
            (Cut::Polygon(a), Cut::Polygon(b)) => Cut::Polygon(a.minkowski_sum(b)),
            _ => unreachable!(),
        })
    }

    /// `r·self`; a negative factor swaps interval endpoints.
    pub fn scale(&self, r: f64) -> Self {
        match self {
            Cut::Interval(i) => {
                let (a, b) = (r * i.lo, r * i.hi);
                Cut::Interval(Interval {
                    lo: a.min(b),
                    hi: a.max(b),
                })
            }
            Cut::Polygon(p) => Cut::Polygon(p.scale(r)),
        }
    }

    /// Translation by `shift` (length must equal the cut's dimension).
    pub fn translate(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.dim() {
            return Err(FuzzyError::DimensionMismatch {
                expected: self.dim(),
                found: shift.len(),
            });
        }
        Ok(match self {
            Cut::Interval(i) => Cut::Interval(Interval {
                lo: i.lo + shift[0],
                hi: i.hi + shift[0],
            }),
            Cut::Polygon(p) => Cut::Polygon(p.translate(Vec2::new(shift[0], shift[1]))),
        })
    }

    /// Euclidean distance from the point `x` to this cut.
    pub fn distance_to(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(FuzzyError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(match self {
            Cut::Interval(i) => i.distance_to(x[0]),
            Cut::Polygon(p) => p.distance_to(Vec2::new(x[0], x[1])),
        })
    }

    /// Exact Hausdorff distance between two convex cuts.
    pub fn hausdorff(&self, other: &Self) -> Result<f64> {
        self.expect_same_dim(other)?;
        Ok(match (self, other) {
            (Cut::Interval(a), Cut::Interval(b)) => a.hausdorff(b),
            (Cut::Polygon(a), Cut::Polygon(b)) => a.hausdorff(b),
            _ => unreachable!(),
        })
    }

    /// Largest Euclidean norm over the cut; attained at an endpoint or vertex.
    pub fn max_norm(&self) -> f64 {
        match self {
            Cut::Interval(i) => i.lo.abs().max(i.hi.abs()),
            Cut::Polygon(p) => p.max_norm(),
        }
    }

    /// Largest absolute coordinate, used to scale tolerances.
    pub fn magnitude(&self) -> f64 {
        match self {
            Cut::Interval(i) => i.lo.abs().max(i.hi.abs()),
            Cut::Polygon(p) => p
                .vertices()
                .iter()
                .map(|v| v.x.abs().max(v.y.abs()))
                .fold(0.0, f64::max),
        }
    }

    /// Axis-aligned bounding box as `(min, max)` coordinate vectors.
    pub fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Cut::Interval(i) => (vec![i.lo], vec![i.hi]),
            Cut::Polygon(p) => {
                let (lo, hi) = p.bbox();
                (vec![lo.x, lo.y], vec![hi.x, hi.y])
            }
        }
    }

    /// Whether `inner ⊆ self` up to absolute slack `tol`.
    pub fn contains_cut(&self, inner: &Self, tol: f64) -> bool {
        match (self, inner) {
            (Cut::Interval(o), Cut::Interval(i)) => i.lo >= o.lo - tol && i.hi <= o.hi + tol,
            (Cut::Polygon(o), Cut::Polygon(i)) => i.vertices().iter().all(|&v| o.distance_to(v) <= tol),
            _ => false,
        }
    }

    /// Level-wise equality up to `tol` in Hausdorff distance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.hausdorff(other).is_ok_and(|d| d <= tol)
    }
}
