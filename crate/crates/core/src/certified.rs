use serde::{Deserialize, Serialize};

/// A real quantity known to lie in `[value − half_width, value + half_width]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub half_width: f64,
}

impl CertifiedValue {
    pub fn new(value: f64, half_width: f64) -> Self {
        debug_assert!(half_width >= 0.0, "negative half width {half_width}");
        Self { value, half_width }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn from_bounds(lower: f64, upper: f64) -> Self {
        debug_assert!(lower <= upper, "inverted bounds [{lower}, {upper}]");
        Self::new(0.5 * (lower + upper), 0.5 * (upper - lower))
    }

    pub fn lower(&self) -> f64 {
        self.value - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.value + self.half_width
    }

    /// Whether `x` lies in the enclosure widened by `tol`.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        (x - self.value).abs() <= self.half_width + tol
    }

    /// Whether the two enclosures intersect (widened by `tol`).
    pub fn overlaps(&self, other: &Self, tol: f64) -> bool {
        self.lower() <= other.upper() + tol && other.lower() <= self.upper() + tol
    }

    /// The sum, with half-widths added.
    pub fn plus(&self, other: &Self) -> Self {
        Self::new(self.value + other.value, self.half_width + other.half_width)
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a CertifiedValue>) -> Self {
        items.into_iter().fold(Self::exact(0.0), |acc, c| acc.plus(c))
    }

    /// Multiplication by a known constant.
    pub fn scaled(&self, k: f64) -> Self {
        Self::new(k * self.value, k.abs() * self.half_width)
    }

    /// Image under a nondecreasing map on nonnegative reals. Lower bounds are
    /// clipped at zero since every metric is nonnegative.
    pub fn map_monotone(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_bounds(f(self.lower().max(0.0)), f(self.upper().max(0.0)))
    }

    /// `√(a² + b²)` for two nonnegative enclosed quantities.
    pub fn hypot(&self, other: &Self) -> Self {
        let lo = self.lower().max(0.0).hypot(other.lower().max(0.0));
        let hi = self.upper().max(0.0).hypot(other.upper().max(0.0));
        Self::from_bounds(lo, hi)
    }

    /// `max(a, b)` of two enclosed quantities.
    pub fn max(&self, other: &Self) -> Self {
        Self::from_bounds(self.lower().max(other.lower()), self.upper().max(other.upper()))
    }
}

impl std::fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ± {:.3e}", self.value, self.half_width)
    }
}
