//! Exact convex-cut geometry and certified Hausdorff machinery for
//! sendographs and endographs.

mod sample;
pub(crate) mod solid;

pub use sample::{hausdorff_sample, sendograph_boundary, sendograph_sample, SetSample};

use crate::cut::Cut;
use crate::error::Result;

/// Euclidean distance from the point `x` to the convex cut `a`.
pub fn dist_point_to_cut(x: &[f64], a: &Cut) -> Result<f64> {
    a.distance_to(x)
}

/// Exact Hausdorff distance between two convex cuts.
pub fn hausdorff_cuts(a: &Cut, b: &Cut) -> Result<f64> {
    a.hausdorff(b)
}
