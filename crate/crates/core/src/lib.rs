//! Fuzzy numbers in E¹ and E² represented by finite nested α-level families,
//! with certified evaluation of the sendograph metric D, the endograph metric
//! Γ, the supremum metric d_∞ and the L_q metric d_q.
//!
//! ```
//! use fuzzymetric::{crisp_interval, metric_D};
//!
//! let u = crisp_interval(0.0, 1.0).unwrap();
//! let v = crisp_interval(0.0, 3.0).unwrap();
//! let d = metric_D(&u, &v, 0.01).unwrap();
//! assert!(d.contains(2.0, 1e-9));
//! ```

pub mod certified;
pub mod cut;
pub mod error;
pub mod fuzzy;
pub mod generators;
pub mod geometry;
pub mod json;
pub mod metrics;
pub mod oracle;
pub mod planar;
pub mod propsuite;
pub mod space;

pub use certified::CertifiedValue;
pub use cut::{Cut, Interval};
pub use error::{FuzzyError, Result};
pub use fuzzy::{
    add, convex_combo, crisp_interval, make_fuzzy_number, merged_alphas, scalar_mul, triangular, FuzzyNumber,
    FuzzyPath, Level, RawCut,
};
pub use geometry::{
    dist_point_to_cut, hausdorff_cuts, hausdorff_sample, sendograph_boundary, sendograph_sample, SetSample,
};
pub use json::{from_json_str, to_json_string};
pub use metrics::{
    default_h, joint_diameter, level_distance, metric_D, metric_Gamma, metric_dinf, metric_dq,
};
pub use planar::{ConvexPolygon, Vec2};
