//! Fuzzy numbers in E¹ and E² as finite nested α-level families.
//!
//! A fuzzy number stores cuts at ascending levels `0 = α_0 < … < α_m = 1`.
//! Between stored levels the cut is the Minkowski blend
//! `(1 − t)·[u]_{α_i} ⊕ t·[u]_{α_{i+1}}` with `t = (α − α_i)/(α_{i+1} − α_i)`,
//! which keeps every cut convex and the family nested.

use crate::cut::{Cut, Interval, CONTAINMENT_RTOL};
use crate::error::{FuzzyError, Result};
use crate::planar::Vec2;

/// Cut data as supplied by a caller, before validation.
#[derive(Debug, Clone, PartialEq)]
pub enum RawCut {
    Interval { lo: f64, hi: f64 },
    Vertices(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub alpha: f64,
    pub cut: Cut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    dim: usize,
    levels: Vec<Level>,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(FuzzyError::Domain(format!("alpha = {alpha} is outside [0, 1]")))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(FuzzyError::Domain(format!(
            "dimension {dim} is not supported (only 1 and 2)"
        )))
    }
}

/// Builds and validates a fuzzy number from raw level data.
pub fn make_fuzzy_number(dim: usize, levels: Vec<(f64, RawCut)>) -> Result<FuzzyNumber> {
    check_dim(dim)?;
    let mut built = Vec::with_capacity(levels.len());
    for (alpha, raw) in levels {
        if !alpha.is_finite() {
            return Err(FuzzyError::NonFiniteCoordinate {
                context: "level alpha".into(),
            });
        }
        check_alpha(alpha)?;
        let cut = match raw {
            RawCut::Interval { lo, hi } => {
                if dim != 1 {
                    return Err(FuzzyError::DimensionMismatch {
                        expected: dim,
                        found: 1,
                    });
                }
                Cut::interval(lo, hi).map_err(|e| match e {
                    FuzzyError::NonFiniteCoordinate { .. } => FuzzyError::NonFiniteCoordinate {
                        context: format!("interval cut at alpha = {alpha}"),
                    },
                    other => other,
                })?
            }
            RawCut::Vertices(vs) => {
                if dim != 2 {
                    return Err(FuzzyError::DimensionMismatch {
                        expected: dim,
                        found: 2,
                    });
                }
                let pts: Vec<Vec2> = vs.iter().map(|v| Vec2::new(v[0], v[1])).collect();
                Cut::polygon_at(&pts, Some(alpha))?
            }
        };
        built.push(Level { alpha, cut });
    }
    FuzzyNumber::from_levels(dim, built)
}

impl FuzzyNumber {
    /// Validates already-constructed cuts as a fuzzy number.
    pub fn from_levels(dim: usize, levels: Vec<Level>) -> Result<Self> {
        check_dim(dim)?;
        if levels.is_empty() {
            return Err(FuzzyError::Empty("a fuzzy number needs at least one level"));
        }
        for l in &levels {
            check_alpha(l.alpha)?;
            if l.cut.dim() != dim {
                return Err(FuzzyError::DimensionMismatch {
                    expected: dim,
                    found: l.cut.dim(),
                });
            }
        }
        for w in levels.windows(2) {
            if w[1].alpha <= w[0].alpha {
                return Err(FuzzyError::UnsortedLevels {
                    prev: w[0].alpha,
                    next: w[1].alpha,
                });
            }
        }
        if levels[0].alpha != 0.0 {
            return Err(FuzzyError::MissingBoundaryLevel { alpha: 0.0 });
        }
        if levels[levels.len() - 1].alpha != 1.0 {
            return Err(FuzzyError::MissingBoundaryLevel { alpha: 1.0 });
        }
        for w in levels.windows(2) {
            let tol = CONTAINMENT_RTOL * (1.0 + w[0].cut.magnitude().max(w[1].cut.magnitude()));
            if !w[0].cut.contains_cut(&w[1].cut, tol) {
                return Err(FuzzyError::NestednessViolation {
                    lower_alpha: w[0].alpha,
                    upper_alpha: w[1].alpha,
                });
            }
        }
        Ok(Self { dim, levels })
    }

    /// Used by the algebra, whose results are nested by construction.
    pub(crate) fn from_levels_unchecked(dim: usize, levels: Vec<Level>) -> Self {
        debug_assert!(levels.first().is_some_and(|l| l.alpha == 0.0));
        debug_assert!(levels.last().is_some_and(|l| l.alpha == 1.0));
        Self { dim, levels }
    }

    /// A crisp set: the same cut at every level.
    pub fn crisp(cut: Cut) -> Self {
        let dim = cut.dim();
        Self {
            dim,
            levels: vec![
                Level {
                    alpha: 0.0,
                    cut: cut.clone(),
                },
                Level { alpha: 1.0, cut },
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn alphas(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels.iter().map(|l| l.alpha)
    }

    /// The support `[u]_0`.
    pub fn support(&self) -> &Cut {
        &self.levels[0].cut
    }

    /// The core `[u]_1`.
    pub fn core(&self) -> &Cut {
        &self.levels[self.levels.len() - 1].cut
    }

    /// The α-cut `[u]_α`.
    pub fn cut_at(&self, alpha: f64) -> Result<Cut> {
        check_alpha(alpha)?;
        let i = self.levels.partition_point(|l| l.alpha <= alpha);
        // levels[i - 1].alpha <= alpha < levels[i].alpha, or i == len when alpha == 1.
        let lower = &self.levels[i - 1];
        if lower.alpha == alpha || i == self.levels.len() {
            return Ok(lower.cut.clone());
        }
        let upper = &self.levels[i];
        let t = (alpha - lower.alpha) / (upper.alpha - lower.alpha);
        lower.cut.blend(&upper.cut, t)
    }

    /// `max{‖y‖ : y ∈ [u]_ε}`.
    pub fn support_radius(&self, eps: f64) -> Result<f64> {
        Ok(self.cut_at(eps)?.max_norm())
    }

    /// `r·u`, level by level. A zero factor collapses to the crisp origin.
    pub fn scalar_mul(&self, r: f64) -> Self {
        if r == 0.0 {
            return Self::crisp(Cut::origin(self.dim));
        }
        let levels = self
            .levels
            .iter()
            .map(|l| Level {
                alpha: l.alpha,
                cut: l.cut.scale(r),
            })
            .collect();
        Self::from_levels_unchecked(self.dim, levels)
    }

    /// `u + {shift}`: a rigid translation of every cut.
    pub fn translate(&self, shift: &[f64]) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .map(|l| {
                Ok(Level {
                    alpha: l.alpha,
                    cut: l.cut.translate(shift)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_levels_unchecked(self.dim, levels))
    }

    /// Levelwise comparison up to `tol` in Hausdorff distance. Checking the
    /// merged breakpoints suffices: between them both sides are blends and
    /// their Hausdorff distance is convex in α.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        merged_alphas([self, other])
            .into_iter()
            .all(|a| match (self.cut_at(a), other.cut_at(a)) {
                (Ok(x), Ok(y)) => x.approx_eq(&y, tol),
                _ => false,
            })
    }

    /// Largest absolute coordinate over the support.
    pub fn magnitude(&self) -> f64 {
        self.support().magnitude()
    }
}

/// Sorted union of the stored levels of several fuzzy numbers.
pub fn merged_alphas<'a>(us: impl IntoIterator<Item = &'a FuzzyNumber>) -> Vec<f64> {
    let mut alphas: Vec<f64> = us.into_iter().flat_map(|u| u.alphas()).collect();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    alphas
}

fn expect_dim(dim: usize, u: &FuzzyNumber) -> Result<()> {
    if u.dim == dim {
        Ok(())
    } else {
        Err(FuzzyError::DimensionMismatch {
            expected: dim,
            found: u.dim,
        })
    }
}

/// `Σ u_j`: Minkowski sums of cuts on the merged level grid.
pub fn add(us: &[FuzzyNumber]) -> Result<FuzzyNumber> {
    let first = us
        .first()
        .ok_or(FuzzyError::Empty("add needs at least one term"))?;
    for u in us {
        expect_dim(first.dim, u)?;
    }
    let mut levels = Vec::new();
    for alpha in merged_alphas(us) {
        let mut cut = first.cut_at(alpha)?;
        for u in &us[1..] {
            cut = cut.minkowski_sum(&u.cut_at(alpha)?)?;
        }
        levels.push(Level { alpha, cut });
    }
    Ok(FuzzyNumber::from_levels_unchecked(first.dim, levels))
}

/// `r·u`.
pub fn scalar_mul(r: f64, u: &FuzzyNumber) -> FuzzyNumber {
    u.scalar_mul(r)
}

/// `α·u + (1 − α)·v`.
pub fn convex_combo(alpha: f64, u: &FuzzyNumber, v: &FuzzyNumber) -> Result<FuzzyNumber> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(FuzzyError::Domain(format!(
            "convex weight {alpha} is outside [0, 1]"
        )));
    }
    expect_dim(u.dim, v)?;
    if alpha == 1.0 {
        return Ok(u.clone());
    }
    if alpha == 0.0 {
        return Ok(v.clone());
    }
    add(&[u.scalar_mul(alpha), v.scalar_mul(1.0 - alpha)])
}

/// Triangular fuzzy number with support `[a, c]` and peak `b`.
pub fn triangular(a: f64, b: f64, c: f64) -> Result<FuzzyNumber> {
    if !(a <= b && b <= c) {
        return Err(FuzzyError::Spec(format!(
            "triangular({a},{b},{c}) needs a <= b <= c"
        )));
    }
    make_fuzzy_number(
        1,
        vec![
            (0.0, RawCut::Interval { lo: a, hi: c }),
            (1.0, RawCut::Interval { lo: b, hi: b }),
        ],
    )
}

/// The crisp interval `[a, b]` as a fuzzy number.
pub fn crisp_interval(a: f64, b: f64) -> Result<FuzzyNumber> {
    Ok(FuzzyNumber::crisp(Cut::Interval(Interval::new(a, b)?)))
}

/// A parameterized family `t ↦ F(t)` drawn from the D-continuous built-ins.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyPath {
    /// `t ↦ u + t·direction`.
    Translation { base: FuzzyNumber, direction: Vec<f64> },
    /// `t ↦ t·u`.
    Scaling { base: FuzzyNumber },
    /// `t ↦ t·u + (1 − t)·v`, defined for `t ∈ [0, 1]`.
    Mixture { u: FuzzyNumber, v: FuzzyNumber },
}

impl FuzzyPath {
    pub fn name(&self) -> &'static str {
        match self {
            FuzzyPath::Translation { .. } => "translation",
            FuzzyPath::Scaling { .. } => "scaling",
            FuzzyPath::Mixture { .. } => "mixture",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FuzzyPath::Translation { base, .. } | FuzzyPath::Scaling { base } => base.dim(),
            FuzzyPath::Mixture { u, .. } => u.dim(),
        }
    }

    pub fn eval(&self, t: f64) -> Result<FuzzyNumber> {
        if !t.is_finite() {
            return Err(FuzzyError::Domain(format!("path parameter {t} is not finite")));
        }
        match self {
            FuzzyPath::Translation { base, direction } => {
                let shift: Vec<f64> = direction.iter().map(|d| t * d).collect();
                base.translate(&shift)
            }
            FuzzyPath::Scaling { base } => Ok(base.scalar_mul(t)),
            FuzzyPath::Mixture { u, v } => convex_combo(t, u, v),
        }
    }
}
