//! Planar vectors and convex polygons.
//!
//! Polygons are stored in canonical form: counter-clockwise, no repeated or
//! collinear vertices, starting at the lowest vertex (ties broken by lowest
//! x). A single vertex is a point and two vertices are a segment; both are
//! legitimate degenerate convex sets.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Polar angle normalized to `[0, 2π)`.
    fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Orientation of the triple `(o, a, b)`: positive for a left turn.
pub fn orient(o: Vec2, a: Vec2, b: Vec2) -> f64 {
    (a - o).cross(b - o)
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn dist_point_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn extent(points: &[Vec2]) -> f64 {
    let mut m: f64 = 0.0;
    for p in points {
        m = m.max(p.x.abs()).max(p.y.abs());
    }
    m.max(1e-300)
}

/// Length tolerance used to merge nearly coincident vertices.
fn length_tol(points: &[Vec2]) -> f64 {
    1e-13 * extent(points)
}

/// Area tolerance used to drop nearly collinear vertices.
fn area_tol(points: &[Vec2]) -> f64 {
    let e = extent(points);
    1e-13 * e * e
}

fn canonical_start(vertices: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, v) in vertices.iter().enumerate().skip(1) {
        let b = vertices[best];
        if v.y < b.y || (v.y == b.y && v.x < b.x) {
            best = i;
        }
    }
    best
}

/// Convex hull by Andrew's monotone chain, returned in canonical form.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let ltol = length_tol(&pts);
    pts.dedup_by(|b, a| (*b - *a).norm() <= ltol);
    if pts.len() <= 2 {
        if pts.len() == 2 && (pts[1] - pts[0]).norm() <= ltol {
            pts.truncate(1);
        }
        let s = canonical_start(&pts);
        pts.rotate_left(s);
        return pts;
    }
    let atol = area_tol(&pts);
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= atol {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= atol {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 2 && (hull[1] - hull[0]).norm() <= ltol {
        hull.truncate(1);
    }
    let s = canonical_start(&hull);
    hull.rotate_left(s);
    hull
}

/// A nonempty compact convex subset of the plane given by its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

/// Why a vertex list was rejected by [`ConvexPolygon::from_ccw`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonDefect {
    Empty,
    NonFinite,
    NotConvexCcw,
}

impl ConvexPolygon {
    pub fn point(p: Vec2) -> Self {
        Self { vertices: vec![p] }
    }

    /// Convex hull of an arbitrary nonempty point set.
    pub fn hull_of(points: &[Vec2]) -> Self {
        assert!(!points.is_empty(), "hull of an empty point set");
        Self {
            vertices: convex_hull(points),
        }
    }

    /// Validates a vertex list that should already be a convex polygon in
    /// counter-clockwise order. Repeated and collinear vertices are dropped;
    /// any other departure from the hull is rejected.
    pub fn from_ccw(vertices: &[Vec2]) -> Result<Self, PolygonDefect> {
        if vertices.is_empty() {
            return Err(PolygonDefect::Empty);
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(PolygonDefect::NonFinite);
        }
        let hull = convex_hull(vertices);
        if hull.len() <= 2 {
            // All input points are collinear; the set is their hull.
            return Ok(Self { vertices: hull });
        }
        let ltol = length_tol(vertices);
        let atol = area_tol(vertices);

        let mut cleaned: Vec<Vec2> = Vec::with_capacity(vertices.len());
        for &v in vertices {
            if cleaned.last().is_none_or(|&l: &Vec2| (v - l).norm() > ltol) {
                cleaned.push(v);
            }
        }
        while cleaned.len() > 1 && (cleaned[0] - cleaned[cleaned.len() - 1]).norm() <= ltol {
            cleaned.pop();
        }
        // Drop vertices lying strictly between their neighbours.
        let mut changed = true;
        while changed && cleaned.len() >= 3 {
            changed = false;
            let n = cleaned.len();
            for i in 0..n {
                let prev = cleaned[(i + n - 1) % n];
                let cur = cleaned[i];
                let next = cleaned[(i + 1) % n];
                if orient(prev, cur, next).abs() <= atol && (cur - prev).dot(next - cur) > 0.0 {
                    cleaned.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if cleaned.len() != hull.len() {
            return Err(PolygonDefect::NotConvexCcw);
        }
        let start = canonical_start(&cleaned);
        cleaned.rotate_left(start);
        let same = cleaned
            .iter()
            .zip(&hull)
            .all(|(a, b)| (*a - *b).norm() <= 1e3 * ltol);
        if same {
            Ok(Self { vertices: hull })
        } else {
            Err(PolygonDefect::NotConvexCcw)
        }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area (nonnegative for canonical polygons).
    pub fn double_area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn centroid_of_vertices(&self) -> Vec2 {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(Vec2::ZERO, |acc, &v| acc + v);
        s * (1.0 / n)
    }

    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    pub fn translate(&self, d: Vec2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
        }
    }

    /// `r · P`. Point reflection (r < 0) preserves orientation, so only the
    /// starting vertex moves.
    pub fn scale(&self, r: f64) -> Self {
        if r == 0.0 {
            return Self::point(Vec2::ZERO);
        }
        let mut vertices: Vec<Vec2> = self.vertices.iter().map(|&v| v * r).collect();
        let s = canonical_start(&vertices);
        vertices.rotate_left(s);
        Self { vertices }
    }

    /// Edges `v_i → v_{i+1}` with their polar angles; nondecreasing in angle
    /// because of the canonical starting vertex.
    pub(crate) fn edges_by_angle(&self) -> Vec<(f64, Vec2)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let e = self.vertices[(i + 1) % n] - self.vertices[i];
                (e.angle(), e)
            })
            .collect()
    }

    /// Minkowski sum by merging the two edge sequences in angular order.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        if other.vertices.len() == 1 {
            return self.translate(other.vertices[0]);
        }
        if self.vertices.len() == 1 {
            return other.translate(self.vertices[0]);
        }
        let (a, b) = (&self.vertices, &other.vertices);
        let ea = self.edges_by_angle();
        let eb = other.edges_by_angle();
        let mut out = Vec::with_capacity(ea.len() + eb.len() + 1);
        out.push(a[0] + b[0]);
        let (mut i, mut j) = (0, 0);
        while i < ea.len() || j < eb.len() {
            let take_a = j >= eb.len() || (i < ea.len() && ea[i].0 <= eb[j].0);
            if take_a {
                i += 1;
            } else {
                j += 1;
            }
            // Sums of original vertices, so no rounding accumulates along the walk.
            out.push(a[i % a.len()] + b[j % b.len()]);
        }
        // The walk closes on the start vertex; the hull pass removes it along
        // with collinear runs from parallel edges.
        Self::hull_of(&out)
    }

    /// The Minkowski blend `(1 − t)·self ⊕ t·other`.
    pub fn blend(&self, other: &Self, t: f64) -> Self {
        if t <= 0.0 {
            return self.clone();
        }
        if t >= 1.0 {
            return other.clone();
        }
        self.scale(1.0 - t).minkowski_sum(&other.scale(t))
    }

    /// True when `p` lies in the polygon (boundary included, exact predicate).
    pub fn contains_exact(&self, p: Vec2) -> bool {
        let n = self.vertices.len();
        match n {
            1 => p == self.vertices[0],
            2 => dist_point_segment(p, self.vertices[0], self.vertices[1]) == 0.0,
            _ => (0..n).all(|i| orient(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0),
        }
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to(&self, p: Vec2) -> f64 {
        let n = self.vertices.len();
        match n {
            1 => (p - self.vertices[0]).norm(),
            2 => dist_point_segment(p, self.vertices[0], self.vertices[1]),
            _ => {
                if self.contains_exact(p) {
                    return 0.0;
                }
                (0..n)
                    .map(|i| dist_point_segment(p, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Directed Hausdorff distance to another convex polygon, attained at a
    /// vertex of `self` because distance to a convex set is convex.
    pub fn directed_hausdorff(&self, other: &Self) -> f64 {
        self.vertices
            .iter()
            .map(|&v| other.distance_to(v))
            .fold(0.0, f64::max)
    }

    pub fn hausdorff(&self, other: &Self) -> f64 {
        self.directed_hausdorff(other).max(other.directed_hausdorff(self))
    }

    pub fn max_norm(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(side: f64) -> ConvexPolygon {
        ConvexPolygon::from_ccw(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(side, 0.0),
            Vec2::new(side, side),
            Vec2::new(0.0, side),
        ])
        .unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 2.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(
            h,
            vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(2.0, 0.0),
                Vec2::new(2.0, 2.0),
                Vec2::new(0.0, 2.0)
            ]
        );
    }

    #[test]
    fn from_ccw_rejects_clockwise_and_reflex() {
        let cw = [
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ];
        assert_eq!(ConvexPolygon::from_ccw(&cw), Err(PolygonDefect::NotConvexCcw));
        let dart = [
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(1.0, 2.0),
        ];
        assert_eq!(ConvexPolygon::from_ccw(&dart), Err(PolygonDefect::NotConvexCcw));
    }

    #[test]
    fn from_ccw_canonicalizes_collinear_and_rotation() {
        let p = ConvexPolygon::from_ccw(&[
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.5, 0.0),
            Vec2::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p, square(1.0));
    }

    #[test]
    fn degenerate_inputs_are_points_and_segments() {
        let pt = ConvexPolygon::from_ccw(&[Vec2::new(0.5, 0.5)]).unwrap();
        assert_eq!(pt.len(), 1);
        let seg = ConvexPolygon::from_ccw(&[Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(1.0, 0.0)])
            .unwrap();
        assert_eq!(seg.vertices(), &[Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0)]);
    }

    #[test]
    fn minkowski_sum_of_squares() {
        let s = square(1.0).minkowski_sum(&square(1.0));
        assert_eq!(s, square(2.0));
    }

    #[test]
    fn minkowski_sum_with_point_and_segment() {
        let sq = square(1.0);
        let p = ConvexPolygon::point(Vec2::new(3.0, -1.0));
        assert_eq!(sq.minkowski_sum(&p), sq.translate(Vec2::new(3.0, -1.0)));
        let seg = ConvexPolygon::hull_of(&[Vec2::new(0.0, 0.0), Vec2::new(0.0, 2.0)]);
        let tall = sq.minkowski_sum(&seg);
        assert_eq!(tall.vertices().len(), 4);
        assert!((tall.double_area() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn minkowski_sum_matches_hull_of_pairwise_sums() {
        let a = ConvexPolygon::hull_of(&[Vec2::new(0.0, 0.0), Vec2::new(3.0, 1.0), Vec2::new(1.0, 2.5)]);
        let b = ConvexPolygon::hull_of(&[
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.2, 1.5),
            Vec2::new(-0.8, 0.9),
        ]);
        let mut sums = Vec::new();
        for &p in a.vertices() {
            for &q in b.vertices() {
                sums.push(p + q);
            }
        }
        let oracle = ConvexPolygon::hull_of(&sums);
        assert!(a.minkowski_sum(&b).hausdorff(&oracle) < 1e-12);
        assert_eq!(a.minkowski_sum(&b).len(), oracle.len());
    }

    #[test]
    fn negative_scaling_keeps_ccw() {
        let tri = ConvexPolygon::hull_of(&[Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(0.0, 1.0)]);
        let r = tri.scale(-1.5);
        assert!(r.double_area() > 0.0);
        assert!(ConvexPolygon::from_ccw(r.vertices()).is_ok());
    }

    #[test]
    fn distances_to_square() {
        let sq = square(1.0);
        assert_eq!(sq.distance_to(Vec2::new(2.0, 0.0)), 1.0);
        assert_eq!(sq.distance_to(Vec2::new(0.5, 0.5)), 0.0);
        assert!((sq.distance_to(Vec2::new(2.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
    }
}
