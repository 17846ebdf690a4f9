//! Sendographs as unions of convex pieces, and a certified Hausdorff engine
//! over them.
//!
//! Between consecutive stored levels the sendograph is the convex hull of the
//! two level cuts placed at their heights (a trapezoid for p = 1, a
//! prismatoid for p = 2). Distances to a sendograph are therefore exact: the
//! minimum over its pieces of a point-to-convex-piece distance.
//!
//! For the supremum side of the Hausdorff distance, `g = d(·, send v)` (or
//! `min(α, d(·, send v))` for endographs) is 1-Lipschitz. Sendographs are
//! closed downward in α with convex slices, which rules out interior local
//! maxima of `g` away from `send v`: a nearest point strictly above could be
//! dropped to the same height and get closer, so all nearest points are
//! level with the query and their hull lies in a convex slice of `send v`.
//! The supremum over `send u` is thus taken on its boundary, and on the
//! bottom face it is taken on the face's edges by the same argument. The
//! boundary pieces are refined by best-first Lipschitz branch and bound.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::rc::Rc;

use crate::certified::CertifiedValue;
use crate::cut::Cut;
use crate::fuzzy::FuzzyNumber;
use crate::planar::{ConvexPolygon, Vec2};
use crate::space::{dist_point_box, dist_point_segment3, dist_point_triangle, Vec3};

#[derive(Debug, Clone)]
struct Trapezoid {
    a0: f64,
    a1: f64,
    l0: f64,
    r0: f64,
    l1: f64,
    r1: f64,
}

impl Trapezoid {
    fn distance(&self, p: Vec3) -> f64 {
        let (x, a) = (p.x, p.z);
        if a >= self.a0 && a <= self.a1 {
            let t = (a - self.a0) / (self.a1 - self.a0);
            let l = (1.0 - t) * self.l0 + t * self.l1;
            let r = (1.0 - t) * self.r0 + t * self.r1;
            if x >= l && x <= r {
                return 0.0;
            }
        }
        let c = [
            Vec3::new(self.l0, 0.0, self.a0),
            Vec3::new(self.r0, 0.0, self.a0),
            Vec3::new(self.r1, 0.0, self.a1),
            Vec3::new(self.l1, 0.0, self.a1),
        ];
        let q = Vec3::new(x, 0.0, a);
        (0..4)
            .map(|i| dist_point_segment3(q, c[i], c[(i + 1) % 4]))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone)]
struct Prismatoid {
    a0: f64,
    a1: f64,
    /// Lateral triangles followed by the bottom and top fans.
    faces: Vec<[Vec3; 3]>,
    n_lateral: usize,
    /// Outward facet planes `(n, v)` with `n·(p − v) ≤ 0` inside; absent
    /// when the piece has no interior.
    planes: Option<Vec<(Vec3, Vec3)>>,
}

impl Prismatoid {
    fn distance(&self, p: Vec3) -> f64 {
        if let Some(planes) = &self.planes {
            if p.z >= self.a0 && p.z <= self.a1 && planes.iter().all(|(n, v)| n.dot(p - *v) <= 0.0) {
                return 0.0;
            }
        }
        self.faces
            .iter()
            .map(|t| dist_point_triangle(p, t[0], t[1], t[2]))
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Trap(Trapezoid),
    Prism(Prismatoid),
}

#[derive(Debug, Clone)]
struct Piece {
    lo: Vec3,
    hi: Vec3,
    shape: Shape,
}

impl Piece {
    fn distance(&self, p: Vec3) -> f64 {
        match &self.shape {
            Shape::Trap(t) => t.distance(p),
            Shape::Prism(t) => t.distance(p),
        }
    }
}

fn lift(v: Vec2, a: f64) -> Vec3 {
    Vec3::new(v.x, v.y, a)
}

fn fan(p: &ConvexPolygon, a: f64) -> Vec<[Vec3; 3]> {
    let vs = p.vertices();
    (1..vs.len().saturating_sub(1))
        .map(|i| [lift(vs[0], a), lift(vs[i], a), lift(vs[i + 1], a)])
        .collect()
}

/// Lateral triangles of conv(A×{a0} ∪ B×{a1}): walk both boundaries in
/// angular order of their edges, pairing each edge with the vertex of the
/// other cut that supports the same outward normal.
fn lateral(a: &ConvexPolygon, a0: f64, b: &ConvexPolygon, a1: f64) -> Vec<[Vec3; 3]> {
    let (va, vb) = (a.vertices(), b.vertices());
    let (ea, eb) = (a.edges_by_angle(), b.edges_by_angle());
    let mut tris = vec![[lift(va[0], a0), lift(vb[0], a1), lift(vb[0], a1)]];
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let take_a = j >= eb.len() || (i < ea.len() && ea[i].0 <= eb[j].0);
        if take_a {
            tris.push([
                lift(va[i % va.len()], a0),
                lift(va[(i + 1) % va.len()], a0),
                lift(vb[j % vb.len()], a1),
            ]);
            i += 1;
        } else {
            tris.push([
                lift(va[i % va.len()], a0),
                lift(vb[j % vb.len()], a1),
                lift(vb[(j + 1) % vb.len()], a1),
            ]);
            j += 1;
        }
    }
    tris
}

fn has_interior(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    if a.len() >= 3 || b.len() >= 3 {
        return true;
    }
    if a.len() == 2 && b.len() == 2 {
        let da = a.vertices()[1] - a.vertices()[0];
        let db = b.vertices()[1] - b.vertices()[0];
        return da.cross(db).abs() > 1e-12 * da.norm() * db.norm();
    }
    false
}

fn prismatoid(a: &ConvexPolygon, a0: f64, b: &ConvexPolygon, a1: f64) -> Prismatoid {
    let side = lateral(a, a0, b, a1);
    let planes = has_interior(a, b).then(|| {
        let inner = lift(
            (a.centroid_of_vertices() + b.centroid_of_vertices()) * 0.5,
            0.5 * (a0 + a1),
        );
        side.iter()
            .filter_map(|t| {
                let n = (t[1] - t[0]).cross(t[2] - t[0]);
                let len = n.norm();
                if len == 0.0 {
                    return None;
                }
                let mut n = n * (1.0 / len);
                if n.dot(inner - t[0]) > 0.0 {
                    n = n * -1.0;
                }
                Some((n, t[0]))
            })
            .collect()
    });
    let n_lateral = side.len();
    let mut faces = side;
    faces.extend(fan(a, a0));
    faces.extend(fan(b, a1));
    Prismatoid {
        a0,
        a1,
        faces,
        n_lateral,
        planes,
    }
}

fn bounds(points: impl IntoIterator<Item = Vec3>) -> (Vec3, Vec3) {
    let mut lo = Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    (lo, hi)
}

/// A boundary element of a sendograph, to be refined by branch and bound.
#[derive(Debug, Clone, Copy)]
enum Element {
    Seg([Vec3; 2]),
    Tri([Vec3; 3]),
}

/// `send u` as a union of convex pieces plus its boundary elements.
#[derive(Debug, Clone)]
pub(crate) struct Solid {
    pieces: Vec<Piece>,
    boundary: Vec<Element>,
    lo: Vec3,
    hi: Vec3,
}

impl Solid {
    pub(crate) fn new(u: &FuzzyNumber) -> Self {
        let levels = u.levels();
        let mut pieces = Vec::with_capacity(levels.len() - 1);
        let mut boundary = Vec::new();
        match u.dim() {
            1 => {
                let ends: Vec<(f64, f64, f64)> = levels
                    .iter()
                    .map(|l| {
                        let i = l.cut.as_interval().expect("dim 1 cut");
                        (l.alpha, i.lo(), i.hi())
                    })
                    .collect();
                for w in ends.windows(2) {
                    let t = Trapezoid {
                        a0: w[0].0,
                        a1: w[1].0,
                        l0: w[0].1,
                        r0: w[0].2,
                        l1: w[1].1,
                        r1: w[1].2,
                    };
                    pieces.push(Piece {
                        lo: Vec3::new(t.l0.min(t.l1), 0.0, t.a0),
                        hi: Vec3::new(t.r0.max(t.r1), 0.0, t.a1),
                        shape: Shape::Trap(t),
                    });
                    boundary.push(Element::Seg([
                        Vec3::new(w[0].1, 0.0, w[0].0),
                        Vec3::new(w[1].1, 0.0, w[1].0),
                    ]));
                    boundary.push(Element::Seg([
                        Vec3::new(w[0].2, 0.0, w[0].0),
                        Vec3::new(w[1].2, 0.0, w[1].0),
                    ]));
                }
                let (b, t) = (ends[0], ends[ends.len() - 1]);
                boundary.push(Element::Seg([Vec3::new(b.1, 0.0, b.0), Vec3::new(b.2, 0.0, b.0)]));
                boundary.push(Element::Seg([Vec3::new(t.1, 0.0, t.0), Vec3::new(t.2, 0.0, t.0)]));
            }
            _ => {
                let polys: Vec<(f64, &ConvexPolygon)> = levels
                    .iter()
                    .map(|l| match &l.cut {
                        Cut::Polygon(p) => (l.alpha, p),
                        Cut::Interval(_) => unreachable!("dim 2 cut"),
                    })
                    .collect();
                for w in polys.windows(2) {
                    let pr = prismatoid(w[0].1, w[0].0, w[1].1, w[1].0);
                    let (lo, hi) = bounds(pr.faces.iter().flatten().copied());
                    boundary.extend(pr.faces[..pr.n_lateral].iter().copied().map(Element::Tri));
                    pieces.push(Piece {
                        lo,
                        hi,
                        shape: Shape::Prism(pr),
                    });
                }
                let (a_bot, bottom) = polys[0];
                let vs = bottom.vertices();
                for i in 0..vs.len() {
                    let next = if vs.len() > 1 { (i + 1) % vs.len() } else { i };
                    boundary.push(Element::Seg([lift(vs[i], a_bot), lift(vs[next], a_bot)]));
                }
                let (a_top, top) = polys[polys.len() - 1];
                if top.len() >= 3 {
                    boundary.extend(fan(top, a_top).into_iter().map(Element::Tri));
                } else {
                    let vs = top.vertices();
                    boundary.push(Element::Seg([lift(vs[0], a_top), lift(vs[vs.len() - 1], a_top)]));
                }
            }
        }
        let (lo, hi) = bounds(pieces.iter().flat_map(|p| [p.lo, p.hi]));
        Self {
            pieces,
            boundary,
            lo,
            hi,
        }
    }

    /// `min(cap, d(p, send u))`, together with the exact distance to every
    /// piece that could not be pruned (pruned pieces report infinity, which
    /// only loosens bounds built from these values).
    pub(crate) fn probe(&self, p: Vec3, cap: f64) -> Probe {
        let mut per = vec![f64::INFINITY; self.pieces.len()];
        let mut best = cap;
        if dist_point_box(p, self.lo, self.hi) < best {
            for (k, piece) in self.pieces.iter().enumerate() {
                if dist_point_box(p, piece.lo, piece.hi) >= best {
                    continue;
                }
                per[k] = piece.distance(p);
                best = best.min(per[k]);
            }
        }
        Probe {
            g: best,
            alpha: p.z,
            per: per.into(),
        }
    }

    #[cfg(test)]
    pub(crate) fn distance_capped(&self, p: Vec3, cap: f64) -> f64 {
        self.probe(p, cap).g
    }

    pub(crate) fn diameter_bound(&self) -> f64 {
        (self.hi - self.lo).norm()
    }
}

/// Which set the supremum side measures distance to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Graph {
    /// `d(p, send v)`.
    Send,
    /// `d(p, end v) = min(α_p, d(p, send v))`.
    End,
}

/// The objective at one boundary point, with the per-piece distances that
/// feed the convexity bound.
#[derive(Debug, Clone)]
pub(crate) struct Probe {
    g: f64,
    alpha: f64,
    per: Rc<[f64]>,
}

struct Node {
    upper: f64,
    elem: Element,
    probes: [Probe; 3],
    dir: usize,
}

impl PartialEq for Node {
    fn eq(&self, o: &Self) -> bool {
        self.upper.total_cmp(&o.upper) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Node {
    fn cmp(&self, o: &Self) -> Ordering {
        self.upper.total_cmp(&o.upper)
    }
}

/// Smallest radius around the vertices that covers the triangle: the
/// circumradius when acute, half the longest edge otherwise.
fn tri_cover(t: &[Vec3; 3]) -> f64 {
    let mut e = [
        (t[1] - t[2]).norm_sq(),
        (t[0] - t[2]).norm_sq(),
        (t[0] - t[1]).norm_sq(),
    ];
    e.sort_by(f64::total_cmp);
    if e[2] >= e[0] + e[1] {
        return 0.5 * e[2].sqrt();
    }
    let area2 = (t[1] - t[0]).cross(t[2] - t[0]).norm();
    (e[0] * e[1] * e[2]).sqrt() / (2.0 * area2)
}

/// An upper bound for the objective over an element, from two arguments:
/// it is 1-Lipschitz, and it is at most `min_i max_v d_i(v)` (and, for
/// endographs, `max_v α_v`) because each piece distance `d_i` is convex and
/// so peaks at a vertex of the element.
fn upper_bound(elem: &Element, probes: &[Probe; 3], graph: Graph) -> f64 {
    let n = match elem {
        Element::Seg(_) => 2,
        Element::Tri(_) => 3,
    };
    let ps = &probes[..n];
    let gmax = ps.iter().map(|p| p.g).fold(0.0, f64::max);
    let lipschitz = match elem {
        Element::Seg([a, b]) => (0.5 * (probes[0].g + probes[1].g + (*b - *a).norm())).max(gmax),
        Element::Tri(t) => gmax + tri_cover(t),
    };
    let convex = (0..ps[0].per.len())
        .map(|i| ps.iter().map(|p| p.per[i]).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    let mut upper = lipschitz.min(convex);
    if graph == Graph::End {
        upper = upper.min(ps.iter().map(|p| p.alpha).fold(0.0, f64::max));
    }
    upper.max(gmax)
}

fn elem_size(elem: &Element) -> f64 {
    match elem {
        Element::Seg([a, b]) => (*b - *a).norm(),
        Element::Tri(t) => (t[0] - t[1])
            .norm()
            .max((t[1] - t[2]).norm())
            .max((t[0] - t[2]).norm()),
    }
}

/// Evaluation budget before the engine gives up refining and reports the
/// enclosure it has.
const MAX_EVALS: usize = 4_000_000;

fn key(p: Vec3) -> (u64, u64, u64) {
    (p.x.to_bits(), p.y.to_bits(), p.z.to_bits())
}

/// Certified `H(G(u), G(v))` with `G = send` or `end`, to half-width `tol`.
///
/// The returned value is attained by an actual boundary point, so it is a
/// lower bound; the branch and bound stops once every unrefined element is
/// certified to stay below `value + tol`.
pub(crate) fn certified_hausdorff(a: &Solid, b: &Solid, graph: Graph, tol: f64) -> CertifiedValue {
    let targets = [b, a];
    let eval = |dir: usize, p: Vec3| -> Probe {
        let cap = match graph {
            Graph::Send => f64::INFINITY,
            Graph::End => p.z,
        };
        targets[dir].probe(p, cap)
    };

    let mut evals = 0usize;
    let mut lower: f64 = 0.0;
    let mut nodes = Vec::new();
    for (dir, src) in [a, b].into_iter().enumerate() {
        let mut cache: HashMap<(u64, u64, u64), Probe> = HashMap::new();
        for elem in &src.boundary {
            let verts: &[Vec3] = match elem {
                Element::Seg(s) => s,
                Element::Tri(t) => t,
            };
            let probes: Vec<Probe> = verts
                .iter()
                .map(|&p| {
                    cache
                        .entry(key(p))
                        .or_insert_with(|| {
                            evals += 1;
                            eval(dir, p)
                        })
                        .clone()
                })
                .collect();
            lower = probes.iter().map(|p| p.g).fold(lower, f64::max);
            let probes = [
                probes[0].clone(),
                probes[1].clone(),
                probes[probes.len() - 1].clone(),
            ];
            nodes.push(Node {
                upper: upper_bound(elem, &probes, graph),
                elem: *elem,
                probes,
                dir,
            });
        }
    }

    let scale = a.diameter_bound().max(b.diameter_bound()).max(1.0);
    let min_size = 1e-12 * scale;
    let mut heap: BinaryHeap<Node> = nodes.into_iter().filter(|n| n.upper > lower + tol).collect();
    while let Some(top) = heap.peek() {
        if top.upper <= lower + tol || evals >= MAX_EVALS {
            break;
        }
        let node = heap.pop().expect("peeked");
        if elem_size(&node.elem) <= min_size {
            continue;
        }
        let [p0, p1, p2] = node.probes;
        let children: [(Element, [Probe; 3]); 2] = match node.elem {
            Element::Seg([p, q]) => {
                let m = eval(node.dir, p.midpoint(q));
                evals += 1;
                lower = lower.max(m.g);
                [
                    (
                        Element::Seg([p, p.midpoint(q)]),
                        [p0.clone(), m.clone(), m.clone()],
                    ),
                    (Element::Seg([p.midpoint(q), q]), [m.clone(), p1.clone(), p1]),
                ]
            }
            Element::Tri(t) => {
                let lens = [
                    (t[1] - t[2]).norm_sq(),
                    (t[0] - t[2]).norm_sq(),
                    (t[0] - t[1]).norm_sq(),
                ];
                // k is the vertex opposite the longest edge (i, j).
                let k = (0..3).max_by(|&x, &y| lens[x].total_cmp(&lens[y])).expect("3");
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                let mid = t[i].midpoint(t[j]);
                let m = eval(node.dir, mid);
                evals += 1;
                lower = lower.max(m.g);
                let v = [p0, p1, p2];
                [
                    (
                        Element::Tri([t[i], mid, t[k]]),
                        [v[i].clone(), m.clone(), v[k].clone()],
                    ),
                    (Element::Tri([mid, t[j], t[k]]), [m, v[j].clone(), v[k].clone()]),
                ]
            }
        };
        for (elem, probes) in children {
            let upper = upper_bound(&elem, &probes, graph);
            if upper > lower + tol {
                heap.push(Node {
                    upper,
                    elem,
                    probes,
                    dir: node.dir,
                });
            }
        }
    }
    let worst = heap.peek().map_or(lower, |n| n.upper.max(lower));
    CertifiedValue::new(lower, tol.max(worst - lower))
}
