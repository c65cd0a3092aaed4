use std::f64::consts::TAU;

use num_traits::{Signed, ToPrimitive, Zero};

use super::GeometryError;
use crate::induction::{is_suspension, Rational, SuspensionData};
use crate::perm::{LabeledPermutation, Symbol};

/// Relative tolerance on a vertex-class angle sum.
pub const CLASS_ANGLE_TOLERANCE: f64 = 1e-9;
/// Maximum distance of `angle / 2pi` to the nearest integer.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// Exact planar point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: Rational::new_raw(0, 1),
        y: Rational::new_raw(0, 1),
    };

    fn add(self, x: Rational, y: Rational) -> Point {
        Point {
            x: self.x + x,
            y: self.y + y,
        }
    }

    fn sub(self, o: Point) -> (Rational, Rational) {
        (self.x - o.x, self.y - o.y)
    }
}

/// An edge germ at a cone point: the start or the end of the side labeled
/// `symbol`, seen as a direction leaving the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Germ {
    pub symbol: Symbol,
    pub at_end: bool,
}

impl Germ {
    pub(crate) fn index(self) -> usize {
        2 * self.symbol as usize + self.at_end as usize
    }
}

/// A polygon corner with the angular sector it contributes to its cone
/// point. The sector runs counterclockwise from `start` to `end`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub point: Point,
    pub angle: f64,
    pub start: Germ,
    pub end: Germ,
}

/// A cone point of the surface.
#[derive(Clone, Debug)]
pub struct VertexClass {
    /// Corner indices, in counterclockwise order around the cone point.
    pub corners: Vec<usize>,
    pub angle: f64,
    pub degree: u32,
}

/// Translation surface obtained by gluing the top and bottom broken lines
/// of an embedded suspension.
///
/// Corners are listed counterclockwise: the common left endpoint first,
/// then the interior bottom vertices, the common right endpoint and the
/// interior top vertices from right to left. There are `2d` of them.
#[derive(Clone, Debug)]
pub struct PolygonSurface {
    perm: LabeledPermutation,
    zeta: SuspensionData,
    corners: Vec<Corner>,
    class_of: Vec<usize>,
    classes: Vec<VertexClass>,
    sector_from: Vec<usize>,
    /// `(class of start, class of end)` per symbol.
    edge_ends: Vec<(usize, usize)>,
}

impl PolygonSurface {
    pub fn permutation(&self) -> &LabeledPermutation {
        &self.perm
    }

    pub fn suspension(&self) -> &SuspensionData {
        &self.zeta
    }

    pub fn d(&self) -> usize {
        self.perm.d()
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn class_of_corner(&self, corner: usize) -> usize {
        self.class_of[corner]
    }

    /// Class containing the common left endpoint of the broken lines.
    pub fn marked_class(&self) -> usize {
        self.class_of[0]
    }

    pub fn edge_ends(&self, symbol: Symbol) -> (usize, usize) {
        self.edge_ends[symbol as usize]
    }

    /// Genus from the Euler characteristic of the cell decomposition with
    /// one face, `d` edges and one vertex per class.
    pub fn genus(&self) -> usize {
        (self.d() + 1 - self.classes.len()) / 2
    }

    /// Corner whose sector starts at `germ`.
    pub(crate) fn sector_starting_at(&self, germ: Germ) -> usize {
        self.sector_from[germ.index()]
    }

    /// Class of the vertex a germ leaves from.
    pub(crate) fn class_of_germ(&self, germ: Germ) -> usize {
        self.class_of[self.sector_starting_at(germ)]
    }

    /// Angle swept counterclockwise from `from` to `to` around their common
    /// cone point; a full turn when they coincide.
    pub fn angle_between(&self, from: Germ, to: Germ) -> f64 {
        let mut total = 0.0;
        let mut c = self.sector_starting_at(from);
        loop {
            let corner = &self.corners[c];
            total += corner.angle;
            if corner.end == to {
                return total;
            }
            c = self.sector_starting_at(corner.end);
        }
    }

    /// Germs strictly between `from` and `to`, counterclockwise.
    pub(crate) fn germs_between(&self, from: Germ, to: Germ) -> Vec<Germ> {
        let mut out = Vec::new();
        let mut c = self.sector_starting_at(from);
        loop {
            let end = self.corners[c].end;
            if end == to {
                return out;
            }
            out.push(end);
            c = self.sector_starting_at(end);
        }
    }

    /// Area by the shoelace formula on the corner list.
    pub fn shoelace_area(&self) -> Rational {
        let n = self.corners.len();
        let mut twice = Rational::zero();
        for i in 0..n {
            let a = self.corners[i].point;
            let b = self.corners[(i + 1) % n].point;
            twice += a.x * b.y - b.x * a.y;
        }
        twice / Rational::from_integer(2)
    }
}

fn to_f64(q: Rational) -> f64 {
    q.to_f64().expect("finite rational")
}

fn cross(a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    a.0 * b.0 + a.1 * b.1
}

/// Counterclockwise angle from direction `u` to direction `v`, in `(0, 2pi]`.
fn ccw_angle(u: (Rational, Rational), v: (Rational, Rational)) -> f64 {
    let c = cross(u, v);
    let d = dot(u, v);
    if c.is_zero() {
        return if d.is_negative() {
            std::f64::consts::PI
        } else {
            TAU
        };
    }
    let a = to_f64(c).atan2(to_f64(d));
    if a <= 0.0 {
        a + TAU
    } else {
        a
    }
}

fn orient(a: Point, b: Point, c: Point) -> i8 {
    let v = cross(b.sub(a), c.sub(a));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(p1, p2, q1))
        || (o2 == 0 && on_segment(p1, p2, q2))
        || (o3 == 0 && on_segment(q1, q2, p1))
        || (o4 == 0 && on_segment(q1, q2, p2))
}

/// Two segments leaving a common point `p` towards `a` and `b` meet only at
/// `p`: they are not collinear, or point in opposite directions.
fn only_shared_endpoint(p: Point, a: Point, b: Point) -> bool {
    let (u, v) = (a.sub(p), b.sub(p));
    !cross(u, v).is_zero() || dot(u, v).is_negative()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the glued polygon of `(p, zeta)`. The suspension must be embedded:
/// the two broken lines may only meet at their common endpoints.
pub fn build_polygon(
    p: &LabeledPermutation,
    zeta: &SuspensionData,
) -> Result<PolygonSurface, GeometryError> {
    let d = p.d();
    if zeta.len() != d {
        return Err(GeometryError::SizeMismatch {
            expected: d,
            got: zeta.len(),
        });
    }
    if !is_suspension(p, &zeta.heights) {
        return Err(GeometryError::NotASuspension);
    }
    let vector = |s: Symbol| (zeta.lengths[s as usize], zeta.heights[s as usize]);
    let line = |row: &[Symbol]| {
        let mut pts = Vec::with_capacity(d + 1);
        pts.push(Point::ORIGIN);
        for &s in row {
            let last = *pts.last().unwrap();
            let (x, y) = vector(s);
            pts.push(last.add(x, y));
        }
        pts
    };
    let top = line(p.top());
    let bottom = line(p.bottom());
    debug_assert_eq!(top[d], bottom[d]);

    for i in 0..d {
        for j in 0..d {
            let (t0, t1, b0, b1) = (top[i], top[i + 1], bottom[j], bottom[j + 1]);
            let ok = if i == 0 && j == 0 {
                only_shared_endpoint(t0, t1, b1)
            } else if i == d - 1 && j == d - 1 {
                only_shared_endpoint(t1, t0, b0)
            } else {
                !segments_meet(t0, t1, b0, b1)
            };
            if !ok {
                return Err(GeometryError::Crossing);
            }
        }
    }

    // corner c_j = B_j for j in 0..d, c_{2d-i} = T_i for i in 1..d
    let n = 2 * d;
    let top_corner = |i: usize| {
        if i == 0 {
            0
        } else if i == d {
            d
        } else {
            n - i
        }
    };
    let point = |c: usize| if c <= d { bottom[c] } else { top[n - c] };

    // side j leaves corner j; bottom sides run forward, top sides backward
    let side = |j: usize| -> (Symbol, bool) {
        if j < d {
            (p.bottom()[j], true)
        } else {
            (p.top()[n - 1 - j], false)
        }
    };
    let mut corners = Vec::with_capacity(n);
    let mut sector_from = vec![usize::MAX; n];
    for c in 0..n {
        let (next_sym, next_fwd) = side(c);
        let (prev_sym, prev_fwd) = side((c + n - 1) % n);
        let start = Germ {
            symbol: next_sym,
            at_end: !next_fwd,
        };
        let end = Germ {
            symbol: prev_sym,
            at_end: prev_fwd,
        };
        let here = point(c);
        let out = point((c + 1) % n).sub(here);
        let back = point((c + n - 1) % n).sub(here);
        let angle = ccw_angle(out, back);
        sector_from[start.index()] = c;
        corners.push(Corner {
            point: here,
            angle,
            start,
            end,
        });
    }

    let pt = p.top_positions();
    let pb = p.bottom_positions();
    let mut uf = UnionFind((0..n).collect());
    for s in 0..d {
        let (i, j) = (pt[s], pb[s]);
        uf.union(top_corner(i - 1), j - 1);
        uf.union(top_corner(i), j);
    }

    // classes numbered by first corner, so the left endpoint is class 0
    let mut roots: Vec<usize> = Vec::new();
    let class_of: Vec<usize> = (0..n)
        .map(|c| {
            let r = uf.find(c);
            roots.iter().position(|&x| x == r).unwrap_or_else(|| {
                roots.push(r);
                roots.len() - 1
            })
        })
        .collect();

    let mut classes = Vec::with_capacity(roots.len());
    for id in 0..roots.len() {
        let first = class_of.iter().position(|&k| k == id).unwrap();
        let mut ring = vec![first];
        let mut angle = corners[first].angle;
        let mut c = sector_from[corners[first].end.index()];
        while c != first {
            if class_of[c] != id || ring.len() > n {
                return Err(GeometryError::BrokenLink(id));
            }
            ring.push(c);
            angle += corners[c].angle;
            c = sector_from[corners[c].end.index()];
        }
        if ring.len() != class_of.iter().filter(|&&k| k == id).count() {
            return Err(GeometryError::BrokenLink(id));
        }
        let turns = angle / TAU;
        let rounded = turns.round();
        if rounded < 1.0
            || (turns - rounded).abs() >= ROUNDING_TOLERANCE
            || (angle - rounded * TAU).abs() > CLASS_ANGLE_TOLERANCE * angle
        {
            return Err(GeometryError::AngleSum { class: id, angle });
        }
        classes.push(VertexClass {
            corners: ring,
            angle,
            degree: rounded as u32 - 1,
        });
    }

    let edge_ends = (0..d)
        .map(|s| (class_of[top_corner(pt[s] - 1)], class_of[top_corner(pt[s])]))
        .collect();

    let surface = PolygonSurface {
        perm: p.clone(),
        zeta: zeta.clone(),
        corners,
        class_of,
        classes,
        sector_from,
        edge_ends,
    };
    let v = surface.classes.len();
    if (d + 1 < v) || !(d + 1 - v).is_multiple_of(2) {
        return Err(GeometryError::EulerCharacteristic {
            vertices: v,
            edges: d,
        });
    }
    let degree_sum: usize = surface.classes.iter().map(|c| c.degree as usize).sum();
    if degree_sum + 2 != 2 * surface.genus() {
        return Err(GeometryError::GenusMismatch {
            euler: surface.genus(),
            degree_sum,
        });
    }
    Ok(surface)
}

/// Degrees of the cone points and the class of the marked one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDegrees {
    pub degrees: Vec<u32>,
    pub marked_class: usize,
}

impl ConeDegrees {
    pub fn marked_degree(&self) -> u32 {
        self.degrees[self.marked_class]
    }
}

pub fn cone_degrees(s: &PolygonSurface) -> ConeDegrees {
    ConeDegrees {
        degrees: s.vertex_classes().iter().map(|c| c.degree).collect(),
        marked_class: s.marked_class(),
    }
}

/// Zippered-rectangle area `sum lambda_a h_a`, where `h_a` is the top partial
/// height before `a` minus the bottom partial height before `a`.
pub fn area(p: &LabeledPermutation, zeta: &SuspensionData) -> Rational {
    let pt = p.top_positions();
    let pb = p.bottom_positions();
    let d = p.d();
    let mut total = Rational::zero();
    for a in 0..d {
        let mut h = Rational::zero();
        for b in 0..d {
            if pt[b] < pt[a] {
                h += zeta.heights[b];
            }
            if pb[b] < pb[a] {
                h -= zeta.heights[b];
            }
        }
        total += zeta.lengths[a] * h;
    }
    total
}
