//! Exact planar predicates over bounded integer coordinates.
//!
//! Every predicate reduces to the sign of a 2x2 determinant. Coordinates are
//! bounded by 2^30 in absolute value, so coordinate differences fit in 32 bits
//! and the determinant fits comfortably in an `i128`. No predicate ever needs
//! a tolerance.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate value.
pub const COORD_BOUND: i64 = 1 << 30;

/// Point sets up to this size always get the full triple scan for general
/// position. Larger sets use an exact direction-hashing check unless strict
/// mode is requested.
pub const FULL_SCAN_THRESHOLD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn in_range(&self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of triangle `abc`; positive for a counter-clockwise turn.
#[inline]
pub fn orient_det(a: Point, b: Point, c: Point) -> i128 {
    let (bx, by) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (cx, cy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    bx * cy - by * cx
}

#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    match orient_det(a, b, c).cmp(&0) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Whether the open segments `p1p2` and `q1q2` meet.
///
/// Assumes four distinct points with no three collinear; shared endpoints are
/// the caller's problem.
#[inline]
pub fn segments_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    orient(p1, p2, q1) != orient(p1, p2, q2) && orient(q1, q2, p1) != orient(q1, q2, p2)
}

/// Whether segment `ab` pierces segment `cd`: the segments are disjoint but
/// the line through `a` and `b` meets the open segment `cd`.
///
/// Not symmetric in the two segments.
#[inline]
pub fn pierces(a: Point, b: Point, c: Point, d: Point) -> bool {
    let line_splits_cd = orient(a, b, c) != orient(a, b, d);
    line_splits_cd && orient(c, d, a) == orient(c, d, b)
}

/// Strict containment of `p` in triangle `abc` (boundary excluded).
pub fn point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let t = orient(a, b, c);
    t != Orientation::Collinear && orient(a, b, p) == t && orient(b, c, p) == t && orient(c, a, p) == t
}

/// How thoroughly [`PointSet`] construction checks general position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GpCheck {
    /// Triple scan up to [`FULL_SCAN_THRESHOLD`] points, exact direction
    /// hashing above it.
    #[default]
    Auto,
    /// Always run the O(n^3) triple scan.
    Strict,
}

/// A finite planar point set in general position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        Self::with_check(points, GpCheck::Auto)
    }

    pub fn with_check(points: Vec<Point>, check: GpCheck) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if !p.in_range() {
                return Err(Error::CoordinateOutOfRange { index, x: p.x, y: p.y });
            }
        }
        check_distinct(&points)?;
        match check {
            GpCheck::Strict => triple_scan(&points)?,
            GpCheck::Auto if points.len() <= FULL_SCAN_THRESHOLD => triple_scan(&points)?,
            GpCheck::Auto => direction_scan(&points)?,
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Half the size, for even sets.
    pub fn half(&self) -> Result<usize> {
        if self.len() % 2 == 1 {
            Err(Error::OddSize(self.len()))
        } else {
            Ok(self.len() / 2)
        }
    }
}

fn check_distinct(points: &[Point]) -> Result<()> {
    let mut seen: HashMap<Point, usize> = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if let Some(&first) = seen.get(p) {
            return Err(Error::DuplicatePoint { first, second: i });
        }
        seen.insert(*p, i);
    }
    Ok(())
}

fn triple_scan(points: &[Point]) -> Result<()> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(points[i], points[j], points[k]) == Orientation::Collinear {
                    return Err(Error::NotGeneralPosition(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Exact O(n^2 log n) collinearity check: for every anchor, two later points
/// in the same reduced direction form a collinear triple with it.
fn direction_scan(points: &[Point]) -> Result<()> {
    let n = points.len();
    let mut dirs: Vec<((i64, i64), usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in i + 1..n {
            let (mut dx, mut dy) = (points[j].x - points[i].x, points[j].y - points[i].y);
            let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
            dx /= g;
            dy /= g;
            if dy < 0 || (dy == 0 && dx < 0) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push(((dx, dy), j));
        }
        dirs.sort_unstable();
        for w in dirs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotGeneralPosition(i, w[0].1, w[1].1));
            }
        }
    }
    Ok(())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Clockwise boundary cycle of the convex hull plus the remaining indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullLabeling {
    /// Hull vertices in clockwise order, starting at the lexicographically
    /// smallest point.
    pub hull: Vec<usize>,
    /// Points strictly inside the hull, ascending.
    pub interior: Vec<usize>,
}

impl HullLabeling {
    /// Position of point `i` in the hull cycle, if it is a hull vertex.
    pub fn label_of(&self, i: usize) -> Option<usize> {
        self.hull.iter().position(|&h| h == i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.hull.contains(&i)
    }

    /// Hull vertex at cyclic position `label` (any integer, wrapped).
    pub fn at(&self, label: isize) -> usize {
        let len = self.hull.len() as isize;
        self.hull[label.rem_euclid(len) as usize]
    }
}

/// Convex hull via the monotone chain; the upper chain traversed left to right
/// followed by the lower chain right to left is the clockwise cycle.
pub fn convex_hull(set: &PointSet) -> Result<HullLabeling> {
    let n = set.len();
    if n < 3 {
        return Err(Error::DegenerateInput { needed: 3, got: n });
    }
    let pts = set.points();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| pts[i]);

    let chain = |iter: &mut dyn Iterator<Item = usize>| {
        let mut stack: Vec<usize> = Vec::new();
        for i in iter {
            while stack.len() >= 2 {
                let (a, b) = (stack[stack.len() - 2], stack[stack.len() - 1]);
                if orient(pts[a], pts[b], pts[i]) == Orientation::Clockwise {
                    break;
                }
                stack.pop();
            }
            stack.push(i);
        }
        stack
    };
    let mut upper = chain(&mut order.iter().copied());
    let mut lower = chain(&mut order.iter().rev().copied());
    upper.pop();
    lower.pop();
    upper.extend(lower);

    let mut on_hull = vec![false; n];
    for &h in &upper {
        on_hull[h] = true;
    }
    let interior = (0..n).filter(|&i| !on_hull[i]).collect();
    Ok(HullLabeling { hull: upper, interior })
}

pub fn is_convex_position(set: &PointSet) -> Result<bool> {
    Ok(convex_hull(set)?.interior.is_empty())
}

/// Sorts `indices` clockwise around `apex`.
///
/// Only a total order when all points lie in an open half-plane through
/// `apex`, which holds whenever `apex` is a hull vertex of the points involved.
pub fn sort_clockwise_around(points: &[Point], apex: usize, indices: &mut [usize]) {
    let a = points[apex];
    indices.sort_by(|&u, &v| match orient(a, points[u], points[v]) {
        Orientation::Clockwise => Ordering::Less,
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Collinear => u.cmp(&v),
    });
}

/// The other points in clockwise angular order around hull vertex `a1`,
/// from its clockwise hull successor to its hull predecessor.
pub fn polar_order(set: &PointSet, a1: usize) -> Result<Vec<usize>> {
    let n = set.len();
    if n >= 3 && !convex_hull(set)?.contains(a1) {
        return Err(Error::NotOnHull(a1));
    }
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != a1).collect();
    sort_clockwise_around(set.points(), a1, &mut rest);
    Ok(rest)
}

/// Point counts strictly on each side of the directed line `p -> q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    pub left: usize,
    pub right: usize,
}

impl SideCounts {
    /// Right minus left.
    pub fn delta(&self) -> i64 {
        self.right as i64 - self.left as i64
    }
}

pub fn side_counts(set: &PointSet, p: usize, q: usize) -> SideCounts {
    let (a, b) = (set.point(p), set.point(q));
    let mut counts = SideCounts { left: 0, right: 0 };
    for (i, &c) in set.points().iter().enumerate() {
        if i == p || i == q {
            continue;
        }
        match orient(a, b, c) {
            Orientation::CounterClockwise => counts.left += 1,
            Orientation::Clockwise => counts.right += 1,
            Orientation::Collinear => {}
        }
    }
    counts
}

/// Hull position of the first vertex `A_j` (in clockwise label order) such
/// that the line through `q` and `A_j` leaves `k - 1` points on each side.
pub fn halving_vertex(set: &PointSet, q: usize) -> Result<usize> {
    let k = set.half()?;
    let hull = convex_hull(set)?;
    hull.hull
        .iter()
        .position(|&a| {
            let c = side_counts(set, q, a);
            c.left + 1 == k && c.right + 1 == k
        })
        .ok_or(Error::NotFound(q))
}
