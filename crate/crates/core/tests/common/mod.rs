//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's predicates or search code.

#![allow(dead_code)]

use planematch::{Point, PointSet};
use proptest::prelude::*;

fn cross(ax: i128, ay: i128, bx: i128, by: i128) -> i128 {
    ax * by - ay * bx
}

/// Parametric form: p1 + t (p2 - p1) = q1 + u (q2 - q1) with `t, u` in the
/// open unit interval.
pub fn open_segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let (rx, ry) = ((p2.x - p1.x) as i128, (p2.y - p1.y) as i128);
    let (sx, sy) = ((q2.x - q1.x) as i128, (q2.y - q1.y) as i128);
    let (wx, wy) = ((q1.x - p1.x) as i128, (q1.y - p1.y) as i128);
    let mut den = cross(rx, ry, sx, sy);
    if den == 0 {
        return false;
    }
    let mut t = cross(wx, wy, sx, sy);
    let mut u = cross(wx, wy, rx, ry);
    if den < 0 {
        den = -den;
        t = -t;
        u = -u;
    }
    0 < t && t < den && 0 < u && u < den
}

/// Line through `a`, `b` meets the open segment `cd`, and the segments are
/// disjoint.
pub fn line_pierces(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (rx, ry) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (sx, sy) = ((d.x - c.x) as i128, (d.y - c.y) as i128);
    let (wx, wy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    let mut den = cross(rx, ry, sx, sy);
    if den == 0 {
        return false;
    }
    let mut u = cross(wx, wy, rx, ry);
    if den < 0 {
        den = -den;
        u = -u;
    }
    0 < u && u < den && !open_segments_meet(a, b, c, d)
}

fn twice_area(a: Point, b: Point, c: Point) -> i128 {
    cross((b.x - a.x) as i128, (b.y - a.y) as i128, (c.x - a.x) as i128, (c.y - a.y) as i128)
}

fn strictly_inside(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s = [twice_area(a, b, p), twice_area(b, c, p), twice_area(c, a, p)];
    s.iter().all(|&v| v > 0) || s.iter().all(|&v| v < 0)
}

/// Hull vertices by the definition: not inside any triangle of other points.
pub fn hull_vertices(pts: &[Point]) -> Vec<bool> {
    let n = pts.len();
    (0..n)
        .map(|i| {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if ![a, b, c].contains(&i) && strictly_inside(pts[i], pts[a], pts[b], pts[c]) {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect()
}

/// Every perfect matching of `0..n`, crossing or not.
pub fn all_perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for (x, &partner) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(y, _)| y != x).map(|(_, &v)| v).collect();
            acc.push((first, partner));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

pub fn is_plane(pts: &[Point], m: &[(usize, usize)]) -> bool {
    m.iter()
        .enumerate()
        .all(|(x, &(a, b))| m[x + 1..].iter().all(|&(c, d)| !open_segments_meet(pts[a], pts[b], pts[c], pts[d])))
}

pub fn plane_matchings(pts: &[Point]) -> Vec<Vec<(usize, usize)>> {
    all_perfect_matchings(pts.len()).into_iter().filter(|m| is_plane(pts, m)).collect()
}

pub fn has_piercing(pts: &[Point], m: &[(usize, usize)]) -> bool {
    let hull = hull_vertices(pts);
    m.iter().any(|&(a, b)| {
        (hull[a] || hull[b]) && m.iter().any(|&(c, d)| (c, d) != (a, b) && line_pierces(pts[a], pts[b], pts[c], pts[d]))
    })
}

/// `binomial(2k, k) / (k + 1)` in u128.
pub fn catalan_closed_form(k: u32) -> u128 {
    let mut b: u128 = 1;
    for i in 0..k as u128 {
        b = b * (2 * k as u128 - i) / (i + 1);
    }
    b / (k as u128 + 1)
}

pub fn exceptional() -> PointSet {
    PointSet::from_coords(&[(0, 0), (0, 100), (95, 31), (59, -81), (-59, -81), (-95, 31)]).unwrap()
}

pub fn g1() -> PointSet {
    PointSet::from_coords(&[(0, 0), (0, 10), (10, 10), (10, 0), (4, 5), (6, 5)]).unwrap()
}

/// Random point sets of even size in `sizes`, general position enforced by filtering.
pub fn point_sets(sizes: std::ops::RangeInclusive<usize>, coord: i64) -> impl Strategy<Value = PointSet> {
    let (lo, hi) = (*sizes.start() / 2, *sizes.end() / 2);
    (lo..=hi)
        .prop_flat_map(move |k| prop::collection::vec((-coord..=coord, -coord..=coord), 2 * k))
        .prop_filter_map("not in general position", |coords| PointSet::from_coords(&coords).ok())
}
