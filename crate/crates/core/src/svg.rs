//! Static SVG drawings of point sets, matchings and piercing certificates.
//!
//! Coordinates are mapped affinely into a 1000x1000 view box with a margin,
//! preserving aspect ratio, y axis pointing up. Floating point is used here
//! only for drawing.

use std::fmt::Write as _;

use crate::geometry::{Point, PointSet};
use crate::matching::{Matching, PiercingPair};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 60.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Self {
        let xs = points.iter().map(|p| p.x as f64);
        let ys = points.iter().map(|p| p.y as f64);
        let (min_x, max_x) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        let (min_y, max_y) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
        if !min_x.is_finite() {
            return Frame { min_x: 0.0, max_y: 0.0, scale: 1.0, off_x: SIZE / 2.0, off_y: SIZE / 2.0 };
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        Frame {
            min_x,
            max_y,
            scale,
            off_x: (SIZE - (max_x - min_x) * scale) / 2.0,
            off_y: (SIZE - (max_y - min_y) * scale) / 2.0,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (self.off_x + (x - self.min_x) * self.scale, self.off_y + (self.max_y - y) * self.scale)
    }

    fn point(&self, p: Point) -> (f64, f64) {
        self.map(p.x as f64, p.y as f64)
    }
}

/// Point where the line through `a`, `b` meets the line through `c`, `d`.
fn line_hit(a: Point, b: Point, c: Point, d: Point) -> Option<(f64, f64)> {
    let (ax, ay, bx, by) = (a.x as f64, a.y as f64, b.x as f64, b.y as f64);
    let (cx, cy, dx, dy) = (c.x as f64, c.y as f64, d.x as f64, d.y as f64);
    let den = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx);
    if den == 0.0 {
        return None;
    }
    let t = ((cx - ax) * (dy - cy) - (cy - ay) * (dx - cx)) / den;
    Some((ax + t * (bx - ax), ay + t * (by - ay)))
}

pub fn render_svg(set: &PointSet, matching: Option<&Matching>, highlight: Option<&PiercingPair>) -> String {
    let frame = Frame::fit(set.points());
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    if let Some(pair) = highlight {
        let (a, b) = (set.point(pair.ab.0), set.point(pair.ab.1));
        let (c, d) = (set.point(pair.cd.0), set.point(pair.cd.1));
        if let Some((hx, hy)) = line_hit(a, b, c, d) {
            // run the line from A a little past where it meets CD
            let (ax, ay) = (a.x as f64, a.y as f64);
            let (ex, ey) = (hx + 0.15 * (hx - ax), hy + 0.15 * (hy - ay));
            let (x1, y1) = frame.point(a);
            let (x2, y2) = frame.map(ex, ey);
            let _ = writeln!(
                out,
                r#"  <line class="piercing-line" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="gray" stroke-width="2" stroke-dasharray="10 8"/>"#
            );
        }
    }

    if let Some(m) = matching {
        for &(i, j) in m.pairs() {
            let (x1, y1) = frame.point(set.point(i));
            let (x2, y2) = frame.point(set.point(j));
            let _ = writeln!(
                out,
                r#"  <line class="segment" data-pair="{i}-{j}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="3"/>"#
            );
        }
    }

    for (i, &p) in set.points().iter().enumerate() {
        let (cx, cy) = frame.point(p);
        let _ = writeln!(out, r#"  <circle id="p{i}" cx="{cx:.2}" cy="{cy:.2}" r="9" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::exceptional_set;

    #[test]
    fn points_only() {
        let svg = render_svg(&exceptional_set(), None, None);
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches("<line").count(), 0);
        for i in 0..6 {
            assert_eq!(svg.matches(&format!(r#"id="p{i}""#)).count(), 1);
        }
    }

    #[test]
    fn matching_segments() {
        let m = Matching::from_pairs(vec![(0, 1), (2, 3), (4, 5)]);
        let svg = render_svg(&exceptional_set(), Some(&m), None);
        assert_eq!(svg.matches(r#"class="segment""#).count(), 3);
        assert!(!svg.contains("stroke-dasharray"));
    }

    #[test]
    fn coordinates_stay_in_view() {
        let svg = render_svg(&exceptional_set(), None, None);
        for cap in svg.split("cx=\"").skip(1) {
            let v: f64 = cap.split('"').next().unwrap().parse().unwrap();
            assert!((MARGIN - 1e-9..=SIZE - MARGIN + 1e-9).contains(&v));
        }
    }

    #[test]
    fn single_point_is_centered() {
        let s = PointSet::from_coords(&[(7, 7)]).unwrap();
        let svg = render_svg(&s, None, None);
        assert!(svg.contains(r#"cx="500.00" cy="500.00""#));
    }
}
