//! Plain-text point-set and matching files.
//!
//! Point sets: `#` starts a comment line, blank lines are skipped, the first
//! remaining line holds `n`, followed by `n` lines of two integers.
//! Matchings: one line of `i-j` pairs separated by whitespace.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{GpCheck, Point, PointSet};
use crate::matching::Matching;

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_point_set(text: &str, check: GpCheck) -> Result<PointSet> {
    let mut lines = significant_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "missing point count"))?;
    let n: usize = header.parse().map_err(|e| parse_err(line, format!("bad point count {header:?}: {e}")))?;
    let mut points = Vec::with_capacity(n);
    for (line, body) in lines {
        if points.len() == n {
            return Err(parse_err(line, format!("unexpected content after {n} points")));
        }
        let mut fields = body.split_whitespace();
        let mut coord = |name: &str| -> Result<i64> {
            let tok = fields.next().ok_or_else(|| parse_err(line, format!("missing {name} coordinate")))?;
            tok.parse().map_err(|e| parse_err(line, format!("bad {name} coordinate {tok:?}: {e}")))
        };
        let (x, y) = (coord("x")?, coord("y")?);
        if fields.next().is_some() {
            return Err(parse_err(line, "expected exactly two coordinates"));
        }
        points.push(Point::new(x, y));
    }
    if points.len() != n {
        return Err(parse_err(text.lines().count(), format!("expected {n} points, found {}", points.len())));
    }
    PointSet::with_check(points, check)
}

pub fn read_point_set(path: &Path, check: GpCheck) -> Result<PointSet> {
    parse_point_set(&fs::read_to_string(path)?, check)
}

pub fn format_point_set(set: &PointSet) -> String {
    let mut out = String::new();
    writeln!(out, "{}", set.len()).unwrap();
    for p in set.points() {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn write_point_set(path: &Path, set: &PointSet) -> Result<()> {
    Ok(fs::write(path, format_point_set(set))?)
}

/// Reads the first significant line as a matching and validates it.
pub fn parse_matching(text: &str, set: &PointSet) -> Result<Matching> {
    let (line, body) = significant_lines(text).next().ok_or_else(|| parse_err(0, "missing matching"))?;
    let m: Matching = body.parse().map_err(|e: String| parse_err(line, e))?;
    m.validate(set)?;
    Ok(m)
}

pub fn read_matching(path: &Path, set: &PointSet) -> Result<Matching> {
    parse_matching(&fs::read_to_string(path)?, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let s = parse_point_set("2\n0 0\n1 0\n", GpCheck::Auto).unwrap();
        assert_eq!(s.points(), &[Point::new(0, 0), Point::new(1, 0)]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_point_set("# header\n\n3\n# a\n0 0\n  5 -1  \n\n-2 7\n", GpCheck::Auto).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn errors_carry_details() {
        assert_eq!(parse_point_set("2\n0 0\n0 0\n", GpCheck::Auto), Err(Error::DuplicatePoint { first: 0, second: 1 }));
        assert_eq!(parse_point_set("4\n0 0\n1 1\n2 2\n5 0\n", GpCheck::Auto), Err(Error::NotGeneralPosition(0, 1, 2)));
        assert!(matches!(parse_point_set("2\n0 0\n1 x\n", GpCheck::Auto), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_point_set("two\n", GpCheck::Auto), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_point_set("3\n0 0\n1 0\n", GpCheck::Auto), Err(Error::Parse { .. })));
        assert!(matches!(parse_point_set("1\n0 0\n1 0\n", GpCheck::Auto), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_point_set("1\n0 0 0\n", GpCheck::Auto), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_point_set("1\n2000000000 0\n", GpCheck::Auto),
            Err(Error::CoordinateOutOfRange { index: 0, .. })
        ));
        assert!(matches!(parse_point_set("", GpCheck::Auto), Err(Error::Parse { .. })));
    }

    #[test]
    fn matchings() {
        let s = parse_point_set("4\n0 0\n0 10\n10 10\n10 0\n", GpCheck::Auto).unwrap();
        let m = parse_matching("# m\n0-1 3-2\n", &s).unwrap();
        assert_eq!(m.pairs(), &[(0, 1), (2, 3)]);
        assert!(matches!(parse_matching("0-2 1-3\n", &s), Err(Error::InvalidMatching(_))));
        assert!(matches!(parse_matching("0:1\n", &s), Err(Error::Parse { line: 1, .. })));
    }
}
