//! Plane perfect matchings: validation, exhaustive enumeration, counting and
//! the piercing property.
//!
//! Enumeration always extends the smallest unmatched point, trying partners in
//! ascending index order, so every matching is produced exactly once and the
//! output is in lexicographic order. Crossing checks go through a precomputed
//! table: each candidate pair owns a bitset of the pairs whose segments cross
//! it, and the search carries the union of those bitsets for the segments
//! chosen so far.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::catalan::catalan;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, is_convex_position, pierces, segments_cross, HullLabeling, Point, PointSet};

/// Caps for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest set size accepted by enumeration and the brute-force oracles.
    pub enumerate: usize,
    /// Largest set size accepted by [`count_matchings`].
    pub count: usize,
    /// Let [`count_matchings`] answer `C_k` directly for convex sets.
    pub convex_fast_path: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumerate: 20, count: 24, convex_fast_path: false }
    }
}

impl Limits {
    /// One cap for every exhaustive operation.
    pub fn uniform(cap: usize) -> Self {
        Limits { enumerate: cap, count: cap, ..Limits::default() }
    }
}

/// A perfect plane matching, stored as sorted pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes `pairs` and checks them against `set`.
    pub fn new(pairs: Vec<(usize, usize)>, set: &PointSet) -> Result<Self> {
        let m = Matching::from_pairs(pairs);
        m.validate(set)?;
        Ok(m)
    }

    /// Normalizes without validating.
    pub fn from_pairs(pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == i {
                Some(b)
            } else if b == i {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Checks that every point is covered exactly once and no two segments cross.
    pub fn validate(&self, set: &PointSet) -> Result<()> {
        let n = set.len();
        let mut seen = vec![false; n];
        for &(a, b) in &self.pairs {
            if a == b {
                return Err(Error::InvalidMatching(format!("pair ({a}, {b}) is a loop")));
            }
            for i in [a, b] {
                if i >= n {
                    return Err(Error::InvalidMatching(format!("index {i} out of range for {n} points")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidMatching(format!("point {i} is matched twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidMatching(format!("point {i} is unmatched")));
        }
        for (x, &(a, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[x + 1..] {
                if segments_cross(set.point(a), set.point(b), set.point(c), set.point(d)) {
                    return Err(Error::InvalidMatching(format!("segments {a}-{b} and {c}-{d} cross")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, (a, b)) in self.pairs.iter().enumerate() {
            if x > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = String;

    /// Parses the `Display` form, e.g. `0-3 1-2 4-5`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let pairs = s
            .split_whitespace()
            .map(|tok| {
                let (a, b) = tok.split_once('-').ok_or_else(|| format!("expected i-j, got {tok:?}"))?;
                let a = a.parse::<usize>().map_err(|e| format!("{tok:?}: {e}"))?;
                let b = b.parse::<usize>().map_err(|e| format!("{tok:?}: {e}"))?;
                Ok((a, b))
            })
            .collect::<std::result::Result<Vec<_>, String>>()?;
        Ok(Matching::from_pairs(pairs))
    }
}

/// Segment pair certifying the piercing property: `ab` pierces `cd` and
/// `ab.0` is a hull vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingPair {
    pub ab: (usize, usize),
    pub cd: (usize, usize),
}

impl PiercingPair {
    /// Re-checks the certificate against `set`.
    pub fn holds(&self, set: &PointSet) -> Result<bool> {
        let hull = convex_hull(set)?;
        let (a, b) = self.ab;
        let (c, d) = self.cd;
        Ok(hull.contains(a) && pierces(set.point(a), set.point(b), set.point(c), set.point(d)))
    }
}

/// Finds a segment with a hull endpoint that pierces another segment of `m`.
pub fn find_piercing_pair(m: &Matching, set: &PointSet) -> Result<Option<PiercingPair>> {
    m.validate(set)?;
    if set.len() < 4 {
        return Ok(None);
    }
    Ok(piercing_pair_in(m.pairs(), set, &convex_hull(set)?))
}

fn piercing_pair_in(pairs: &[(usize, usize)], set: &PointSet, hull: &HullLabeling) -> Option<PiercingPair> {
    for &(a, b) in pairs {
        let ab = match (hull.contains(a), hull.contains(b)) {
            (true, _) => (a, b),
            (false, true) => (b, a),
            (false, false) => continue,
        };
        for &(c, d) in pairs {
            if (c, d) != (a, b) && pierces(set.point(a), set.point(b), set.point(c), set.point(d)) {
                return Some(PiercingPair { ab, cd: (c, d) });
            }
        }
    }
    None
}

pub fn has_piercing_property(m: &Matching, set: &PointSet) -> Result<bool> {
    Ok(find_piercing_pair(m, set)?.is_some())
}

/// Candidate pairs of a point subset and, for each, the pairs it crosses.
struct PairTable {
    members: Vec<usize>,
    words: usize,
    /// `pair_id[i * m + j]` for local positions `i < j`.
    pair_id: Vec<usize>,
    crossing: Vec<u64>,
}

impl PairTable {
    fn new(points: &[Point], members: Vec<usize>) -> Self {
        let m = members.len();
        let mut pair_id = vec![usize::MAX; m * m];
        let mut ends = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                pair_id[i * m + j] = ends.len();
                ends.push((points[members[i]], points[members[j]], i, j));
            }
        }
        let words = ends.len().div_ceil(64).max(1);
        let mut crossing = vec![0u64; ends.len() * words];
        for (p, &(a, b, i, j)) in ends.iter().enumerate() {
            for (q, &(c, d, k, l)) in ends.iter().enumerate().skip(p + 1) {
                if i == k || i == l || j == k || j == l {
                    continue;
                }
                if segments_cross(a, b, c, d) {
                    crossing[p * words + q / 64] |= 1 << (q % 64);
                    crossing[q * words + p / 64] |= 1 << (p % 64);
                }
            }
        }
        PairTable { members, words, pair_id, crossing }
    }

    fn id(&self, i: usize, j: usize) -> usize {
        self.pair_id[i * self.members.len() + j]
    }

    fn crosses(&self, p: usize) -> &[u64] {
        &self.crossing[p * self.words..(p + 1) * self.words]
    }
}

/// Depth-first search over the matchings of a [`PairTable`].
struct Search<'t> {
    table: &'t PairTable,
    used: Vec<bool>,
    /// One forbidden-pair bitset per depth, flattened.
    forbidden: Vec<u64>,
    chosen: Vec<(usize, usize)>,
}

impl<'t> Search<'t> {
    fn new(table: &'t PairTable) -> Self {
        Search { table, used: vec![false; table.members.len()], forbidden: vec![0; table.words], chosen: Vec::new() }
    }

    /// Fixes a pair of local positions; false if it is already blocked.
    fn seed(&mut self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let p = self.table.id(i, j);
        if self.used[i] || self.used[j] || self.is_forbidden(p) {
            return false;
        }
        self.push(i, j, p);
        true
    }

    fn is_forbidden(&self, p: usize) -> bool {
        let top = self.forbidden.len() - self.table.words;
        self.forbidden[top + p / 64] & (1 << (p % 64)) != 0
    }

    fn push(&mut self, i: usize, j: usize, p: usize) {
        let w = self.table.words;
        let top = self.forbidden.len() - w;
        self.forbidden.extend_from_within(top..top + w);
        let new_top = top + w;
        for (dst, src) in self.forbidden[new_top..].iter_mut().zip(self.table.crosses(p)) {
            *dst |= src;
        }
        self.used[i] = true;
        self.used[j] = true;
        self.chosen.push((i, j));
    }

    fn pop(&mut self) {
        let (i, j) = self.chosen.pop().expect("pop on empty search");
        self.used[i] = false;
        self.used[j] = false;
        self.forbidden.truncate(self.forbidden.len() - self.table.words);
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
    {
        let Some(i) = self.used.iter().position(|&u| !u) else {
            return visit(&self.chosen);
        };
        for j in i + 1..self.used.len() {
            if self.used[j] {
                continue;
            }
            let p = self.table.id(i, j);
            if self.is_forbidden(p) {
                continue;
            }
            self.push(i, j, p);
            let flow = self.run(visit);
            self.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn count(&mut self) -> u64 {
        let Some(i) = self.used.iter().position(|&u| !u) else {
            return 1;
        };
        let mut total = 0;
        for j in i + 1..self.used.len() {
            if self.used[j] {
                continue;
            }
            let p = self.table.id(i, j);
            if self.is_forbidden(p) {
                continue;
            }
            self.push(i, j, p);
            total += self.count();
            self.pop();
        }
        total
    }

    fn global_pairs(&self, local: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let m = &self.table.members;
        local.iter().map(|&(i, j)| (m[i], m[j])).collect()
    }
}

fn check_size(set: &PointSet, cap: usize) -> Result<()> {
    set.half()?;
    if set.len() > cap {
        return Err(Error::SizeLimit { n: set.len(), cap });
    }
    Ok(())
}

/// Calls `visit` on every plane perfect matching of `set`, in lexicographic
/// order, until it breaks.
pub fn for_each_matching<F>(set: &PointSet, limits: &Limits, mut visit: F) -> Result<()>
where
    F: FnMut(&Matching) -> ControlFlow<()>,
{
    check_size(set, limits.enumerate)?;
    let table = PairTable::new(set.points(), (0..set.len()).collect());
    let mut search = Search::new(&table);
    // pairs come out with increasing first index, hence already sorted
    let _ = search.run(&mut |chosen| visit(&Matching { pairs: chosen.to_vec() }));
    Ok(())
}

pub fn enumerate_matchings(set: &PointSet, limits: &Limits) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_matching(set, limits, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `pm(S)`, the number of plane perfect matchings.
pub fn count_matchings(set: &PointSet, limits: &Limits) -> Result<BigUint> {
    let k = set.half()?;
    if limits.convex_fast_path && set.len() >= 3 && is_convex_position(set)? {
        return Ok(catalan(k));
    }
    check_size(set, limits.count)?;
    let table = PairTable::new(set.points(), (0..set.len()).collect());
    Ok(BigUint::from(Search::new(&table).count()))
}

/// The lexicographically first matching with the piercing property, if any.
pub fn exists_piercing_matching(set: &PointSet, limits: &Limits) -> Result<Option<Matching>> {
    check_size(set, limits.enumerate)?;
    if set.len() < 4 {
        return Ok(None);
    }
    let hull = convex_hull(set)?;
    let mut found = None;
    for_each_matching(set, limits, |m| {
        if piercing_pair_in(m.pairs(), set, &hull).is_some() {
            found = Some(m.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// First matching, in canonical search order, of the points `members` that
/// contains every pair in `seeds`. `None` if no such matching exists.
pub fn first_matching_of(set: &PointSet, members: &[usize], seeds: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
    if members.len() % 2 == 1 {
        return None;
    }
    let mut members = members.to_vec();
    members.sort_unstable();
    let local = |g: usize| members.binary_search(&g).ok();
    let mut seeds_local = Vec::with_capacity(seeds.len());
    for &(a, b) in seeds {
        seeds_local.push((local(a)?, local(b)?));
    }
    let table = PairTable::new(set.points(), members.clone());
    let mut search = Search::new(&table);
    for &(i, j) in &seeds_local {
        if !search.seed(i, j) {
            return None;
        }
    }
    let mut found = None;
    let _ = search.run(&mut |chosen| {
        found = Some(chosen.to_vec());
        ControlFlow::Break(())
    });
    found.map(|local| search.global_pairs(&local))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exceptional() -> PointSet {
        PointSet::from_coords(&[(0, 0), (0, 100), (95, 31), (59, -81), (-59, -81), (-95, 31)]).unwrap()
    }

    fn hexagon() -> PointSet {
        PointSet::from_coords(&[(10, 0), (5, 9), (-5, 9), (-10, 0), (-5, -9), (5, -9)]).unwrap()
    }

    fn g1() -> PointSet {
        PointSet::from_coords(&[(0, 0), (0, 10), (10, 10), (10, 0), (4, 5), (6, 5)]).unwrap()
    }

    #[test]
    fn two_points_single_matching() {
        let s = PointSet::from_coords(&[(0, 0), (3, 1)]).unwrap();
        let all = enumerate_matchings(&s, &Limits::default()).unwrap();
        assert_eq!(all, vec![Matching::from_pairs(vec![(0, 1)])]);
        assert!(!has_piercing_property(&all[0], &s).unwrap());
        assert_eq!(count_matchings(&s, &Limits::default()).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn hexagon_has_five() {
        let all = enumerate_matchings(&hexagon(), &Limits::default()).unwrap();
        assert_eq!(all.len(), 5);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for m in &all {
            m.validate(&hexagon()).unwrap();
        }
    }

    #[test]
    fn exceptional_has_five_center_matchings() {
        let ex = exceptional();
        let all = enumerate_matchings(&ex, &Limits::default()).unwrap();
        assert_eq!(all.len(), 5);
        let mut partners: Vec<usize> = all.iter().map(|m| m.partner(0).unwrap()).collect();
        partners.sort_unstable();
        assert_eq!(partners, vec![1, 2, 3, 4, 5]);
        for m in &all {
            assert!(!has_piercing_property(m, &ex).unwrap());
        }
        assert_eq!(exists_piercing_matching(&ex, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn odd_and_oversized_sets_rejected() {
        let odd = PointSet::from_coords(&[(0, 0), (3, 1), (1, 4)]).unwrap();
        assert_eq!(enumerate_matchings(&odd, &Limits::default()), Err(Error::OddSize(3)));
        assert_eq!(count_matchings(&odd, &Limits::default()), Err(Error::OddSize(3)));
        let limits = Limits::uniform(4);
        assert_eq!(enumerate_matchings(&hexagon(), &limits), Err(Error::SizeLimit { n: 6, cap: 4 }));
        assert_eq!(count_matchings(&hexagon(), &limits), Err(Error::SizeLimit { n: 6, cap: 4 }));
    }

    #[test]
    fn convex_fast_path_skips_cap() {
        let limits = Limits { count: 2, convex_fast_path: true, ..Limits::default() };
        assert_eq!(count_matchings(&hexagon(), &limits).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn validation_catches_bad_matchings() {
        let s = PointSet::from_coords(&[(0, 0), (0, 10), (10, 10), (10, 0)]).unwrap();
        assert!(Matching::new(vec![(0, 1), (2, 3)], &s).is_ok());
        // diagonals cross
        assert!(matches!(Matching::new(vec![(0, 2), (1, 3)], &s), Err(Error::InvalidMatching(_))));
        assert!(matches!(Matching::new(vec![(0, 1)], &s), Err(Error::InvalidMatching(_))));
        assert!(matches!(Matching::new(vec![(0, 1), (1, 2)], &s), Err(Error::InvalidMatching(_))));
        assert!(matches!(Matching::new(vec![(0, 1), (2, 9)], &s), Err(Error::InvalidMatching(_))));
        assert!(has_piercing_property(&Matching::from_pairs(vec![(0, 2), (1, 3)]), &s).is_err());
    }

    #[test]
    fn g1_has_a_piercing_matching() {
        let s = g1();
        let m = exists_piercing_matching(&s, &Limits::default()).unwrap().unwrap();
        let pair = find_piercing_pair(&m, &s).unwrap().unwrap();
        assert!(pair.holds(&s).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let m = Matching::from_pairs(vec![(5, 4), (0, 3), (2, 1)]);
        assert_eq!(m.to_string(), "0-3 1-2 4-5");
        assert_eq!("0-3 1-2 4-5".parse::<Matching>().unwrap(), m);
        assert!("0-3 x".parse::<Matching>().is_err());
    }

    #[test]
    fn seeded_search_respects_seed() {
        let s = g1();
        let members = [0, 1, 2, 3, 4, 5];
        let got = first_matching_of(&s, &members, &[(1, 4)]).unwrap();
        let m = Matching::new(got, &s).unwrap();
        assert!(m.contains(1, 4));
        // crossing seeds are impossible
        assert_eq!(first_matching_of(&s, &members, &[(0, 2), (1, 3)]), None);
        assert_eq!(first_matching_of(&s, &[0, 1, 2], &[]), None);
        assert_eq!(first_matching_of(&s, &[], &[]), Some(vec![]));
    }
}
