//! Constructive search for a matching with the piercing property.
//!
//! A matching has the piercing property when one of its segments has an
//! endpoint on the convex hull and its supporting line passes through the
//! interior of another segment of the matching without touching it. Such a
//! matching is missed by the recursive lower-bound count, so its existence
//! forces `pm(S) > C_k`.
//!
//! With one interior point `Q` the construction rotates a line around `Q` and
//! picks a hull vertex `A_1` whose line through `Q` is halving (even `k`) or
//! off by two (odd `k`); consecutive hull vertices are then paired up. With
//! several interior points the line through two of them selects a hull edge
//! `A_1 A_2`, and either `A_1 Q` pierces a hull edge or a segment from `A_2`
//! into the empty triangle at `A_1 A_2` pierces `A_1 Q`.
//!
//! Hull vertices are labelled `A_1, A_2, ...` in clockwise order (for one odd
//! case possibly counter-clockwise, see [`CaseTag::OddKDelta2`]). Every
//! constructed matching is validated before it is returned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, orient, point_in_triangle, side_counts, HullLabeling, Orientation, PointSet, SideCounts,
};
use crate::matching::{
    exists_piercing_matching, find_piercing_pair, first_matching_of, Limits, Matching, PiercingPair,
};

/// Which branch of the construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// One interior point, `k` even: `A_1` on a halving line through `Q`.
    EvenK,
    /// One interior point, `k` odd, the line `Q A_1` leaves `k - 2` and `k`
    /// points on its sides. When the `k - 2` side follows `A_1`
    /// counter-clockwise the labels run counter-clockwise.
    OddKDelta2,
    /// One interior point, `k >= 5` odd, every line `Q A_j` halving.
    OddKAllHalving,
    /// One interior point, `k = 3`, every line halving: exhaustive search.
    K3BruteForce,
    /// At least two interior points.
    ManyInterior,
}

/// Intermediate objects of the construction. Only the fields used by
/// `case_tag` are set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTrace {
    pub case_tag: CaseTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Hull position (into [`HullLabeling::hull`]) of the vertex with `|delta| = 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j0: Option<usize>,
    /// Right minus left count for the directed line from `Q` to `A_{j0}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s1: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s2: Option<Vec<usize>>,
    /// Hull edge `(A_j, A_{j+1})` where the ray from `A_1` through `Q` leaves the hull.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exit_edge: Option<(usize, usize)>,
    pub piercing_pair: PiercingPair,
    /// The construction did not validate (or had no applicable branch) and
    /// the exhaustive oracle supplied the matching instead.
    pub oracle_fallback: bool,
}

impl WitnessTrace {
    fn new(case_tag: CaseTag, piercing_pair: PiercingPair) -> Self {
        WitnessTrace {
            case_tag,
            q: None,
            j0: None,
            delta: None,
            r: None,
            r_prime: None,
            s1: None,
            s2: None,
            exit_edge: None,
            piercing_pair,
            oracle_fallback: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoWitness {
    ConvexPosition,
    ExceptionalSix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum WitnessResult {
    Witness { matching: Matching, trace: WitnessTrace },
    NotExists { reason: NoWitness },
}

impl WitnessResult {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessResult::Witness { .. })
    }

    pub fn matching(&self) -> Option<&Matching> {
        match self {
            WitnessResult::Witness { matching, .. } => Some(matching),
            WitnessResult::NotExists { .. } => None,
        }
    }

    pub fn trace(&self) -> Option<&WitnessTrace> {
        match self {
            WitnessResult::Witness { trace, .. } => Some(trace),
            WitnessResult::NotExists { .. } => None,
        }
    }
}

/// Entry point: dispatches on the number of interior points.
pub fn build_witness(set: &PointSet, limits: &Limits) -> Result<WitnessResult> {
    set.half()?;
    if set.len() < 3 {
        return Ok(WitnessResult::NotExists { reason: NoWitness::ConvexPosition });
    }
    let hull = convex_hull(set)?;
    match hull.interior.len() {
        0 => Ok(WitnessResult::NotExists { reason: NoWitness::ConvexPosition }),
        1 => one_interior(set, &hull, limits),
        _ => many_interior(set, &hull, limits),
    }
}

/// Hull vertices relabelled from `start`, walking in direction `step` (+1
/// clockwise, -1 counter-clockwise). `label(1)` is `A_1`.
struct Labels<'h> {
    hull: &'h HullLabeling,
    start: usize,
    step: isize,
}

impl Labels<'_> {
    fn a(&self, i: usize) -> usize {
        self.hull.at(self.start as isize + self.step * (i as isize - 1))
    }

    fn pair(&self, i: usize, j: usize) -> (usize, usize) {
        (self.a(i), self.a(j))
    }
}

pub fn build_witness_one_interior(set: &PointSet, limits: &Limits) -> Result<WitnessResult> {
    set.half()?;
    if set.len() < 4 {
        return Err(Error::PreconditionViolated(format!("{} points cannot have an interior point", set.len())));
    }
    one_interior(set, &convex_hull(set)?, limits)
}

fn one_interior(set: &PointSet, hull: &HullLabeling, limits: &Limits) -> Result<WitnessResult> {
    let k = set.half()?;
    let &[q] = hull.interior.as_slice() else {
        return Err(Error::PreconditionViolated(format!(
            "expected exactly one interior point, found {}",
            hull.interior.len()
        )));
    };
    let n = set.len();
    let profile: Vec<SideCounts> = hull.hull.iter().map(|&a| side_counts(set, q, a)).collect();
    let halving = |c: &SideCounts| c.left + 1 == k && c.right + 1 == k;

    if k % 2 == 0 {
        let start = profile.iter().position(halving).ok_or(Error::NotFound(q))?;
        let labels = Labels { hull, start, step: 1 };
        let pairs = chain_pairs(&labels, q, n);
        let pierce = PiercingPair { ab: (labels.a(1), q), cd: labels.pair(k, k + 1) };
        let mut trace = WitnessTrace::new(CaseTag::EvenK, pierce);
        trace.q = Some(q);
        return finish(set, pairs, trace, limits);
    }

    if !profile.iter().all(halving) {
        let Some(start) = profile.iter().position(|c| c.delta().abs() == 2) else {
            log::warn!("no hull vertex with |delta| = 2 around point {q}; using the exhaustive oracle");
            let mut trace = WitnessTrace::new(CaseTag::OddKDelta2, placeholder_pair());
            trace.q = Some(q);
            return oracle_fallback(set, trace, limits);
        };
        // The chain of hull vertices after A_1 must be the side with k - 2 points.
        let next = hull.at(start as isize + 1);
        let next_side = orient(set.point(q), set.point(hull.hull[start]), set.point(next));
        let next_count = match next_side {
            Orientation::CounterClockwise => profile[start].left,
            _ => profile[start].right,
        };
        let step = if next_count + 2 == k { 1 } else { -1 };
        let labels = Labels { hull, start, step };
        let pairs = chain_pairs(&labels, q, n);
        let pierce = PiercingPair { ab: (labels.a(1), q), cd: labels.pair(k - 1, k) };
        let mut trace = WitnessTrace::new(CaseTag::OddKDelta2, pierce);
        trace.q = Some(q);
        trace.j0 = Some(start);
        trace.delta = Some(profile[start].delta());
        return finish(set, pairs, trace, limits);
    }

    if k >= 5 {
        let labels = Labels { hull, start: 0, step: 1 };
        let mut pairs = vec![(labels.a(1), q), labels.pair(k - 1, k + 2), labels.pair(k, k + 1)];
        pairs.extend((2..=k - 3).step_by(2).map(|i| labels.pair(i, i + 1)));
        pairs.extend((k + 3..=n - 2).step_by(2).map(|i| labels.pair(i, i + 1)));
        let pierce = PiercingPair { ab: (labels.a(1), q), cd: labels.pair(k - 1, k + 2) };
        let mut trace = WitnessTrace::new(CaseTag::OddKAllHalving, pierce);
        trace.q = Some(q);
        return finish(set, pairs, trace, limits);
    }

    // k = 3 with all five lines halving
    match exists_piercing_matching(set, limits)? {
        Some(matching) => {
            let pierce = find_piercing_pair(&matching, set)?
                .ok_or_else(|| Error::InternalInconsistency("oracle matching lost its piercing pair".into()))?;
            let mut trace = WitnessTrace::new(CaseTag::K3BruteForce, pierce);
            trace.q = Some(q);
            Ok(WitnessResult::Witness { matching, trace })
        }
        None => Ok(WitnessResult::NotExists { reason: NoWitness::ExceptionalSix }),
    }
}

/// `{A_1 Q, A_2 A_3, ..., A_{n-2} A_{n-1}}`.
fn chain_pairs(labels: &Labels<'_>, q: usize, n: usize) -> Vec<(usize, usize)> {
    let mut pairs = vec![(labels.a(1), q)];
    pairs.extend((2..n).step_by(2).map(|i| labels.pair(i, i + 1)));
    pairs
}

pub fn build_witness_many_interior(set: &PointSet, limits: &Limits) -> Result<WitnessResult> {
    set.half()?;
    if set.len() < 5 {
        return Err(Error::PreconditionViolated(format!("{} points cannot have two interior points", set.len())));
    }
    many_interior(set, &convex_hull(set)?, limits)
}

fn many_interior(set: &PointSet, hull: &HullLabeling, limits: &Limits) -> Result<WitnessResult> {
    set.half()?;
    if hull.interior.len() < 2 {
        return Err(Error::PreconditionViolated(format!(
            "expected at least two interior points, found {}",
            hull.interior.len()
        )));
    }
    let pt = |i: usize| set.point(i);
    let (q, r) = (hull.interior[0], hull.interior[1]);

    // Hull edge A_1 A_2 hit by the ray from Q through R.
    let len = hull.hull.len();
    let start = (0..len)
        .find(|&p| {
            let (a, b) = (hull.at(p as isize), hull.at(p as isize + 1));
            orient(pt(q), pt(a), pt(r)) == Orientation::Clockwise
                && orient(pt(q), pt(r), pt(b)) == Orientation::Clockwise
        })
        .ok_or_else(|| Error::InternalInconsistency(format!("ray {q}->{r} leaves the hull through no edge")))?;
    let labels = Labels { hull, start, step: 1 };
    let (a1, a2) = (labels.a(1), labels.a(2));

    // R' minimises the angle at A_2 between A_2 A_1 and A_2 R'.
    let sense = orient(pt(a2), pt(a1), pt(q));
    let r_prime = (0..set.len())
        .filter(|&u| u != a1 && u != a2 && u != q && point_in_triangle(pt(u), pt(a1), pt(a2), pt(q)))
        .reduce(|best, u| if orient(pt(a2), pt(u), pt(best)) == sense { u } else { best })
        .ok_or_else(|| {
            Error::InternalInconsistency(format!("triangle {a1} {a2} {q} is empty but should contain {r}"))
        })?;

    let a2_side = orient(pt(a1), pt(q), pt(a2));
    let (s1, s2): (Vec<usize>, Vec<usize>) =
        (0..set.len()).filter(|&u| u != a1 && u != q).partition(|&u| orient(pt(a1), pt(q), pt(u)) == a2_side);

    let mut pairs = vec![(a1, q)];
    let mut trace;
    if s1.len() % 2 == 1 {
        // Ray from A_1 through Q leaves through the edge A_j A_{j+1}.
        let exit = (1..len).map(|i| labels.pair(i + 1, i + 2)).find(|&(u, v)| {
            orient(pt(a1), pt(q), pt(u)) == a2_side && orient(pt(a1), pt(q), pt(v)) == a2_side.reversed()
        });
        let Some((aj, aj1)) = exit else {
            return Err(Error::InternalInconsistency(format!("line {a1}-{q} meets no opposite hull edge")));
        };
        let rest1: Vec<usize> = s1.iter().copied().filter(|&u| u != aj).collect();
        let rest2: Vec<usize> = s2.iter().copied().filter(|&u| u != aj1).collect();
        pairs.push((aj, aj1));
        let completed = first_matching_of(set, &rest1, &[]).zip(first_matching_of(set, &rest2, &[]));
        trace = WitnessTrace::new(CaseTag::ManyInterior, PiercingPair { ab: (a1, q), cd: (aj, aj1) });
        trace.exit_edge = Some((aj, aj1));
        match completed {
            Some((m1, m2)) => {
                pairs.extend(m1);
                pairs.extend(m2);
            }
            None => pairs.clear(),
        }
    } else {
        let completed = first_matching_of(set, &s1, &[(a2, r_prime)]).zip(first_matching_of(set, &s2, &[]));
        trace = WitnessTrace::new(CaseTag::ManyInterior, PiercingPair { ab: (a2, r_prime), cd: (a1, q) });
        match completed {
            Some((m1, m2)) => {
                pairs.extend(m1);
                pairs.extend(m2);
            }
            None => pairs.clear(),
        }
    }
    trace.q = Some(q);
    trace.r = Some(r);
    trace.r_prime = Some(r_prime);
    trace.s1 = Some(s1);
    trace.s2 = Some(s2);
    finish(set, pairs, trace, limits)
}

/// Validates a constructed matching and its certificate; on failure falls
/// back to the oracle when the set is small enough.
fn finish(set: &PointSet, pairs: Vec<(usize, usize)>, trace: WitnessTrace, limits: &Limits) -> Result<WitnessResult> {
    let checked = Matching::new(pairs, set).and_then(|m| {
        if trace.piercing_pair.holds(set)? && certificate_in(&m, &trace.piercing_pair) {
            Ok(m)
        } else {
            Err(Error::InternalInconsistency(format!("certificate {:?} does not hold", trace.piercing_pair)))
        }
    });
    match checked {
        Ok(matching) => Ok(WitnessResult::Witness { matching, trace }),
        Err(err) => {
            log::warn!("{:?} construction failed validation ({err}); using the exhaustive oracle", trace.case_tag);
            oracle_fallback(set, trace, limits)
        }
    }
}

fn certificate_in(m: &Matching, pair: &PiercingPair) -> bool {
    m.contains(pair.ab.0, pair.ab.1) && m.contains(pair.cd.0, pair.cd.1)
}

fn placeholder_pair() -> PiercingPair {
    PiercingPair { ab: (0, 0), cd: (0, 0) }
}

fn oracle_fallback(set: &PointSet, mut trace: WitnessTrace, limits: &Limits) -> Result<WitnessResult> {
    if set.len() > limits.enumerate {
        return Err(Error::InternalInconsistency(format!(
            "{:?} construction failed on {} points, beyond the oracle cap {}",
            trace.case_tag,
            set.len(),
            limits.enumerate
        )));
    }
    let matching = exists_piercing_matching(set, limits)?.ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "{:?} construction failed and no piercing matching exists",
            trace.case_tag
        ))
    })?;
    trace.piercing_pair = find_piercing_pair(&matching, set)?
        .ok_or_else(|| Error::InternalInconsistency("oracle matching lost its piercing pair".into()))?;
    trace.oracle_fallback = true;
    Ok(WitnessResult::Witness { matching, trace })
}
