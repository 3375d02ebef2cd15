//! Recursive count of the matchings that split along lines through a hull
//! vertex.
//!
//! Take `A_1`, the lexicographically smallest point (always a hull vertex),
//! label the others `A_2..A_n` clockwise around it and, for every even label
//! `A_{2i+2}`, multiply the counts of the two open half-planes cut off by the
//! line `A_1 A_{2i+2}`. The sum is at least `C_k` and at most `pm(S)`, with
//! equality throughout for convex sets.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::geometry::{orient, sort_clockwise_around, Orientation, Point, PointSet};

pub fn gnt_lower_bound(set: &PointSet) -> Result<BigUint> {
    set.half()?;
    let mut memo = HashMap::new();
    let all: Vec<usize> = (0..set.len()).collect();
    Ok(separated(set.points(), all, &mut memo))
}

/// `members` must be sorted ascending; it doubles as the memo key.
fn separated(points: &[Point], members: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if members.len() <= 2 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&members) {
        return v.clone();
    }
    let a1 = *members.iter().min_by_key(|&&i| points[i]).expect("nonempty");
    let mut rest: Vec<usize> = members.iter().copied().filter(|&i| i != a1).collect();
    sort_clockwise_around(points, a1, &mut rest);

    let mut total = BigUint::default();
    for partner in rest.iter().copied().step_by(2) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for &u in &rest {
            match orient(points[a1], points[partner], points[u]) {
                Orientation::CounterClockwise => left.push(u),
                Orientation::Clockwise => right.push(u),
                Orientation::Collinear => {}
            }
        }
        debug_assert!(left.len() % 2 == 0 && right.len() % 2 == 0);
        left.sort_unstable();
        right.sort_unstable();
        let l = separated(points, left, memo);
        let r = separated(points, right, memo);
        total += l * r;
    }
    memo.insert(members, total.clone());
    total
}
