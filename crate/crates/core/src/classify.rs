//! Convex / exceptional / generic classification and the end-to-end check of
//! the minimum-count characterization on a single point set.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::catalan::catalan;
use crate::error::Result;
use crate::geometry::{convex_hull, side_counts, PointSet};
use crate::lower_bound::gnt_lower_bound;
use crate::matching::{count_matchings, Limits};
use crate::witness::{build_witness, CaseTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Convex,
    ExceptionalSix,
    Generic,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Convex => "convex",
            Classification::ExceptionalSix => "exceptional_six",
            Classification::Generic => "generic",
        }
    }

    /// The classes whose matching count equals the Catalan minimum.
    pub fn attains_minimum(&self) -> bool {
        !matches!(self, Classification::Generic)
    }
}

/// Six points, one of them interior, and every line through the interior
/// point and a hull vertex splits the other four points two and two.
pub fn is_exceptional_six(set: &PointSet) -> bool {
    if set.len() != 6 {
        return false;
    }
    let Ok(hull) = convex_hull(set) else {
        return false;
    };
    let &[q] = hull.interior.as_slice() else {
        return false;
    };
    hull.hull.iter().all(|&a| {
        let c = side_counts(set, q, a);
        c.left == 2 && c.right == 2
    })
}

pub fn classify(set: &PointSet) -> Result<Classification> {
    set.half()?;
    if set.len() < 3 || convex_hull(set)?.interior.is_empty() {
        Ok(Classification::Convex)
    } else if is_exceptional_six(set) {
        Ok(Classification::ExceptionalSix)
    } else {
        Ok(Classification::Generic)
    }
}

/// Named implications checked by [`verify_main_theorem`].
pub const CHECK_PM_AT_LEAST_CATALAN: &str = "pm_at_least_catalan";
pub const CHECK_GNT_AT_LEAST_CATALAN: &str = "gnt_at_least_catalan";
pub const CHECK_GNT_AT_MOST_PM: &str = "gnt_at_most_pm";
pub const CHECK_MINIMUM_IFF_SPECIAL: &str = "minimum_iff_convex_or_exceptional";
pub const CHECK_WITNESS_IFF_GENERIC: &str = "witness_iff_generic";
pub const CHECK_WITNESS_FORCES_EXCESS: &str = "witness_forces_excess";

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_optional_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Outcome of [`verify_main_theorem`]. Counts serialize as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub k: usize,
    /// Absent when `n` exceeds the counting cap.
    #[serde(serialize_with = "as_optional_decimal")]
    pub pm: Option<BigUint>,
    #[serde(serialize_with = "as_decimal")]
    pub catalan_k: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub gnt: BigUint,
    pub classification: Classification,
    pub witness_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_case: Option<CaseTag>,
    pub oracle_fallback: bool,
    pub consistent: bool,
    pub failed_checks: Vec<&'static str>,
    /// Checks that need `pm` and were not run.
    pub skipped_checks: Vec<&'static str>,
}

pub fn verify_main_theorem(set: &PointSet, limits: &Limits) -> Result<TheoremReport> {
    let k = set.half()?;
    let catalan_k = catalan(k);
    let gnt = gnt_lower_bound(set)?;
    let classification = classify(set)?;
    let witness = build_witness(set, limits)?;
    let witness_found = witness.is_witness();
    let witness_case = witness.trace().map(|t| t.case_tag);
    let oracle_fallback = witness.trace().is_some_and(|t| t.oracle_fallback);
    let pm = if set.len() <= limits.count || (limits.convex_fast_path && classification == Classification::Convex) {
        Some(count_matchings(set, limits)?)
    } else {
        None
    };

    let mut failed = Vec::new();
    let mut skipped = Vec::new();
    let mut check = |name: &'static str, ok: Option<bool>| match ok {
        Some(true) => {}
        Some(false) => failed.push(name),
        None => skipped.push(name),
    };
    check(CHECK_GNT_AT_LEAST_CATALAN, Some(gnt >= catalan_k));
    check(CHECK_WITNESS_IFF_GENERIC, Some(witness_found == (classification == Classification::Generic)));
    check(CHECK_PM_AT_LEAST_CATALAN, pm.as_ref().map(|pm| *pm >= catalan_k));
    check(CHECK_GNT_AT_MOST_PM, pm.as_ref().map(|pm| gnt <= *pm));
    check(CHECK_MINIMUM_IFF_SPECIAL, pm.as_ref().map(|pm| (*pm == catalan_k) == classification.attains_minimum()));
    check(CHECK_WITNESS_FORCES_EXCESS, pm.as_ref().map(|pm| !witness_found || *pm > catalan_k));

    Ok(TheoremReport {
        n: set.len(),
        k,
        pm,
        catalan_k,
        gnt,
        classification,
        witness_found,
        witness_case,
        oracle_fallback,
        consistent: failed.is_empty(),
        failed_checks: failed,
        skipped_checks: skipped,
    })
}
