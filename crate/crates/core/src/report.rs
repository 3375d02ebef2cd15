//! JSON and CSV serialization of reports.
//!
//! JSON keys follow the struct fields in declaration order; big counts are
//! decimal strings. CSV output is a header row plus one data row:
//!
//! * theorem report: `n,k,pm,catalan_k,gnt,classification,witness_found,consistent,failed_checks,skipped_checks`
//! * experiment summary: `trials,n_min,n_max,failure_count,failures,oracle_fallbacks,pm_skipped,min_ms,mean_ms,max_ms,total_ms`
//!
//! List-valued cells are joined with `;`; a failure is written `seed:n:kind:check`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::TheoremReport;
use crate::experiment::ExperimentSummary;

pub const THEOREM_CSV_HEADER: &str =
    "n,k,pm,catalan_k,gnt,classification,witness_found,consistent,failed_checks,skipped_checks";
pub const SUMMARY_CSV_HEADER: &str =
    "trials,n_min,n_max,failure_count,failures,oracle_fallbacks,pm_skipped,min_ms,mean_ms,max_ms,total_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown report format {s:?}")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Theorem(&'a TheoremReport),
    Summary(&'a ExperimentSummary),
}

pub fn write_report(report: Report<'_>, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => match report {
            Report::Theorem(r) => to_json(r),
            Report::Summary(s) => to_json(s),
        },
        ReportFormat::Csv => match report {
            Report::Theorem(r) => theorem_csv(r),
            Report::Summary(s) => summary_csv(s),
        }
        .into_bytes(),
    }
}

/// Pretty JSON for any serializable value, newline terminated.
pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize infallibly");
    out.push(b'\n');
    out
}

fn theorem_csv(r: &TheoremReport) -> String {
    let pm = r.pm.as_ref().map(ToString::to_string).unwrap_or_default();
    format!(
        "{THEOREM_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{}\n",
        r.n,
        r.k,
        pm,
        r.catalan_k,
        r.gnt,
        r.classification.as_str(),
        r.witness_found,
        r.consistent,
        r.failed_checks.join(";"),
        r.skipped_checks.join(";"),
    )
}

fn summary_csv(s: &ExperimentSummary) -> String {
    let failures: Vec<String> = s
        .failures
        .iter()
        .map(|f| format!("{}:{}:{}:{}", f.seed, f.n, f.kind, f.check.replace([',', ';', '\n'], " ")))
        .collect();
    let t = &s.timings;
    format!(
        "{SUMMARY_CSV_HEADER}\n{},{},{},{},{},{},{},{:.3},{:.3},{:.3},{:.3}\n",
        s.trials,
        s.n_range.0,
        s.n_range.1,
        s.failures.len(),
        failures.join(";"),
        s.oracle_fallbacks,
        s.pm_skipped,
        t.min_ms,
        t.mean_ms,
        t.max_ms,
        t.total_ms,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::verify_main_theorem;
    use crate::experiment::{run_experiment, ExperimentConfig};
    use crate::generate::exceptional_set;
    use crate::matching::Limits;

    #[test]
    fn exceptional_json() {
        let r = verify_main_theorem(&exceptional_set(), &Limits::default()).unwrap();
        let json = String::from_utf8(write_report(Report::Theorem(&r), ReportFormat::Json)).unwrap();
        let compact: String = json.split_whitespace().collect();
        assert!(compact.contains(r#""pm":"5""#), "{json}");
        assert!(compact.contains(r#""catalan_k":"5""#));
        assert!(compact.contains(r#""classification":"exceptional_six""#));
        let keys: Vec<&str> = json.lines().filter_map(|l| l.trim().split('"').nth(1)).collect();
        assert_eq!(&keys[..5], &["n", "k", "pm", "catalan_k", "gnt"]);
    }

    #[test]
    fn theorem_csv_row() {
        let r = verify_main_theorem(&exceptional_set(), &Limits::default()).unwrap();
        let csv = String::from_utf8(write_report(Report::Theorem(&r), ReportFormat::Csv)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], THEOREM_CSV_HEADER);
        assert_eq!(lines[1], "6,3,5,5,5,exceptional_six,false,true,,");
    }

    #[test]
    fn empty_summary() {
        let s = run_experiment(&ExperimentConfig::new(0, 4, 4, 0, vec![]), &Limits::default()).unwrap();
        let json: serde_json::Value =
            serde_json::from_slice(&write_report(Report::Summary(&s), ReportFormat::Json)).unwrap();
        assert_eq!(json["trials"], 0);
        assert_eq!(json["failures"], serde_json::json!([]));
        let csv = String::from_utf8(write_report(Report::Summary(&s), ReportFormat::Csv)).unwrap();
        assert_eq!(csv.lines().nth(1), Some("0,4,4,0,,0,0,0.000,0.000,0.000,0.000"));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
