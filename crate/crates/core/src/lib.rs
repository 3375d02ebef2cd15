//! Non-crossing perfect matchings of planar point sets.
//!
//! Exact integer geometry ([`geometry`]), exhaustive enumeration and counting
//! ([`matching`]), the Catalan numbers and the recursive lower bound
//! ([`catalan`], [`lower_bound`]), constructive piercing witnesses
//! ([`witness`]) and the classification of sets attaining the Catalan minimum
//! ([`classify`]). The remaining modules generate point sets, read and write
//! files, render SVG and run batch experiments.

pub mod catalan;
pub mod classify;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod lower_bound;
pub mod matching;
pub mod report;
pub mod svg;
pub mod witness;

pub use catalan::{catalan, CatalanTable};
pub use classify::{classify, is_exceptional_six, verify_main_theorem, Classification, TheoremReport};
pub use error::{Error, Result};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentSummary, Failure, TimingStats};
pub use generate::{exceptional_set, generate, GeneratorKind, GeneratorSpec};
pub use geometry::{
    convex_hull, halving_vertex, is_convex_position, orient, pierces, point_in_triangle, polar_order, segments_cross,
    side_counts, GpCheck, HullLabeling, Orientation, Point, PointSet, SideCounts,
};
pub use io::{read_matching, read_point_set, write_point_set};
pub use lower_bound::gnt_lower_bound;
pub use matching::{
    count_matchings, enumerate_matchings, exists_piercing_matching, find_piercing_pair, has_piercing_property, Limits,
    Matching, PiercingPair,
};
pub use report::{write_report, Report, ReportFormat};
pub use svg::render_svg;
pub use witness::{
    build_witness, build_witness_many_interior, build_witness_one_interior, CaseTag, NoWitness, WitnessResult,
    WitnessTrace,
};
