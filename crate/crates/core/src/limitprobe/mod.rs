//! Queries against the limit tree, which is only ever seen through stage-1
//! representatives: stabilized distances, a semi-decision for equality in
//! the limit group, and arc stabilizers.

mod arc;
mod export;
mod probe;

pub use arc::{arc_stabilizer, check_arc_stabilizer, finite_stabilizer_agreement, ArcStabilizer};
pub use export::{probe_row, probe_table_csv};
pub use probe::{limit_distance, limit_equal, LimitEquality, ProbeResult, ProbeStatus, DEFAULT_WINDOW};
