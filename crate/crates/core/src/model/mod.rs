//! Configurations, views, survivor sets, quorums and blocking.
//!
//! A configuration's slices are the complements of its fail-prone sets
//! within its trusted set. A set is *closed* when every member with a known
//! configuration has a slice inside it; survivor sets and quorums are closed
//! sets containing a slice of their root.

mod analysis;
mod closure;
mod config;
mod system;

pub use analysis::{
    blocked_closure, blocks, contains_quorum, is_quorum, quorums, survivor_sets, tolerated_by, tolerates,
};
pub use closure::{all_closed_rooted, is_closed, max_closed_subset, minimal_closed_rooted};
pub use config::{has_slice_in, slices_of, Configuration, WireConfiguration};
pub use system::{is_resilient, worst_case_view, Assumptions, Pfps, PfpsBuilder, View};
