//! Quorum analysis for personalized fail-prone systems.
//!
//! Every process states whom it trusts and which sets of those it fears may
//! fail together. This crate derives survivor sets and quorums from those
//! assumptions, decides which process sets form leagues, runs reliable
//! broadcast and register protocols in a deterministic network simulator,
//! and relates the model to symmetric, asymmetric, federated and
//! permissionless quorum systems.

pub mod bridges;
pub mod capacity;
pub mod error;
pub mod files;
pub mod fixtures;
pub mod fuzz;
pub mod gen;
pub mod league;
pub mod model;
pub mod mutation;
pub mod oracle;
pub mod procset;
pub mod protocols;
pub mod simnet;

pub use error::{Error, Result};
pub use league::{LeagueAnalyzer, LeagueReport};
pub use model::{Configuration, Pfps, View};
pub use mutation::Mutation;
pub use procset::{Pid, ProcSet, ProcessId, Universe};
