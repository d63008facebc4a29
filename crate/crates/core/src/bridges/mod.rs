//! Translations between personalized fail-prone systems and classical
//! quorum-system models, with the checks that relate them.
//!
//! * [`SymmetricSystem`]: one fail-prone system shared by everyone.
//! * [`AsymmetricSystem`]: one fail-prone system per process over the whole universe.
//! * [`FbasSystem`]: per-process slices with a known set, as in federated agreement.
//! * [`PbqsSystem`]: explicit per-process quorum families.

mod asymmetric;
mod fbas;
mod pbqs;
mod symmetric;

pub use asymmetric::{
    b3_league_harness, guild_and_wise, guild_is_league_harness, guild_tolerance_harness, AsymmetricSystem,
    B3LeagueOutcome, B3Verdict, B3Witness, GuildAnalysis,
};
pub use fbas::{intact_check, strong_consistency_harness, FbasSystem, IntactVerdict, IntactWitness};
pub use pbqs::{consensus_cluster_check, pbqs_quorum_check, ClusterVerdict, PbqsSystem};
pub use symmetric::{q3_league_harness, Q3LeagueOutcome, Q3Verdict, SymmetricSystem};
