/// Deliberate defects used to confirm that checkers detect broken logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// League consistency requires `I ∩ I'` to be non-empty instead of
    /// non-empty outside the tolerated set.
    ConsistencyKeepsTolerated,
    /// Reliable broadcast never sends ANY.
    DisableAnyClause,
}
