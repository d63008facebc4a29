use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::procset::{maximal_members, ProcSet, Universe};

/// A process's trust assumption: a trusted set and a fail-prone system over it.
///
/// The fail-prone system is kept as a canonically sorted antichain of
/// maximal sets, each contained in the trusted set. Slices are the
/// complements of fail-prone sets within the trusted set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    trusted: ProcSet,
    fail_prone: Vec<ProcSet>,
}

impl Configuration {
    /// Builds a normalized configuration.
    ///
    /// Fail-prone sets are intersected with `trusted`, duplicates collapse and
    /// sets strictly contained in another are dropped. An empty list becomes
    /// `{∅}`. An empty trusted set is rejected.
    pub fn normalize(trusted: ProcSet, fail_prone: impl IntoIterator<Item = ProcSet>) -> Result<Self> {
        if trusted.is_empty() {
            return Err(Error::InvalidInput("trusted set is empty".into()));
        }
        Ok(Self::normalize_unchecked(trusted, fail_prone))
    }

    fn normalize_unchecked(trusted: ProcSet, fail_prone: impl IntoIterator<Item = ProcSet>) -> Self {
        let mut fp: Vec<ProcSet> = fail_prone.into_iter().map(|f| f & trusted).collect();
        if fp.is_empty() {
            fp.push(ProcSet::EMPTY);
        }
        Configuration { trusted, fail_prone: maximal_members(fp) }
    }

    /// `(∅, {∅})`: trusts nobody, so its single slice is empty and it imposes no constraint.
    pub fn empty() -> Self {
        Configuration { trusted: ProcSet::EMPTY, fail_prone: vec![ProcSet::EMPTY] }
    }

    /// `(trusted, {∅})`: the whole trusted set is the only slice.
    pub fn fully_trusting(trusted: ProcSet) -> Result<Self> {
        Self::normalize(trusted, [ProcSet::EMPTY])
    }

    pub fn trusted(&self) -> ProcSet {
        self.trusted
    }

    pub fn fail_prone(&self) -> &[ProcSet] {
        &self.fail_prone
    }

    /// Slices in the order of their fail-prone sets.
    pub fn slices(&self) -> impl Iterator<Item = ProcSet> + '_ {
        self.fail_prone.iter().map(move |f| self.trusted - *f)
    }

    pub fn has_slice_in(&self, s: ProcSet) -> bool {
        self.slices().any(|slice| slice.is_subset(s))
    }

    /// True when `blockers` meets every slice.
    pub fn meets_every_slice(&self, blockers: ProcSet) -> bool {
        self.slices().all(|slice| slice.intersects(blockers))
    }

    /// Some slice is empty.
    pub fn is_degenerate(&self) -> bool {
        self.fail_prone.contains(&self.trusted)
    }

    pub fn members(&self) -> ProcSet {
        self.trusted
    }

    pub fn to_wire(&self, universe: &Universe) -> WireConfiguration {
        WireConfiguration { trusted: universe.names(self.trusted), fail_prone: universe.family_names(&self.fail_prone) }
    }

    /// Decodes a wire configuration. The empty configuration is accepted here
    /// because faulty processes may advertise it.
    pub fn from_wire(universe: &Universe, wire: &WireConfiguration) -> Result<Self> {
        let trusted = universe.set(&wire.trusted)?;
        let mut fp = Vec::with_capacity(wire.fail_prone.len());
        for f in &wire.fail_prone {
            fp.push(universe.set(f)?);
        }
        if trusted.is_empty() {
            return Ok(Configuration::empty());
        }
        Ok(Self::normalize_unchecked(trusted, fp))
    }
}

/// JSON form of a configuration with process names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireConfiguration {
    pub trusted: Vec<String>,
    #[serde(default)]
    pub fail_prone: Vec<Vec<String>>,
}

/// Slices of a configuration, canonically sorted.
pub fn slices_of(config: &Configuration) -> Vec<ProcSet> {
    let mut out: Vec<ProcSet> = config.slices().collect();
    out.sort();
    out
}

pub fn has_slice_in(config: &Configuration, s: ProcSet) -> bool {
    config.has_slice_in(s)
}
