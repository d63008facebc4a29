//! League analysis.
//!
//! A league is a set of processes that stays consistent and available under
//! every failure set it tolerates. Both properties are decided without
//! enumerating views: consistency through minimal sets that are closed up to
//! the tolerated set, availability through the greatest closed subset of the
//! surviving league members.

use crate::capacity::{capacity_bound, ensure_within};
use crate::error::{Error, Result};
use crate::model::{max_closed_subset, minimal_closed_rooted, tolerated_by, Pfps};
use crate::mutation::Mutation;
use crate::procset::{Pid, ProcSet};

/// Two roots whose minimal inclusive sets meet only inside the tolerated set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyCounterexample {
    pub tolerated: ProcSet,
    pub roots: (Pid, Pid),
    pub sets: (ProcSet, ProcSet),
}

/// A surviving league member without a quorum inside the surviving league.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvailabilityCounterexample {
    pub tolerated: ProcSet,
    pub process: Pid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeagueReport {
    pub candidate: ProcSet,
    pub tolerated: Vec<ProcSet>,
    pub consistency: Option<ConsistencyCounterexample>,
    pub availability: Option<AvailabilityCounterexample>,
}

impl LeagueReport {
    pub fn is_league(&self) -> bool {
        self.consistency.is_none() && self.availability.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnionVerdict {
    /// The precondition of the union property does not hold; the witness is
    /// a tolerated set leaving no common member, or `None` if the leagues are disjoint.
    HypothesisFails {
        tolerated: Option<ProcSet>,
    },
    UnionIsLeague,
    /// The union property is falsified by this instance.
    Falsified(LeagueReport),
}

/// League analysis over one system with a capacity bound and optional mutation.
#[derive(Clone, Copy, Debug)]
pub struct LeagueAnalyzer<'a> {
    pfps: &'a Pfps,
    capacity: usize,
    mutation: Option<Mutation>,
}

impl<'a> LeagueAnalyzer<'a> {
    pub fn new(pfps: &'a Pfps) -> Self {
        LeagueAnalyzer { pfps, capacity: capacity_bound(), mutation: None }
    }

    pub fn with_capacity(mut self, capacity: usize) -> Self {
        self.capacity = capacity;
        self
    }

    pub fn with_mutation(mut self, mutation: Option<Mutation>) -> Self {
        self.mutation = mutation;
        self
    }

    fn check_capacity(&self) -> Result<()> {
        ensure_within(self.pfps.len(), self.capacity)
    }

    /// Sets tolerated by `league` that leave at least one of its members, canonically ordered.
    pub fn tolerated_sets(&self, league: ProcSet) -> Result<Vec<ProcSet>> {
        self.check_capacity()?;
        let f = self.pfps;
        Ok(f.all()
            .subsets_sorted()
            .into_iter()
            .filter(|set| !(league - *set).is_empty() && tolerated_by(league, f, *set))
            .collect())
    }

    /// Minimal sets containing a slice of `root` in which every member outside
    /// `tolerated` has a slice.
    pub fn inclusive_rooted_minimal(&self, root: Pid, tolerated: ProcSet) -> Vec<ProcSet> {
        minimal_closed_rooted(self.pfps.get(root).slices(), self.pfps, tolerated)
    }

    fn consistency_for(&self, league: ProcSet, tolerated: ProcSet) -> Option<ConsistencyCounterexample> {
        let roots: Vec<Pid> = (league - tolerated).iter().collect();
        let families: Vec<Vec<ProcSet>> = roots.iter().map(|&r| self.inclusive_rooted_minimal(r, tolerated)).collect();
        let keep_tolerated = self.mutation == Some(Mutation::ConsistencyKeepsTolerated);
        for (a, fa) in families.iter().enumerate() {
            for (b, fb) in families.iter().enumerate().skip(a) {
                for &i in fa {
                    for &j in fb {
                        let common = if keep_tolerated { i & j } else { (i & j) - tolerated };
                        if common.is_empty() {
                            return Some(ConsistencyCounterexample {
                                tolerated,
                                roots: (roots[a], roots[b]),
                                sets: (i, j),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    fn availability_for(&self, league: ProcSet, tolerated: ProcSet) -> Option<AvailabilityCounterexample> {
        let alive = max_closed_subset(league - tolerated, self.pfps, ProcSet::EMPTY);
        (league - tolerated)
            .iter()
            .find(|&p| !self.pfps.get(p).has_slice_in(alive))
            .map(|p| AvailabilityCounterexample { tolerated, process: p })
    }

    pub fn check_consistency(&self, league: ProcSet) -> Result<Option<ConsistencyCounterexample>> {
        Ok(self.tolerated_sets(league)?.into_iter().find_map(|tolerated| self.consistency_for(league, tolerated)))
    }

    pub fn check_availability(&self, league: ProcSet) -> Result<Option<AvailabilityCounterexample>> {
        Ok(self.tolerated_sets(league)?.into_iter().find_map(|tolerated| self.availability_for(league, tolerated)))
    }

    pub fn is_league(&self, candidate: ProcSet) -> Result<LeagueReport> {
        if !candidate.is_subset(self.pfps.all()) {
            return Err(Error::InvalidInput("candidate league is not inside the universe".into()));
        }
        let tolerated = self.tolerated_sets(candidate)?;
        let consistency = tolerated.iter().find_map(|&set| self.consistency_for(candidate, set));
        let availability = tolerated.iter().find_map(|&set| self.availability_for(candidate, set));
        Ok(LeagueReport { candidate, tolerated, consistency, availability })
    }

    /// Checks that two overlapping leagues whose tolerated sets always leave
    /// a common member form a league together.
    pub fn union_preserves_league(&self, first: ProcSet, second: ProcSet) -> Result<UnionVerdict> {
        for league in [first, second] {
            if !self.is_league(league)?.is_league() {
                return Err(Error::Contract(format!("{league:?} is not a league")));
            }
        }
        if (first & second).is_empty() {
            return Ok(UnionVerdict::HypothesisFails { tolerated: None });
        }
        let union = first | second;
        if let Some(set) = self.tolerated_sets(union)?.into_iter().find(|set| ((first & second) - *set).is_empty()) {
            return Ok(UnionVerdict::HypothesisFails { tolerated: Some(set) });
        }
        let report = self.is_league(union)?;
        Ok(if report.is_league() { UnionVerdict::UnionIsLeague } else { UnionVerdict::Falsified(report) })
    }

    /// Inclusion-maximal non-empty leagues, found by descending through
    /// candidate sizes and skipping subsets of leagues already found.
    pub fn find_maximal_leagues(&self) -> Result<Vec<ProcSet>> {
        self.check_capacity()?;
        let mut candidates = self.pfps.all().subsets_sorted();
        candidates.reverse();
        let mut found: Vec<ProcSet> = Vec::new();
        for candidate in candidates {
            if candidate.is_empty() || found.iter().any(|m| candidate.is_subset(*m)) {
                continue;
            }
            if self.is_league(candidate)?.is_league() {
                found.push(candidate);
            }
        }
        found.sort();
        Ok(found)
    }
}

pub fn tolerated_sets(league: ProcSet, f: &Pfps) -> Result<Vec<ProcSet>> {
    LeagueAnalyzer::new(f).tolerated_sets(league)
}

pub fn inclusive_rooted_minimal(root: Pid, tolerated: ProcSet, f: &Pfps) -> Vec<ProcSet> {
    LeagueAnalyzer::new(f).inclusive_rooted_minimal(root, tolerated)
}

pub fn is_league(league: ProcSet, f: &Pfps) -> Result<LeagueReport> {
    LeagueAnalyzer::new(f).is_league(league)
}

pub fn find_maximal_leagues(f: &Pfps) -> Result<Vec<ProcSet>> {
    LeagueAnalyzer::new(f).find_maximal_leagues()
}

pub fn union_preserves_league(first: ProcSet, second: ProcSet, f: &Pfps) -> Result<UnionVerdict> {
    LeagueAnalyzer::new(f).union_preserves_league(first, second)
}
