use crate::error::Result;
use crate::league::LeagueAnalyzer;
use crate::model::{Configuration, Pfps};
use crate::procset::{maximal_members, ProcSet, Universe};

/// A single fail-prone system trusted by every process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSystem {
    pub universe: Universe,
    pub fail_prone: Vec<ProcSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q3Verdict {
    pub holds: bool,
    /// Three fail-prone sets, repetition allowed, whose union is the universe.
    pub witness: Option<[ProcSet; 3]>,
}

impl SymmetricSystem {
    pub fn new(universe: Universe, fail_prone: Vec<ProcSet>) -> Self {
        let all = universe.all();
        let mut fp: Vec<ProcSet> = fail_prone.into_iter().map(|f| f & all).collect();
        if fp.is_empty() {
            fp.push(ProcSet::EMPTY);
        }
        SymmetricSystem { universe, fail_prone: maximal_members(fp) }
    }

    pub fn q3_check(&self) -> Q3Verdict {
        let all = self.universe.all();
        for (i, a) in self.fail_prone.iter().enumerate() {
            for (j, b) in self.fail_prone.iter().enumerate().skip(i) {
                for c in self.fail_prone.iter().skip(j) {
                    if all.is_subset(*a | *b | *c) {
                        return Q3Verdict { holds: false, witness: Some([*a, *b, *c]) };
                    }
                }
            }
        }
        Q3Verdict { holds: true, witness: None }
    }

    /// Every process trusts the universe with the shared fail-prone system.
    pub fn f_embed(&self) -> Pfps {
        let c = Configuration::normalize(self.universe.all(), self.fail_prone.iter().copied())
            .expect("universe is non-empty");
        Pfps::new(self.universe.clone(), vec![c; self.universe.len()]).expect("sizes match")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q3LeagueOutcome {
    pub q3: bool,
    pub universe_is_league: bool,
}

impl Q3LeagueOutcome {
    pub fn agree(&self) -> bool {
        self.q3 == self.universe_is_league
    }
}

/// Compares Q3 with whether the whole universe is a league of the embedding.
pub fn q3_league_harness(system: &SymmetricSystem) -> Result<Q3LeagueOutcome> {
    let f = system.f_embed();
    let league = LeagueAnalyzer::new(&f).is_league(f.all())?.is_league();
    Ok(Q3LeagueOutcome { q3: system.q3_check().holds, universe_is_league: league })
}
