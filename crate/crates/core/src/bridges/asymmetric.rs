use crate::error::{Error, Result};
use crate::league::LeagueAnalyzer;
use crate::model::{tolerates, Configuration, Pfps};
use crate::procset::{maximal_members, Pid, ProcSet, Universe};

/// One fail-prone system per process, each over the whole universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetricSystem {
    pub universe: Universe,
    pub fail_prone: Vec<Vec<ProcSet>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Witness {
    pub processes: (Pid, Pid),
    pub first: ProcSet,
    pub second: ProcSet,
    /// A set that both processes consider possibly faulty.
    pub shared: ProcSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3Verdict {
    pub holds: bool,
    pub witness: Option<B3Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuildAnalysis {
    /// Correct processes whose fail-prone system covers the faulty set.
    pub wise: ProcSet,
    /// Correct processes that are not wise.
    pub naive: ProcSet,
    /// Largest set of wise processes containing, for each member, the
    /// complement of one of its fail-prone sets.
    pub guild: ProcSet,
}

impl AsymmetricSystem {
    pub fn new(universe: Universe, fail_prone: Vec<Vec<ProcSet>>) -> Result<Self> {
        if fail_prone.len() != universe.len() {
            return Err(Error::InvalidInput("one fail-prone system per process is required".into()));
        }
        let all = universe.all();
        let fail_prone = fail_prone
            .into_iter()
            .map(|fs| {
                let fs: Vec<ProcSet> = fs.into_iter().map(|f| f & all).collect();
                maximal_members(if fs.is_empty() { vec![ProcSet::EMPTY] } else { fs })
            })
            .collect();
        Ok(AsymmetricSystem { universe, fail_prone })
    }

    fn covers(&self, p: Pid, s: ProcSet) -> bool {
        self.fail_prone[p.index()].iter().any(|f| s.is_subset(*f))
    }

    /// No two processes' fail-prone sets together with a set both consider
    /// possibly faulty cover the universe.
    pub fn b3_check(&self) -> B3Verdict {
        let all = self.universe.all();
        for i in self.universe.pids() {
            for j in self.universe.pids() {
                for &fi in &self.fail_prone[i.index()] {
                    for &fj in &self.fail_prone[j.index()] {
                        for &gi in &self.fail_prone[i.index()] {
                            for &gj in &self.fail_prone[j.index()] {
                                let shared = gi & gj;
                                if all.is_subset(fi | fj | shared) {
                                    return B3Verdict {
                                        holds: false,
                                        witness: Some(B3Witness { processes: (i, j), first: fi, second: fj, shared }),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
        B3Verdict { holds: true, witness: None }
    }

    /// Each process trusts the universe with its own fail-prone system.
    pub fn g_embed(&self) -> Pfps {
        let all = self.universe.all();
        let configs = self
            .fail_prone
            .iter()
            .map(|fs| Configuration::normalize(all, fs.iter().copied()).expect("universe is non-empty"))
            .collect();
        Pfps::new(self.universe.clone(), configs).expect("sizes match")
    }

    pub fn guild_and_wise(&self, faulty: ProcSet) -> GuildAnalysis {
        let all = self.universe.all();
        let correct = all - faulty;
        let wise: ProcSet = correct.iter().filter(|&p| self.covers(p, faulty)).collect();
        let mut guild = wise;
        loop {
            let next: ProcSet = guild
                .iter()
                .filter(|&p| self.fail_prone[p.index()].iter().any(|f| (all - *f).is_subset(guild)))
                .collect();
            if next == guild {
                break;
            }
            guild = next;
        }
        GuildAnalysis { wise, naive: correct - wise, guild }
    }
}

pub fn guild_and_wise(system: &AsymmetricSystem, faulty: ProcSet) -> GuildAnalysis {
    system.guild_and_wise(faulty)
}

/// The maximal guild equals the set of correct processes that tolerate the
/// faulty set under the embedding. Returns both sides.
pub fn guild_tolerance_harness(system: &AsymmetricSystem, faulty: ProcSet) -> (ProcSet, ProcSet) {
    let f = system.g_embed();
    let tolerating: ProcSet = (f.all() - faulty).iter().filter(|&p| tolerates(p, &f, faulty)).collect();
    (system.guild_and_wise(faulty).guild, tolerating)
}

/// Whether the maximal guild for `faulty` is a league of the embedding.
pub fn guild_is_league_harness(system: &AsymmetricSystem, faulty: ProcSet) -> Result<Option<bool>> {
    let guild = system.guild_and_wise(faulty).guild;
    if guild.is_empty() {
        return Ok(None);
    }
    let f = system.g_embed();
    Ok(Some(LeagueAnalyzer::new(&f).is_league(guild)?.is_league()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B3LeagueOutcome {
    pub b3: bool,
    /// Some non-vacuous set is tolerated by the universe.
    pub tolerates_some: bool,
    pub universe_is_league: bool,
    /// For every tolerated set the survivors form exactly the maximal guild,
    /// so the quorum function `{survivors, universe}` is consistent and
    /// available by construction.
    pub survivors_form_guilds: bool,
}

impl B3LeagueOutcome {
    /// B3 together with some tolerated set implies a league.
    pub fn implication_holds(&self) -> bool {
        !(self.b3 && self.tolerates_some) || self.universe_is_league
    }
}

pub fn b3_league_harness(system: &AsymmetricSystem) -> Result<B3LeagueOutcome> {
    let f = system.g_embed();
    let analyzer = LeagueAnalyzer::new(&f);
    let all = f.all();
    let tolerated = analyzer.tolerated_sets(all)?;
    let report = analyzer.is_league(all)?;
    let survivors_form_guilds = tolerated.iter().all(|&faulty| system.guild_and_wise(faulty).guild == all - faulty);
    Ok(B3LeagueOutcome {
        b3: system.b3_check().holds,
        tolerates_some: !tolerated.is_empty(),
        universe_is_league: report.is_league(),
        survivors_form_guilds,
    })
}
