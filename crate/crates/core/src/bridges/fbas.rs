use crate::error::{Error, Result};
use crate::league::LeagueAnalyzer;
use crate::model::{is_quorum, survivor_sets, Configuration, Pfps, View};
use crate::procset::{Pid, ProcSet, Universe};

/// Federated system: each process knows a set of processes and picks slices
/// among them, each slice containing the process itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FbasSystem {
    pub universe: Universe,
    pub known: Vec<ProcSet>,
    pub slices: Vec<Vec<ProcSet>>,
}

impl FbasSystem {
    /// Fail-prone sets are the complements of the slices within the known set.
    pub fn fbas_derive(&self) -> Result<Pfps> {
        let mut configs = Vec::with_capacity(self.universe.len());
        for p in self.universe.pids() {
            let known = self.known[p.index()];
            let slices = &self.slices[p.index()];
            for s in slices {
                if !s.contains(p) || !s.is_subset(known) {
                    return Err(Error::InvalidInput(format!(
                        "slice {} of {} must contain its owner and lie inside its known set",
                        self.universe.show(*s),
                        self.universe.id(p)
                    )));
                }
            }
            let fail_prone: Vec<ProcSet> = slices.iter().map(|s| known - *s).collect();
            configs.push(Configuration::normalize(known, fail_prone)?);
        }
        Pfps::new(self.universe.clone(), configs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntactWitness {
    /// Quorums of two members that share no member of the candidate set.
    DisjointInside { processes: (Pid, Pid), quorums: (ProcSet, ProcSet) },
    /// The candidate set is not a quorum of this member.
    NotQuorum { process: Pid },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntactVerdict {
    pub holds: bool,
    /// The candidate set was empty, so the check holds vacuously.
    pub degenerate: bool,
    pub witness: Option<IntactWitness>,
}

/// Intact-set check with full-view quorums: every two members' quorums meet
/// inside `set`, and `set` is a quorum of each member.
pub fn intact_check(set: ProcSet, f: &Pfps, faulty: ProcSet) -> Result<IntactVerdict> {
    if set.intersects(faulty) {
        return Err(Error::Contract("intact candidate contains faulty processes".into()));
    }
    if set.is_empty() {
        return Ok(IntactVerdict { holds: true, degenerate: true, witness: None });
    }
    let full = View::full(f);
    let members: Vec<Pid> = set.iter().collect();
    let families: Vec<Vec<ProcSet>> = members.iter().map(|&p| survivor_sets(p, f, false)).collect::<Result<_>>()?;
    for (a, fa) in families.iter().enumerate() {
        for (b, fb) in families.iter().enumerate().skip(a) {
            for &qa in fa {
                for &qb in fb {
                    if (qa & qb & set).is_empty() {
                        let witness =
                            IntactWitness::DisjointInside { processes: (members[a], members[b]), quorums: (qa, qb) };
                        return Ok(IntactVerdict { holds: false, degenerate: false, witness: Some(witness) });
                    }
                }
            }
        }
    }
    for &p in &members {
        if !is_quorum(set, p, &full)? {
            return Ok(IntactVerdict {
                holds: false,
                degenerate: false,
                witness: Some(IntactWitness::NotQuorum { process: p }),
            });
        }
    }
    Ok(IntactVerdict { holds: true, degenerate: false, witness: None })
}

/// For each set tolerated by `league`: whether every two minimal inclusive
/// sets still share a league member outside the tolerated set, and whether
/// the surviving league members are intact.
pub fn strong_consistency_harness(league: ProcSet, f: &Pfps) -> Result<Vec<(ProcSet, bool, bool)>> {
    let analyzer = LeagueAnalyzer::new(f);
    let mut out = Vec::new();
    for tolerated in analyzer.tolerated_sets(league)? {
        let families: Vec<Vec<ProcSet>> =
            (league - tolerated).iter().map(|r| analyzer.inclusive_rooted_minimal(r, tolerated)).collect();
        let strong = families.iter().all(|fa| {
            families.iter().all(|fb| fa.iter().all(|&i| fb.iter().all(|&j| !((i & j & league) - tolerated).is_empty())))
        });
        let intact = intact_check(league - tolerated, f, tolerated)?.holds;
        out.push((tolerated, strong, intact));
    }
    Ok(out)
}
