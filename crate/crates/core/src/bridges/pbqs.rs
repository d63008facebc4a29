use crate::error::{Error, Result};
use crate::model::{max_closed_subset, survivor_sets, Pfps};
use crate::procset::{minimal_members, Pid, ProcSet, Universe};

/// Explicit per-process quorum families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbqsSystem {
    pub universe: Universe,
    pub quorums: Vec<Vec<ProcSet>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterVerdict {
    Holds,
    /// Quorums of two members meet only inside the faulty set.
    Disjoint {
        processes: (Pid, Pid),
        quorums: (ProcSet, ProcSet),
    },
    /// A member has no quorum inside the cluster.
    Unavailable {
        process: Pid,
    },
}

impl ClusterVerdict {
    pub fn holds(&self) -> bool {
        *self == ClusterVerdict::Holds
    }
}

impl PbqsSystem {
    pub fn new(universe: Universe, quorums: Vec<Vec<ProcSet>>) -> Result<Self> {
        if quorums.len() != universe.len() {
            return Err(Error::InvalidInput("one quorum family per process is required".into()));
        }
        Ok(PbqsSystem { universe, quorums })
    }

    /// Consensus-cluster check over the explicit quorum families.
    pub fn cluster_check(&self, cluster: ProcSet, faulty: ProcSet) -> ClusterVerdict {
        let families: Vec<(Pid, Vec<ProcSet>)> =
            cluster.iter().map(|p| (p, minimal_members(self.quorums[p.index()].clone()))).collect();
        cluster_verdict(cluster, faulty, &families)
    }
}

fn cluster_verdict(cluster: ProcSet, faulty: ProcSet, families: &[(Pid, Vec<ProcSet>)]) -> ClusterVerdict {
    for (a, (pa, fa)) in families.iter().enumerate() {
        for (pb, fb) in families.iter().skip(a) {
            for &qa in fa {
                for &qb in fb {
                    if ((qa & qb) - faulty).is_empty() {
                        return ClusterVerdict::Disjoint { processes: (*pa, *pb), quorums: (qa, qb) };
                    }
                }
            }
        }
    }
    for (p, fam) in families {
        if !fam.iter().any(|q| q.is_subset(cluster)) {
            return ClusterVerdict::Unavailable { process: *p };
        }
    }
    ClusterVerdict::Holds
}

/// Consensus-cluster check using full-view quorums of the system.
pub fn consensus_cluster_check(cluster: ProcSet, f: &Pfps, faulty: ProcSet) -> Result<ClusterVerdict> {
    let mut families = Vec::new();
    for p in cluster.iter() {
        families.push((p, survivor_sets(p, f, false)?));
    }
    Ok(cluster_verdict(cluster, faulty, &families))
}

/// `set` is a quorum in the permissionless sense: `p` and every member of `set`
/// have a full-view quorum inside `set`.
pub fn pbqs_quorum_check(set: ProcSet, p: Pid, f: &Pfps) -> bool {
    let inner = max_closed_subset(set, f, ProcSet::EMPTY);
    set.with(p).iter().all(|m| f.get(m).has_slice_in(inner))
}
