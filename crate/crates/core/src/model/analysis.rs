use crate::error::{Error, Result};
use crate::model::closure::{all_closed_rooted, max_closed_subset, minimal_closed_rooted};
use crate::model::config::Configuration;
use crate::model::system::{Assumptions, Pfps, View};
use crate::procset::{Pid, ProcSet};

/// Survivor sets of `p`: sets containing a slice of `p` in which every member
/// has a slice. Minimal ones by default; with `include_all`, every such set.
pub fn survivor_sets(p: Pid, f: &Pfps, include_all: bool) -> Result<Vec<ProcSet>> {
    let slices: Vec<ProcSet> = f.get(p).slices().collect();
    if include_all {
        all_closed_rooted(&slices, f, ProcSet::EMPTY, f.all())
    } else {
        Ok(minimal_closed_rooted(slices, f, ProcSet::EMPTY))
    }
}

/// `p` has a survivor set avoiding `faulty`.
pub fn tolerates(p: Pid, f: &Pfps, faulty: ProcSet) -> bool {
    let alive = max_closed_subset(f.all() - faulty, f, ProcSet::EMPTY);
    f.get(p).has_slice_in(alive)
}

/// Every member of `league` outside `faulty` tolerates `faulty`. Vacuously true when `league ⊆ faulty`.
pub fn tolerated_by(league: ProcSet, f: &Pfps, faulty: ProcSet) -> bool {
    let alive = max_closed_subset(f.all() - faulty, f, ProcSet::EMPTY);
    (league - faulty).iter().all(|p| f.get(p).has_slice_in(alive))
}

fn own_config(p: Pid, v: &View) -> Result<&Configuration> {
    v.get(p)
        .ok_or_else(|| Error::Contract(format!("quorum query for process #{} whose own view entry is unknown", p.0)))
}

/// `set` contains a slice of `p`, and every member of `set` with a known
/// configuration in `v` has a slice inside `set`.
pub fn is_quorum(set: ProcSet, p: Pid, v: &View) -> Result<bool> {
    let own = own_config(p, v)?;
    Ok(own.has_slice_in(set) && (set.iter().all(|j| v.get(j).is_none_or(|c| c.has_slice_in(set)))))
}

/// Quorums of `p` in view `v`; minimal ones or all of them.
pub fn quorums(p: Pid, v: &View, minimal_only: bool) -> Result<Vec<ProcSet>> {
    let own = own_config(p, v)?;
    let slices: Vec<ProcSet> = own.slices().collect();
    if minimal_only {
        Ok(minimal_closed_rooted(slices, v, ProcSet::EMPTY))
    } else {
        all_closed_rooted(&slices, v, ProcSet::EMPTY, ProcSet::full(v.size()))
    }
}

/// `matching` contains a quorum of `p` in `v`.
pub fn contains_quorum(matching: ProcSet, p: Pid, v: &View) -> bool {
    match v.get(p) {
        Some(own) => own.has_slice_in(max_closed_subset(matching, v, ProcSet::EMPTY)),
        None => false,
    }
}

/// `blockers` meets every slice of `p`. A degenerate configuration counts as blocked.
pub fn blocks(blockers: ProcSet, p: Pid, f: &Pfps) -> bool {
    let c = f.get(p);
    if c.is_degenerate() {
        log::debug!("blocking query on degenerate configuration of {}", f.universe().id(p));
        return true;
    }
    c.meets_every_slice(blockers)
}

/// Least superset of `blockers` closed under adding processes it blocks.
pub fn blocked_closure(blockers: ProcSet, f: &Pfps) -> ProcSet {
    let mut current = blockers;
    loop {
        let added: ProcSet = (f.all() - current).iter().filter(|&p| blocks(current, p, f)).collect();
        if added.is_empty() {
            return current;
        }
        current |= added;
    }
}
