use std::collections::HashSet;

use crate::capacity::{capacity_bound, ensure_within};
use crate::error::Result;
use crate::model::system::Assumptions;
use crate::procset::{minimal_members, Pid, ProcSet};

/// Greatest subset of `s` in which every member outside `exempt` with a
/// known configuration has a slice inside the subset.
pub fn max_closed_subset<A: Assumptions + ?Sized>(s: ProcSet, assumptions: &A, exempt: ProcSet) -> ProcSet {
    let mut current = s;
    loop {
        let mut next = current;
        for p in (current - exempt).iter() {
            if let Some(c) = assumptions.config(p) {
                if !c.has_slice_in(next) {
                    next.remove(p);
                }
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `s` is closed: members outside `exempt` with known configurations have a slice in `s`.
pub fn is_closed<A: Assumptions + ?Sized>(s: ProcSet, assumptions: &A, exempt: ProcSet) -> bool {
    (s - exempt).iter().all(|p| assumptions.config(p).is_none_or(|c| c.has_slice_in(s)))
}

fn first_unsatisfied<A: Assumptions + ?Sized>(s: ProcSet, assumptions: &A, exempt: ProcSet) -> Option<Pid> {
    (s - exempt).iter().find(|&p| assumptions.config(p).is_some_and(|c| !c.has_slice_in(s)))
}

/// Minimal closed sets containing one of `root_slices`.
///
/// Depth-first growth: take the first member lacking a slice inside the
/// current set and branch over its slices. Every minimal closed set is
/// reached because each branch can follow the slices it already contains.
pub fn minimal_closed_rooted<A: Assumptions + ?Sized>(
    root_slices: impl IntoIterator<Item = ProcSet>,
    assumptions: &A,
    exempt: ProcSet,
) -> Vec<ProcSet> {
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    let mut stack: Vec<ProcSet> = root_slices.into_iter().collect();
    while let Some(s) = stack.pop() {
        if !seen.insert(s) {
            continue;
        }
        if found.iter().any(|f: &ProcSet| f.is_subset(s)) {
            continue;
        }
        match first_unsatisfied(s, assumptions, exempt) {
            None => found.push(s),
            Some(p) => {
                let c = assumptions.config(p).expect("unsatisfied member has a configuration");
                for slice in c.slices() {
                    stack.push(s | slice);
                }
            }
        }
    }
    minimal_members(found)
}

/// Every closed set within `within` that contains one of `root_slices`.
/// Exhaustive, so bounded by the capacity limit.
pub fn all_closed_rooted<A: Assumptions + ?Sized>(
    root_slices: &[ProcSet],
    assumptions: &A,
    exempt: ProcSet,
    within: ProcSet,
) -> Result<Vec<ProcSet>> {
    ensure_within(within.len(), capacity_bound())?;
    let mut out: Vec<ProcSet> = within
        .subsets()
        .filter(|s| root_slices.iter().any(|r| r.is_subset(*s)) && is_closed(*s, assumptions, exempt))
        .collect();
    out.sort();
    Ok(out)
}
