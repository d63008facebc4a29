//! Brute-force reference evaluator.
//!
//! Each definition is evaluated literally by enumerating subsets and views,
//! without going through the closure and search routines in [`crate::model`]
//! or [`crate::league`]. Only meant for universes of a handful of processes.

use crate::model::{Configuration, Pfps};
use crate::procset::{Pid, ProcSet};

fn slices(c: &Configuration) -> Vec<ProcSet> {
    c.fail_prone().iter().map(|f| c.trusted() - *f).collect()
}

fn some_slice_inside(c: &Configuration, s: ProcSet) -> bool {
    slices(c).iter().any(|x| x.is_subset(s))
}

fn all_sets(f: &Pfps) -> Vec<ProcSet> {
    (0..(1u64 << f.len())).map(ProcSet::from_bits).collect()
}

/// Processes whose failure assumptions hold when `faulty` fail, as the
/// greatest set in which each member has a fail-prone set covering its
/// faulty trusted processes and all its remaining trusted processes are
/// again in the set.
pub fn satisfied_greatest(f: &Pfps, faulty: ProcSet) -> ProcSet {
    let mut x = f.all();
    loop {
        let next: ProcSet = x.iter().filter(|&p| assumption_step(f, p, faulty, x)).collect();
        if next == x {
            return x;
        }
        x = next;
    }
}

/// The same recursion read as a least fixpoint. It differs from the
/// greatest reading as soon as slices depend on each other cyclically.
pub fn satisfied_least(f: &Pfps, faulty: ProcSet) -> ProcSet {
    let mut x = ProcSet::EMPTY;
    loop {
        let next: ProcSet = f.universe().pids().filter(|&p| assumption_step(f, p, faulty, x)).collect();
        if next == x {
            return x;
        }
        x = next;
    }
}

fn assumption_step(f: &Pfps, p: Pid, faulty: ProcSet, x: ProcSet) -> bool {
    let c = f.get(p);
    c.fail_prone().iter().any(|fs| (faulty & c.trusted()).is_subset(*fs) && (c.trusted() - *fs).is_subset(x))
}

pub fn tolerates(p: Pid, f: &Pfps, faulty: ProcSet) -> bool {
    satisfied_greatest(f, faulty).contains(p)
}

pub fn tolerated_by(league: ProcSet, f: &Pfps, faulty: ProcSet) -> bool {
    (league - faulty).iter().all(|p| tolerates(p, f, faulty))
}

/// All sets containing a slice of `p` in which every member has a slice.
pub fn closed_rooted_sets(p: Pid, f: &Pfps) -> Vec<ProcSet> {
    let mut out: Vec<ProcSet> = all_sets(f)
        .into_iter()
        .filter(|&s| some_slice_inside(f.get(p), s) && s.iter().all(|j| some_slice_inside(f.get(j), s)))
        .collect();
    out.sort();
    out
}

pub fn minimal_survivor_sets(p: Pid, f: &Pfps) -> Vec<ProcSet> {
    let all = closed_rooted_sets(p, f);
    all.iter().copied().filter(|s| !all.iter().any(|o| o != s && o.is_subset(*s))).collect()
}

/// Quorum test of `set` for `p` over an explicit list of view entries.
pub fn is_quorum(set: ProcSet, p: Pid, entries: &[Option<Configuration>]) -> bool {
    let own = entries[p.index()].as_ref().expect("root entry is known");
    some_slice_inside(own, set)
        && set.iter().all(|j| entries[j.index()].as_ref().is_none_or(|c| some_slice_inside(c, set)))
}

/// Sets that are a quorum of `p` in some view resilient to `tolerated` that
/// knows every member of the set. Members outside `tolerated` are known
/// truthfully; each tolerated member ranges over its true configuration, the
/// empty one and one trusting the whole universe.
pub fn informed_quorums_across_views(p: Pid, f: &Pfps, tolerated: ProcSet) -> Vec<ProcSet> {
    let alternatives = |liar: Pid| {
        vec![
            f.get(liar).clone(),
            Configuration::empty(),
            Configuration::fully_trusting(f.all()).expect("universe is non-empty"),
        ]
    };
    let mut out = Vec::new();
    for set in all_sets(f) {
        let liars: Vec<Pid> = (set & tolerated).iter().collect();
        let choices: Vec<Vec<Configuration>> = liars.iter().map(|&liar| alternatives(liar)).collect();
        let mut idx = vec![0usize; liars.len()];
        let mut hit = false;
        'views: loop {
            let mut entries: Vec<Option<Configuration>> = vec![None; f.len()];
            for j in set.iter() {
                entries[j.index()] = Some(f.get(j).clone());
            }
            entries[p.index()] = Some(f.get(p).clone());
            for (k, &liar) in liars.iter().enumerate() {
                entries[liar.index()] = Some(choices[k][idx[k]].clone());
            }
            if is_quorum(set, p, &entries) {
                hit = true;
                break 'views;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break 'views;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
        if hit {
            out.push(set);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeagueVerdict {
    pub consistent: bool,
    pub available: bool,
}

/// League consistency and availability by direct quantification over
/// tolerated sets, roots, views and quorums.
pub fn league(league: ProcSet, f: &Pfps) -> LeagueVerdict {
    let full: Vec<Option<Configuration>> = f.configs().iter().cloned().map(Some).collect();
    let mut consistent = true;
    let mut available = true;
    for tolerated in all_sets(f) {
        if !tolerated_by(league, f, tolerated) {
            continue;
        }
        let roots: Vec<Pid> = (league - tolerated).iter().collect();
        let families: Vec<Vec<ProcSet>> =
            roots.iter().map(|&r| informed_quorums_across_views(r, f, tolerated)).collect();
        for a in &families {
            for b in &families {
                if a.iter().any(|qa| b.iter().any(|qb| ((*qa & *qb) - tolerated).is_empty())) {
                    consistent = false;
                }
            }
        }
        for &r in &roots {
            let alive = league - tolerated;
            if !alive.subsets().any(|q| is_quorum(q, r, &full)) {
                available = false;
            }
        }
    }
    LeagueVerdict { consistent, available }
}

pub fn blocked_closure(blockers: ProcSet, f: &Pfps) -> ProcSet {
    let mut x = blockers;
    loop {
        let mut grew = false;
        for p in f.universe().pids() {
            if x.contains(p) {
                continue;
            }
            let ss = slices(f.get(p));
            if ss.iter().any(|s| s.is_empty()) || ss.iter().all(|s| s.intersects(x)) {
                x.insert(p);
                grew = true;
            }
        }
        if !grew {
            return x;
        }
    }
}

/// No three fail-prone sets, repetition allowed, cover `all`.
pub fn q3(fail_prone: &[ProcSet], all: ProcSet) -> bool {
    for a in fail_prone {
        for b in fail_prone {
            for c in fail_prone {
                if all.is_subset(*a | *b | *c) {
                    return false;
                }
            }
        }
    }
    true
}
