//! Randomized property checks against the brute-force oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bridges::pbqs_quorum_check;
use crate::bridges::q3_league_harness;
use crate::error::{Error, Result};
use crate::gen::{random_pfps, random_resilient_view, random_symmetric};
use crate::league::LeagueAnalyzer;
use crate::model::{
    blocked_closure, blocks, is_closed, is_quorum, quorums, survivor_sets, tolerates, worst_case_view, Pfps, View,
};
use crate::mutation::Mutation;
use crate::oracle;
use crate::procset::{Pid, ProcSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Tolerance equals having a survivor set that avoids the faulty set,
    /// and equals the oracle's greatest-fixpoint reading.
    Tolerance,
    /// Full-view quorums are exactly the survivor sets; a minimal survivor
    /// set is a quorum in the worst-case view of its complement.
    QuorumSurvivor,
    /// Every informed quorum in a resilient view contains a worst-case quorum
    /// and is closed up to the tolerated set.
    WorstCase,
    /// View-free consistency check agrees with quantification over views.
    Consistency,
    /// View-free availability check agrees with direct quorum search.
    Availability,
    /// The blocked closure of a tolerated set never reaches the surviving league.
    BlockedClosure,
    /// Full-view quorums are quorums in the permissionless sense.
    PermissionlessQuorum,
    /// Growing a quorum by blocked processes eventually covers the surviving league.
    Cascade,
    /// Q3 holds exactly when the symmetric embedding's universe is a league.
    Q3League,
}

pub const ALL_PROPERTIES: [Property; 9] = [
    Property::Tolerance,
    Property::QuorumSurvivor,
    Property::WorstCase,
    Property::Consistency,
    Property::Availability,
    Property::BlockedClosure,
    Property::PermissionlessQuorum,
    Property::Cascade,
    Property::Q3League,
];

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Tolerance => "tolerance",
            Property::QuorumSurvivor => "quorum-survivor",
            Property::WorstCase => "worst-case",
            Property::Consistency => "consistency",
            Property::Availability => "availability",
            Property::BlockedClosure => "blocked-closure",
            Property::PermissionlessQuorum => "pbqs-quorum",
            Property::Cascade => "cascade",
            Property::Q3League => "q3-league",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL_PROPERTIES
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown property {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct FuzzOptions {
    /// Largest universe; each instance draws its size from `2..=processes`.
    pub processes: usize,
    pub instances: usize,
    pub seed: u64,
    pub properties: Vec<Property>,
    pub mutation: Option<Mutation>,
}

impl FuzzOptions {
    pub fn new(processes: usize, instances: usize, seed: u64) -> Self {
        FuzzOptions { processes, instances, seed, properties: ALL_PROPERTIES.to_vec(), mutation: None }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzViolation {
    pub instance: usize,
    pub property: Property,
    pub detail: String,
    pub system: Pfps,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub instances: usize,
    pub checks: BTreeMap<Property, u64>,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Seed of one instance, so that any instance can be replayed alone.
pub fn instance_seed(seed: u64, instance: usize) -> u64 {
    seed ^ (instance as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_fuzz(opts: &FuzzOptions) -> Result<FuzzReport> {
    if opts.processes < 2 || opts.processes > 8 {
        return Err(Error::InvalidInput("fuzzing supports 2 to 8 processes".into()));
    }
    let results: Vec<Result<InstanceResult>> =
        (0..opts.instances).into_par_iter().map(|i| check_instance(opts, i)).collect();
    let mut report = FuzzReport { instances: opts.instances, ..Default::default() };
    for r in results {
        let r = r?;
        for (p, c) in r.checks {
            *report.checks.entry(p).or_default() += c;
        }
        report.violations.extend(r.violations);
    }
    Ok(report)
}

#[derive(Default)]
struct InstanceResult {
    checks: BTreeMap<Property, u64>,
    violations: Vec<FuzzViolation>,
}

struct Ctx<'a> {
    instance: usize,
    f: &'a Pfps,
    out: InstanceResult,
}

impl Ctx<'_> {
    fn expect(&mut self, property: Property, ok: bool, detail: impl FnOnce() -> String) {
        *self.out.checks.entry(property).or_default() += 1;
        if !ok && !self.out.violations.iter().any(|v| v.property == property) {
            self.out.violations.push(FuzzViolation {
                instance: self.instance,
                property,
                detail: detail(),
                system: self.f.clone(),
            });
        }
    }
}

fn check_instance(opts: &FuzzOptions, instance: usize) -> Result<InstanceResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(opts.seed, instance));
    let n = rng.gen_range(2..=opts.processes);
    let f = random_pfps(&mut rng, n);
    let mut ctx = Ctx { instance, f: &f, out: InstanceResult::default() };
    let wants = |p: Property| opts.properties.contains(&p);
    let analyzer = LeagueAnalyzer::new(&f).with_mutation(opts.mutation);
    let u = f.universe().clone();
    let all = f.all();
    let full = View::full(&f);

    if wants(Property::Tolerance) {
        for p in u.pids() {
            let minimal = survivor_sets(p, &f, false)?;
            for a in all.subsets() {
                let fast = tolerates(p, &f, a);
                let via_survivors = minimal.iter().any(|s| !s.intersects(a));
                let direct = oracle::tolerates(p, &f, a);
                ctx.expect(Property::Tolerance, fast == via_survivors && fast == direct, || {
                    format!(
                        "{} faulty {}: tolerates={fast} survivor-set={via_survivors} oracle={direct}",
                        u.id(p),
                        u.show(a)
                    )
                });
            }
        }
    }

    if wants(Property::QuorumSurvivor) {
        for p in u.pids() {
            let every = survivor_sets(p, &f, true)?;
            let quorum_sets = quorums(p, &full, false)?;
            ctx.expect(
                Property::QuorumSurvivor,
                every == quorum_sets && every == oracle::closed_rooted_sets(p, &f),
                || {
                    format!(
                        "{}: survivor sets {} vs quorums {}",
                        u.id(p),
                        u.show_family(&every),
                        u.show_family(&quorum_sets)
                    )
                },
            );
            let minimal = survivor_sets(p, &f, false)?;
            ctx.expect(Property::QuorumSurvivor, minimal == oracle::minimal_survivor_sets(p, &f), || {
                format!("{}: minimal survivor sets {} disagree with the oracle", u.id(p), u.show_family(&minimal))
            });
            for s in minimal {
                let ok = is_quorum(s, p, &worst_case_view(&f, all - s))?;
                ctx.expect(Property::QuorumSurvivor, ok, || {
                    format!("{}: survivor set {} is not a worst-case quorum", u.id(p), u.show(s))
                });
            }
        }
    }

    if wants(Property::WorstCase) || wants(Property::Cascade) {
        for tolerated_set in all.subsets() {
            let wc = worst_case_view(&f, tolerated_set);
            for p in (all - tolerated_set).iter() {
                let worst = quorums(p, &wc, true)?;
                if wants(Property::WorstCase) {
                    for _ in 0..2 {
                        let v = random_resilient_view(&mut rng, &f, tolerated_set, p);
                        let dom = v.domain();
                        for q in quorums(p, &v, false)?.into_iter().filter(|q| q.is_subset(dom)) {
                            let contains = worst.iter().any(|w| w.is_subset(q));
                            let closed = is_closed(q, &f, tolerated_set);
                            ctx.expect(Property::WorstCase, contains && closed, || {
                                format!("{} tolerated {}: informed quorum {} (contains worst-case quorum: {contains}, closed: {closed})",
                                    u.id(p), u.show(tolerated_set), u.show(q))
                            });
                        }
                    }
                }
            }
        }
    }

    let need_leagues = wants(Property::Consistency)
        || wants(Property::Availability)
        || wants(Property::BlockedClosure)
        || wants(Property::Cascade);
    let mut leagues = Vec::new();
    if need_leagues {
        let plain = LeagueAnalyzer::new(&f);
        for league in all.subsets().filter(|league| !league.is_empty()) {
            if wants(Property::Consistency) || wants(Property::Availability) {
                let direct = oracle::league(league, &f);
                if wants(Property::Consistency) {
                    let fast = analyzer.check_consistency(league)?.is_none();
                    ctx.expect(Property::Consistency, fast == direct.consistent, || {
                        format!(
                            "league {}: view-free consistency {fast}, over views {}",
                            u.show(league),
                            direct.consistent
                        )
                    });
                }
                if wants(Property::Availability) {
                    let fast = analyzer.check_availability(league)?.is_none();
                    ctx.expect(Property::Availability, fast == direct.available, || {
                        format!("league {}: view-free availability {fast}, direct {}", u.show(league), direct.available)
                    });
                }
            }
            let report = plain.is_league(league)?;
            if report.is_league() {
                leagues.push((league, report.tolerated));
            }
        }
    }

    if wants(Property::BlockedClosure) {
        for b in all.subsets() {
            let fast = blocked_closure(b, &f);
            let direct = oracle::blocked_closure(b, &f);
            ctx.expect(Property::BlockedClosure, fast == direct, || {
                format!("blocked closure of {}: {} vs oracle {}", u.show(b), u.show(fast), u.show(direct))
            });
        }
        for (league, tolerated) in &leagues {
            for &tolerated_set in tolerated {
                let reach = blocked_closure(tolerated_set, &f) & (*league - tolerated_set);
                ctx.expect(Property::BlockedClosure, reach.is_empty(), || {
                    format!(
                        "league {} tolerated {}: closure reaches {}",
                        u.show(*league),
                        u.show(tolerated_set),
                        u.show(reach)
                    )
                });
            }
        }
    }

    if wants(Property::PermissionlessQuorum) {
        for p in u.pids() {
            for q in quorums(p, &full, false)? {
                ctx.expect(Property::PermissionlessQuorum, pbqs_quorum_check(q, p, &f), || {
                    format!("{}: quorum {} fails the permissionless check", u.id(p), u.show(q))
                });
            }
        }
    }

    if wants(Property::Cascade) {
        for (league, tolerated) in &leagues {
            for &tolerated_set in tolerated {
                let wc = worst_case_view(&f, tolerated_set);
                for p in (*league - tolerated_set).iter() {
                    for q in quorums(p, &wc, false)? {
                        let stuck = cascade_from(&f, *league, tolerated_set, q - tolerated_set);
                        ctx.expect(Property::Cascade, stuck.is_none(), || {
                            format!(
                                "league {} tolerated {} root {} quorum {}: stuck at {}",
                                u.show(*league),
                                u.show(tolerated_set),
                                u.id(p),
                                u.show(q),
                                u.show(stuck.unwrap_or_default())
                            )
                        });
                    }
                }
            }
        }
    }

    if wants(Property::Q3League) {
        let m = rng.gen_range(3..=opts.processes.max(3));
        let sym = random_symmetric(&mut rng, m);
        let outcome = q3_league_harness(&sym)?;
        let direct = oracle::q3(&sym.fail_prone, sym.universe.all());
        ctx.expect(Property::Q3League, outcome.agree() && direct == outcome.q3, || {
            format!(
                "symmetric {}: q3 {} oracle {direct} league {}",
                sym.universe.show_family(&sym.fail_prone),
                outcome.q3,
                outcome.universe_is_league
            )
        });
    }

    Ok(ctx.out)
}

/// Grows `blockers` by processes outside `blockers ∪ tolerated` that it blocks until it
/// covers `league ∖ tolerated`. Returns the set it got stuck at, if any.
pub fn cascade_from(f: &Pfps, league: ProcSet, tolerated: ProcSet, mut blockers: ProcSet) -> Option<ProcSet> {
    loop {
        if (league - tolerated).is_subset(blockers) {
            return None;
        }
        let next: Option<Pid> = (f.all() - blockers - tolerated).iter().find(|&p| blocks(blockers, p, f));
        match next {
            Some(p) => blockers.insert(p),
            None => return Some(blockers),
        }
    }
}
