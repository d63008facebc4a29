use quorumlace_core::files::ConfigFile;
use quorumlace_core::fixtures::{disjoint_pairs, four_process, single};
use quorumlace_core::league::{
    find_maximal_leagues, inclusive_rooted_minimal, is_league, tolerated_sets, union_preserves_league,
    ConsistencyCounterexample, UnionVerdict,
};
use quorumlace_core::{Error, LeagueAnalyzer, Pfps, ProcSet};

fn fam(f: &Pfps, sets: &[&[&str]]) -> Vec<ProcSet> {
    let mut out: Vec<ProcSet> = sets.iter().map(|s| f.set(*s).unwrap()).collect();
    out.sort();
    out
}

fn load(text: &str) -> Pfps {
    ConfigFile::parse(text).unwrap().pfps().unwrap()
}

#[test]
fn four_process_tolerated_sets() {
    let f = four_process();
    assert_eq!(tolerated_sets(f.all(), &f).unwrap(), fam(&f, &[&[], &["p1"], &["p4"], &["p1", "p4"]]));
}

#[test]
fn single_process_tolerates_only_nothing() {
    let f = single();
    assert_eq!(tolerated_sets(f.all(), &f).unwrap(), vec![ProcSet::EMPTY]);
}

#[test]
fn inclusive_rooted_minimal_examples() {
    let f = four_process();
    let p1 = f.pid("p1").unwrap();
    let p2 = f.pid("p2").unwrap();
    assert_eq!(inclusive_rooted_minimal(p1, ProcSet::EMPTY, &f), fam(&f, &[&["p1", "p2", "p3"]]));
    assert_eq!(inclusive_rooted_minimal(p2, f.set(["p1", "p4"]).unwrap(), &f), fam(&f, &[&["p2", "p3"]]));
    let s = single();
    assert_eq!(inclusive_rooted_minimal(s.pid("p1").unwrap(), ProcSet::EMPTY, &s), fam(&s, &[&["p1"]]));
}

#[test]
fn league_examples() {
    let f = four_process();
    let report = is_league(f.all(), &f).unwrap();
    assert!(report.is_league());
    assert_eq!(report.tolerated.len(), 4);

    let a = LeagueAnalyzer::new(&f);
    let pair = a.check_availability(f.set(["p1", "p2"]).unwrap()).unwrap().expect("p2 has no slice inside");
    assert_eq!(pair.tolerated, ProcSet::EMPTY);

    assert!(is_league(single().all(), &single()).unwrap().is_league());
}

#[test]
fn disjoint_pairs_are_not_one_league() {
    let f = disjoint_pairs();
    let report = is_league(f.all(), &f).unwrap();
    assert!(!report.is_league());
    assert_eq!(
        report.consistency,
        Some(ConsistencyCounterexample {
            tolerated: ProcSet::EMPTY,
            roots: (f.pid("p1").unwrap(), f.pid("p3").unwrap()),
            sets: (f.set(["p1", "p2"]).unwrap(), f.set(["p3", "p4"]).unwrap()),
        })
    );
}

#[test]
fn maximal_leagues() {
    let f = four_process();
    assert_eq!(find_maximal_leagues(&f).unwrap(), vec![f.all()]);
    let d = disjoint_pairs();
    assert_eq!(find_maximal_leagues(&d).unwrap(), fam(&d, &[&["p1", "p2"], &["p3", "p4"]]));
    assert_eq!(find_maximal_leagues(&single()).unwrap(), vec![single().all()]);
}

#[test]
fn union_of_leagues() {
    let f = four_process();
    assert_eq!(union_preserves_league(f.all(), f.all(), &f).unwrap(), UnionVerdict::UnionIsLeague);
    let d = disjoint_pairs();
    let (a, b) = (d.set(["p1", "p2"]).unwrap(), d.set(["p3", "p4"]).unwrap());
    assert_eq!(union_preserves_league(a, b, &d).unwrap(), UnionVerdict::HypothesisFails { tolerated: None });
}

#[test]
fn capacity_bound_is_enforced() {
    let f = four_process();
    let small = LeagueAnalyzer::new(&f).with_capacity(3);
    assert!(matches!(small.tolerated_sets(f.all()), Err(Error::Capacity { size: 4, bound: 3 })));
}

// Expected values below were produced by the brute-force oracle and frozen.
#[test]
fn frozen_random_instance_a() {
    let f = load(include_str!("data/random5_a.json"));
    assert_eq!(
        tolerated_sets(f.all(), &f).unwrap(),
        fam(
            &f,
            &[
                &[],
                &["p1"],
                &["p2"],
                &["p5"],
                &["p1", "p2"],
                &["p1", "p5"],
                &["p2", "p4"],
                &["p2", "p5"],
                &["p1", "p2", "p4"],
                &["p1", "p2", "p5"],
            ]
        )
    );
    assert_eq!(find_maximal_leagues(&f).unwrap(), Vec::<ProcSet>::new());
}

#[test]
fn frozen_random_instance_b() {
    let f = load(include_str!("data/random5_b.json"));
    assert_eq!(tolerated_sets(f.all(), &f).unwrap(), fam(&f, &[&[], &["p2", "p3", "p4", "p5"]]));
    assert!(is_league(f.set(["p1"]).unwrap(), &f).unwrap().is_league());
    assert!(is_league(f.all(), &f).unwrap().is_league());
    assert_eq!(find_maximal_leagues(&f).unwrap(), vec![f.all()]);
}
