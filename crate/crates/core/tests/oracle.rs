use quorumlace_core::fixtures::{disjoint_pairs, four_process, single};
use quorumlace_core::{oracle, ProcSet};

#[test]
fn fixpoint_readings_disagree_on_four_process() {
    let f = four_process();
    assert_eq!(oracle::satisfied_greatest(&f, ProcSet::EMPTY), f.all());
    // Every slice depends on another process's slice, so nothing is grounded.
    assert_eq!(oracle::satisfied_least(&f, ProcSet::EMPTY), ProcSet::EMPTY);
}

#[test]
fn oracle_leagues_on_fixtures() {
    let f = four_process();
    let v = oracle::league(f.all(), &f);
    assert!(v.consistent && v.available);

    let d = disjoint_pairs();
    assert!(!oracle::league(d.all(), &d).consistent);
    let pair = oracle::league(d.set(["p1", "p2"]).unwrap(), &d);
    assert!(pair.consistent && pair.available);

    let s = single();
    assert_eq!(oracle::minimal_survivor_sets(s.pid("p1").unwrap(), &s), vec![s.all()]);
}

#[test]
fn informed_quorums_under_worst_case() {
    let f = four_process();
    let p1 = f.pid("p1").unwrap();
    let faulty = f.set(["p4"]).unwrap();
    let qs = oracle::informed_quorums_across_views(p1, &f, faulty);
    assert!(qs.contains(&f.set(["p1", "p2", "p3"]).unwrap()));
    assert!(qs.iter().all(|q| f.get(p1).has_slice_in(*q)));
}
