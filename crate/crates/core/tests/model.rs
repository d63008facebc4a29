use quorumlace_core::fixtures::{disjoint_pairs, four_process, single};
use quorumlace_core::model::{
    blocked_closure, blocks, is_quorum, is_resilient, max_closed_subset, quorums, slices_of, survivor_sets,
    tolerated_by, tolerates, worst_case_view, Configuration,
};
use quorumlace_core::{Error, Pfps, ProcSet, Universe, View};

fn set(f: &Pfps, ids: &[&str]) -> ProcSet {
    f.set(ids).unwrap()
}

fn fam(f: &Pfps, sets: &[&[&str]]) -> Vec<ProcSet> {
    let mut out: Vec<ProcSet> = sets.iter().map(|s| set(f, s)).collect();
    out.sort();
    out
}

#[test]
fn normalization_keeps_maximal_sets() {
    let u = Universe::numbered(4).unwrap();
    let all = u.all();
    let c = Configuration::normalize(all, [u.set(["p1"]).unwrap(), u.set(["p1", "p2"]).unwrap()]).unwrap();
    assert_eq!(c.fail_prone(), &[u.set(["p1", "p2"]).unwrap()]);

    let clipped = Configuration::normalize(u.set(["p1", "p2"]).unwrap(), [u.set(["p2", "p3"]).unwrap()]).unwrap();
    assert_eq!(clipped.fail_prone(), &[u.set(["p2"]).unwrap()]);

    let none = Configuration::normalize(all, []).unwrap();
    assert_eq!(none.fail_prone(), &[ProcSet::EMPTY]);
    assert!(Configuration::normalize(ProcSet::EMPTY, []).is_err());
}

#[test]
fn four_process_input_is_already_normal() {
    let f = four_process();
    let p1 = f.pid("p1").unwrap();
    assert_eq!(f.get(p1).fail_prone(), &[set(&f, &["p3", "p4"])]);
    assert_eq!(f.get(p1).trusted(), f.all());
}

#[test]
fn slices_of_four_process() {
    let f = four_process();
    let slices = |id| slices_of(f.get(f.pid(id).unwrap()));
    assert_eq!(slices("p1"), fam(&f, &[&["p1", "p2"]]));
    assert_eq!(slices("p2"), fam(&f, &[&["p2", "p3"]]));
    assert_eq!(slices("p3"), fam(&f, &[&["p2", "p3"]]));
    assert_eq!(slices("p4"), fam(&f, &[&["p3", "p4"]]));
}

#[test]
fn empty_configuration_is_degenerate() {
    let c = Configuration::empty();
    assert!(c.is_degenerate());
    assert_eq!(slices_of(&c), vec![ProcSet::EMPTY]);
    assert!(c.has_slice_in(ProcSet::EMPTY));
}

#[test]
fn has_slice_in_examples() {
    let f = four_process();
    let p1 = f.pid("p1").unwrap();
    let p4 = f.pid("p4").unwrap();
    assert!(f.get(p1).has_slice_in(set(&f, &["p1", "p2", "p3"])));
    assert!(!f.get(p4).has_slice_in(set(&f, &["p1", "p2"])));
}

#[test]
fn greatest_closed_subset_examples() {
    let f = four_process();
    assert_eq!(max_closed_subset(set(&f, &["p2", "p3"]), &f, ProcSet::EMPTY), set(&f, &["p2", "p3"]));
    assert_eq!(max_closed_subset(set(&f, &["p1", "p2"]), &f, ProcSet::EMPTY), ProcSet::EMPTY);
    assert_eq!(max_closed_subset(f.all(), &f, ProcSet::EMPTY), f.all());
}

#[test]
fn survivor_sets_minimal() {
    let f = four_process();
    let s = |id| survivor_sets(f.pid(id).unwrap(), &f, false).unwrap();
    assert_eq!(s("p1"), fam(&f, &[&["p1", "p2", "p3"]]));
    assert_eq!(s("p2"), fam(&f, &[&["p2", "p3"]]));
    assert_eq!(s("p3"), fam(&f, &[&["p2", "p3"]]));
    assert_eq!(s("p4"), fam(&f, &[&["p2", "p3", "p4"]]));
}

// include_all lists every closed rooted set, so p2 also has the two
// three-element sets around {p2,p3}.
#[test]
fn survivor_sets_include_all() {
    let f = four_process();
    let s = |id| survivor_sets(f.pid(id).unwrap(), &f, true).unwrap();
    assert_eq!(s("p1"), fam(&f, &[&["p1", "p2", "p3"], &["p1", "p2", "p3", "p4"]]));
    assert_eq!(s("p4"), fam(&f, &[&["p2", "p3", "p4"], &["p1", "p2", "p3", "p4"]]));
    assert_eq!(s("p2"), fam(&f, &[&["p2", "p3"], &["p1", "p2", "p3"], &["p2", "p3", "p4"], &["p1", "p2", "p3", "p4"]]));
    assert_eq!(survivor_sets(single().pid("p1").unwrap(), &single(), true).unwrap(), fam(&single(), &[&["p1"]]));
}

#[test]
fn tolerance_examples() {
    let f = four_process();
    let p2 = f.pid("p2").unwrap();
    assert!(tolerates(p2, &f, set(&f, &["p1", "p4"])));
    assert!(!tolerates(p2, &f, set(&f, &["p2", "p3"])));
    assert!(tolerated_by(f.all(), &f, set(&f, &["p1", "p4"])));
    assert!(!tolerated_by(f.all(), &f, set(&f, &["p2"])));
    // A set containing the whole league carries no obligation.
    assert!(tolerated_by(f.all(), &f, f.all()));
}

#[test]
fn quorum_examples() {
    let f = four_process();
    let full = View::full(&f);
    let p1 = f.pid("p1").unwrap();
    let p2 = f.pid("p2").unwrap();
    let p4 = f.pid("p4").unwrap();
    assert!(is_quorum(set(&f, &["p2", "p3"]), p2, &full).unwrap());
    assert!(!is_quorum(set(&f, &["p1", "p2"]), p1, &full).unwrap());
    assert_eq!(quorums(p4, &full, false).unwrap(), fam(&f, &[&["p2", "p3", "p4"], &["p1", "p2", "p3", "p4"]]));

    let worst = worst_case_view(&f, set(&f, &["p4"]));
    assert_eq!(quorums(p1, &worst, true).unwrap(), fam(&f, &[&["p1", "p2", "p3"]]));

    let mut unknown_self = View::full(&f);
    unknown_self.clear(p1);
    assert!(matches!(is_quorum(f.all(), p1, &unknown_self), Err(Error::Contract(_))));
}

#[test]
fn worst_case_views() {
    let f = four_process();
    assert_eq!(worst_case_view(&f, ProcSet::EMPTY), View::full(&f));
    let p4 = f.pid("p4").unwrap();
    let w = worst_case_view(&f, set(&f, &["p4"]));
    assert_eq!(w.get(p4), Some(&Configuration::empty()));
    for p in set(&f, &["p1", "p2", "p3"]).iter() {
        assert_eq!(w.get(p), Some(f.get(p)));
    }
    let everyone = worst_case_view(&f, f.all());
    assert!(f.all().iter().all(|p| everyone.get(p) == Some(&Configuration::empty())));
}

#[test]
fn resilience() {
    let f = four_process();
    let mut v = View::full(&f);
    v.set(f.pid("p2").unwrap(), Configuration::empty());
    assert!(!is_resilient(&v, &f, set(&f, &["p1"])));
    assert!(is_resilient(&v, &f, set(&f, &["p2"])));
    assert!(is_resilient(&View::unknown(4), &f, ProcSet::EMPTY));
}

#[test]
fn blocking_examples() {
    let f = four_process();
    assert!(blocks(set(&f, &["p2"]), f.pid("p1").unwrap(), &f));
    assert!(!blocks(set(&f, &["p1"]), f.pid("p2").unwrap(), &f));
    assert_eq!(blocked_closure(set(&f, &["p1", "p4"]), &f), set(&f, &["p1", "p4"]));
    assert_eq!(blocked_closure(ProcSet::EMPTY, &f), ProcSet::EMPTY);
    assert_eq!(blocked_closure(set(&f, &["p2", "p3"]), &f), f.all());
}

#[test]
fn builder_rejections() {
    let unconfigured = Pfps::builder().process("p1", &["p1", "p2"], &[]).build();
    assert!(unconfigured.is_err());
    let empty_trust = Pfps::builder().process("p1", &[], &[]).build();
    assert!(matches!(empty_trust, Err(Error::InvalidInput(msg)) if msg.contains("trusted is empty")));
}

#[test]
fn wire_round_trip() {
    for f in [four_process(), single(), disjoint_pairs()] {
        let back = Pfps::from_wire(&f.to_wire()).unwrap();
        assert_eq!(back.to_wire(), f.to_wire());
        assert_eq!(back.configs(), f.configs());
    }
}
