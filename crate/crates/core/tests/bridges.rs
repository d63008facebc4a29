use quorumlace_core::bridges::{
    b3_league_harness, consensus_cluster_check, guild_and_wise, intact_check, pbqs_quorum_check, q3_league_harness,
    strong_consistency_harness, AsymmetricSystem, B3Witness, ClusterVerdict, FbasSystem, IntactWitness,
    SymmetricSystem,
};
use quorumlace_core::fixtures::{asymmetric_four, disjoint_pairs, four_process, single};
use quorumlace_core::model::{quorums, slices_of};
use quorumlace_core::{Error, Pfps, ProcSet, Universe, View};

fn threshold(n: usize) -> SymmetricSystem {
    let u = Universe::numbered(n).unwrap();
    let singles = u.pids().map(ProcSet::singleton).collect();
    SymmetricSystem::new(u, singles)
}

#[test]
fn q3_threshold_systems() {
    assert!(threshold(4).q3_check().holds);
    let three = threshold(3);
    let verdict = three.q3_check();
    assert!(!verdict.holds);
    let mut witness = verdict.witness.unwrap().to_vec();
    witness.sort();
    assert_eq!(witness, three.universe.pids().map(ProcSet::singleton).collect::<Vec<_>>());
}

#[test]
fn symmetric_embedding() {
    let one = SymmetricSystem::new(Universe::numbered(1).unwrap(), vec![ProcSet::EMPTY]);
    assert_eq!(one.f_embed().to_wire(), single().to_wire());

    let f = threshold(4).f_embed();
    for p in f.all().iter() {
        assert_eq!(f.get(p).trusted(), f.all());
        assert_eq!(f.get(p).fail_prone().len(), 4);
    }
}

#[test]
fn q3_matches_league_on_thresholds() {
    let four = q3_league_harness(&threshold(4)).unwrap();
    assert!(four.q3 && four.universe_is_league);
    let three = q3_league_harness(&threshold(3)).unwrap();
    assert!(!three.q3 && !three.universe_is_league);
}

#[test]
fn b3_separation() {
    let a = asymmetric_four();
    let u = &a.universe;
    let verdict = a.b3_check();
    assert!(!verdict.holds);
    let B3Witness { processes, first, second, shared } = verdict.witness.unwrap();
    assert_eq!(processes, (u.pid("p1").unwrap(), u.pid("p4").unwrap()));
    assert_eq!(first, u.set(["p3", "p4"]).unwrap());
    assert_eq!(second, u.set(["p1", "p2"]).unwrap());
    assert_eq!(shared, ProcSet::EMPTY);
    assert_eq!(first | second | shared, u.all());

    let f = a.g_embed();
    assert_eq!(f.to_wire(), four_process().to_wire());
    assert!(quorumlace_core::league::is_league(f.all(), &f).unwrap().is_league());
}

#[test]
fn b3_holds_for_threshold_and_single() {
    let u = Universe::numbered(4).unwrap();
    let singles: Vec<ProcSet> = u.pids().map(ProcSet::singleton).collect();
    let a = AsymmetricSystem::new(u, vec![singles; 4]).unwrap();
    assert!(a.b3_check().holds);
    let outcome = b3_league_harness(&a).unwrap();
    assert!(outcome.implication_holds());

    let one = AsymmetricSystem::new(Universe::numbered(1).unwrap(), vec![vec![]]).unwrap();
    assert!(one.b3_check().holds);
}

#[test]
fn guild_of_separation_example() {
    let a = asymmetric_four();
    let u = &a.universe;
    let g = guild_and_wise(&a, u.set(["p1", "p4"]).unwrap());
    assert_eq!(g.wise, u.set(["p2", "p3"]).unwrap());
    assert_eq!(g.guild, u.set(["p2", "p3"]).unwrap());
    assert_eq!(g.naive, ProcSet::EMPTY);

    let none = guild_and_wise(&a, ProcSet::EMPTY);
    assert_eq!(none.wise, u.all());
}

#[test]
fn fbas_derivation() {
    let u = Universe::numbered(3).unwrap();
    let all = u.all();
    let s = |ids: &[&str]| u.set(ids).unwrap();
    let fb = FbasSystem {
        universe: u.clone(),
        known: vec![all; 3],
        slices: vec![vec![s(&["p1", "p2"])], vec![all], vec![s(&["p2", "p3"]), s(&["p1", "p3"])]],
    };
    let f = fb.fbas_derive().unwrap();
    assert_eq!(f.get(f.pid("p1").unwrap()).fail_prone(), &[s(&["p3"])]);
    assert_eq!(f.get(f.pid("p2").unwrap()).fail_prone(), &[ProcSet::EMPTY]);

    let bad =
        FbasSystem { universe: u.clone(), known: vec![all; 3], slices: vec![vec![s(&["p2"])], vec![all], vec![all]] };
    assert!(matches!(bad.fbas_derive(), Err(Error::InvalidInput(_))));
}

#[test]
fn fbas_round_trip_of_four_process_slices() {
    let f = four_process();
    let fb = FbasSystem {
        universe: f.universe().clone(),
        known: f.configs().iter().map(|c| c.trusted()).collect(),
        slices: f.configs().iter().map(slices_of).collect(),
    };
    assert_eq!(fb.fbas_derive().unwrap().to_wire(), f.to_wire());
}

#[test]
fn intact_sets() {
    let f = four_process();
    let faulty = f.set(["p1", "p4"]).unwrap();
    let v = intact_check(f.set(["p2", "p3"]).unwrap(), &f, faulty).unwrap();
    assert!(v.holds && !v.degenerate);

    let empty = intact_check(ProcSet::EMPTY, &f, faulty).unwrap();
    assert!(empty.holds && empty.degenerate);

    assert!(matches!(intact_check(f.all(), &f, faulty), Err(Error::Contract(_))));

    let d = disjoint_pairs();
    let split = intact_check(d.all(), &d, ProcSet::EMPTY).unwrap();
    assert!(!split.holds);
    assert!(matches!(split.witness, Some(IntactWitness::DisjointInside { .. })));
}

#[test]
fn strong_consistency_implies_intact() {
    let f = four_process();
    for (_, strong, intact) in strong_consistency_harness(f.all(), &f).unwrap() {
        assert!(!strong || intact);
    }
}

#[test]
fn consensus_clusters() {
    let f = four_process();
    let faulty = f.set(["p1", "p4"]).unwrap();
    assert!(consensus_cluster_check(f.set(["p2", "p3"]).unwrap(), &f, faulty).unwrap().holds());
    assert!(consensus_cluster_check(f.all(), &f, ProcSet::EMPTY).unwrap().holds());
    assert!(consensus_cluster_check(single().all(), &single(), ProcSet::EMPTY).unwrap().holds());

    let d = disjoint_pairs();
    assert!(matches!(consensus_cluster_check(d.all(), &d, ProcSet::EMPTY).unwrap(), ClusterVerdict::Disjoint { .. }));
}

#[test]
fn full_view_quorums_are_pbqs_quorums() {
    let f = four_process();
    let p2 = f.pid("p2").unwrap();
    assert!(pbqs_quorum_check(f.set(["p2", "p3"]).unwrap(), p2, &f));
    assert!(!pbqs_quorum_check(f.set(["p1", "p2"]).unwrap(), f.pid("p1").unwrap(), &f));
    let full = View::full(&f);
    for p in f.all().iter() {
        for q in quorums(p, &full, false).unwrap() {
            assert!(pbqs_quorum_check(q, p, &f));
        }
    }
}

#[test]
fn embedding_of_uniform_asymmetric_matches_symmetric() {
    let sym = threshold(4);
    let asym = AsymmetricSystem::new(sym.universe.clone(), vec![sym.fail_prone.clone(); 4]).unwrap();
    let (a, b): (Pfps, Pfps) = (asym.g_embed(), sym.f_embed());
    assert_eq!(a.to_wire(), b.to_wire());
}
