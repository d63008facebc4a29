//! Small reference systems used by tests, benchmarks and the CLI examples.

use crate::bridges::AsymmetricSystem;
use crate::model::Pfps;
use crate::procset::Universe;

const ALL4: [&str; 4] = ["p1", "p2", "p3", "p4"];

/// Four processes trusting everyone, each with one fail-prone set:
/// p1 fears {p3,p4}, p2 and p3 fear {p1,p4}, p4 fears {p1,p2}.
pub fn four_process() -> Pfps {
    Pfps::builder()
        .process("p1", &ALL4, &[&["p3", "p4"]])
        .process("p2", &ALL4, &[&["p1", "p4"]])
        .process("p3", &ALL4, &[&["p1", "p4"]])
        .process("p4", &ALL4, &[&["p1", "p2"]])
        .build()
        .expect("fixture is well formed")
}

/// A single process trusting only itself.
pub fn single() -> Pfps {
    Pfps::builder().process("p1", &["p1"], &[]).build().expect("fixture is well formed")
}

/// Two pairs, {p1,p2} and {p3,p4}, each trusting only its own pair.
pub fn disjoint_pairs() -> Pfps {
    Pfps::builder()
        .process("p1", &["p1", "p2"], &[])
        .process("p2", &["p1", "p2"], &[])
        .process("p3", &["p3", "p4"], &[])
        .process("p4", &["p3", "p4"], &[])
        .build()
        .expect("fixture is well formed")
}

/// The two pairs plus a bridge p5 whose only slice is {p1,p3} and a
/// self-trusting p6. With p6 sending conflicting values to the pairs, p5
/// readies one value and is then blocked by the other.
pub fn bridged_pairs() -> Pfps {
    Pfps::builder()
        .process("p1", &["p1", "p2"], &[])
        .process("p2", &["p1", "p2"], &[])
        .process("p3", &["p3", "p4"], &[])
        .process("p4", &["p3", "p4"], &[])
        .process("p5", &["p1", "p3"], &[])
        .process("p6", &["p6"], &[])
        .build()
        .expect("fixture is well formed")
}

/// Four processes in the asymmetric model: p1 fears {p3,p4}, p2 and p3
/// fear {p1,p4}, p4 fears {p1,p2}. Fails B3 yet the embedded universe is a league.
pub fn asymmetric_four() -> AsymmetricSystem {
    let u = Universe::numbered(4).expect("fixture is well formed");
    let s = |ids: &[&str]| u.set(ids).expect("fixture is well formed");
    let fail_prone =
        vec![vec![s(&["p3", "p4"])], vec![s(&["p1", "p4"])], vec![s(&["p1", "p4"])], vec![s(&["p1", "p2"])]];
    AsymmetricSystem::new(u, fail_prone).expect("fixture is well formed")
}
