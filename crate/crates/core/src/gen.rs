//! Random instance generators for fuzzing and sweeps.

use rand::Rng;

use crate::bridges::{AsymmetricSystem, SymmetricSystem};
use crate::model::{Configuration, Pfps, View};
use crate::procset::{Pid, ProcSet, Universe};

fn random_subset<R: Rng>(rng: &mut R, of: ProcSet, p: f64) -> ProcSet {
    of.iter().filter(|_| rng.gen_bool(p)).collect()
}

/// Each process trusts itself and a random subset of the others, and fears
/// one to three random subsets of its trusted set.
pub fn random_pfps<R: Rng>(rng: &mut R, n: usize) -> Pfps {
    let universe = Universe::numbered(n).expect("n is between 1 and 64");
    let all = universe.all();
    let configs = universe
        .pids()
        .map(|p| {
            let reach = rng.gen_range(0.4..0.95);
            let trusted = random_subset(rng, all, reach).with(p);
            let k = rng.gen_range(1..=3);
            let density = rng.gen_range(0.1..0.45);
            let fail_prone: Vec<ProcSet> = (0..k).map(|_| random_subset(rng, trusted, density)).collect();
            Configuration::normalize(trusted, fail_prone).expect("trusted set contains its owner")
        })
        .collect();
    Pfps::new(universe, configs).expect("sizes match")
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> SymmetricSystem {
    let universe = Universe::numbered(n).expect("n is between 1 and 64");
    let all = universe.all();
    let k = rng.gen_range(1..=4);
    let density = rng.gen_range(0.15..0.45);
    let fail_prone = (0..k).map(|_| random_subset(rng, all, density)).collect();
    SymmetricSystem::new(universe, fail_prone)
}

pub fn random_asymmetric<R: Rng>(rng: &mut R, n: usize) -> AsymmetricSystem {
    let universe = Universe::numbered(n).expect("n is between 1 and 64");
    let all = universe.all();
    let density = rng.gen_range(0.1..0.4);
    let fail_prone = universe
        .pids()
        .map(|_| {
            let k = rng.gen_range(1..=3);
            (0..k).map(|_| random_subset(rng, all, density)).collect()
        })
        .collect();
    AsymmetricSystem::new(universe, fail_prone).expect("sizes match")
}

/// A view resilient to `tolerated` in which `root` is known: processes
/// outside `tolerated` are unknown or truthful, members of `tolerated` are
/// unknown, truthful, empty or trusting everyone.
pub fn random_resilient_view<R: Rng>(rng: &mut R, f: &Pfps, tolerated: ProcSet, root: Pid) -> View {
    let mut entries: Vec<Option<Configuration>> = Vec::with_capacity(f.len());
    for p in f.universe().pids() {
        let choice = rng.gen_range(0..if tolerated.contains(p) { 4 } else { 2 });
        entries.push(match choice {
            0 => None,
            1 => Some(f.get(p).clone()),
            2 => Some(Configuration::empty()),
            _ => Some(Configuration::fully_trusting(f.all()).expect("universe is non-empty")),
        });
    }
    entries[root.index()] = Some(f.get(root).clone());
    View::from_entries(entries)
}
