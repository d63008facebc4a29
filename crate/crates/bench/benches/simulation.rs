use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, Criterion};

use quorumlace_core::files::{default_equivocation, parse_script};
use quorumlace_core::fixtures::four_process;
use quorumlace_core::protocols::Value;
use quorumlace_core::simnet::{run, sweep, Protocol, Scenario, SweepPlan};
use quorumlace_core::Pid;

fn broadcast() -> Scenario {
    let f = four_process();
    let league = f.all();
    Scenario::new(f, league, Protocol::Broadcast { sender: Pid(1), value: Value::from("v") })
}

fn register() -> Scenario {
    let f = four_process();
    let script = parse_script("write:a,write:b|read:p3,read:p3", f.universe(), Pid(1)).unwrap();
    let league = f.all();
    Scenario::new(f, league, Protocol::Register { writer: Pid(1), script })
}

fn single_runs(c: &mut Criterion) {
    let b = broadcast();
    c.bench_function("run/broadcast", |bench| bench.iter(|| run(&b).unwrap()));
    let r = register();
    c.bench_function("run/register", |bench| bench.iter(|| run(&r).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let template = broadcast();
    let equivocate = default_equivocation(template.pfps.universe(), "v");
    let plan = SweepPlan {
        template,
        seeds: (0..100).collect(),
        adversaries: vec![BTreeMap::from([(Pid(3), equivocate)])],
        force: false,
    };
    c.bench_function("sweep/broadcast-100-seeds", |bench| bench.iter(|| sweep(&plan).unwrap()));
}

criterion_group!(benches, single_runs, sweeps);
criterion_main!(benches);
