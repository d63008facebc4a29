use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::json;

use quorumlace_core::files::ConfigFile;
use quorumlace_core::fuzz::{run_fuzz, FuzzOptions, Property, ALL_PROPERTIES};
use quorumlace_core::Mutation;

use crate::report::Report;

const ORACLE_BOUND: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Mutant {
    /// Consistency check that keeps tolerated processes in the intersection.
    ConsistencyKeepsTolerated,
}

#[derive(clap::Args)]
pub struct Args {
    /// Largest universe; instance sizes are drawn from 2 up to this.
    #[arg(long, default_value_t = 5)]
    processes: usize,
    #[arg(long, default_value_t = 200)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated property names (default: all).
    #[arg(long, value_delimiter = ',')]
    properties: Vec<String>,
    /// Check a deliberately broken analyzer instead.
    #[arg(long, value_enum)]
    mutant: Option<Mutant>,
    /// Directory for counterexample configurations.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<Report> {
    if args.processes > ORACLE_BOUND {
        eprintln!(
            "warning: {} processes exceeds the oracle bound {ORACLE_BOUND}; the oracle is exponential",
            args.processes
        );
    }
    let mut opts = FuzzOptions::new(args.processes, args.instances, args.seed);
    if !args.properties.is_empty() {
        opts.properties = args.properties.iter().map(|p| p.trim().parse::<Property>()).collect::<Result<_, _>>()?;
    }
    opts.mutation = args.mutant.map(|Mutant::ConsistencyKeepsTolerated| Mutation::ConsistencyKeepsTolerated);
    let fuzz = run_fuzz(&opts)?;

    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for v in &fuzz.violations {
            let path = dir.join(format!("instance-{}-{}.json", v.instance, v.property));
            std::fs::write(&path, ConfigFile::from_pfps(&v.system, None).to_json())
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }

    let mut report = Report::new("fuzz", fuzz.passed());
    report.set("instances", json!(fuzz.instances));
    report.set("seed", json!(args.seed));
    report.set("processes", json!(args.processes));
    report.set(
        "checks",
        json!(fuzz.checks.iter().map(|(p, n)| (p.name(), *n)).collect::<std::collections::BTreeMap<_, _>>()),
    );
    report.set(
        "violations",
        json!(fuzz
            .violations
            .iter()
            .map(|v| json!({ "instance": v.instance, "property": v.property.name(), "detail": v.detail, "system": v.system.to_wire() }))
            .collect::<Vec<_>>()),
    );
    report.line(format!("{} instances, seed {}", fuzz.instances, args.seed));
    for p in ALL_PROPERTIES {
        if let Some(n) = fuzz.checks.get(&p) {
            let bad = fuzz.violations.iter().filter(|v| v.property == p).count();
            report.line(format!("  {:<16} {n:>7} checks, {bad} violations", p.name()));
        }
    }
    for v in fuzz.violations.iter().take(10) {
        report.line(format!("  instance {} {}: {}", v.instance, v.property, v.detail));
    }
    Ok(report)
}
