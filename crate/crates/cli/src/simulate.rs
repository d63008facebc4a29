use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value as Json};

use quorumlace_core::files::{parse_faulty, parse_script, ConfigFile, ScenarioFile};
use quorumlace_core::protocols::Value;
use quorumlace_core::simnet::{
    check, run as run_scenario, sweep, Outcome, Output, Protocol, Scenario, Scheduling, SweepPlan, TraceEvent,
};
use quorumlace_core::{Mutation, Pid, Universe};

use crate::report::{set_json, Report};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ProtocolKind {
    Broadcast,
    Register,
}

#[derive(clap::Args)]
pub struct Args {
    /// Configuration file, or a scenario file (which then fixes everything
    /// except seed, sweep, trace and force).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "broadcast")]
    protocol: ProtocolKind,
    /// Broadcast sender (default: first process).
    #[arg(long)]
    sender: Option<String>,
    /// Broadcast value, also the base for equivocation values.
    #[arg(long, default_value = "v")]
    value: String,
    /// Register writer (default: first process).
    #[arg(long)]
    writer: Option<String>,
    /// Register script, e.g. `write:a,write:b|read:p3` (`,` sequences, `|` runs concurrently).
    #[arg(long)]
    script: Option<String>,
    /// League, comma-separated (default: the file's league, else everyone).
    #[arg(long)]
    league: Option<String>,
    /// Faulty processes, e.g. `p1:lie-empty,p4:equivocate,p3:crash@5`.
    /// Behaviours: honest, mute, lie-empty, worst-case, crash@N, equivocate.
    #[arg(long, default_value = "")]
    faulty: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run this many seeds starting at --seed.
    #[arg(long)]
    sweep: Option<u64>,
    /// Trace output: a JSON-lines file for one run, a directory of violating runs for a sweep.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Check runs whose faulty set the league does not tolerate.
    #[arg(long)]
    force: bool,
    /// `random` or `delay:PROCESS`.
    #[arg(long, default_value = "random")]
    schedule: String,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Run with the ANY clause disabled.
    #[arg(long)]
    disable_any: bool,
}

fn build(args: &Args) -> Result<Scenario> {
    let text = crate::read(&args.input)?;
    let probe: Json = serde_json::from_str(&text).context("input is not JSON")?;
    if probe.get("protocol").is_some() {
        let mut s = ScenarioFile::parse(&text)?.scenario()?;
        s.seed = args.seed;
        return Ok(s);
    }
    let file = ConfigFile::parse(&text)?;
    let f = file.pfps()?;
    let u = f.universe().clone();
    let first = || u.pids().next().expect("universe is not empty");
    let pick = |id: &Option<String>| -> Result<Pid> { id.as_deref().map_or(Ok(first()), |i| Ok(u.pid(i)?)) };
    let league = match &args.league {
        Some(ids) => f.set(ids.split(',').map(str::trim))?,
        None => file.league(&f)?.unwrap_or(f.all()),
    };
    let protocol = match args.protocol {
        ProtocolKind::Broadcast => {
            Protocol::Broadcast { sender: pick(&args.sender)?, value: Value::from(args.value.as_str()) }
        }
        ProtocolKind::Register => {
            let writer = pick(&args.writer)?;
            let default = format!("write:{},read:{}", args.value, u.id(writer));
            let script = parse_script(args.script.as_deref().unwrap_or(&default), &u, writer)?;
            Protocol::Register { writer, script }
        }
    };
    let mut s = Scenario::new(f, league, protocol).with_seed(args.seed).with_faulty(parse_faulty(
        &args.faulty,
        &u,
        &args.value,
    )?);
    s.scheduling = match args.schedule.split_once(':') {
        None if args.schedule == "random" => Scheduling::Random,
        Some(("delay", p)) => Scheduling::Delay(u.pid(p)?),
        _ => bail!("--schedule expects random or delay:PROCESS"),
    };
    if let Some(m) = args.max_steps {
        s.max_steps = m;
    }
    if args.disable_any {
        s.mutation = Some(Mutation::DisableAnyClause);
    }
    s.validate()?;
    Ok(s)
}

pub fn run(args: Args) -> Result<Report> {
    let scenario = build(&args)?;
    match args.sweep {
        None => single(&args, &scenario),
        Some(k) => many(&args, scenario, k),
    }
}

fn output_json(u: &Universe, process: Pid, o: &Output) -> Json {
    let value = |v: &Option<Value>| v.as_ref().map(|v| String::from_utf8_lossy(&v.0).into_owned());
    let (kind, index, v) = match o {
        Output::Deliver(v) => ("deliver", None, value(&Some(v.clone()))),
        Output::WriteReturn { index } => ("write-return", Some(*index), None),
        Output::ReadReturn { index, value: v } => ("read-return", Some(*index), value(v)),
    };
    json!({ "process": u.id(process).to_string(), "output": kind, "step": index, "value": v })
}

fn single(args: &Args, s: &Scenario) -> Result<Report> {
    let u = s.pfps.universe().clone();
    let trace = run_scenario(s)?;
    if let Some(path) = &args.trace {
        std::fs::write(path, trace.to_jsonl(&u)).with_context(|| format!("writing {}", path.display()))?;
    }
    let verdict = check(&trace, s, args.force);
    let mut report = Report::new("simulate", verdict.passed());
    report.set("league", set_json(&u, s.league));
    report.set("faulty", set_json(&u, s.faulty_set()));
    report.set("seed", json!(s.seed));
    report.set("tolerated", json!(verdict.tolerated));
    report.set("quiescent", json!(trace.quiescent));
    report.set("truncated", json!(trace.truncated));
    report.set("deliveries", json!(trace.deliveries));
    let outputs: Vec<Json> = trace
        .events()
        .filter_map(|e| match e {
            TraceEvent::Output { process, output } => Some(output_json(&u, *process, output)),
            _ => None,
        })
        .collect();
    report.line(format!("seed {}: {} messages delivered, {} outputs", s.seed, trace.deliveries, outputs.len()));
    for o in &outputs {
        let value = if o["value"].is_null() { String::new() } else { format!(" {}", o["value"]) };
        report.line(format!("  {} {}{value}", o["process"].as_str().unwrap_or(""), o["output"].as_str().unwrap_or("")));
    }
    report.set("outputs", Json::Array(outputs));
    if !verdict.tolerated {
        let note = if args.force {
            "faulty set not tolerated; checked anyway (--force)"
        } else {
            "faulty set not tolerated; checks skipped"
        };
        report.line(note);
    }
    let mut props = BTreeMap::new();
    for p in &verdict.properties {
        let (status, detail) = match &p.outcome {
            Outcome::Pass => ("pass", None),
            Outcome::Fail(d) => ("fail", Some(d.clone())),
            Outcome::Skipped(d) => ("skipped", Some(d.clone())),
        };
        report.line(format!(
            "  {}: {status}{}",
            p.name,
            detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        ));
        props.insert(p.name.to_string(), json!({ "status": status, "detail": detail }));
    }
    report.set("properties", json!(props));
    Ok(report)
}

fn many(args: &Args, template: Scenario, k: u64) -> Result<Report> {
    let u = template.pfps.universe().clone();
    let adversary = template.faulty.clone();
    let plan = SweepPlan {
        template: template.clone(),
        seeds: (args.seed..args.seed + k).collect(),
        adversaries: vec![adversary],
        force: args.force,
    };
    let sweep_report = sweep(&plan)?;
    if let Some(dir) = &args.trace {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let seeds: std::collections::BTreeSet<u64> = sweep_report.violations.iter().map(|v| v.seed).collect();
        for seed in seeds {
            let s = template.clone().with_seed(seed);
            std::fs::write(dir.join(format!("seed-{seed}.jsonl")), run_scenario(&s)?.to_jsonl(&u))?;
        }
    }
    let mut report = Report::new("simulate", sweep_report.passed());
    report.set("league", set_json(&u, template.league));
    report.set("faulty", set_json(&u, template.faulty_set()));
    report.set("seeds", json!({ "first": args.seed, "count": k }));
    report.set("runs", json!(sweep_report.runs));
    report.set("skipped_untolerated", json!(sweep_report.skipped_untolerated));
    report.set("truncated", json!(sweep_report.truncated));
    report.set(
        "violations",
        Json::Array(
            sweep_report
                .violations
                .iter()
                .map(|v| json!({ "seed": v.seed, "property": v.property, "detail": v.detail }))
                .collect(),
        ),
    );
    report.line(format!(
        "{} runs, {} skipped as untolerated, {} truncated, {} violations",
        sweep_report.runs,
        sweep_report.skipped_untolerated,
        sweep_report.truncated,
        sweep_report.violations.len()
    ));
    for v in sweep_report.violations.iter().take(10) {
        report.line(format!("  seed {} {}: {}", v.seed, v.property, v.detail));
    }
    Ok(report)
}
