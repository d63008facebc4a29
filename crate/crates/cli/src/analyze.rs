use std::path::PathBuf;

use anyhow::{bail, Result};
use serde_json::{json, Value as Json};

use quorumlace_core::capacity::{capacity_bound, DEFAULT_CAPACITY};
use quorumlace_core::files::ConfigFile;
use quorumlace_core::league::LeagueReport;
use quorumlace_core::model::{quorums, slices_of, survivor_sets};
use quorumlace_core::{LeagueAnalyzer, Pfps, ProcSet, View};

use crate::report::{family_json, per_process, set_json, Report};

#[derive(clap::Args)]
pub struct Args {
    /// Configuration file.
    config: PathBuf,
    /// League to check: comma-separated process ids, or `all-maximal`.
    /// Defaults to the file's league, if any.
    #[arg(long)]
    league: Option<String>,
    /// Artifacts to print: any of slices, survivors, quorums, tolerated.
    #[arg(long, value_delimiter = ',')]
    show: Vec<Show>,
    /// Exhaustive-search bound (overrides QUORUMLACE_CAPACITY).
    #[arg(long)]
    capacity: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Show {
    Slices,
    Survivors,
    Quorums,
    Tolerated,
}

enum LeagueRequest {
    Set(ProcSet),
    AllMaximal,
}

pub fn run(args: Args) -> Result<Report> {
    let file = ConfigFile::parse(&crate::read(&args.config)?)?;
    let f = file.pfps()?;
    let u = f.universe().clone();
    let capacity = args.capacity.unwrap_or_else(capacity_bound);
    if capacity > DEFAULT_CAPACITY {
        eprintln!("warning: capacity {capacity} above {DEFAULT_CAPACITY}; exhaustive search grows as 2^n");
    }
    let analyzer = LeagueAnalyzer::new(&f).with_capacity(capacity);
    let request = match args.league.as_deref() {
        Some("all-maximal") => Some(LeagueRequest::AllMaximal),
        Some(ids) => Some(LeagueRequest::Set(f.set(ids.split(',').map(str::trim))?)),
        None => file.league(&f)?.map(LeagueRequest::Set),
    };

    let mut report = Report::new("analyze", true);
    report.set("processes", json!(u.names(f.all())));
    let full = View::full(&f);
    for show in &args.show {
        match show {
            Show::Slices => {
                report.line("slices:");
                for p in u.pids() {
                    report.line(format!("  {}: {}", u.id(p), u.show_family(&slices_of(f.get(p)))));
                }
                report.set("slices", per_process(&u, |p| family_json(&u, &slices_of(f.get(p)))));
            }
            Show::Survivors => {
                report.line("survivor sets:");
                let mut all = Vec::new();
                for p in u.pids() {
                    let s = survivor_sets(p, &f, false)?;
                    report.line(format!("  {}: {}", u.id(p), u.show_family(&s)));
                    all.push(s);
                }
                report.set("survivors", per_process(&u, |p| family_json(&u, &all[p.index()])));
            }
            Show::Quorums => {
                report.line("minimal quorums (full view):");
                let mut all = Vec::new();
                for p in u.pids() {
                    let q = quorums(p, &full, true)?;
                    report.line(format!("  {}: {}", u.id(p), u.show_family(&q)));
                    all.push(q);
                }
                report.set("quorums", per_process(&u, |p| family_json(&u, &all[p.index()])));
            }
            Show::Tolerated => {
                let league = match request {
                    Some(LeagueRequest::Set(league)) => league,
                    _ => f.all(),
                };
                let tolerated = analyzer.tolerated_sets(league)?;
                report.line(format!("tolerated by {}: {}", u.show(league), u.show_family(&tolerated)));
                report.set("tolerated", json!({ "league": set_json(&u, league), "sets": family_json(&u, &tolerated) }));
            }
        }
    }

    match request {
        Some(LeagueRequest::Set(league)) => {
            if league.is_empty() {
                bail!("league must not be empty");
            }
            let r = analyzer.is_league(league)?;
            report.line(format!("league {}: {}", u.show(league), if r.is_league() { "yes" } else { "no" }));
            describe(&mut report, &f, &r);
            report.set("league", league_json(&f, &r));
            if !r.is_league() {
                report.fail();
            }
        }
        Some(LeagueRequest::AllMaximal) => {
            let leagues = analyzer.find_maximal_leagues()?;
            report.line(format!("maximal leagues: {}", u.show_family(&leagues)));
            report.set("maximal_leagues", family_json(&u, &leagues));
        }
        None => {}
    }
    Ok(report)
}

fn describe(report: &mut Report, f: &Pfps, r: &LeagueReport) {
    let u = f.universe();
    report.line(format!("  tolerated: {}", u.show_family(&r.tolerated)));
    if let Some(c) = &r.consistency {
        report.line(format!(
            "  consistency fails for T={}: {} of {} and {} of {} meet only inside T",
            u.show(c.tolerated),
            u.show(c.sets.0),
            u.id(c.roots.0),
            u.show(c.sets.1),
            u.id(c.roots.1)
        ));
    }
    if let Some(a) = &r.availability {
        report.line(format!(
            "  availability fails for T={}: {} has no quorum inside the surviving league",
            u.show(a.tolerated),
            u.id(a.process)
        ));
    }
}

fn league_json(f: &Pfps, r: &LeagueReport) -> Json {
    let u = f.universe();
    json!({
        "candidate": set_json(u, r.candidate),
        "is_league": r.is_league(),
        "tolerated": family_json(u, &r.tolerated),
        "consistency": r.consistency.as_ref().map(|c| json!({
            "tolerated": set_json(u, c.tolerated),
            "roots": [u.id(c.roots.0).to_string(), u.id(c.roots.1).to_string()],
            "sets": [set_json(u, c.sets.0), set_json(u, c.sets.1)],
        })),
        "availability": r.availability.as_ref().map(|a| json!({
            "tolerated": set_json(u, a.tolerated),
            "process": u.id(a.process).to_string(),
        })),
    })
}
