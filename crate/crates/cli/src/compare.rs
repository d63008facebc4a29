use std::path::PathBuf;

use anyhow::{bail, Result};
use serde_json::json;

use quorumlace_core::bridges::{
    b3_league_harness, consensus_cluster_check, guild_is_league_harness, guild_tolerance_harness, intact_check,
    q3_league_harness, ClusterVerdict, IntactWitness,
};
use quorumlace_core::files::ModelFile;
use quorumlace_core::{Pid, Universe};

use crate::report::{set_json, Report};

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Check {
    /// Q3 on a symmetric model.
    Q3,
    /// B3 on an asymmetric model.
    B3,
    /// Q3 agrees with the embedded universe being a league (symmetric).
    Thm1,
    /// B3 with a tolerated set implies the embedded universe is a league (asymmetric).
    Thm2,
    /// The maximal guild for `faulty` is a league and equals the tolerating set (asymmetric).
    Guild,
    /// `set` is intact given `faulty` (fbas or pfps).
    Intact,
    /// `set` is a consensus cluster given `faulty` (pbqs, fbas or pfps).
    Cluster,
}

#[derive(clap::Args)]
pub struct Args {
    /// Model file with a "model" discriminator.
    model: PathBuf,
    #[arg(long, value_enum)]
    check: Check,
}

fn pair(u: &Universe, (a, b): (Pid, Pid)) -> serde_json::Value {
    json!([u.id(a).to_string(), u.id(b).to_string()])
}

pub fn run(args: Args) -> Result<Report> {
    let model = ModelFile::parse(&crate::read(&args.model)?)?;
    let kind = model.kind();
    let mismatch = |wanted: &str| anyhow::anyhow!("this check needs a model of kind {wanted}, the file holds {kind}");
    let mut report = Report::new("compare", true);
    report.set("model", json!(kind));
    match args.check {
        Check::Q3 | Check::Thm1 => {
            let s = model.symmetric().map_err(|_| mismatch("symmetric"))?;
            let u = &s.universe;
            let v = s.q3_check();
            report.set("q3", json!(v.holds));
            report.line(format!("Q3: {}", v.holds));
            if let Some(w) = v.witness {
                report.line(format!("  covering sets: {}", u.show_family(&w)));
                report.set("witness", json!(w.iter().map(|s| u.names(*s)).collect::<Vec<_>>()));
            }
            if args.check == Check::Q3 {
                report.set("check", json!("q3"));
                if !v.holds {
                    report.fail();
                }
            } else {
                let o = q3_league_harness(&s)?;
                report.set("check", json!("thm1"));
                report.set("universe_is_league", json!(o.universe_is_league));
                report.set("agreement", json!(o.agree()));
                report.line(format!("universe is a league: {}", o.universe_is_league));
                report.line(format!("agreement: {}", o.agree()));
                if !o.agree() {
                    report.fail();
                }
            }
        }
        Check::B3 | Check::Thm2 => {
            let (a, _) = model.asymmetric().map_err(|_| mismatch("asymmetric"))?;
            let u = &a.universe;
            let v = a.b3_check();
            report.set("b3", json!(v.holds));
            report.line(format!("B3: {}", v.holds));
            if let Some(w) = &v.witness {
                report.line(format!(
                    "  {} fears {}, {} fears {}, both fear {}: together they cover everyone",
                    u.id(w.processes.0),
                    u.show(w.first),
                    u.id(w.processes.1),
                    u.show(w.second),
                    u.show(w.shared)
                ));
                report.set(
                    "witness",
                    json!({
                        "processes": pair(u, w.processes),
                        "first": set_json(u, w.first),
                        "second": set_json(u, w.second),
                        "shared": set_json(u, w.shared),
                    }),
                );
            }
            if args.check == Check::B3 {
                report.set("check", json!("b3"));
                if !v.holds {
                    report.fail();
                }
            } else {
                let o = b3_league_harness(&a)?;
                report.set("check", json!("thm2"));
                report.set("universe_is_league", json!(o.universe_is_league));
                report.set("tolerates_some", json!(o.tolerates_some));
                report.set("survivors_form_guilds", json!(o.survivors_form_guilds));
                report.set("implication_holds", json!(o.implication_holds()));
                report.line(format!("universe is a league: {}", o.universe_is_league));
                report.line(format!("survivors form the maximal guild: {}", o.survivors_form_guilds));
                report.line(format!("implication holds: {}", o.implication_holds()));
                if !o.implication_holds() {
                    report.fail();
                }
            }
        }
        Check::Guild => {
            let (a, faulty) = model.asymmetric().map_err(|_| mismatch("asymmetric"))?;
            let u = &a.universe;
            let g = a.guild_and_wise(faulty);
            let (guild, tolerating) = guild_tolerance_harness(&a, faulty);
            let league = guild_is_league_harness(&a, faulty)?;
            report.set("check", json!("guild"));
            report.set("faulty", set_json(u, faulty));
            report.set("wise", set_json(u, g.wise));
            report.set("naive", set_json(u, g.naive));
            report.set("guild", set_json(u, guild));
            report.set("tolerating", set_json(u, tolerating));
            report.set("guild_is_league", json!(league));
            report.line(format!("wise {}, naive {}, guild {}", u.show(g.wise), u.show(g.naive), u.show(guild)));
            report.line(format!("tolerating processes {}", u.show(tolerating)));
            report.line(format!(
                "guild is a league: {}",
                league.map_or("n/a (empty guild)".to_string(), |b| b.to_string())
            ));
            if league == Some(false) || guild != tolerating {
                report.fail();
            }
        }
        Check::Intact => {
            if !matches!(model, ModelFile::Fbas { .. } | ModelFile::Pfps { .. }) {
                bail!(mismatch("fbas or pfps"));
            }
            let (f, faulty, set) = model.pfps()?;
            let u = f.universe();
            let v = intact_check(set, &f, faulty)?;
            report.set("check", json!("intact"));
            report.set("set", set_json(u, set));
            report.set("faulty", set_json(u, faulty));
            report.set("intact", json!(v.holds));
            report.set("degenerate", json!(v.degenerate));
            report.line(format!(
                "{} intact: {}{}",
                u.show(set),
                v.holds,
                if v.degenerate { " (empty set)" } else { "" }
            ));
            match v.witness {
                Some(IntactWitness::DisjointInside { processes, quorums }) => {
                    report.line(format!(
                        "  quorums {} of {} and {} of {} do not meet inside the set",
                        u.show(quorums.0),
                        u.id(processes.0),
                        u.show(quorums.1),
                        u.id(processes.1)
                    ));
                    report.set(
                        "witness",
                        json!({ "processes": pair(u, processes), "quorums": [set_json(u, quorums.0), set_json(u, quorums.1)] }),
                    );
                }
                Some(IntactWitness::NotQuorum { process }) => {
                    report.line(format!("  the set is not a quorum of {}", u.id(process)));
                    report.set("witness", json!({ "not_quorum_of": u.id(process).to_string() }));
                }
                None => {}
            }
            if !v.holds {
                report.fail();
            }
        }
        Check::Cluster => {
            let (u, set, faulty, verdict) = match &model {
                ModelFile::Pbqs { .. } => {
                    let (sys, faulty, set) = model.pbqs()?;
                    let v = sys.cluster_check(set, faulty);
                    (sys.universe, set, faulty, v)
                }
                ModelFile::Fbas { .. } | ModelFile::Pfps { .. } => {
                    let (f, faulty, set) = model.pfps()?;
                    let v = consensus_cluster_check(set, &f, faulty)?;
                    (f.universe().clone(), set, faulty, v)
                }
                _ => bail!(mismatch("pbqs, fbas or pfps")),
            };
            report.set("check", json!("cluster"));
            report.set("set", set_json(&u, set));
            report.set("faulty", set_json(&u, faulty));
            report.set("cluster", json!(verdict.holds()));
            report.line(format!("{} is a consensus cluster: {}", u.show(set), verdict.holds()));
            match verdict {
                ClusterVerdict::Holds => {}
                ClusterVerdict::Disjoint { processes, quorums } => {
                    report.line(format!(
                        "  quorums {} of {} and {} of {} meet only among faulty processes",
                        u.show(quorums.0),
                        u.id(processes.0),
                        u.show(quorums.1),
                        u.id(processes.1)
                    ));
                    report.set(
                        "witness",
                        json!({ "processes": pair(&u, processes), "quorums": [set_json(&u, quorums.0), set_json(&u, quorums.1)] }),
                    );
                }
                ClusterVerdict::Unavailable { process } => {
                    report.line(format!("  {} has no quorum inside the set", u.id(process)));
                    report.set("witness", json!({ "unavailable": u.id(process).to_string() }));
                }
            }
            if !verdict.holds() {
                report.fail();
            }
        }
    }
    Ok(report)
}
