use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::tolerated_by;
use crate::procset::{Pid, ProcSet};
use crate::protocols::{Payload, Value};

use super::scenario::{Op, Protocol, Scenario};
use super::trace::{Invocation, Output, Trace, TraceEvent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// The league tolerates the faulty set of the scenario.
    pub tolerated: bool,
    pub properties: Vec<PropertyResult>,
}

impl Verdict {
    pub fn violations(&self) -> impl Iterator<Item = (&'static str, &str)> {
        self.properties.iter().filter_map(|p| match &p.outcome {
            Outcome::Fail(d) => Some((p.name, d.as_str())),
            _ => None,
        })
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.tolerated {
            writeln!(f, "faulty set is not tolerated by the league")?;
        }
        for p in &self.properties {
            match &p.outcome {
                Outcome::Pass => writeln!(f, "{}: pass", p.name)?,
                Outcome::Fail(d) => writeln!(f, "{}: FAIL ({d})", p.name)?,
                Outcome::Skipped(d) => writeln!(f, "{}: skipped ({d})", p.name)?,
            }
        }
        Ok(())
    }
}

fn prop(name: &'static str, failure: Option<String>) -> PropertyResult {
    PropertyResult { name, outcome: failure.map_or(Outcome::Pass, Outcome::Fail) }
}

fn skipped(name: &'static str, why: &str) -> PropertyResult {
    PropertyResult { name, outcome: Outcome::Skipped(why.to_string()) }
}

/// Checks a trace against the protocol's properties. When the faulty set is
/// not tolerated the verdict is empty unless `force` is set.
pub fn check(trace: &Trace, scenario: &Scenario, force: bool) -> Verdict {
    match scenario.protocol {
        Protocol::Broadcast { .. } => check_broadcast(trace, scenario, force),
        Protocol::Register { .. } => check_register(trace, scenario, force),
    }
}

fn precondition(scenario: &Scenario) -> (bool, ProcSet, ProcSet) {
    let faulty = scenario.faulty_set();
    let tolerated = tolerated_by(scenario.league, &scenario.pfps, faulty);
    (tolerated, faulty, scenario.league - faulty)
}

/// Validity, integrity, consistency and totality of reliable broadcast for
/// the correct league members, plus two protocol-level obligations: a
/// correct process blocked by READYs for a value other than its own sends
/// ANY, and with a correct sender the READY senders end up covering the
/// correct league members.
pub fn check_broadcast(trace: &Trace, scenario: &Scenario, force: bool) -> Verdict {
    let (tolerated, faulty, correct_league) = precondition(scenario);
    if !tolerated && !force {
        return Verdict { tolerated, properties: Vec::new() };
    }
    let Protocol::Broadcast { sender, .. } = &scenario.protocol else {
        return Verdict { tolerated, properties: Vec::new() };
    };
    let sender_correct = !faulty.contains(*sender);
    let f = &scenario.pfps;
    let u = f.universe();

    let mut broadcast: Option<Value> = None;
    let mut delivered: BTreeMap<Pid, Vec<Value>> = BTreeMap::new();
    let mut ready_senders: BTreeMap<Value, ProcSet> = BTreeMap::new();
    let mut own_ready: BTreeMap<Pid, Value> = BTreeMap::new();
    let mut sent_any = ProcSet::EMPTY;
    let mut readys: BTreeMap<Pid, BTreeMap<Pid, Option<Value>>> = BTreeMap::new();
    for e in trace.events() {
        match e {
            TraceEvent::Invoke { invocation: Invocation::Broadcast(v), .. } => broadcast = Some(v.clone()),
            TraceEvent::Output { process, output: Output::Deliver(v) } => {
                delivered.entry(*process).or_default().push(v.clone())
            }
            TraceEvent::Send { from, message, .. } if message.sender == *from => match &message.payload {
                Payload::Ready { value } if !faulty.contains(*from) => {
                    *ready_senders.entry(value.clone()).or_default() |= ProcSet::singleton(*from);
                    own_ready.entry(*from).or_insert_with(|| value.clone());
                }
                Payload::Any if !faulty.contains(*from) => sent_any.insert(*from),
                _ => {}
            },
            TraceEvent::DeliverMsg { to, message } => {
                let r = readys.entry(*to).or_default();
                match &message.payload {
                    Payload::Ready { value } => {
                        r.entry(message.sender).or_insert_with(|| Some(value.clone()));
                    }
                    Payload::Any => {
                        r.insert(message.sender, None);
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }

    let mut props = Vec::new();
    let name = |p: Pid| u.id(p).to_string();

    let mut integrity = None;
    for (p, vs) in &delivered {
        if faulty.contains(*p) {
            continue;
        }
        let distinct: BTreeSet<&Value> = vs.iter().collect();
        if distinct.len() != vs.len() {
            integrity = Some(format!("{} delivered a value twice", name(*p)));
        }
        if sender_correct && correct_league.contains(*p) {
            if let Some(bad) = vs.iter().find(|v| Some(*v) != broadcast.as_ref()) {
                integrity = Some(format!("{} delivered {bad:?}, which the correct sender never broadcast", name(*p)));
            }
        }
    }
    props.push(prop("integrity", integrity));

    let league_values: BTreeSet<(Pid, &Value)> = delivered
        .iter()
        .filter(|(p, _)| correct_league.contains(**p))
        .flat_map(|(p, vs)| vs.iter().map(move |v| (*p, v)))
        .collect();
    let distinct: BTreeSet<&Value> = league_values.iter().map(|(_, v)| *v).collect();
    props.push(prop(
        "consistency",
        (distinct.len() > 1).then(|| {
            let listed: Vec<String> = league_values.iter().map(|(p, v)| format!("{}:{v:?}", name(*p))).collect();
            format!("league members delivered different values: {}", listed.join(", "))
        }),
    ));

    let delivered_in_league: ProcSet = correct_league.iter().filter(|p| delivered.contains_key(p)).collect();
    if !trace.quiescent {
        for n in ["validity", "totality", "any-obligation", "cascade"] {
            props.push(skipped(n, "run did not reach quiescence"));
        }
        return Verdict { tolerated, properties: props };
    }

    if sender_correct {
        let missing = correct_league - delivered_in_league;
        props.push(prop(
            "validity",
            (!missing.is_empty()).then(|| format!("correct sender, but {} never delivered", u.show(missing))),
        ));
    } else {
        props.push(skipped("validity", "sender is faulty"));
    }

    let missing = correct_league - delivered_in_league;
    props.push(prop(
        "totality",
        (!delivered_in_league.is_empty() && !missing.is_empty())
            .then(|| format!("{} delivered but {} did not", u.show(delivered_in_league), u.show(missing))),
    ));

    let mut obligation = None;
    for p in (f.all() - faulty).iter() {
        let Some(own) = own_ready.get(&p) else { continue };
        let config = f.get(p);
        let mut by_value: BTreeMap<&Value, ProcSet> = BTreeMap::new();
        for (j, v) in readys.get(&p).into_iter().flatten() {
            if let Some(v) = v {
                *by_value.entry(v).or_default() |= ProcSet::singleton(*j);
            }
        }
        let blocked =
            by_value.iter().any(|(v, s)| *v != own && (config.is_degenerate() || config.meets_every_slice(*s)));
        if blocked && !sent_any.contains(p) {
            obligation = Some(format!("{} is blocked by READYs for another value but never sent ANY", name(p)));
            break;
        }
    }
    props.push(prop("any-obligation", obligation));

    match (&broadcast, sender_correct) {
        (Some(v), true) if !delivered_in_league.is_empty() => {
            let covered = ready_senders.get(v).copied().unwrap_or_default();
            let missing = correct_league - covered;
            props.push(prop(
                "cascade",
                (!missing.is_empty()).then(|| format!("{} never sent READY for the broadcast value", u.show(missing))),
            ));
        }
        _ => props.push(skipped("cascade", "needs a correct sender and a league delivery")),
    }
    Verdict { tolerated, properties: props }
}

/// Termination and regular-register validity for the correct league members.
pub fn check_register(trace: &Trace, scenario: &Scenario, force: bool) -> Verdict {
    let (tolerated, faulty, correct_league) = precondition(scenario);
    if !tolerated && !force {
        return Verdict { tolerated, properties: Vec::new() };
    }
    let Protocol::Register { writer, script } = &scenario.protocol else {
        return Verdict { tolerated, properties: Vec::new() };
    };
    let u = scenario.pfps.universe();
    let mut invoked: BTreeMap<usize, u64> = BTreeMap::new();
    let mut returned: BTreeMap<usize, (u64, Option<Option<Value>>)> = BTreeMap::new();
    for r in &trace.records {
        match &r.event {
            TraceEvent::Invoke { invocation: Invocation::Write { index, .. } | Invocation::Read { index }, .. } => {
                invoked.insert(*index, r.step);
            }
            TraceEvent::Output { output: Output::WriteReturn { index }, .. } => {
                returned.insert(*index, (r.step, None));
            }
            TraceEvent::Output { output: Output::ReadReturn { index, value }, .. } => {
                returned.insert(*index, (r.step, Some(value.clone())));
            }
            _ => {}
        }
    }
    let mut props = Vec::new();
    if trace.quiescent {
        let stuck: Vec<String> = invoked
            .keys()
            .filter(|i| correct_league.contains(script[**i].process) && !returned.contains_key(i))
            .map(|i| format!("step {i} at {}", u.id(script[*i].process)))
            .collect();
        props.push(prop("termination", (!stuck.is_empty()).then(|| format!("never returned: {}", stuck.join(", ")))));
    } else {
        props.push(skipped("termination", "run did not reach quiescence"));
    }

    if faulty.contains(*writer) || !scenario.league.contains(*writer) {
        props.push(skipped("validity", "writer is faulty or outside the league"));
        return Verdict { tolerated, properties: props };
    }
    let writes: Vec<(usize, &Value)> = script
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match &s.op {
            Op::Write(v) => Some((i, v)),
            Op::Read => None,
        })
        .collect();
    let mut validity = None;
    for (i, step) in script.iter().enumerate() {
        let (Op::Read, true) = (&step.op, correct_league.contains(step.process)) else { continue };
        let (Some(&start), Some((end, Some(got)))) = (invoked.get(&i), returned.get(&i)) else { continue };
        let mut allowed: BTreeSet<Option<&Value>> = BTreeSet::new();
        let last_complete = writes
            .iter()
            .filter(|(w, _)| returned.get(w).is_some_and(|(e, _)| *e < start))
            .max_by_key(|(w, _)| returned[w].0);
        allowed.insert(last_complete.map(|(_, v)| *v));
        for (w, v) in &writes {
            let began = invoked.get(w).is_some_and(|s| s < end);
            let done_before = returned.get(w).is_some_and(|(e, _)| *e < start);
            if began && !done_before {
                allowed.insert(Some(*v));
            }
        }
        if !allowed.contains(&got.as_ref()) {
            validity = Some(format!("read step {i} at {} returned {got:?}, allowed {allowed:?}", u.id(step.process)));
            break;
        }
    }
    props.push(prop("validity", validity));
    Verdict { tolerated, properties: props }
}
