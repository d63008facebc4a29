use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::Configuration;
use crate::mutation::Mutation;
use crate::procset::Pid;
use crate::protocols::{
    write_statement, Action, BroadcastEvent, BroadcastState, Message, MockSignatures, Payload, RegisterEvent,
    RegisterState, SignatureScheme,
};

use super::scenario::{Behavior, Op, Protocol, Scenario, Scheduling};
use super::trace::{Invocation, Output, Trace, TraceEvent, TraceRecord};

enum Node {
    Broadcast(BroadcastState),
    Register(RegisterState),
}

struct Envelope {
    from: Pid,
    to: Pid,
    message: Message,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StepStatus {
    Waiting,
    Running,
    Done,
}

struct Sim<'a> {
    scenario: &'a Scenario,
    scheme: Arc<dyn SignatureScheme>,
    nodes: Vec<Node>,
    in_flight: Vec<Envelope>,
    trace: Trace,
    rng: ChaCha8Rng,
    script_status: Vec<StepStatus>,
    running: Vec<Option<usize>>,
}

/// Runs a scenario to quiescence or until its step budget is exhausted.
pub fn run(scenario: &Scenario) -> Result<Trace> {
    scenario.validate()?;
    let f = &scenario.pfps;
    let n = f.len();
    let scheme: Arc<dyn SignatureScheme> = Arc::new(MockSignatures);
    let nodes = f
        .universe()
        .pids()
        .map(|p| match &scenario.protocol {
            Protocol::Broadcast { sender, .. } => {
                let s = BroadcastState::new(p, f.get(p).clone(), *sender, n);
                Node::Broadcast(if scenario.mutation == Some(Mutation::DisableAnyClause) {
                    s.without_any_clause()
                } else {
                    s
                })
            }
            Protocol::Register { writer, .. } => {
                Node::Register(RegisterState::new(p, f.get(p).clone(), *writer, n, scheme.clone()))
            }
        })
        .collect();
    let script_len = match &scenario.protocol {
        Protocol::Register { script, .. } => script.len(),
        Protocol::Broadcast { .. } => 0,
    };
    let mut sim = Sim {
        scenario,
        scheme,
        nodes,
        in_flight: Vec::new(),
        trace: Trace::default(),
        rng: ChaCha8Rng::seed_from_u64(scenario.seed),
        script_status: vec![StepStatus::Waiting; script_len],
        running: vec![None; n],
    };
    sim.start()?;
    loop {
        if sim.in_flight.is_empty() {
            sim.trace.quiescent = true;
            break;
        }
        if sim.trace.deliveries >= scenario.max_steps {
            sim.trace.truncated = true;
            break;
        }
        let idx = sim.pick();
        let env = sim.in_flight.swap_remove(idx);
        sim.trace.deliveries += 1;
        sim.deliver(env)?;
    }
    Ok(sim.trace)
}

impl<'a> Sim<'a> {
    fn record(&mut self, event: TraceEvent) {
        let step = self.trace.records.len() as u64;
        self.trace.records.push(TraceRecord { step, event });
    }

    fn crashed(&self, p: Pid) -> bool {
        matches!(self.scenario.behavior(p), Behavior::Crash { at_step } if self.trace.deliveries >= *at_step)
    }

    fn pick(&mut self) -> usize {
        if let Scheduling::Delay(target) = self.scenario.scheduling {
            let others: Vec<usize> = self
                .in_flight
                .iter()
                .enumerate()
                .filter(|(_, e)| e.from != target && e.to != target)
                .map(|(i, _)| i)
                .collect();
            if !others.is_empty() {
                return others[self.rng.gen_range(0..others.len())];
            }
        }
        self.rng.gen_range(0..self.in_flight.len())
    }

    fn start(&mut self) -> Result<()> {
        match &self.scenario.protocol {
            Protocol::Broadcast { sender, value } => {
                let (sender, value) = (*sender, value.clone());
                if self.crashed(sender) {
                    return Ok(());
                }
                self.record(TraceEvent::Invoke { process: sender, invocation: Invocation::Broadcast(value.clone()) });
                let actions = match &mut self.nodes[sender.index()] {
                    Node::Broadcast(s) => s.handle(BroadcastEvent::Broadcast(value))?,
                    Node::Register(_) => unreachable!("broadcast scenario builds broadcast nodes"),
                };
                self.apply(sender, actions)
            }
            Protocol::Register { .. } => self.start_ready_steps(),
        }
    }

    fn start_ready_steps(&mut self) -> Result<()> {
        let Protocol::Register { script, .. } = &self.scenario.protocol else { return Ok(()) };
        for (i, step) in script.iter().enumerate() {
            if self.script_status[i] != StepStatus::Waiting
                || self.running[step.process.index()].is_some()
                || self.crashed(step.process)
                || step.after.iter().any(|&d| self.script_status[d] != StepStatus::Done)
            {
                continue;
            }
            let earlier_waiting = script[..i]
                .iter()
                .enumerate()
                .any(|(k, s)| s.process == step.process && self.script_status[k] != StepStatus::Done);
            if earlier_waiting {
                continue;
            }
            self.script_status[i] = StepStatus::Running;
            self.running[step.process.index()] = Some(i);
            let (invocation, event) = match &step.op {
                Op::Write(v) => (Invocation::Write { index: i, value: v.clone() }, RegisterEvent::Write(v.clone())),
                Op::Read => (Invocation::Read { index: i }, RegisterEvent::Read),
            };
            self.record(TraceEvent::Invoke { process: step.process, invocation });
            let actions = match &mut self.nodes[step.process.index()] {
                Node::Register(s) => s.handle(event)?,
                Node::Broadcast(_) => unreachable!("register scenario builds register nodes"),
            };
            self.apply(step.process, actions)?;
        }
        Ok(())
    }

    fn deliver(&mut self, env: Envelope) -> Result<()> {
        if self.crashed(env.to) {
            return Ok(());
        }
        self.record(TraceEvent::DeliverMsg { to: env.to, message: env.message.clone() });
        let actions = match &mut self.nodes[env.to.index()] {
            Node::Broadcast(s) => s.handle(BroadcastEvent::Receive(env.message))?,
            Node::Register(s) => s.handle(RegisterEvent::Receive(env.message))?,
        };
        self.apply(env.to, actions)
    }

    fn apply(&mut self, p: Pid, actions: Vec<Action>) -> Result<()> {
        let mut finished = false;
        for action in actions {
            match action {
                Action::Gossip(m) => {
                    for to in self.scenario.pfps.universe().pids().collect::<Vec<_>>() {
                        self.emit(p, to, m.clone());
                    }
                }
                Action::SendTo(to, m) => self.emit(p, to, m),
                Action::Deliver(v) => self.record(TraceEvent::Output { process: p, output: Output::Deliver(v) }),
                Action::WriteReturn | Action::ReadReturn(_) => {
                    let index = self.running[p.index()].take().expect("a return matches a running step");
                    self.script_status[index] = StepStatus::Done;
                    let output = match action {
                        Action::WriteReturn => Output::WriteReturn { index },
                        Action::ReadReturn(value) => Output::ReadReturn { index, value },
                        _ => unreachable!(),
                    };
                    self.record(TraceEvent::Output { process: p, output });
                    finished = true;
                }
            }
        }
        if finished {
            self.start_ready_steps()?;
        }
        Ok(())
    }

    fn emit(&mut self, from: Pid, to: Pid, mut message: Message) {
        if self.crashed(from) {
            return;
        }
        match self.scenario.behavior(from) {
            Behavior::Honest | Behavior::Crash { .. } => {}
            Behavior::Mute => return,
            Behavior::LieConfig(c) => message.config = c.clone(),
            Behavior::WorstCase => message.config = Configuration::empty(),
            Behavior::Equivocate { first, second, values } => {
                let side = if first.contains(to) {
                    Some(&values.0)
                } else if second.contains(to) {
                    Some(&values.1)
                } else {
                    None
                };
                let carries_value = matches!(
                    message.payload,
                    Payload::Send { .. } | Payload::Echo { .. } | Payload::Ready { .. } | Payload::Write { .. }
                );
                if carries_value {
                    let Some(v) = side.cloned() else { return };
                    match &mut message.payload {
                        Payload::Send { value } | Payload::Echo { value } | Payload::Ready { value } => *value = v,
                        Payload::Write { ts, value, sig } => {
                            *sig = self.scheme.sign(from, &write_statement(from, *ts, &v));
                            *value = v;
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        self.record(TraceEvent::Send { from, to, message: message.clone() });
        self.in_flight.push(Envelope { from, to, message });
    }
}
