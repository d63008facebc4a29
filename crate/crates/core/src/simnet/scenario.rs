use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Configuration, Pfps};
use crate::mutation::Mutation;
use crate::procset::{Pid, ProcSet};
use crate::protocols::Value;

/// How a process deviates from the protocol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Behavior {
    Honest,
    /// Runs correctly until `at_step` deliveries have happened, then stops.
    Crash {
        at_step: u64,
    },
    /// Runs the protocol but never sends.
    Mute,
    /// Runs the protocol but advertises this configuration.
    LieConfig(Configuration),
    /// Advertises the empty configuration.
    WorstCase,
    /// Value-carrying messages go out with `values.0` to `first`, with
    /// `values.1` to `second`, and not at all to anyone else. Register writes
    /// are re-signed by the writer for each side.
    Equivocate {
        first: ProcSet,
        second: ProcSet,
        values: (Value, Value),
    },
}

impl Behavior {
    pub fn is_faulty(&self) -> bool {
        *self != Behavior::Honest
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Write(Value),
    Read,
}

/// One register operation. It starts once every step in `after` has
/// returned and its process has no other operation pending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub process: Pid,
    pub op: Op,
    pub after: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Protocol {
    Broadcast { sender: Pid, value: Value },
    Register { writer: Pid, script: Vec<ScriptStep> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheduling {
    Random,
    /// Messages from or to this process are delivered only when nothing else is in flight.
    Delay(Pid),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub pfps: Pfps,
    pub league: ProcSet,
    pub faulty: BTreeMap<Pid, Behavior>,
    pub protocol: Protocol,
    pub seed: u64,
    pub max_steps: u64,
    pub scheduling: Scheduling,
    pub mutation: Option<Mutation>,
}

pub const DEFAULT_MAX_STEPS: u64 = 200_000;

impl Scenario {
    pub fn new(pfps: Pfps, league: ProcSet, protocol: Protocol) -> Self {
        Scenario {
            pfps,
            league,
            faulty: BTreeMap::new(),
            protocol,
            seed: 0,
            max_steps: DEFAULT_MAX_STEPS,
            scheduling: Scheduling::Random,
            mutation: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_faulty(mut self, faulty: BTreeMap<Pid, Behavior>) -> Self {
        self.faulty = faulty;
        self
    }

    pub fn behavior(&self, p: Pid) -> &Behavior {
        self.faulty.get(&p).unwrap_or(&Behavior::Honest)
    }

    /// Processes with a non-honest behaviour.
    pub fn faulty_set(&self) -> ProcSet {
        self.faulty.iter().filter(|(_, b)| b.is_faulty()).map(|(p, _)| *p).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let all = self.pfps.all();
        let inside = |p: Pid| all.contains(p);
        if !self.league.is_subset(all) {
            return Err(Error::InvalidInput("league is not inside the universe".into()));
        }
        for (p, b) in &self.faulty {
            if !inside(*p) {
                return Err(Error::InvalidInput(format!("faulty process #{} is not in the universe", p.0)));
            }
            if let Behavior::Equivocate { first, second, .. } = b {
                if first.intersects(*second) || !(*first | *second).is_subset(all) {
                    return Err(Error::InvalidInput(
                        "equivocation partition must be two disjoint sets of known processes".into(),
                    ));
                }
            }
            if let Behavior::LieConfig(c) = b {
                if !c.trusted().is_subset(all) {
                    return Err(Error::InvalidInput("advertised configuration leaves the universe".into()));
                }
            }
        }
        match &self.protocol {
            Protocol::Broadcast { sender, .. } => {
                if !inside(*sender) {
                    return Err(Error::InvalidInput("sender is not in the universe".into()));
                }
            }
            Protocol::Register { writer, script } => {
                if !inside(*writer) {
                    return Err(Error::InvalidInput("writer is not in the universe".into()));
                }
                for (i, step) in script.iter().enumerate() {
                    if !inside(step.process) {
                        return Err(Error::InvalidInput(format!("script step {i} names an unknown process")));
                    }
                    if matches!(step.op, Op::Write(_)) && step.process != *writer {
                        return Err(Error::InvalidInput(format!("script step {i} writes from a non-writer")));
                    }
                    if step.after.iter().any(|&d| d >= i) {
                        return Err(Error::InvalidInput(format!("script step {i} depends on a later step")));
                    }
                }
            }
        }
        Ok(())
    }
}
