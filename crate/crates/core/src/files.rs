//! JSON file formats: system configurations, bridge models and simulation scenarios.
//!
//! Every file carries `"format": 1`; a missing field is read as 1 and any
//! other version is rejected. Process sets are arrays of process names.
//! Protocol values in scenario files are UTF-8 text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bridges::{AsymmetricSystem, FbasSystem, PbqsSystem, SymmetricSystem};
use crate::error::{Error, Result};
use crate::model::{Configuration, Pfps, WireConfiguration};
use crate::procset::{Pid, ProcSet, ProcessId, Universe};
use crate::protocols::Value;
use crate::simnet::{Behavior, Op, Protocol, Scenario, Scheduling, ScriptStep};

pub const FORMAT: u32 = 1;

fn format_one() -> u32 {
    FORMAT
}

fn check_format(found: u32) -> Result<()> {
    if found != FORMAT {
        return Err(Error::InvalidInput(format!("unsupported format {found}, expected {FORMAT}")));
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

/// System configuration with an optional league.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default = "format_one")]
    pub format: u32,
    pub processes: BTreeMap<String, WireConfiguration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub league: Option<Vec<String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ConfigFile = parse_json(text, "config")?;
        check_format(file.format)?;
        Ok(file)
    }

    pub fn from_pfps(f: &Pfps, league: Option<ProcSet>) -> Self {
        ConfigFile { format: FORMAT, processes: f.to_wire(), league: league.map(|l| f.universe().names(l)) }
    }

    pub fn pfps(&self) -> Result<Pfps> {
        Pfps::from_wire(&self.processes)
    }

    pub fn league(&self, f: &Pfps) -> Result<Option<ProcSet>> {
        self.league.as_ref().map(|l| f.set(l)).transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FbasEntry {
    pub known: Vec<String>,
    pub slices: Vec<Vec<String>>,
}

/// A quorum-system model for `compare`, discriminated by `"model"`.
/// `faulty` names the actual faulty set; `set` a candidate intact set or cluster.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelFile {
    Symmetric {
        #[serde(default = "format_one")]
        format: u32,
        universe: Vec<String>,
        fail_prone: Vec<Vec<String>>,
    },
    Asymmetric {
        #[serde(default = "format_one")]
        format: u32,
        fail_prone: BTreeMap<String, Vec<Vec<String>>>,
        #[serde(default)]
        faulty: Vec<String>,
    },
    Fbas {
        #[serde(default = "format_one")]
        format: u32,
        processes: BTreeMap<String, FbasEntry>,
        #[serde(default)]
        faulty: Vec<String>,
        #[serde(default)]
        set: Vec<String>,
    },
    Pbqs {
        #[serde(default = "format_one")]
        format: u32,
        quorums: BTreeMap<String, Vec<Vec<String>>>,
        #[serde(default)]
        faulty: Vec<String>,
        #[serde(default)]
        set: Vec<String>,
    },
    Pfps {
        #[serde(default = "format_one")]
        format: u32,
        processes: BTreeMap<String, WireConfiguration>,
        #[serde(default)]
        faulty: Vec<String>,
        #[serde(default)]
        set: Vec<String>,
    },
}

fn universe_of<'a>(names: impl IntoIterator<Item = &'a String>) -> Result<Universe> {
    Universe::new(names.into_iter().map(|s| ProcessId::new(s.clone())).collect::<Result<Vec<_>>>()?)
}

fn family(u: &Universe, sets: &[Vec<String>]) -> Result<Vec<ProcSet>> {
    sets.iter().map(|s| u.set(s)).collect()
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ModelFile = parse_json(text, "model")?;
        check_format(match &file {
            ModelFile::Symmetric { format, .. }
            | ModelFile::Asymmetric { format, .. }
            | ModelFile::Fbas { format, .. }
            | ModelFile::Pbqs { format, .. }
            | ModelFile::Pfps { format, .. } => *format,
        })?;
        Ok(file)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::Symmetric { .. } => "symmetric",
            ModelFile::Asymmetric { .. } => "asymmetric",
            ModelFile::Fbas { .. } => "fbas",
            ModelFile::Pbqs { .. } => "pbqs",
            ModelFile::Pfps { .. } => "pfps",
        }
    }

    pub fn symmetric(&self) -> Result<SymmetricSystem> {
        let ModelFile::Symmetric { universe, fail_prone, .. } = self else {
            return Err(Error::InvalidInput(format!("expected a symmetric model, got {}", self.kind())));
        };
        let u = universe_of(universe)?;
        let fp = family(&u, fail_prone)?;
        Ok(SymmetricSystem::new(u, fp))
    }

    pub fn asymmetric(&self) -> Result<(AsymmetricSystem, ProcSet)> {
        let ModelFile::Asymmetric { fail_prone, faulty, .. } = self else {
            return Err(Error::InvalidInput(format!("expected an asymmetric model, got {}", self.kind())));
        };
        let u = universe_of(fail_prone.keys())?;
        let fps = fail_prone.values().map(|f| family(&u, f)).collect::<Result<Vec<_>>>()?;
        let faulty = u.set(faulty)?;
        Ok((AsymmetricSystem::new(u, fps)?, faulty))
    }

    pub fn fbas(&self) -> Result<(FbasSystem, ProcSet, ProcSet)> {
        let ModelFile::Fbas { processes, faulty, set, .. } = self else {
            return Err(Error::InvalidInput(format!("expected an fbas model, got {}", self.kind())));
        };
        let u = universe_of(processes.keys())?;
        let mut known = Vec::new();
        let mut slices = Vec::new();
        for e in processes.values() {
            known.push(u.set(&e.known)?);
            slices.push(family(&u, &e.slices)?);
        }
        let (faulty, set) = (u.set(faulty)?, u.set(set)?);
        Ok((FbasSystem { universe: u, known, slices }, faulty, set))
    }

    pub fn pbqs(&self) -> Result<(PbqsSystem, ProcSet, ProcSet)> {
        let ModelFile::Pbqs { quorums, faulty, set, .. } = self else {
            return Err(Error::InvalidInput(format!("expected a pbqs model, got {}", self.kind())));
        };
        let u = universe_of(quorums.keys())?;
        let qs = quorums.values().map(|q| family(&u, q)).collect::<Result<Vec<_>>>()?;
        let (faulty, set) = (u.set(faulty)?, u.set(set)?);
        Ok((PbqsSystem::new(u, qs)?, faulty, set))
    }

    /// The model as a personalized system, with faulty set and candidate set.
    pub fn pfps(&self) -> Result<(Pfps, ProcSet, ProcSet)> {
        match self {
            ModelFile::Pfps { processes, faulty, set, .. } => {
                let f = Pfps::from_wire(processes)?;
                let (a, s) = (f.set(faulty)?, f.set(set)?);
                Ok((f, a, s))
            }
            ModelFile::Fbas { .. } => {
                let (sys, a, s) = self.fbas()?;
                Ok((sys.fbas_derive()?, a, s))
            }
            ModelFile::Symmetric { .. } => Ok((self.symmetric()?.f_embed(), ProcSet::EMPTY, ProcSet::EMPTY)),
            ModelFile::Asymmetric { .. } => {
                let (sys, a) = self.asymmetric()?;
                Ok((sys.g_embed(), a, ProcSet::EMPTY))
            }
            ModelFile::Pbqs { .. } => Err(Error::InvalidInput("a pbqs model has no fail-prone form".into())),
        }
    }
}

/// Faulty behaviour in scenario files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WireBehavior {
    Honest,
    Mute,
    LieEmpty,
    WorstCase,
    Crash { at_step: u64 },
    Lie { config: WireConfiguration },
    Equivocate { first: Vec<String>, second: Vec<String>, values: (String, String) },
}

impl WireBehavior {
    pub fn resolve(&self, u: &Universe) -> Result<Behavior> {
        Ok(match self {
            WireBehavior::Honest => Behavior::Honest,
            WireBehavior::Mute => Behavior::Mute,
            WireBehavior::LieEmpty => Behavior::LieConfig(Configuration::empty()),
            WireBehavior::WorstCase => Behavior::WorstCase,
            WireBehavior::Crash { at_step } => Behavior::Crash { at_step: *at_step },
            WireBehavior::Lie { config } => Behavior::LieConfig(Configuration::from_wire(u, config)?),
            WireBehavior::Equivocate { first, second, values } => Behavior::Equivocate {
                first: u.set(first)?,
                second: u.set(second)?,
                values: (Value::from(values.0.as_str()), Value::from(values.1.as_str())),
            },
        })
    }
}

/// Equivocation splitting the universe into its first half and the rest,
/// with `value` and `value'`.
pub fn default_equivocation(u: &Universe, value: &str) -> Behavior {
    let half = u.len().div_ceil(2);
    let first: ProcSet = u.pids().take(half).collect();
    Behavior::Equivocate {
        first,
        second: u.all() - first,
        values: (Value::from(value), Value::from(format!("{value}'").as_str())),
    }
}

/// Parses `name[@arg]` behaviour tokens: honest, mute, lie-empty,
/// worst-case, crash@STEP, equivocate.
pub fn parse_behavior(token: &str, u: &Universe, value: &str) -> Result<Behavior> {
    let (name, arg) = match token.split_once('@') {
        Some((n, a)) => (n, Some(a)),
        None => (token, None),
    };
    Ok(match (name, arg) {
        ("honest", None) => Behavior::Honest,
        ("mute", None) => Behavior::Mute,
        ("lie-empty", None) => Behavior::LieConfig(Configuration::empty()),
        ("worst-case", None) => Behavior::WorstCase,
        ("crash", Some(step)) => Behavior::Crash {
            at_step: step.parse().map_err(|_| Error::InvalidInput(format!("bad crash step {step:?}")))?,
        },
        ("crash", None) => Behavior::Crash { at_step: 0 },
        ("equivocate", None) => default_equivocation(u, value),
        _ => return Err(Error::InvalidInput(format!("unknown behaviour {token:?}"))),
    })
}

/// Parses `p1:mute,p4:equivocate` into a faulty map.
pub fn parse_faulty(text: &str, u: &Universe, value: &str) -> Result<BTreeMap<Pid, Behavior>> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (id, token) = part
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("expected PROCESS:BEHAVIOUR, got {part:?}")))?;
        out.insert(u.pid(id)?, parse_behavior(token, u, value)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireStep {
    pub process: String,
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default)]
    pub after: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WireProtocol {
    Broadcast { sender: String, value: String },
    Register { writer: String, script: Vec<WireStep> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WireScheduling {
    Random,
    Delay(String),
}

/// A complete, replayable simulation scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default = "format_one")]
    pub format: u32,
    pub processes: BTreeMap<String, WireConfiguration>,
    pub league: Vec<String>,
    #[serde(default)]
    pub faulty: BTreeMap<String, WireBehavior>,
    pub protocol: WireProtocol,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_steps")]
    pub max_steps: u64,
    #[serde(default = "default_scheduling")]
    pub scheduling: WireScheduling,
}

fn default_max_steps() -> u64 {
    crate::simnet::DEFAULT_MAX_STEPS
}

fn default_scheduling() -> WireScheduling {
    WireScheduling::Random
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ScenarioFile = parse_json(text, "scenario")?;
        check_format(file.format)?;
        Ok(file)
    }

    pub fn scenario(&self) -> Result<Scenario> {
        let f = Pfps::from_wire(&self.processes)?;
        let u = f.universe().clone();
        let league = u.set(&self.league)?;
        let protocol = match &self.protocol {
            WireProtocol::Broadcast { sender, value } => {
                Protocol::Broadcast { sender: u.pid(sender)?, value: Value::from(value.as_str()) }
            }
            WireProtocol::Register { writer, script } => Protocol::Register {
                writer: u.pid(writer)?,
                script: script.iter().map(|s| parse_step(&u, s)).collect::<Result<_>>()?,
            },
        };
        let mut faulty = BTreeMap::new();
        for (id, b) in &self.faulty {
            faulty.insert(u.pid(id)?, b.resolve(&u)?);
        }
        let scheduling = match &self.scheduling {
            WireScheduling::Random => Scheduling::Random,
            WireScheduling::Delay(p) => Scheduling::Delay(u.pid(p)?),
        };
        let mut scenario = Scenario::new(f, league, protocol).with_seed(self.seed).with_faulty(faulty);
        scenario.max_steps = self.max_steps;
        scenario.scheduling = scheduling;
        scenario.validate()?;
        Ok(scenario)
    }
}

fn parse_step(u: &Universe, s: &WireStep) -> Result<ScriptStep> {
    let op = match (s.op.as_str(), &s.value) {
        ("write", Some(v)) => Op::Write(Value::from(v.as_str())),
        ("read", None) => Op::Read,
        _ => return Err(Error::InvalidInput(format!("bad script step {:?}", s.op))),
    };
    Ok(ScriptStep { process: u.pid(&s.process)?, op, after: s.after.clone() })
}

/// Parses a register script: steps separated by `,` run one after another;
/// steps joined by `|` start together after the previous group.
/// Each step is `write:VALUE` (by the writer) or `read:PROCESS`.
pub fn parse_script(text: &str, u: &Universe, writer: Pid) -> Result<Vec<ScriptStep>> {
    let mut steps: Vec<ScriptStep> = Vec::new();
    let mut previous: Vec<usize> = Vec::new();
    for group in text.split(',').map(str::trim).filter(|g| !g.is_empty()) {
        let mut current = Vec::new();
        for item in group.split('|').map(str::trim) {
            let (op, arg) =
                item.split_once(':').ok_or_else(|| Error::InvalidInput(format!("bad script step {item:?}")))?;
            let (process, op) = match op {
                "write" => (writer, Op::Write(Value::from(arg))),
                "read" => (u.pid(arg)?, Op::Read),
                _ => return Err(Error::InvalidInput(format!("bad script step {item:?}"))),
            };
            current.push(steps.len());
            steps.push(ScriptStep { process, op, after: previous.clone() });
        }
        previous = current;
    }
    Ok(steps)
}
