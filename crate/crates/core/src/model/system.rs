use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::config::{Configuration, WireConfiguration};
use crate::procset::{Pid, ProcSet, ProcessId, Universe};

/// Read access to per-process configurations, known or unknown.
pub trait Assumptions {
    fn config(&self, p: Pid) -> Option<&Configuration>;
    fn size(&self) -> usize;
}

/// Personalized fail-prone system: one configuration per process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pfps {
    universe: Universe,
    configs: Vec<Configuration>,
}

impl Pfps {
    pub fn new(universe: Universe, configs: Vec<Configuration>) -> Result<Self> {
        if configs.len() != universe.len() {
            return Err(Error::InvalidInput(format!(
                "{} configurations for a universe of {} processes",
                configs.len(),
                universe.len()
            )));
        }
        let all = universe.all();
        for c in &configs {
            if !c.trusted().is_subset(all) {
                return Err(Error::InvalidInput("configuration references a process outside the universe".into()));
            }
        }
        Ok(Pfps { universe, configs })
    }

    pub fn builder() -> PfpsBuilder {
        PfpsBuilder::default()
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn all(&self) -> ProcSet {
        self.universe.all()
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn get(&self, p: Pid) -> &Configuration {
        &self.configs[p.index()]
    }

    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn pid(&self, id: &str) -> Result<Pid> {
        self.universe.pid(id)
    }

    pub fn set<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<ProcSet> {
        self.universe.set(ids)
    }

    pub fn to_wire(&self) -> BTreeMap<String, WireConfiguration> {
        self.universe.pids().map(|p| (self.universe.id(p).to_string(), self.get(p).to_wire(&self.universe))).collect()
    }

    /// Builds a system from named configurations. Every process referenced
    /// in some trusted or fail-prone set must have its own entry.
    pub fn from_wire(entries: &BTreeMap<String, WireConfiguration>) -> Result<Self> {
        let mut builder = Pfps::builder();
        for (id, c) in entries {
            let fp: Vec<Vec<&str>> = c.fail_prone.iter().map(|f| f.iter().map(String::as_str).collect()).collect();
            builder = builder.process_owned(id, c.trusted.iter().map(String::as_str).collect(), fp);
        }
        builder.build()
    }
}

impl Assumptions for Pfps {
    fn config(&self, p: Pid) -> Option<&Configuration> {
        self.configs.get(p.index())
    }

    fn size(&self) -> usize {
        self.configs.len()
    }
}

/// Builder keyed by process names.
#[derive(Default)]
pub struct PfpsBuilder {
    entries: Vec<(String, Vec<String>, Vec<Vec<String>>)>,
}

impl PfpsBuilder {
    pub fn process(self, id: &str, trusted: &[&str], fail_prone: &[&[&str]]) -> Self {
        self.process_owned(id, trusted.to_vec(), fail_prone.iter().map(|f| f.to_vec()).collect())
    }

    fn process_owned(mut self, id: &str, trusted: Vec<&str>, fail_prone: Vec<Vec<&str>>) -> Self {
        self.entries.push((
            id.to_string(),
            trusted.into_iter().map(String::from).collect(),
            fail_prone.into_iter().map(|f| f.into_iter().map(String::from).collect()).collect(),
        ));
        self
    }

    pub fn build(self) -> Result<Pfps> {
        let mut ids = Vec::new();
        for (id, trusted, fp) in &self.entries {
            ids.push(ProcessId::new(id.clone())?);
            for r in trusted.iter().chain(fp.iter().flatten()) {
                ids.push(ProcessId::new(r.clone())?);
            }
        }
        let universe = Universe::new(ids)?;
        let mut configs: Vec<Option<Configuration>> = vec![None; universe.len()];
        for (id, trusted, fp) in &self.entries {
            let p = universe.pid(id)?;
            if configs[p.index()].is_some() {
                return Err(Error::InvalidInput(format!("process {id} is configured twice")));
            }
            let trusted_set = universe.set(trusted)?;
            let mut fsets = Vec::new();
            for f in fp {
                fsets.push(universe.set(f)?);
            }
            let c = Configuration::normalize(trusted_set, fsets)
                .map_err(|_| Error::InvalidInput(format!("processes.{id}.trusted is empty")))?;
            configs[p.index()] = Some(c);
        }
        let mut out = Vec::with_capacity(configs.len());
        for (i, c) in configs.into_iter().enumerate() {
            match c {
                Some(c) => out.push(c),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "process {} is referenced but has no configuration",
                        universe.id(Pid(i as u8))
                    )))
                }
            }
        }
        Pfps::new(universe, out)
    }
}

/// A process's partial knowledge of configurations; `None` is unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct View {
    entries: Vec<Option<Configuration>>,
}

impl View {
    pub fn unknown(n: usize) -> Self {
        View { entries: vec![None; n] }
    }

    /// Full knowledge of the true configurations.
    pub fn full(f: &Pfps) -> Self {
        View { entries: f.configs().iter().cloned().map(Some).collect() }
    }

    /// Only `p`'s own configuration is known.
    pub fn local(f: &Pfps, p: Pid) -> Self {
        let mut v = View::unknown(f.len());
        v.set(p, f.get(p).clone());
        v
    }

    pub fn from_entries(entries: Vec<Option<Configuration>>) -> Self {
        View { entries }
    }

    pub fn get(&self, p: Pid) -> Option<&Configuration> {
        self.entries[p.index()].as_ref()
    }

    pub fn set(&mut self, p: Pid, c: Configuration) {
        self.entries[p.index()] = Some(c);
    }

    pub fn clear(&mut self, p: Pid) {
        self.entries[p.index()] = None;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Processes whose configuration is known.
    pub fn domain(&self) -> ProcSet {
        self.entries.iter().enumerate().filter(|(_, e)| e.is_some()).map(|(i, _)| Pid(i as u8)).collect()
    }
}

impl Assumptions for View {
    fn config(&self, p: Pid) -> Option<&Configuration> {
        self.get(p)
    }

    fn size(&self) -> usize {
        self.entries.len()
    }
}

/// View in which every member of `tolerated` advertises the empty configuration
/// and everyone else is known truthfully.
pub fn worst_case_view(f: &Pfps, tolerated: ProcSet) -> View {
    View {
        entries: f
            .universe()
            .pids()
            .map(|p| Some(if tolerated.contains(p) { Configuration::empty() } else { f.get(p).clone() }))
            .collect(),
    }
}

/// Every process outside `tolerated` is either unknown or known truthfully.
pub fn is_resilient(v: &View, f: &Pfps, tolerated: ProcSet) -> bool {
    v.len() == f.len() && f.universe().pids().all(|p| tolerated.contains(p) || v.get(p).is_none_or(|c| c == f.get(p)))
}
