use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::model::tolerated_by;
use crate::procset::Pid;

use super::check::check;
use super::run::run;
use super::scenario::{Behavior, Scenario};

/// A grid of runs: every adversary assignment with every seed.
#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub template: Scenario,
    pub seeds: Vec<u64>,
    pub adversaries: Vec<BTreeMap<Pid, Behavior>>,
    /// Also run adversaries the league does not tolerate.
    pub force: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepViolation {
    pub adversary: usize,
    pub seed: u64,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub runs: usize,
    pub skipped_untolerated: usize,
    pub truncated: usize,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Truncation flag and violations of one run; `None` if skipped as untolerated.
type RunOutcome = Option<(bool, Vec<SweepViolation>)>;

/// Runs the plan in parallel. Results merge in plan order, so the report
/// does not depend on thread scheduling.
pub fn sweep(plan: &SweepPlan) -> Result<SweepReport> {
    let jobs: Vec<(usize, u64)> =
        (0..plan.adversaries.len()).flat_map(|a| plan.seeds.iter().map(move |s| (a, *s))).collect();
    let results: Vec<Result<RunOutcome>> = jobs
        .par_iter()
        .map(|&(a, seed)| {
            let mut scenario = plan.template.clone();
            scenario.faulty = plan.adversaries[a].clone();
            scenario.seed = seed;
            let tolerated = tolerated_by(scenario.league, &scenario.pfps, scenario.faulty_set());
            if !tolerated && !plan.force {
                return Ok(None);
            }
            let trace = run(&scenario)?;
            let verdict = check(&trace, &scenario, plan.force);
            let violations = verdict
                .violations()
                .map(|(p, d)| SweepViolation { adversary: a, seed, property: p.to_string(), detail: d.to_string() })
                .collect();
            Ok(Some((trace.truncated, violations)))
        })
        .collect();
    let mut report = SweepReport::default();
    for r in results {
        match r? {
            None => report.skipped_untolerated += 1,
            Some((truncated, violations)) => {
                report.runs += 1;
                report.truncated += usize::from(truncated);
                report.violations.extend(violations);
            }
        }
    }
    Ok(report)
}
