//! Deterministic asynchronous network simulation.
//!
//! A [`Scenario`] fixes the system, the league under test, the behaviour of
//! each faulty process, the protocol workload and a seed. [`run`] delivers
//! in-flight messages one at a time in an order drawn from the seed, until
//! no message is in flight or the step budget runs out. Checkers then read
//! the resulting [`Trace`].

mod check;
mod run;
mod scenario;
mod sweep;
mod trace;

pub use scenario::DEFAULT_MAX_STEPS;

pub use check::{check, check_broadcast, check_register, Outcome, PropertyResult, Verdict};
pub use run::run;
pub use scenario::{Behavior, Op, Protocol, Scenario, Scheduling, ScriptStep};
pub use sweep::{sweep, SweepPlan, SweepReport, SweepViolation};
pub use trace::{Invocation, Output, Trace, TraceEvent, TraceRecord};
