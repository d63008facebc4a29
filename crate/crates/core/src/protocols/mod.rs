//! Reliable broadcast and single-writer register state machines.
//!
//! Both protocols are pure step functions over an owned state: an event goes
//! in, a list of [`Action`]s comes out. Every message carries the sender's
//! configuration, and receivers fold it into their [`View`](crate::model::View)
//! before evaluating quorum guards.

mod broadcast;
mod message;
mod register;
mod signature;

pub use broadcast::{rb_step, BroadcastEvent, BroadcastState, ReadyEntry};
pub use message::{Action, Message, Payload, Value, WireMessage};
pub use register::{highestval, reg_step, write_statement, RegisterEvent, RegisterState, StoredValue};
pub use signature::{MockSignatures, Signature, SignatureScheme};

use crate::model::{max_closed_subset, View};
use crate::procset::{Pid, ProcSet};

/// The processes in `matching` contain a quorum of `me` under `view`.
pub fn evaluate_quorum_guard(matching: ProcSet, me: Pid, view: &View) -> bool {
    crate::model::contains_quorum(matching, me, view)
}

/// The greatest subset of `matching` that is closed under `view`.
pub(crate) fn closed_part(matching: ProcSet, view: &View) -> ProcSet {
    max_closed_subset(matching, view, ProcSet::EMPTY)
}
