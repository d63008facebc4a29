use serde_json::{json, Value as Json};

use crate::procset::{Pid, Universe};
use crate::protocols::{Message, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invocation {
    Broadcast(Value),
    Write { index: usize, value: Value },
    Read { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Deliver(Value),
    WriteReturn { index: usize },
    ReadReturn { index: usize, value: Option<Value> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Invoke { process: Pid, invocation: Invocation },
    Send { from: Pid, to: Pid, message: Message },
    DeliverMsg { to: Pid, message: Message },
    Output { process: Pid, output: Output },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: u64,
    pub event: TraceEvent,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    /// No message was left in flight.
    pub quiescent: bool,
    /// The step budget ran out first.
    pub truncated: bool,
    pub deliveries: u64,
}

impl Trace {
    pub fn events(&self) -> impl Iterator<Item = &TraceEvent> {
        self.records.iter().map(|r| &r.event)
    }

    /// One JSON object per line with keys `step`, `kind`, `process`,
    /// `payload`, followed by a closing `end` record.
    pub fn to_jsonl(&self, universe: &Universe) -> String {
        let mut out = String::new();
        let name = |p: Pid| universe.id(p).to_string();
        for r in &self.records {
            let (kind, process, payload) = match &r.event {
                TraceEvent::Invoke { process, invocation } => (
                    "invoke",
                    name(*process),
                    match invocation {
                        Invocation::Broadcast(v) => json!({"op": "broadcast", "value": v.hex()}),
                        Invocation::Write { index, value } => {
                            json!({"op": "write", "index": index, "value": value.hex()})
                        }
                        Invocation::Read { index } => json!({"op": "read", "index": index}),
                    },
                ),
                TraceEvent::Send { from, to, message } => {
                    ("send", name(*from), json!({"to": name(*to), "message": message.to_wire(universe)}))
                }
                TraceEvent::DeliverMsg { to, message } => (
                    "deliver-msg",
                    name(*to),
                    json!({"from": name(message.sender), "message": message.to_wire(universe)}),
                ),
                TraceEvent::Output { process, output } => (
                    "output",
                    name(*process),
                    match output {
                        Output::Deliver(v) => json!({"output": "deliver", "value": v.hex()}),
                        Output::WriteReturn { index } => json!({"output": "write-return", "index": index}),
                        Output::ReadReturn { index, value } => {
                            json!({"output": "read-return", "index": index, "value": value.as_ref().map(Value::hex)})
                        }
                    },
                ),
            };
            let line: Json = json!({"step": r.step, "kind": kind, "process": process, "payload": payload});
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let end = json!({
            "step": self.records.len(),
            "kind": "end",
            "process": null,
            "payload": {"quiescent": self.quiescent, "truncated": self.truncated, "deliveries": self.deliveries},
        });
        out.push_str(&end.to_string());
        out.push('\n');
        out
    }
}
