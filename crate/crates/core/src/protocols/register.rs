use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{Configuration, View};
use crate::procset::{Pid, ProcSet};

use super::closed_part;
use super::message::{Action, Message, Payload, Value};
use super::signature::{Signature, SignatureScheme};

/// A replica's stored register value. `value == None` is the initial value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredValue {
    pub ts: u64,
    pub value: Option<Value>,
    pub sig: Signature,
}

impl StoredValue {
    pub fn initial() -> Self {
        StoredValue { ts: 0, value: None, sig: Signature::genesis() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegisterEvent {
    Write(Value),
    Read,
    Receive(Message),
}

/// Bytes the writer signs for `(ts, value)`.
pub fn write_statement(writer: Pid, ts: u64, value: &Value) -> Vec<u8> {
    let mut out = b"write".to_vec();
    out.push(writer.0);
    out.extend_from_slice(&ts.to_be_bytes());
    out.extend_from_slice(&value.0);
    out
}

/// Value with the highest timestamp; ties go to the smallest value.
pub fn highestval<'a>(pairs: impl IntoIterator<Item = &'a (u64, Option<Value>)>) -> Result<Option<Value>> {
    pairs
        .into_iter()
        .min_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)))
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Contract("highestval of an empty set".into()))
}

/// Read responses by responder: timestamp and value.
type Responses = BTreeMap<Pid, (u64, Option<Value>)>;

#[derive(Clone)]
pub struct RegisterState {
    me: Pid,
    config: Configuration,
    writer: Pid,
    stored: StoredValue,
    write_ts: u64,
    read_id: u64,
    pending_write: Option<(u64, ProcSet)>,
    pending_read: Option<(u64, Responses)>,
    view: View,
    scheme: Arc<dyn SignatureScheme>,
}

impl std::fmt::Debug for RegisterState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegisterState")
            .field("me", &self.me)
            .field("writer", &self.writer)
            .field("stored", &self.stored)
            .field("write_ts", &self.write_ts)
            .field("read_id", &self.read_id)
            .field("pending_write", &self.pending_write)
            .field("pending_read", &self.pending_read)
            .finish()
    }
}

impl RegisterState {
    pub fn new(
        me: Pid,
        config: Configuration,
        writer: Pid,
        universe_size: usize,
        scheme: Arc<dyn SignatureScheme>,
    ) -> Self {
        let mut view = View::unknown(universe_size);
        view.set(me, config.clone());
        RegisterState {
            me,
            config,
            writer,
            stored: StoredValue::initial(),
            write_ts: 0,
            read_id: 0,
            pending_write: None,
            pending_read: None,
            view,
            scheme,
        }
    }

    pub fn stored(&self) -> &StoredValue {
        &self.stored
    }

    pub fn view(&self) -> &View {
        &self.view
    }

    pub fn busy(&self) -> bool {
        self.pending_write.is_some() || self.pending_read.is_some()
    }

    fn message(&self, payload: Payload) -> Message {
        Message { sender: self.me, config: self.config.clone(), payload }
    }

    fn valid(&self, ts: u64, value: &Option<Value>, sig: &Signature) -> bool {
        match value {
            None => ts == 0 && *sig == Signature::genesis(),
            Some(v) => self.scheme.verify(self.writer, sig, &write_statement(self.writer, ts, v)),
        }
    }

    pub fn handle(&mut self, event: RegisterEvent) -> Result<Vec<Action>> {
        let mut out = Vec::new();
        match event {
            RegisterEvent::Write(value) => {
                if self.me != self.writer {
                    return Err(Error::Contract("only the writer may write".into()));
                }
                if self.busy() {
                    return Err(Error::Contract("operation invoked while another is pending".into()));
                }
                self.write_ts += 1;
                let sig = self.scheme.sign(self.me, &write_statement(self.me, self.write_ts, &value));
                self.pending_write = Some((self.write_ts, ProcSet::EMPTY));
                out.push(Action::Gossip(self.message(Payload::Write { ts: self.write_ts, value, sig })));
            }
            RegisterEvent::Read => {
                if self.busy() {
                    return Err(Error::Contract("operation invoked while another is pending".into()));
                }
                self.read_id += 1;
                self.pending_read = Some((self.read_id, BTreeMap::new()));
                out.push(Action::Gossip(self.message(Payload::Read { rid: self.read_id })));
            }
            RegisterEvent::Receive(msg) => self.receive(msg, &mut out),
        }
        Ok(out)
    }

    fn receive(&mut self, msg: Message, out: &mut Vec<Action>) {
        let j = msg.sender;
        match msg.payload {
            Payload::Write { ts, value, sig } => {
                if j != self.writer || !self.valid(ts, &Some(value.clone()), &sig) {
                    log::debug!("dropping invalid WRITE from #{}", j.0);
                    return;
                }
                self.view.set(j, msg.config);
                if ts > self.stored.ts {
                    self.stored = StoredValue { ts, value: Some(value), sig };
                }
                out.push(Action::SendTo(self.writer, self.message(Payload::Ack { ts })));
            }
            Payload::Ack { ts } => {
                let Some((pending_ts, acks)) = self.pending_write.as_mut() else { return };
                if *pending_ts != ts {
                    return;
                }
                self.view.set(j, msg.config);
                acks.insert(j);
                let acks = *acks;
                if self.config.has_slice_in(closed_part(acks, &self.view)) {
                    self.pending_write = None;
                    out.push(Action::WriteReturn);
                }
            }
            Payload::Read { rid } => {
                self.view.set(j, msg.config);
                let s = &self.stored;
                let reply = Payload::Value { rid, ts: s.ts, value: s.value.clone(), sig: s.sig.clone() };
                out.push(Action::SendTo(j, self.message(reply)));
            }
            Payload::Value { rid, ts, value, sig } => {
                let valid = self.valid(ts, &value, &sig);
                let Some((pending_rid, responses)) = self.pending_read.as_mut() else { return };
                if *pending_rid != rid || !valid || responses.contains_key(&j) {
                    return;
                }
                responses.insert(j, (ts, value));
                self.view.set(j, msg.config);
                let responders: ProcSet = responses.keys().copied().collect();
                let quorum = closed_part(responders, &self.view);
                if self.config.has_slice_in(quorum) {
                    let mut picked: Vec<&(u64, Option<Value>)> =
                        responses.iter().filter(|(p, _)| quorum.contains(**p)).map(|(_, r)| r).collect();
                    if picked.is_empty() {
                        picked = responses.values().collect();
                    }
                    let result = highestval(picked).expect("at least one response was recorded");
                    self.pending_read = None;
                    out.push(Action::ReadReturn(result));
                }
            }
            other => log::debug!("dropping {} in register", other.kind()),
        }
    }
}

/// Functional form of [`RegisterState::handle`].
pub fn reg_step(state: &RegisterState, event: RegisterEvent) -> Result<(RegisterState, Vec<Action>)> {
    let mut next = state.clone();
    let actions = next.handle(event)?;
    Ok((next, actions))
}
