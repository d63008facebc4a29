use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Configuration, View};
use crate::procset::{Pid, ProcSet};

use super::evaluate_quorum_guard;
use super::message::{Action, Message, Payload, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReadyEntry {
    None,
    Value(Value),
    /// The process withdrew by sending ANY; matches no value.
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BroadcastEvent {
    /// Invocation at the designated sender.
    Broadcast(Value),
    Receive(Message),
}

/// Local state of one reliable broadcast instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BroadcastState {
    me: Pid,
    config: Configuration,
    sender: Pid,
    sent_echo: bool,
    sent_ready: bool,
    sent_any: bool,
    delivered: bool,
    ready_value: Option<Value>,
    echos: Vec<Option<Value>>,
    readys: Vec<ReadyEntry>,
    view: View,
    any_clause: bool,
}

impl BroadcastState {
    pub fn new(me: Pid, config: Configuration, sender: Pid, universe_size: usize) -> Self {
        let mut view = View::unknown(universe_size);
        view.set(me, config.clone());
        BroadcastState {
            me,
            config,
            sender,
            sent_echo: false,
            sent_ready: false,
            sent_any: false,
            delivered: false,
            ready_value: None,
            echos: vec![None; universe_size],
            readys: vec![ReadyEntry::None; universe_size],
            view,
            any_clause: true,
        }
    }

    /// Turns the ANY clause off; only used to check that checkers notice.
    pub fn without_any_clause(mut self) -> Self {
        self.any_clause = false;
        self
    }

    pub fn view(&self) -> &View {
        &self.view
    }

    pub fn delivered(&self) -> bool {
        self.delivered
    }

    pub fn sent_any(&self) -> bool {
        self.sent_any
    }

    pub fn ready_value(&self) -> Option<&Value> {
        self.ready_value.as_ref()
    }

    pub fn echos(&self) -> &[Option<Value>] {
        &self.echos
    }

    pub fn readys(&self) -> &[ReadyEntry] {
        &self.readys
    }

    fn message(&self, payload: Payload) -> Message {
        Message { sender: self.me, config: self.config.clone(), payload }
    }

    fn echo_set(&self, v: &Value) -> ProcSet {
        self.echos.iter().enumerate().filter(|(_, e)| e.as_ref() == Some(v)).map(|(i, _)| Pid(i as u8)).collect()
    }

    fn ready_set(&self, v: &Value) -> ProcSet {
        self.readys
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, ReadyEntry::Value(x) if x == v))
            .map(|(i, _)| Pid(i as u8))
            .collect()
    }

    fn echoed_values(&self) -> BTreeSet<Value> {
        self.echos.iter().flatten().cloned().collect()
    }

    fn readied_values(&self) -> BTreeSet<Value> {
        self.readys
            .iter()
            .filter_map(|e| match e {
                ReadyEntry::Value(v) => Some(v.clone()),
                _ => None,
            })
            .collect()
    }

    fn blocked_by(&self, blockers: ProcSet) -> bool {
        self.config.is_degenerate() || self.config.meets_every_slice(blockers)
    }

    pub fn handle(&mut self, event: BroadcastEvent) -> Result<Vec<Action>> {
        let mut out = Vec::new();
        match event {
            BroadcastEvent::Broadcast(value) => {
                if self.me != self.sender {
                    return Err(Error::Contract("only the designated sender may broadcast".into()));
                }
                out.push(Action::Gossip(self.message(Payload::Send { value })));
            }
            BroadcastEvent::Receive(msg) => self.receive(msg, &mut out),
        }
        self.evaluate_guards(&mut out);
        Ok(out)
    }

    fn receive(&mut self, msg: Message, out: &mut Vec<Action>) {
        let j = msg.sender;
        match msg.payload {
            Payload::Send { value } => {
                if j != self.sender {
                    log::debug!("dropping SEND from non-sender #{}", j.0);
                } else if !self.sent_echo {
                    self.sent_echo = true;
                    self.view.set(j, msg.config);
                    out.push(Action::Gossip(self.message(Payload::Echo { value })));
                }
            }
            Payload::Echo { value } => {
                if self.echos[j.index()].is_none() {
                    self.view.set(j, msg.config);
                    self.echos[j.index()] = Some(value);
                }
            }
            Payload::Ready { value } => {
                if self.readys[j.index()] == ReadyEntry::None {
                    self.view.set(j, msg.config);
                    self.readys[j.index()] = ReadyEntry::Value(value);
                }
            }
            Payload::Any => {
                self.view.set(j, msg.config);
                self.readys[j.index()] = ReadyEntry::Star;
            }
            other => log::debug!("dropping {} in reliable broadcast", other.kind()),
        }
    }

    fn evaluate_guards(&mut self, out: &mut Vec<Action>) {
        loop {
            let mut fired = false;
            if !self.sent_ready {
                let from_echos = self
                    .echoed_values()
                    .into_iter()
                    .find(|v| evaluate_quorum_guard(self.echo_set(v), self.me, &self.view));
                let chosen = from_echos
                    .or_else(|| self.readied_values().into_iter().find(|v| self.blocked_by(self.ready_set(v))));
                if let Some(v) = chosen {
                    self.sent_ready = true;
                    self.ready_value = Some(v.clone());
                    out.push(Action::Gossip(self.message(Payload::Ready { value: v })));
                    fired = true;
                }
            }
            if self.any_clause && self.sent_ready && !self.sent_any {
                let own = self.ready_value.clone();
                let conflicting = self
                    .readied_values()
                    .into_iter()
                    .any(|v| Some(&v) != own.as_ref() && self.blocked_by(self.ready_set(&v)));
                if conflicting {
                    self.sent_any = true;
                    out.push(Action::Gossip(self.message(Payload::Any)));
                    fired = true;
                }
            }
            if !self.delivered {
                if let Some(v) = self
                    .readied_values()
                    .into_iter()
                    .find(|v| evaluate_quorum_guard(self.ready_set(v), self.me, &self.view))
                {
                    self.delivered = true;
                    out.push(Action::Deliver(v));
                    fired = true;
                }
            }
            if !fired {
                return;
            }
        }
    }
}

/// Functional form of [`BroadcastState::handle`].
pub fn rb_step(state: &BroadcastState, event: BroadcastEvent) -> Result<(BroadcastState, Vec<Action>)> {
    let mut next = state.clone();
    let actions = next.handle(event)?;
    Ok((next, actions))
}
