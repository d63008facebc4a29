use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Configuration, WireConfiguration};
use crate::procset::{Pid, Universe};

use super::signature::Signature;

/// Opaque protocol value, hex encoded on the wire.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(pub Vec<u8>);

impl Value {
    pub fn hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hex::decode(s).map(Value).map_err(|e| Error::InvalidInput(format!("bad hex value {s:?}: {e}")))
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value(s.as_bytes().to_vec())
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match std::str::from_utf8(&self.0) {
            Ok(s) => write!(f, "{s:?}"),
            Err(_) => write!(f, "0x{}", self.hex()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Send {
        value: Value,
    },
    Echo {
        value: Value,
    },
    Ready {
        value: Value,
    },
    Any,
    Write {
        ts: u64,
        value: Value,
        sig: Signature,
    },
    /// Acknowledges the write with timestamp `ts`.
    Ack {
        ts: u64,
    },
    Read {
        rid: u64,
    },
    Value {
        rid: u64,
        ts: u64,
        value: Option<Value>,
        sig: Signature,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Send { .. } => "SEND",
            Payload::Echo { .. } => "ECHO",
            Payload::Ready { .. } => "READY",
            Payload::Any => "ANY",
            Payload::Write { .. } => "WRITE",
            Payload::Ack { .. } => "ACK",
            Payload::Read { .. } => "READ",
            Payload::Value { .. } => "VALUE",
        }
    }
}

/// A protocol message with its authenticated sender and advertised configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: Pid,
    pub config: Configuration,
    pub payload: Payload,
}

/// Step output of a protocol state machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Send to every process, including the sender itself.
    Gossip(Message),
    SendTo(Pid, Message),
    Deliver(Value),
    WriteReturn,
    ReadReturn(Option<Value>),
}

/// JSON form of a message. Field order is fixed; absent fields are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireMessage {
    pub kind: String,
    pub sender: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rid: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ts: Option<u64>,
    /// Outer `None` means absent; an explicit `null` is the initial register value.
    #[serde(default, skip_serializing_if = "Option::is_none", deserialize_with = "present")]
    pub value: Option<Option<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sig: Option<String>,
    pub config: WireConfiguration,
}

fn present<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<Option<String>>, D::Error> {
    Option::<String>::deserialize(d).map(Some)
}

impl Message {
    pub fn to_wire(&self, universe: &Universe) -> WireMessage {
        let mut w = WireMessage {
            kind: self.payload.kind().to_string(),
            sender: universe.id(self.sender).to_string(),
            rid: None,
            ts: None,
            value: None,
            sig: None,
            config: self.config.to_wire(universe),
        };
        match &self.payload {
            Payload::Send { value } | Payload::Echo { value } | Payload::Ready { value } => {
                w.value = Some(Some(value.hex()))
            }
            Payload::Any => {}
            Payload::Write { ts, value, sig } => {
                w.ts = Some(*ts);
                w.value = Some(Some(value.hex()));
                w.sig = Some(sig.0.clone());
            }
            Payload::Ack { ts } => w.ts = Some(*ts),
            Payload::Read { rid } => w.rid = Some(*rid),
            Payload::Value { rid, ts, value, sig } => {
                w.rid = Some(*rid);
                w.ts = Some(*ts);
                w.value = Some(value.as_ref().map(Value::hex));
                w.sig = Some(sig.0.clone());
            }
        }
        w
    }

    /// Decodes a wire message; missing or superfluous fields are errors.
    pub fn from_wire(universe: &Universe, w: &WireMessage) -> Result<Self> {
        let malformed = || Error::InvalidInput(format!("malformed {} message", w.kind));
        let some_value = || -> Result<Value> {
            match &w.value {
                Some(Some(v)) => Value::from_hex(v),
                _ => Err(malformed()),
            }
        };
        let sig = || w.sig.clone().map(Signature).ok_or_else(malformed);
        let payload = match w.kind.as_str() {
            "SEND" => Payload::Send { value: some_value()? },
            "ECHO" => Payload::Echo { value: some_value()? },
            "READY" => Payload::Ready { value: some_value()? },
            "ANY" => Payload::Any,
            "WRITE" => Payload::Write { ts: w.ts.ok_or_else(malformed)?, value: some_value()?, sig: sig()? },
            "ACK" => Payload::Ack { ts: w.ts.ok_or_else(malformed)? },
            "READ" => Payload::Read { rid: w.rid.ok_or_else(malformed)? },
            "VALUE" => Payload::Value {
                rid: w.rid.ok_or_else(malformed)?,
                ts: w.ts.ok_or_else(malformed)?,
                value: match &w.value {
                    Some(Some(v)) => Some(Value::from_hex(v)?),
                    Some(None) => None,
                    None => return Err(malformed()),
                },
                sig: sig()?,
            },
            other => return Err(Error::InvalidInput(format!("unknown message kind {other:?}"))),
        };
        let msg = Message {
            sender: universe.pid(&w.sender)?,
            config: Configuration::from_wire(universe, &w.config)?,
            payload,
        };
        let mut canonical = msg.to_wire(universe);
        canonical.config = w.config.clone();
        if canonical != *w {
            return Err(malformed());
        }
        Ok(msg)
    }
}
