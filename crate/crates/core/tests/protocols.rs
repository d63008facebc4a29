use std::collections::VecDeque;
use std::sync::Arc;

use quorumlace_core::fixtures::four_process;
use quorumlace_core::protocols::{
    evaluate_quorum_guard, highestval, rb_step, reg_step, write_statement, Action, BroadcastEvent, BroadcastState,
    Message, MockSignatures, Payload, ReadyEntry, RegisterEvent, RegisterState, SignatureScheme, Value,
};
use quorumlace_core::{Configuration, Pfps, Pid, ProcSet, View};

fn broadcast_nodes(f: &Pfps, sender: Pid) -> Vec<BroadcastState> {
    f.all().iter().map(|p| BroadcastState::new(p, f.get(p).clone(), sender, f.len())).collect()
}

// Delivers every message in FIFO order to every addressee.
fn drain(f: &Pfps, queue: &mut VecDeque<(Pid, Message)>, mut deliver: impl FnMut(Pid, Message) -> Vec<Action>) {
    while let Some((to, msg)) = queue.pop_front() {
        for action in deliver(to, msg) {
            match action {
                Action::Gossip(m) => queue.extend(f.all().iter().map(|p| (p, m.clone()))),
                Action::SendTo(p, m) => queue.push_back((p, m)),
                _ => {}
            }
        }
    }
}

#[test]
fn honest_broadcast_delivers_everywhere() {
    let f = four_process();
    let sender = f.pid("p2").unwrap();
    let mut nodes = broadcast_nodes(&f, sender);
    let mut delivered = Vec::new();
    let mut queue = VecDeque::new();
    for a in nodes[sender.index()].handle(BroadcastEvent::Broadcast(Value::from("v"))).unwrap() {
        if let Action::Gossip(m) = a {
            queue.extend(f.all().iter().map(|p| (p, m.clone())));
        }
    }
    drain(&f, &mut queue, |to, msg| {
        let actions = nodes[to.index()].handle(BroadcastEvent::Receive(msg)).unwrap();
        delivered.extend(actions.iter().filter_map(|a| match a {
            Action::Deliver(v) => Some((to, v.clone())),
            _ => None,
        }));
        actions
    });
    assert_eq!(delivered.len(), 4);
    assert!(delivered.iter().all(|(_, v)| *v == Value::from("v")));
    assert!(nodes.iter().all(|n| !n.sent_any()));
}

#[test]
fn only_the_sender_broadcasts() {
    let f = four_process();
    let mut node = broadcast_nodes(&f, f.pid("p2").unwrap()).remove(0);
    assert!(node.handle(BroadcastEvent::Broadcast(Value::from("v"))).is_err());
}

#[test]
fn first_send_is_echoed_once() {
    let f = four_process();
    let p2 = f.pid("p2").unwrap();
    let node = broadcast_nodes(&f, p2).remove(2);
    let send = |v| Message { sender: p2, config: f.get(p2).clone(), payload: Payload::Send { value: Value::from(v) } };
    let (node, first) = rb_step(&node, BroadcastEvent::Receive(send("a"))).unwrap();
    assert!(matches!(&first[..], [Action::Gossip(Message { payload: Payload::Echo { .. }, .. })]));
    assert_eq!(node.view().get(p2), Some(f.get(p2)));
    let (_, second) = rb_step(&node, BroadcastEvent::Receive(send("b"))).unwrap();
    assert!(second.is_empty());
}

#[test]
fn any_marks_star() {
    let f = four_process();
    let p1 = f.pid("p1").unwrap();
    let node = broadcast_nodes(&f, f.pid("p2").unwrap()).remove(3);
    let ready = Message { sender: p1, config: f.get(p1).clone(), payload: Payload::Ready { value: Value::from("v") } };
    let (node, _) = rb_step(&node, BroadcastEvent::Receive(ready)).unwrap();
    assert_eq!(node.readys()[0], ReadyEntry::Value(Value::from("v")));
    let any = Message { sender: p1, config: f.get(p1).clone(), payload: Payload::Any };
    let (node, _) = rb_step(&node, BroadcastEvent::Receive(any)).unwrap();
    assert_eq!(node.readys()[0], ReadyEntry::Star);
}

#[test]
fn quorum_guard_examples() {
    let f = four_process();
    let full = View::full(&f);
    let p2 = f.pid("p2").unwrap();
    assert!(evaluate_quorum_guard(f.set(["p2", "p3"]).unwrap(), p2, &full));
    // p3 sent ★, so only p2 matches.
    assert!(!evaluate_quorum_guard(f.set(["p2"]).unwrap(), p2, &full));
    assert!(!evaluate_quorum_guard(ProcSet::EMPTY, p2, &full));
}

#[test]
fn highest_value_examples() {
    let v = |s: &str| Some(Value::from(s));
    assert_eq!(highestval(&[(1, v("a")), (3, v("b")), (2, v("c"))]).unwrap(), v("b"));
    assert_eq!(highestval(&[(2, v("x"))]).unwrap(), v("x"));
    assert_eq!(highestval(&[(5, v("m")), (5, v("m"))]).unwrap(), v("m"));
    assert!(highestval(&[]).is_err());
}

#[test]
fn mock_signatures() {
    let s = MockSignatures;
    let p2 = Pid(1);
    let stmt = write_statement(p2, 1, &Value::from("v"));
    let sig = s.sign(p2, &stmt);
    assert!(s.verify(p2, &sig, &stmt));
    assert!(!s.verify(Pid(0), &sig, &stmt));
    assert!(!s.verify(p2, &sig, &write_statement(p2, 2, &Value::from("v"))));
}

fn register_nodes(f: &Pfps, writer: Pid) -> Vec<RegisterState> {
    let scheme: Arc<dyn SignatureScheme> = Arc::new(MockSignatures);
    f.all().iter().map(|p| RegisterState::new(p, f.get(p).clone(), writer, f.len(), scheme.clone())).collect()
}

fn invoke(f: &Pfps, nodes: &mut [RegisterState], p: Pid, event: RegisterEvent) -> Vec<Action> {
    let mut outputs = Vec::new();
    let mut queue = VecDeque::new();
    for a in nodes[p.index()].handle(event).unwrap() {
        if let Action::Gossip(m) = a {
            queue.extend(f.all().iter().map(|q| (q, m.clone())));
        }
    }
    drain(f, &mut queue, |to, msg| {
        let actions = nodes[to.index()].handle(RegisterEvent::Receive(msg)).unwrap();
        outputs.extend(actions.iter().filter(|a| matches!(a, Action::WriteReturn | Action::ReadReturn(_))).cloned());
        actions
    });
    outputs
}

#[test]
fn write_then_read() {
    let f = four_process();
    let (p2, p3) = (f.pid("p2").unwrap(), f.pid("p3").unwrap());
    let mut nodes = register_nodes(&f, p2);
    assert_eq!(invoke(&f, &mut nodes, p3, RegisterEvent::Read), vec![Action::ReadReturn(None)]);
    assert_eq!(invoke(&f, &mut nodes, p2, RegisterEvent::Write(Value::from("v"))), vec![Action::WriteReturn]);
    assert_eq!(nodes[p3.index()].stored().ts, 1);
    assert_eq!(invoke(&f, &mut nodes, p3, RegisterEvent::Read), vec![Action::ReadReturn(Some(Value::from("v")))]);
}

#[test]
fn forged_write_is_dropped() {
    let f = four_process();
    let (p1, p2) = (f.pid("p1").unwrap(), f.pid("p2").unwrap());
    let node = register_nodes(&f, p2).remove(2);
    let forged = Message {
        sender: p2,
        config: f.get(p2).clone(),
        payload: Payload::Write { ts: 1, value: Value::from("x"), sig: MockSignatures.sign(p1, b"x") },
    };
    let (node, actions) = reg_step(&node, RegisterEvent::Receive(forged)).unwrap();
    assert!(actions.is_empty());
    assert_eq!(node.stored().ts, 0);
}

#[test]
fn pending_operation_rejects_another() {
    let f = four_process();
    let p2 = f.pid("p2").unwrap();
    let mut node = register_nodes(&f, p2).remove(1);
    node.handle(RegisterEvent::Write(Value::from("a"))).unwrap();
    assert!(node.busy());
    assert!(node.handle(RegisterEvent::Read).is_err());
}

#[test]
fn message_wire_round_trip() {
    let f = four_process();
    let u = f.universe();
    let p2 = f.pid("p2").unwrap();
    let payloads = vec![
        Payload::Send { value: Value::from("v") },
        Payload::Echo { value: Value::from("v") },
        Payload::Ready { value: Value::from("v") },
        Payload::Any,
        Payload::Write { ts: 3, value: Value::from("w"), sig: MockSignatures.sign(p2, b"w") },
        Payload::Ack { ts: 3 },
        Payload::Read { rid: 7 },
        Payload::Value { rid: 7, ts: 0, value: None, sig: quorumlace_core::protocols::Signature::genesis() },
    ];
    for payload in payloads {
        for config in [f.get(p2).clone(), Configuration::empty()] {
            let m = Message { sender: p2, config, payload: payload.clone() };
            let wire = m.to_wire(u);
            let json = serde_json::to_string(&wire).unwrap();
            let back = Message::from_wire(u, &serde_json::from_str(&json).unwrap()).unwrap();
            assert_eq!(back, m);
        }
    }
}

#[test]
fn malformed_wire_message_is_rejected() {
    let f = four_process();
    let u = f.universe();
    let mut wire =
        Message { sender: Pid(0), config: f.get(Pid(0)).clone(), payload: Payload::Ack { ts: 1 } }.to_wire(u);
    wire.ts = None;
    assert!(Message::from_wire(u, &wire).is_err());
    wire.ts = Some(1);
    wire.sender = "p9".into();
    assert!(Message::from_wire(u, &wire).is_err());
}
