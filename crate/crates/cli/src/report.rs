use serde_json::{json, Map, Value as Json};

use quorumlace_core::{ProcSet, Universe};

/// Outcome of one command: a JSON document, its text rendering and the pass flag.
pub struct Report {
    pub json: Json,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, ok: bool) -> Self {
        let json = json!({ "format": 1, "command": command, "ok": ok });
        Report { json, text: String::new(), ok }
    }

    pub fn set(&mut self, key: &str, value: Json) {
        self.json.as_object_mut().expect("report is an object").insert(key.to_string(), value);
    }

    pub fn fail(&mut self) {
        self.ok = false;
        self.set("ok", Json::Bool(false));
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("report serializes"));
        } else {
            print!("{}", self.text);
            println!("{}", if self.ok { "ok" } else { "FAILED" });
        }
    }
}

pub fn set_json(u: &Universe, s: ProcSet) -> Json {
    json!(u.names(s))
}

pub fn family_json(u: &Universe, family: &[ProcSet]) -> Json {
    json!(u.family_names(family))
}

pub fn per_process(u: &Universe, mut f: impl FnMut(quorumlace_core::Pid) -> Json) -> Json {
    let mut m = Map::new();
    for p in u.pids() {
        m.insert(u.id(p).to_string(), f(p));
    }
    Json::Object(m)
}
