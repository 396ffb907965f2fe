//! Deterministic JSON reports. Key order is insertion order; every rational
//! is a `"p/q"` string. Wall-clock timings are only included on request,
//! since they would break byte-for-byte reproducibility.

use std::time::Duration;

use cocycle_core::checks::CheckOutcome;
use serde_json::{json, Map, Value};

pub struct Check {
    name: String,
    ok: bool,
    fields: Map<String, Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), ok, fields: Map::new() }
    }

    pub fn counted(name: impl Into<String>, samples: usize, passed: usize) -> Self {
        Self::new(name, samples == passed).with("samples", samples).with("passed", passed)
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn ok(&self) -> bool {
        self.ok
    }
}

impl From<&CheckOutcome> for Check {
    fn from(o: &CheckOutcome) -> Self {
        let c = Check::counted(o.name.clone(), o.samples, o.passed);
        match &o.first_failure {
            Some(f) => c.with("first_failure", f.clone()),
            None => c,
        }
    }
}

pub struct Report {
    header: Map<String, Value>,
    body: Map<String, Value>,
    checks: Vec<Check>,
    timings: Option<Map<String, Value>>,
}

impl Report {
    pub fn new(command: &str, scenario: &str, include_timings: bool) -> Self {
        let mut header = Map::new();
        header.insert("command".into(), json!(command));
        header.insert("scenario".into(), json!(scenario));
        Self { header, body: Map::new(), checks: Vec::new(), timings: include_timings.then(Map::new) }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.header.insert(key.to_string(), value.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn timing(&mut self, key: &str, elapsed: Duration) {
        log::info!("{key}: {:.3}s", elapsed.as_secs_f64());
        if let Some(t) = &mut self.timings {
            t.insert(key.to_string(), json!(elapsed.as_millis() as u64));
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn to_value(&self) -> Value {
        let mut out = self.header.clone();
        out.insert("status".into(), json!(if self.passed() { "pass" } else { "fail" }));
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("status".into(), json!(if c.ok { "pass" } else { "fail" }));
                m.extend(c.fields.clone());
                Value::Object(m)
            })
            .collect();
        out.insert("checks".into(), Value::Array(checks));
        out.extend(self.body.clone());
        if let Some(t) = &self.timings {
            out.insert("timings_ms".into(), Value::Object(t.clone()));
        }
        Value::Object(out)
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_value();
        if pretty {
            serde_json::to_string_pretty(&v).expect("reports are plain JSON")
        } else {
            serde_json::to_string(&v).expect("reports are plain JSON")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks_and_order_is_stable() {
        let mut r = Report::new("x", "s", false);
        r.param("seed", 3);
        r.check(Check::counted("a", 2, 2));
        r.set("value", "1/2");
        assert_eq!(r.render(false), r#"{"command":"x","scenario":"s","seed":3,"status":"pass","checks":[{"name":"a","status":"pass","samples":2,"passed":2}],"value":"1/2"}"#);
        r.check(Check::new("b", false));
        assert!(!r.passed());
        r.timing("t", Duration::from_millis(5));
        assert!(!r.render(false).contains("timings_ms"));
    }
}
