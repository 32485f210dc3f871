//! The `qe-lab/1` report, check records and deterministic float formatting.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "qe-lab/1";

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Results and checks of one verification.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<Check>,
    /// Table form of the results; defaults to the checks.
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(results: impl Serialize, checks: Vec<Check>) -> Self {
        Outcome { results: serde_json::to_value(results).expect("serializable"), checks, csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    config: &'a Value,
    results: &'a Value,
    checks: &'a [Check],
}

/// A float at 12 significant digits.
pub fn fmt12(x: f64) -> String {
    if x.is_finite() {
        format!("{:.11e}", x)
    } else {
        format!("{x}")
    }
}

fn round12(x: f64) -> f64 {
    if x.is_finite() && x != 0.0 {
        fmt12(x).parse().expect("formatted float")
    } else {
        x
    }
}

/// Rounds every float in the tree to 12 significant digits.
pub fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64"));
            if let Some(m) = serde_json::Number::from_f64(x) {
                *n = m;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(normalize),
        Value::Object(o) => o.values_mut().for_each(normalize),
        _ => {}
    }
}

pub fn to_json(config: &Value, outcome: &Outcome) -> String {
    let mut config = config.clone();
    let mut results = outcome.results.clone();
    normalize(&mut config);
    normalize(&mut results);
    let r = Report { schema: SCHEMA, config: &config, results: &results, checks: &outcome.checks };
    let mut s = serde_json::to_string_pretty(&r).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn checks_csv(checks: &[Check]) -> String {
    let mut s = String::from("name,pass,detail\n");
    for c in checks {
        s.push_str(&format!("{},{},{}\n", csv_field(&c.name), c.pass, csv_field(&c.detail)));
    }
    s
}

pub fn to_csv(outcome: &Outcome) -> String {
    outcome.csv.clone().unwrap_or_else(|| checks_csv(&outcome.checks))
}
