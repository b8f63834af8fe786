//! Deterministic report rendering: sorted keys, exact numbers, rationals
//! as "a/b", versioned schema.

use serde_json::{json, Map, Value};
use sigma_kernel_core::rig::{Nat, SigmaDegree};

pub const SCHEMA: &str = "sigma-kernel-report/1";

pub struct ReportBuilder {
    command: String,
    bounds: Map<String, Value>,
    warnings: Vec<String>,
}

impl ReportBuilder {
    pub fn new(command: &str, depth: u32, effort: u64, window: u32) -> ReportBuilder {
        let mut bounds = Map::new();
        bounds.insert("depth".into(), json!(depth));
        bounds.insert("effort".into(), json!(effort));
        bounds.insert("window".into(), json!(window));
        ReportBuilder { command: command.to_string(), bounds, warnings: Vec::new() }
    }

    pub fn warn_all<I: IntoIterator<Item = String>>(&mut self, ws: I) {
        self.warnings.extend(ws);
    }

    /// serde_json maps are ordered by key, so serialization is canonical
    pub fn finish(mut self, result: Value) -> String {
        self.warnings.sort();
        self.warnings.dedup();
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "bounds": Value::Object(self.bounds),
            "result": result,
            "warnings": self.warnings,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serialization");
        out.push('\n');
        out
    }
}

pub fn nat_value(n: Nat) -> Value {
    match n {
        Nat::Fin(v) => json!(v),
        Nat::Inf => json!("inf"),
    }
}

pub fn sigma_degree_value(d: &SigmaDegree) -> Value {
    json!({
        "coeff": nat_value(d.coeff),
        "ldeg": d.ldeg,
        "display": format!("{}", d),
    })
}
