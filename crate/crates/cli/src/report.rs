use std::collections::BTreeMap;
use std::fmt::Write as _;

use jetinv::symexpr::{normalize, Expr, Verdict, Witness};
use serde::Serialize;

/// Largest expression (in tree nodes) printed in full.
const MAX_PRINTED_NODES: u64 = 20_000;

#[derive(Debug, Serialize)]
pub struct Entry {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub kind: String,
    pub seed: u64,
    pub trials: u32,
    pub invariants: BTreeMap<String, Entry>,
    pub flags: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

pub fn render_expr(e: &Expr) -> String {
    normalize(e).display_capped(MAX_PRINTED_NODES)
}

fn witness_map(w: &Witness) -> BTreeMap<String, String> {
    w.assignment.iter().map(|(l, v)| (l.to_string(), v.to_string())).collect()
}

impl Report {
    pub fn new(kind: &str, seed: u64, trials: u32) -> Report {
        Report {
            kind: kind.to_string(),
            seed,
            trials,
            invariants: BTreeMap::new(),
            flags: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records a verdict; the expression is attached when `expr` is given.
    pub fn entry(&mut self, name: &str, verdict: &Verdict, expr: Option<&Expr>) {
        let entry = Entry {
            verdict: if verdict.is_zero() { "zero" } else { "nonzero" },
            witness: verdict.witness().map(witness_map),
            expr: expr.map(render_expr),
        };
        self.invariants.insert(name.to_string(), entry);
    }

    pub fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind: {} (seed {:#x}, {} trials)", self.kind, self.seed, self.trials);
        if !self.invariants.is_empty() {
            let width = self.invariants.keys().map(|k| k.len()).max().unwrap_or(0);
            for (name, e) in &self.invariants {
                let _ = write!(out, "  {name:<width$}  {:<7}", e.verdict);
                if let Some(w) = e.witness.as_ref().filter(|w| !w.is_empty()) {
                    let pts: Vec<String> = w.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    let _ = write!(out, "  at {{{}}}", pts.join(", "));
                }
                out.push('\n');
                if let Some(x) = &e.expr {
                    let _ = writeln!(out, "  {:width$}  = {x}", "");
                }
            }
        }
        if !self.flags.is_empty() {
            out.push_str("flags:\n");
            for (name, v) in &self.flags {
                let _ = writeln!(out, "  {name}: {v}");
            }
        }
        if !self.notes.is_empty() {
            out.push_str("notes:\n");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }
}
