//! The result document: a flat record rendered as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct ResultDocument {
    pub command: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<String>,
    /// Absent for a zero localized module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_module: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    /// Dense, constant term first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_coefficients: Option<Vec<serde_json::Number>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_roots: Option<Vec<serde_json::Number>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_roots: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub natural_map_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_input: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_input_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_output: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_output_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applied: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// Wall-clock milliseconds per stage; not deterministic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

pub fn integer_number(s: &str) -> serde_json::Number {
    s.parse().expect("decimal integer")
}

fn list(out: &mut String, title: &str, items: &[String]) {
    let _ = writeln!(out, "{title}:");
    if items.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for it in items {
        let _ = writeln!(out, "  {it}");
    }
}

fn dimension(d: Option<usize>) -> String {
    d.map_or_else(|| "empty variety".to_string(), |d| d.to_string())
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(f) = &self.f {
            let _ = writeln!(out, "f: {f}");
        }
        if let Some(zero) = self.zero_module {
            if zero {
                let _ = writeln!(out, "k: none (the localized module is zero)");
            }
        }
        if let Some(k) = self.k {
            let _ = writeln!(out, "k: {k}");
        }
        if let Some(b) = &self.b {
            let _ = writeln!(out, "b(s): {b}");
        }
        if let Some(r) = &self.integer_roots {
            let shown: Vec<String> = r.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "integer roots: {}",
                if shown.is_empty() {
                    "none".into()
                } else {
                    shown.join(", ")
                }
            );
        }
        if let Some(r) = &self.rational_roots {
            let _ = writeln!(
                out,
                "rational roots: {}",
                if r.is_empty() {
                    "none".into()
                } else {
                    r.join(", ")
                }
            );
        }
        if let Some(g) = &self.generator {
            let _ = writeln!(out, "generator: {g}");
        }
        if let Some(m) = &self.natural_map_factor {
            let _ = writeln!(out, "natural map: 1 -> ({m}) * generator");
        }
        if let Some(a) = &self.annihilator {
            list(&mut out, "annihilator", a);
        }
        if let Some(c) = &self.char_input {
            list(&mut out, "characteristic ideal (input)", c);
        }
        if self.char_input.is_some() {
            let _ = writeln!(
                out,
                "dimension (input): {}",
                dimension(self.char_input_dimension)
            );
        }
        if let Some(c) = &self.char_output {
            list(&mut out, "characteristic ideal (output)", c);
        }
        if self.char_output.is_some() {
            let _ = writeln!(
                out,
                "dimension (output): {}",
                dimension(self.char_output_dimension)
            );
        }
        if let Some(func) = &self.function {
            let _ = writeln!(out, "function: {func}");
        }
        if let Some(a) = &self.applied {
            list(&mut out, "results", a);
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified: {}", if v { "yes" } else { "NO" });
        }
        out
    }
}
