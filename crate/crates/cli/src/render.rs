use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::run::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Renders a report. JSON is pretty-printed with a trailing newline and
/// is stable under re-serialization.
pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(obj) = report.model.as_object() {
        for key in ["model", "variant", "structure", "basis", "path"] {
            if let Some(v) = obj.get(key) {
                let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                let _ = writeln!(out, "{key:<10} {v}");
            }
        }
        if let Some(c) = obj.get("convention").and_then(|c| c.get("selected")) {
            let _ = writeln!(out, "{:<10} {}", "convention", c.as_str().unwrap_or("none"));
        }
        if let Some(warnings) = obj.get("warnings").and_then(|w| w.as_array()) {
            for w in warnings {
                let _ = writeln!(
                    out,
                    "warning    {} deviation {}",
                    w["condition"].as_str().unwrap_or("?"),
                    w["max_deviation"]
                );
            }
        }
    }
    if !report.records.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<14} {:>7} {:>14} {:>10}  result",
            "condition", "samples", "max_deviation", "tolerance"
        );
        for r in &report.records {
            let _ = writeln!(
                out,
                "{:<14} {:>7} {:>14.3e} {:>10.1e}  {}",
                r.condition,
                r.samples,
                r.max_deviation,
                r.tolerance,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "overall: {}", if report.pass { "pass" } else { "FAIL" });
    out
}
