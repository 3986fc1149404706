use std::fmt::Write;

use serde_json::{json, Value};

use projlattice::Error;

use crate::commands::Outcome;
use crate::Format;

pub fn report(command: &str, outcome: &Outcome, format: Format) -> String {
    let ok = outcome.violations.is_empty();
    match format {
        Format::Json => {
            let v = json!({
                "command": command,
                "ok": ok,
                "violations": outcome.violations,
                "result": outcome.result,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
        }
        Format::Text => {
            let mut out = format!("{command}: {}\n", if ok { "ok" } else { "VIOLATION" });
            for v in &outcome.violations {
                let _ = writeln!(out, "violated: {}", v.invariant);
                let _ = writeln!(out, "counterexample: {}", v.counterexample);
            }
            if command == "verify" {
                suites_text(&outcome.result, &mut out);
            } else {
                flatten("", &outcome.result, &mut out);
            }
            out
        }
    }
}

fn suites_text(report: &Value, out: &mut String) {
    for s in report["suites"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "{} {} (criterion {}): {} instances, {} failures, worst metric {}",
            if s["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
            s["name"].as_str().unwrap_or("?"),
            s["criterion"],
            s["instances"],
            s["failures"],
            s["worst_metric"].as_f64().map_or("n/a".to_string(), |w| format!("{w:.3e}")),
        );
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// `path: value` lines; arrays of scalars stay on one line.
fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if !items.iter().all(is_scalar) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{path}: {v}");
        }
    }
}

pub fn error(command: &str, e: &Error, format: Format) -> String {
    let kind = match e {
        Error::NumericInput(_) => "numeric_input",
        Error::Argument(_) => "argument",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::NotHermitian { .. } => "not_hermitian",
        Error::NotProjection(_) => "not_projection",
        Error::Order(_) => "order",
        Error::Construction(_) => "construction",
        Error::Config(_) => "config",
        Error::Json { .. } => "json",
        Error::Io { .. } => "io",
    };
    match format {
        Format::Json => {
            let mut err = json!({ "kind": kind, "message": e.to_string() });
            if let Error::Json { line, column, .. } = e {
                err["line"] = json!(line);
                err["column"] = json!(column);
            }
            let v = json!({ "command": command, "ok": false, "error": err });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize"))
        }
        Format::Text => format!("{command}: error ({kind}): {e}\n"),
    }
}
