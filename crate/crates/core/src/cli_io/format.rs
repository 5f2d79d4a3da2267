use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;

use super::{OutputFormat, Record, ReportEnvelope};
use crate::error::{HurzetaError, Result};

/// Significant digits of every float written to CSV.
pub const CSV_FLOAT_DIGITS: usize = 17;

pub fn render(env: &ReportEnvelope, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(env),
        OutputFormat::Csv => to_csv(env),
        OutputFormat::Human => Ok(to_human(env)),
    }
}

pub fn to_json(env: &ReportEnvelope) -> Result<String> {
    serde_json::to_string_pretty(env)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| HurzetaError::Output(format!("json encoding failed: {e}")))
}

fn float_text(v: f64) -> String {
    format!("{:.*e}", CSV_FLOAT_DIGITS - 1, v)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => float_text(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
    }
}

/// `{"re", "im"}` objects become `key_re` / `key_im`; other objects `key.field`.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) if map.len() == 2 && map.contains_key("re") && map.contains_key("im") => {
            out.push((format!("{prefix}_re"), scalar_text(&map["re"])));
            out.push((format!("{prefix}_im"), scalar_text(&map["im"])));
        }
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&format!("{prefix}.{k}"), inner, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar_text(v))),
    }
}

fn flatten_map(section: &str, map: &BTreeMap<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in map {
        flatten(&format!("{section}.{k}"), v, out);
    }
}

/// Column/value pairs of one record, in a stable order.
pub fn record_cells(r: &Record) -> Vec<(String, String)> {
    let mut out = vec![
        ("index".to_string(), r.index.to_string()),
        ("kind".to_string(), r.kind.clone()),
        ("status".to_string(), r.status.to_string()),
    ];
    flatten_map("inputs", &r.inputs, &mut out);
    flatten_map("outputs", &r.outputs, &mut out);
    flatten_map("error_estimates", &r.error_estimates, &mut out);
    out.push(("warnings".to_string(), r.warnings.join(" | ")));
    out.push(("error".to_string(), r.error.clone().unwrap_or_default()));
    out.push(("timing_ms".to_string(), float_text(r.timing_ms)));
    out
}

/// One row per record; the header is the union of all columns in first-seen order.
pub fn to_csv(env: &ReportEnvelope) -> Result<String> {
    let rows: Vec<Vec<(String, String)>> = env.results.iter().map(record_cells).collect();
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let io_err = |e: csv::Error| HurzetaError::Output(format!("csv encoding failed: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(io_err)?;
    for row in rows {
        let lookup: BTreeMap<String, String> = row.into_iter().collect();
        let line: Vec<&str> = header
            .iter()
            .map(|h| lookup.get(h).map_or("", String::as_str))
            .collect();
        w.write_record(&line).map_err(io_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| HurzetaError::Output(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| HurzetaError::Output(format!("csv encoding failed: {e}")))
}

fn complex_of(v: Option<&Value>) -> Option<(f64, f64)> {
    let v = v?;
    Some((v.get("re")?.as_f64()?, v.get("im")?.as_f64()?))
}

fn breakdown_table(r: &Record, s: &mut String) {
    let rows = [
        ("1/(2 b^k)", "term_half_bk"),
        ("polylog term", "term_polylog_single"),
        ("polylog sum term", "term_polylog_sum"),
        ("integral term", "term_integral"),
        ("total", "value"),
        ("series oracle", "oracle"),
    ];
    let _ = writeln!(s, "  {:<18} {:>25} {:>25}", "term", "re", "im");
    for (label, key) in rows {
        if let Some((re, im)) = complex_of(r.outputs.get(key)) {
            let _ = writeln!(s, "  {label:<18} {re:>25.16e} {im:>25.16e}");
        }
    }
}

pub fn to_human(env: &ReportEnvelope) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "hurzeta {} {}",
        env.tool_version,
        env.config_echo.command.as_str()
    );
    for r in &env.results {
        let inputs: Vec<String> = r
            .inputs
            .iter()
            .map(|(k, v)| match complex_of(Some(v)) {
                Some((re, im)) => format!("{k}={re}{im:+}i"),
                None => format!("{k}={v}"),
            })
            .collect();
        let _ = writeln!(s, "\n[{}] {} {} ({})", r.index, r.kind, inputs.join(" "), r.status);
        if r.kind == "eval" && r.outputs.contains_key("term_half_bk") {
            breakdown_table(r, &mut s);
            for key in ["discrepancy", "route"] {
                if let Some(v) = r.outputs.get(key) {
                    let _ = writeln!(s, "  {key}: {}", scalar_text(v));
                }
            }
        } else {
            for (k, v) in &r.outputs {
                let mut cells = Vec::new();
                flatten(k, v, &mut cells);
                for (name, text) in cells {
                    let _ = writeln!(s, "  {name}: {text}");
                }
            }
        }
        for (k, v) in &r.error_estimates {
            let _ = writeln!(s, "  error estimate {k}: {}", scalar_text(v));
        }
        for w in &r.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        if let Some(e) = &r.error {
            let _ = writeln!(s, "  error: {e}");
        }
    }
    let m = &env.summary;
    let _ = writeln!(
        s,
        "\nsummary: {} records, {} ok, {} passed, {} failed, {} unsupported, {} errors",
        m.total, m.ok, m.passed, m.failed, m.unsupported, m.errors
    );
    s
}
