//! Report output: a stable JSON schema for machines and a residual table
//! for humans. The JSON deliberately excludes wall time so reruns with the
//! same seed are byte-identical.

use std::collections::BTreeMap;

use anyhow::Result;

use semiflow::VerificationReport;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(anyhow::anyhow!("unknown format {other:?}; expected json or text")),
        }
    }
}

/// Render the stable JSON document: {version, reports:[{suite, pass,
/// residuals:{name: value}, metadata:{key: value}}]}. Built as a generic
/// JSON value so keys are emitted in sorted order and a parse → serialize
/// round trip through any standards-following parser is bit-identical.
pub fn to_json(reports: &[VerificationReport]) -> String {
    use serde_json::{json, Map, Value};

    let reports: Vec<Value> = reports
        .iter()
        .map(|r| {
            let residuals: BTreeMap<&str, f64> =
                r.residuals.iter().map(|res| (res.name.as_str(), res.value)).collect();
            let metadata: BTreeMap<&str, &str> =
                r.metadata.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
            let mut obj = Map::new();
            obj.insert("metadata".into(), serde_json::to_value(metadata).expect("strings"));
            obj.insert("pass".into(), Value::Bool(r.pass));
            obj.insert("residuals".into(), serde_json::to_value(residuals).expect("floats"));
            obj.insert("suite".into(), Value::String(r.suite.clone()));
            Value::Object(obj)
        })
        .collect();
    let doc = json!({
        "reports": reports,
        "version": SCHEMA_VERSION,
    });
    serde_json::to_string_pretty(&doc).expect("reports serialize")
}

/// Render the human-readable summary, one line per suite plus residuals.
pub fn to_text(timed: &[(VerificationReport, f64)]) -> String {
    let mut out = String::new();
    for (report, elapsed) in timed {
        out.push_str(&format!("{report}"));
        out.push_str(&format!("    wall-time = {elapsed:.3}s\n"));
    }
    let passed = timed.iter().filter(|(r, _)| r.pass).count();
    out.push_str(&format!("{passed}/{} suites passed\n", timed.len()));
    out
}

/// Write to a path or stdout.
pub fn emit(content: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
