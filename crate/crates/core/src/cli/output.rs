//! Number formatting and result writers.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value as Json};

use super::run::RunRecord;
use super::CliError;

/// x rounded to 9 significant digits.
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Shortest scientific form of `round9(x)`.
pub fn fmt9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    format!("{:e}", round9(x))
}

fn num(x: f64) -> Json {
    serde_json::Number::from_f64(round9(x))
        .map(Json::Number)
        .unwrap_or(Json::Null)
}

/// Header: index, every schema parameter, then `m` and `m_se` per requested metric.
pub fn csv_header(param_names: &[&str], metrics: &[String], wall_time: bool) -> Vec<String> {
    let mut h = vec!["index".to_string()];
    h.extend(param_names.iter().map(|s| s.to_string()));
    for m in metrics {
        h.push(m.clone());
        h.push(format!("{m}_se"));
    }
    if wall_time {
        h.push("wall_time_s".into());
    }
    h
}

fn ensure_parent(path: &Path) -> Result<(), CliError> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display()))),
        _ => Ok(()),
    }
}

pub fn write_csv(path: &Path, header: &[String], records: &[RunRecord]) -> Result<(), CliError> {
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in records {
        w.write_record(r.csv_row()).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub fn records_json(protocol: &str, seed: Option<u64>, records: &[RunRecord]) -> Json {
    let recs: Vec<Json> = records
        .iter()
        .map(|r| {
            let mut params = Map::new();
            for (k, v) in &r.params {
                params.insert(
                    k.clone(),
                    match v {
                        super::catalog::Value::Num(x) => num(*x),
                        super::catalog::Value::Bool(b) => Json::Bool(*b),
                        super::catalog::Value::Text(s) => Json::String(s.clone()),
                    },
                );
            }
            let mut metrics = Map::new();
            for (k, s) in &r.metrics {
                metrics.insert(k.clone(), json!({ "mean": num(s.mean), "se": num(s.se) }));
            }
            let mut o = Map::new();
            o.insert("index".into(), json!(r.index));
            o.insert("params".into(), Json::Object(params));
            o.insert("metrics".into(), Json::Object(metrics));
            if let Some(t) = r.wall_time {
                o.insert("wall_time_s".into(), num(t));
            }
            Json::Object(o)
        })
        .collect();
    json!({ "protocol": protocol, "seed": seed, "records": recs })
}

pub fn write_json(path: &Path, value: &Json) -> Result<(), CliError> {
    ensure_parent(path)?;
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(f, "{text}").map_err(|e| CliError::Io(e.to_string()))
}
