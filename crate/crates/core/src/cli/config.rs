//! Experiment configuration (TOML).

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;

use super::catalog::{find, Kind, Params, ProtocolInfo, Value, TEMPERATURE};
use super::CliError;
use crate::protocols::GHZ_MAX_ATOMS;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// non-Hermitian Rydberg decay where the protocol defines lifetimes
    #[serde(default)]
    pub decay: bool,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// copied from the top-level seed during validation
    #[serde(skip)]
    pub seed: Option<u64>,
}

fn default_samples() -> usize {
    64
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    /// adds a wall_time_s column; output is then no longer byte-reproducible
    #[serde(default)]
    pub wall_time: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    protocol: String,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
    #[serde(default)]
    noise: NoiseConfig,
    #[serde(default)]
    sweep: Vec<SweepAxis>,
    #[serde(default)]
    metrics: Vec<String>,
    #[serde(default)]
    output: OutputConfig,
    seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub protocol: ProtocolInfo,
    /// values as written (ordinary MHz); conversion happens in the evaluator
    pub params: Params,
    pub noise: NoiseConfig,
    pub sweep: Vec<SweepAxis>,
    pub metrics: Vec<String>,
    pub output: OutputConfig,
    pub seed: Option<u64>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn convert(spec_kind: Kind, name: &str, v: &toml::Value) -> Result<Value, CliError> {
    match (spec_kind, v) {
        (Kind::Real, toml::Value::Float(x)) => Ok(Value::Num(*x)),
        (Kind::Real | Kind::Int, toml::Value::Integer(i)) => Ok(Value::Num(*i as f64)),
        (Kind::Int, toml::Value::Float(x)) if x.fract() == 0.0 => Ok(Value::Num(*x)),
        (Kind::Bool, toml::Value::Boolean(b)) => Ok(Value::Bool(*b)),
        (Kind::Text, toml::Value::String(s)) => Ok(Value::Text(s.clone())),
        _ => Err(schema(format!(
            "parameter '{name}' expects {spec_kind:?}, got {v}"
        ))),
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| schema(e.to_string()))?;
        let protocol =
            find(&raw.protocol).ok_or_else(|| CliError::UnknownProtocol(raw.protocol.clone()))?;
        let mut params = Params::new();
        for (k, v) in &raw.params {
            let spec = protocol
                .param(k)
                .ok_or_else(|| schema(format!("{} has no parameter '{k}'", protocol.name)))?;
            let val = convert(spec.kind, k, v)?;
            if let Value::Num(x) = val {
                if !x.is_finite() {
                    return Err(schema(format!("parameter '{k}' is not finite")));
                }
            }
            params.insert(k.clone(), val);
        }
        for axis in &raw.sweep {
            let spec = protocol
                .param(&axis.param)
                .ok_or_else(|| schema(format!("sweep over unknown parameter '{}'", axis.param)))?;
            if !matches!(spec.kind, Kind::Real | Kind::Int) {
                return Err(schema(format!(
                    "sweep parameter '{}' is not numeric",
                    axis.param
                )));
            }
            if axis.values.is_empty() || axis.values.iter().any(|x| !x.is_finite()) {
                return Err(schema(format!(
                    "sweep over '{}' needs finite values",
                    axis.param
                )));
            }
            if spec.kind == Kind::Int && axis.values.iter().any(|x| x.fract() != 0.0) {
                return Err(schema(format!(
                    "sweep over '{}' needs integer values",
                    axis.param
                )));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        if raw.sweep.iter().any(|a| !seen.insert(a.param.clone())) {
            return Err(schema("a parameter is swept twice"));
        }
        let metrics = if raw.metrics.is_empty() {
            protocol.metrics.iter().map(|s| s.to_string()).collect()
        } else {
            for m in &raw.metrics {
                if !protocol.metrics.contains(&m.as_str()) {
                    return Err(schema(format!("{} has no metric '{m}'", protocol.name)));
                }
            }
            raw.metrics.clone()
        };
        let mut noise = raw.noise.clone();
        if protocol.supports_doppler {
            let mut temps: Vec<f64> = raw
                .sweep
                .iter()
                .filter(|a| a.param == TEMPERATURE)
                .flat_map(|a| a.values.clone())
                .collect();
            if let Some(Value::Num(t)) = params.get(TEMPERATURE) {
                temps.push(*t);
            }
            if temps.iter().any(|&t| t < 0.0) {
                return Err(schema("temperature_uk must be >= 0"));
            }
            if temps.iter().any(|&t| t > 0.0) {
                if raw.seed.is_none() {
                    return Err(schema("thermal sampling needs a seed"));
                }
                if noise.samples == 0 {
                    return Err(schema("samples must be at least 1"));
                }
            }
        }
        noise.seed = raw.seed;
        let cfg = ExperimentConfig {
            protocol,
            params,
            noise,
            sweep: raw.sweep,
            metrics,
            output: raw.output,
            seed: raw.seed,
        };
        cfg.check_limits()?;
        Ok(cfg)
    }

    fn check_limits(&self) -> Result<(), CliError> {
        if self.protocol.name != "ghz_asymmetric" {
            return Ok(());
        }
        let mut ns: Vec<f64> = self
            .sweep
            .iter()
            .filter(|a| a.param == "n")
            .flat_map(|a| a.values.clone())
            .collect();
        if let Some(Value::Num(n)) = self.params.get("n") {
            ns.push(*n);
        }
        match ns.into_iter().find(|&n| n > GHZ_MAX_ATOMS as f64) {
            Some(n) => Err(CliError::ResourceLimit(format!(
                "ghz_asymmetric with n = {n} exceeds {GHZ_MAX_ATOMS} atoms"
            ))),
            None => Ok(()),
        }
    }

    /// Cartesian product of the sweep axes, first axis slowest.
    pub fn points(&self) -> Vec<Params> {
        let mut out = vec![self.params.clone()];
        for axis in &self.sweep {
            out = out
                .into_iter()
                .flat_map(|base| {
                    axis.values.iter().map(move |&x| {
                        let mut p = base.clone();
                        p.insert(axis.param.clone(), Value::Num(x));
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// Checks a config against the schema emitted by `list-protocols --json`.
pub fn validate_against_schema(
    schema_json: &serde_json::Value,
    cfg_text: &str,
) -> Result<(), String> {
    let raw: RawConfig = toml::from_str(cfg_text).map_err(|e| e.to_string())?;
    let entry = schema_json
        .as_array()
        .and_then(|a| a.iter().find(|e| e["name"] == raw.protocol.as_str()))
        .ok_or_else(|| format!("protocol '{}' not in schema", raw.protocol))?;
    let params = entry["params"]
        .as_array()
        .ok_or("schema entry without params")?;
    let kind_of = |name: &str| {
        params
            .iter()
            .find(|p| p["name"] == name)
            .and_then(|p| p["kind"].as_str().map(String::from))
    };
    let check = |name: &str, v: &toml::Value| -> Result<(), String> {
        let kind = kind_of(name).ok_or_else(|| format!("unknown parameter '{name}'"))?;
        let ok = matches!(
            (kind.as_str(), v),
            ("real", toml::Value::Float(_) | toml::Value::Integer(_))
                | ("int", toml::Value::Integer(_))
                | ("bool", toml::Value::Boolean(_))
                | ("text", toml::Value::String(_))
        );
        if ok {
            Ok(())
        } else {
            Err(format!("parameter '{name}' does not match kind {kind}"))
        }
    };
    for (k, v) in &raw.params {
        check(k, v)?;
    }
    for a in &raw.sweep {
        let kind =
            kind_of(&a.param).ok_or_else(|| format!("unknown sweep parameter '{}'", a.param))?;
        if kind != "real" && kind != "int" {
            return Err(format!("sweep parameter '{}' is not numeric", a.param));
        }
    }
    let metrics: Vec<&str> = entry["metrics"]
        .as_array()
        .ok_or("schema entry without metrics")?
        .iter()
        .filter_map(|m| m.as_str())
        .collect();
    for m in &raw.metrics {
        if !metrics.contains(&m.as_str()) {
            return Err(format!("unknown metric '{m}'"));
        }
    }
    Ok(())
}
