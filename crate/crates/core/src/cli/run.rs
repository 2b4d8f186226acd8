//! Config-driven runs over sweep points.

use std::time::Instant;

use rayon::prelude::*;

use super::catalog::{Params, Stat, Value};
use super::config::ExperimentConfig;
use super::output::{csv_header, fmt9, records_json, write_csv, write_json};
use super::CliError;

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub index: usize,
    /// every schema parameter, as written in the config or defaulted
    pub params: Vec<(String, Value)>,
    pub metrics: Vec<(String, Stat)>,
    pub wall_time: Option<f64>,
}

impl RunRecord {
    pub fn csv_row(&self) -> Vec<String> {
        let mut row = vec![self.index.to_string()];
        row.extend(self.params.iter().map(|(_, v)| v.render()));
        for (_, s) in &self.metrics {
            row.push(fmt9(s.mean));
            row.push(fmt9(s.se));
        }
        if let Some(t) = self.wall_time {
            row.push(fmt9(t));
        }
        row
    }

    pub fn metric(&self, name: &str) -> Option<Stat> {
        self.metrics
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, s)| *s)
    }
}

fn evaluate_point(
    cfg: &ExperimentConfig,
    index: usize,
    point: &Params,
) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    let all = cfg
        .protocol
        .evaluate(point, &cfg.noise)
        .map_err(CliError::from_numerics)?;
    let metrics = cfg
        .metrics
        .iter()
        .map(|m| {
            let s = all
                .iter()
                .find(|(k, _)| k == m)
                .map(|(_, s)| *s)
                .unwrap_or(Stat {
                    mean: f64::NAN,
                    se: f64::NAN,
                });
            (m.clone(), s)
        })
        .collect();
    let params = cfg
        .protocol
        .params
        .iter()
        .map(|p| {
            (
                p.name.to_string(),
                point
                    .get(p.name)
                    .cloned()
                    .unwrap_or_else(|| p.default.clone()),
            )
        })
        .collect();
    let wall_time = cfg.output.wall_time.then(|| start.elapsed().as_secs_f64());
    Ok(RunRecord {
        index,
        params,
        metrics,
        wall_time,
    })
}

/// Evaluates every sweep point in parallel; records come back in sweep order.
pub fn run_config(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>, CliError> {
    let points = cfg.points();
    points
        .par_iter()
        .enumerate()
        .map(|(i, p)| evaluate_point(cfg, i, p))
        .collect()
}

/// Runs and writes the configured outputs. Without any output path the JSON goes to stdout.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>, CliError> {
    let records = run_config(cfg)?;
    let names: Vec<&str> = cfg.protocol.params.iter().map(|p| p.name).collect();
    if let Some(path) = &cfg.output.csv {
        write_csv(
            path,
            &csv_header(&names, &cfg.metrics, cfg.output.wall_time),
            &records,
        )?;
    }
    let json = records_json(cfg.protocol.name, cfg.seed, &records);
    if let Some(path) = &cfg.output.json {
        write_json(path, &json)?;
    }
    if cfg.output.csv.is_none() && cfg.output.json.is_none() {
        println!(
            "{}",
            serde_json::to_string_pretty(&json).map_err(|e| CliError::Io(e.to_string()))?
        );
    }
    Ok(records)
}
