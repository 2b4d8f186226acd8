//! Pinned regression suite over the reference numbers.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::Result;
use crate::ham::Envelope;
use crate::metrics::pedersen_fidelity;
use crate::noise::{apply_doppler, blockade_error_analytic, ThermalSpec};
use crate::protocols::tsd::{admissible_alpha, one_shot_ideal};
use crate::protocols::{self as p, simulate, SimOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// |obtained - expected| <= tolerance
    Within,
    /// obtained >= expected
    AtLeast,
    /// obtained <= expected
    AtMost,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub obtained: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn within(name: &str, expected: f64, obtained: f64, tol: f64) -> Self {
        let pass = (obtained - expected).abs() <= tol;
        Check {
            name: name.into(),
            expected,
            obtained,
            tolerance: tol,
            comparison: Comparison::Within,
            pass,
            detail: String::new(),
        }
    }

    pub fn at_least(name: &str, bound: f64, obtained: f64) -> Self {
        Check {
            name: name.into(),
            expected: bound,
            obtained,
            tolerance: 0.0,
            comparison: Comparison::AtLeast,
            pass: obtained >= bound,
            detail: String::new(),
        }
    }

    pub fn at_most(name: &str, bound: f64, obtained: f64) -> Self {
        Check {
            name: name.into(),
            expected: bound,
            obtained,
            tolerance: 0.0,
            comparison: Comparison::AtMost,
            pass: obtained <= bound,
            detail: String::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

/// Component-wise comparison of (Delta/Omega, xi, t Omega); the detail names every
/// component outside the tolerance. Reports the largest deviation.
pub fn triple_check(name: &str, expected: [f64; 3], obtained: [f64; 3], tol: f64) -> Check {
    const NAMES: [&str; 3] = ["delta_over_omega", "xi", "t_omega"];
    let dev: Vec<f64> = expected
        .iter()
        .zip(&obtained)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let worst = (0..3)
        .max_by(|&a, &b| dev[a].total_cmp(&dev[b]))
        .unwrap_or(0);
    let bad: Vec<String> = (0..3)
        .filter(|&i| dev[i] > tol)
        .map(|i| format!("{} off by {:.3e}", NAMES[i], dev[i]))
        .collect();
    let mut c = Check::within(name, expected[worst], obtained[worst], tol);
    c.detail = if bad.is_empty() {
        format!("worst component {}", NAMES[worst])
    } else {
        bad.join("; ")
    };
    c
}

/// Published detuned-gate triples (theta, [Delta/Omega, xi, t Omega]).
pub const DETUNED_TRIPLES: [(f64, [f64; 3]); 3] = [
    (PI, [0.3773711, 3.902423, 4.292682]),
    (PI / 2.0, [0.7281492, 4.059675, 3.950048]),
    (PI / 3.0, [0.9384181, 4.022575, 3.701998]),
];

fn blockade_checks(out: &mut Vec<Check>) -> Result<()> {
    let om = TAU;
    for r in [2.0, 5.0, 10.0, 20.0] {
        let sim = p::blockade_leak(om, r * om)?;
        out.push(Check::within(
            &format!("blockade_leak_v{r}"),
            blockade_error_analytic(om, r * om),
            sim,
            1e-8,
        ));
    }
    Ok(())
}

fn detuned_checks(out: &mut Vec<Check>) -> Result<()> {
    for (i, (theta, exp)) in DETUNED_TRIPLES.iter().enumerate() {
        let s = p::detuned_phase_solve(*theta, None)?;
        let name = [
            "detuned_triple_pi",
            "detuned_triple_pi_2",
            "detuned_triple_pi_3",
        ][i];
        out.push(triple_check(
            name,
            *exp,
            [s.delta_over_omega, s.xi, s.t_omega],
            1e-5,
        ));
    }
    let sol = p::detuned_phase_solve(PI, None)?;
    let r = simulate(
        &p::detuned_phase_schedule(&sol, TAU, 1e3 * TAU, false)?,
        &SimOptions::default(),
    )?;
    let cp = r.conditional_phase();
    let dist = p::wrap_phase(cp - PI).abs();
    out.push(
        Check::within("detuned_cphase_v1000", PI, PI + dist, 1e-3)
            .detail(format!("raw conditional phase {cp:.6}")),
    );
    out.push(Check::at_least(
        "detuned_pedersen_v1000",
        0.9999,
        r.fidelity(),
    ));
    Ok(())
}

fn tsd_checks(out: &mut Vec<Check>) -> Result<()> {
    out.push(Check::within(
        "tsd_alpha_min",
        15f64.sqrt(),
        admissible_alpha(1),
        0.0,
    ));
    let s = p::tsd_cnot_two_pulse(TAU, admissible_alpha(1), 1e6, Some(330.0))?;
    let f = simulate(&s, &SimOptions::default().with_decay())?.fidelity();
    out.push(Check::within("tsd_two_pulse_fidelity", 0.9989, f, 3e-4));

    let clean = simulate(
        &p::tsd_cnot_one_shot(TAU, 4.245739, 3, 1e9, None)?,
        &SimOptions::default(),
    )?;
    out.push(Check::within(
        "tsd_one_shot_pop_error",
        1.8e-3,
        1.0 - clean.map[(3, 2)].norm_sqr(),
        0.3e-3,
    ));
    out.push(Check::within(
        "tsd_one_shot_map_error",
        9e-4,
        1.0 - pedersen_fidelity(&clean.map, &one_shot_ideal())?,
        1.5e-4,
    ));
    let noisy = simulate(
        &p::tsd_cnot_one_shot(TAU, 4.245739, 3, 1e9, Some(330.0))?,
        &SimOptions::default().with_decay(),
    )?;
    out.push(Check::within(
        "tsd_one_shot_total_error",
        5.7e-3,
        1.0 - noisy.fidelity(),
        0.7e-3,
    ));

    let c = p::tsd_condition_search(9, (0.5, 10.0), &p::TsdSearch::default())?;
    out.push(
        Check::within("tsd_search_ratio", 4.245739, c.ratio, 1e-3).detail(format!("k1 = {}", c.k1)),
    );
    out.push(Check::within("tsd_search_k1", 3.0, c.k1 as f64, 0.0));
    out.push(Check::within("tsd_search_k2", 9.007, c.k2, 5e-4));
    out.push(Check::within("tsd_search_k3", 8.993, c.k3, 5e-4));
    Ok(())
}

fn dark_checks(out: &mut Vec<Check>, samples: usize) -> Result<()> {
    let d = p::DarkStateParams::from_physical(TAU * 7.643, 0.29, None, -33.0, 10.0)?;
    let (phase, pop) = p::dark_state_return(&d, &SimOptions::default())?;
    out.push(Check::at_most("dark_state_return_phase", 1e-3, phase.abs()));
    out.push(Check::at_most("dark_state_return_population", 1e-4, pop));
    let f = |scale: f64| -> Result<f64> {
        let q = p::DarkStateParams {
            v: d.v * scale,
            ..d
        };
        Ok(simulate(&p::dark_state_gate(&q)?, &SimOptions::default())?.fidelity())
    };
    let f0 = f(1.0)?;
    let change = (f(0.8)? - f0).abs().max((f(1.2)? - f0).abs());
    out.push(Check::at_most("dark_state_v_robustness", 1e-3, change));
    let s = p::dark_state_gate(&d)?;
    let mut errs = Vec::new();
    for t in [0.0, 10.0, 20.0, 50.0] {
        let spec = ThermalSpec {
            temperature: t,
            mass: p::DarkStateParams::CESIUM_AMU,
            k_eff: d.k_eff,
        };
        errs.push(
            1.0 - apply_doppler(&s, &spec, &[1], samples, 11, &SimOptions::default())?
                .fidelity
                .0,
        );
    }
    let monotone = errs.windows(2).all(|w| w[1] > w[0]);
    out.push(
        Check::at_least(
            "dark_state_temperature_monotone",
            1.0,
            if monotone { 1.0 } else { 0.0 },
        )
        .detail(format!(
            "errors at 0/10/20/50 uK: {}",
            errs.iter()
                .map(|e| format!("{e:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        )),
    );
    Ok(())
}

fn antiblockade_checks(out: &mut Vec<Check>) -> Result<()> {
    let s = p::antiblockade_cz(TAU, 10.0 * TAU, p::AntiblockadeMode::DetuningMatch, 1.0)?;
    let per = p::flop_period(&s, 1.25 * s.duration, 4000)?;
    out.push(Check::within(
        "antiblockade_detuning_period_ratio",
        1.0,
        per / s.duration,
        0.05,
    ));
    let s = p::antiblockade_cz(TAU, 10.0 * TAU, p::AntiblockadeMode::Modulation, 1.0)?;
    let per = p::flop_period(&s, 1.25 * s.duration, 40000)?;
    out.push(Check::within(
        "antiblockade_modulation_period_ratio",
        1.0,
        per / s.duration,
        0.10,
    ));
    Ok(())
}

fn ghz_checks(out: &mut Vec<Check>) -> Result<()> {
    for n in 2..=4 {
        let s = p::ghz_asymmetric(n, TAU, 50.0 * TAU, 50.0 * TAU, 0.0)?;
        out.push(Check::at_least(
            &format!("ghz_fidelity_n{n}"),
            0.99,
            simulate(&s, &SimOptions::default())?.fidelity(),
        ));
        out.push(Check::within(
            &format!("ghz_duration_n{n}"),
            PI / TAU * (2.0 / (n as f64).sqrt() + 2f64.sqrt()),
            s.duration,
            1e-12,
        ));
    }
    Ok(())
}

fn misc_checks(out: &mut Vec<Check>) -> Result<()> {
    let mut worst = 0.0f64;
    for (v0, v0p, om) in [(20.0, -30.0, 1.0), (-7.5, 3.1, 2.0), (0.4, -0.9, 0.7)] {
        worst = worst.max(p::spin_echo_identity_error(
            om * TAU,
            v0 * TAU,
            v0p * TAU,
            None,
        )?);
    }
    out.push(Check::at_most("spin_echo_identity", 1e-10, worst));

    let t = 4.0;
    let o = Envelope::Gaussian {
        amp: TAU * 4.0,
        center: t / 2.0,
        sigma: t / 6.0,
    };
    let d = Envelope::Linear {
        from: -TAU * 10.0,
        to: TAU * 10.0,
        t0: 0.0,
        t1: t,
    };
    let tr: Vec<f64> = (1..=7)
        .map(|n| {
            Ok(simulate(
                &p::ensemble_adiabatic_excitation(n, &o, &d, t)?,
                &SimOptions::default(),
            )?
            .fidelity())
        })
        .collect::<Result<_>>()?;
    let lo = tr.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = tr.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::at_least("ensemble_transfer_min", 0.999, lo));
    out.push(Check::at_most("ensemble_transfer_spread", 1e-3, hi - lo));
    Ok(())
}

type Group = fn(&mut Vec<Check>) -> Result<()>;

/// Runs every check; numerical failures inside a group become failed entries.
pub fn regress() -> Vec<Check> {
    let mut out = Vec::new();
    let groups: [(&str, Group); 7] = [
        ("blockade", blockade_checks),
        ("detuned", detuned_checks),
        ("tsd", tsd_checks),
        ("dark_state", |o| dark_checks(o, 32)),
        ("antiblockade", antiblockade_checks),
        ("ghz", ghz_checks),
        ("misc", misc_checks),
    ];
    for (name, g) in groups {
        if let Err(e) = g(&mut out) {
            out.push(Check {
                name: format!("{name}_group"),
                expected: 0.0,
                obtained: f64::NAN,
                tolerance: 0.0,
                comparison: Comparison::Within,
                pass: false,
                detail: e.to_string(),
            });
        }
    }
    out
}

pub fn report_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let cmp = match c.comparison {
            Comparison::Within => format!("{:.9e} +/- {:.3e}", c.expected, c.tolerance),
            Comparison::AtLeast => format!(">= {:.9e}", c.expected),
            Comparison::AtMost => format!("<= {:.9e}", c.expected),
        };
        s += &format!(
            "{verdict} {:<38} expected {cmp:<34} obtained {:.9e}",
            c.name, c.obtained
        );
        if !c.detail.is_empty() {
            s += &format!("  ({})", c.detail);
        }
        s.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    s += &format!(
        "{} checks, {} passed, {} failed\n",
        checks.len(),
        checks.len() - failed,
        failed
    );
    s
}

pub fn report_json(checks: &[Check]) -> serde_json::Value {
    let failed = checks.iter().filter(|c| !c.pass).count();
    serde_json::json!({ "checks": checks, "total": checks.len(), "passed": checks.len() - failed, "failed": failed })
}
