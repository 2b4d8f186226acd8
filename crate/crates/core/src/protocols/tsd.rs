//! Blockade CNOT gates driven through two-photon-like target transitions:
//! the two-step construction and the single simultaneous pulse.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;

use super::schedule::{simulate, PulseSchedule, SimOptions, Target};
use crate::error::{Error, Result};
use crate::ham::{Atom, DriveSpec, Interaction, Register};
use crate::metrics::pedersen_fidelity;
use crate::qcore::{cr, CMat};

pub fn cnot() -> CMat {
    let mut m = CMat::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(i, j)] = cr(1.0);
    }
    m
}

/// |10> -> -|11>, |11> -> -|10>.
pub fn one_shot_ideal() -> CMat {
    let mut m = CMat::zeros(4, 4);
    for (i, j, s) in [(0, 0, 1.0), (1, 1, 1.0), (3, 2, -1.0), (2, 3, -1.0)] {
        m[(i, j)] = cr(s);
    }
    m
}

/// alpha = sqrt(16 k^2 - 1).
pub fn admissible_alpha(k: u32) -> f64 {
    let k = k as f64;
    (16.0 * k * k - 1.0).sqrt()
}

/// Branch k of an admissible alpha, or an error naming the closest admissible values.
pub fn alpha_branch(alpha: f64) -> Result<u32> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    let kf = (alpha * alpha + 1.0).sqrt() / 4.0;
    let k = kf.round().max(1.0) as u32;
    if (admissible_alpha(k) - alpha).abs() <= 1e-9 * alpha.max(1.0) {
        return Ok(k);
    }
    let lo = kf.floor().max(1.0) as u32;
    let near: Vec<String> = [lo, lo + 1]
        .iter()
        .map(|&k| format!("sqrt({}) = {:.9}", 16 * k * k - 1, admissible_alpha(k)))
        .collect();
    Err(Error::InvalidArgument(format!(
        "alpha = {alpha} violates sqrt(alpha^2 + 1) = 4k; nearest admissible values: {}",
        near.join(", ")
    )))
}

/// Levels {0, 1, r, r'} per atom, V on every doubly excited pair, decay 1/tau on r and r'.
pub fn tsd_register(v: f64, tau: Option<f64>) -> Result<Register> {
    let mut atom = Atom::new(&["0", "1", "r", "r'"]);
    if let Some(tau) = tau {
        atom = atom
            .with_decay("r", 1.0 / tau)?
            .with_decay("r'", 1.0 / tau)?;
    }
    let mut reg = Register::new(vec![atom.clone(), atom]);
    for la in ["r", "r'"] {
        for lb in ["r", "r'"] {
            reg.interactions.push(Interaction::Shift {
                a: 0,
                b: 1,
                la: la.into(),
                lb: lb.into(),
                v,
            });
        }
    }
    Ok(reg)
}

/// Two steps of duration 2 pi / Omega_t. Step one: target 1 <-> r and 0 <-> r' at
/// Omega_t, control 1 <-> r at alpha Omega_t for the first half. Step two: target
/// 1 <-> r' and 0 <-> r at -Omega_t, control as before.
pub fn tsd_cnot_two_pulse(
    omega_t: f64,
    alpha: f64,
    v: f64,
    tau: Option<f64>,
) -> Result<PulseSchedule> {
    alpha_branch(alpha)?;
    if !(omega_t > 0.0) {
        return Err(Error::InvalidArgument("Omega_t must be positive".into()));
    }
    let tp = PI / omega_t;
    let reg = tsd_register(v, tau)?;
    let inputs = reg.subspace(&["0", "1"]);
    let oc = alpha * omega_t;
    let s = PulseSchedule::new(
        "tsd_cnot_two_pulse",
        reg,
        4.0 * tp,
        inputs,
        Target::Unitary(cnot()),
    )
    .drive(DriveSpec::new(1, "1", "r", omega_t).during(0.0, 2.0 * tp))
    .drive(DriveSpec::new(1, "0", "r'", omega_t).during(0.0, 2.0 * tp))
    .drive(DriveSpec::new(0, "1", "r", oc).during(0.0, tp))
    .drive(
        DriveSpec::new(1, "1", "r'", omega_t)
            .phase(PI)
            .during(2.0 * tp, 4.0 * tp),
    )
    .drive(
        DriveSpec::new(1, "0", "r", omega_t)
            .phase(PI)
            .during(2.0 * tp, 4.0 * tp),
    )
    .drive(DriveSpec::new(0, "1", "r", oc).during(2.0 * tp, 3.0 * tp));
    Ok(s)
}

/// Duration 2 sqrt(2) k1 pi / Omega_t.
pub fn one_shot_duration(omega_t: f64, k1: u32) -> f64 {
    2.0 * SQRT_2 * k1 as f64 * PI / omega_t
}

/// Single simultaneous pulse: control 1 <-> r at ratio Omega_t, target 0 <-> r and 1 <-> r at Omega_t.
pub fn tsd_cnot_one_shot(
    omega_t: f64,
    ratio: f64,
    k1: u32,
    v: f64,
    tau: Option<f64>,
) -> Result<PulseSchedule> {
    if !(ratio > 0.0 && omega_t > 0.0) || k1 == 0 {
        return Err(Error::InvalidArgument(
            "ratio, Omega_t and k1 must be positive".into(),
        ));
    }
    let mut atom = Atom::new(&["0", "1", "r"]);
    if let Some(tau) = tau {
        atom = atom.with_decay("r", 1.0 / tau)?;
    }
    let reg = Register::new(vec![atom.clone(), atom]).with_interaction(Interaction::Shift {
        a: 0,
        b: 1,
        la: "r".into(),
        lb: "r".into(),
        v,
    });
    let inputs = reg.subspace(&["0", "1"]);
    let t = one_shot_duration(omega_t, k1);
    Ok(PulseSchedule::new(
        "tsd_cnot_one_shot",
        reg,
        t,
        inputs,
        Target::Unitary(one_shot_ideal()),
    )
    .drive(DriveSpec::new(0, "1", "r", ratio * omega_t))
    .drive(DriveSpec::new(1, "0", "r", omega_t))
    .drive(DriveSpec::new(1, "1", "r", omega_t)))
}

/// Implied (k2, k3) for a ratio at branch k1: k2 = Omega_c t / (4 pi),
/// k3 = (Omega_bar t / (2 pi) - 1) / 2 with Omega_bar = sqrt(Omega_c^2 + 2 Omega_t^2).
pub fn implied_k(ratio: f64, k1: u32) -> (f64, f64) {
    let t = one_shot_duration(1.0, k1);
    let k2 = ratio * t / (4.0 * PI);
    let ob = (ratio * ratio + 2.0).sqrt();
    (k2, (ob * t / (2.0 * PI) - 1.0) / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsdSearch {
    pub omega_t: f64,
    pub v: f64,
    /// Rydberg lifetime folded into the ranking across k1 (None: noiseless)
    pub tau: Option<f64>,
    pub grid: usize,
}

impl Default for TsdSearch {
    fn default() -> Self {
        Self {
            omega_t: std::f64::consts::TAU,
            v: 1e9,
            tau: Some(330.0),
            grid: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TsdCondition {
    pub k1: u32,
    pub ratio: f64,
    pub k2: f64,
    pub k3: f64,
    /// distance of k2 and k3 from the nearest integers
    pub residuals: [f64; 2],
    /// noiseless map infidelity at the ratio
    pub map_error: f64,
    /// infidelity with decay (equals map_error when tau is None)
    pub total_error: f64,
}

pub fn one_shot_error(omega_t: f64, ratio: f64, k1: u32, v: f64, tau: Option<f64>) -> Result<f64> {
    let s = tsd_cnot_one_shot(omega_t, ratio, k1, v, tau)?;
    let r = simulate(
        &s,
        &SimOptions {
            decay: tau.is_some(),
            ..SimOptions::default()
        },
    )?;
    Ok(1.0 - pedersen_fidelity(&r.map, &one_shot_ideal())?)
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// For every k1 <= k1_max the noiseless map fidelity is maximized over the ratio
/// bracket (grid, then golden section). Branches are ranked by the error with decay
/// when `tau` is set; ties go to the smaller k1, then the smaller ratio.
pub fn tsd_condition_search(
    k1_max: u32,
    bracket: (f64, f64),
    cfg: &TsdSearch,
) -> Result<TsdCondition> {
    let (lo, hi) = bracket;
    if k1_max == 0 {
        return Err(Error::InvalidArgument("k1_max must be at least 1".into()));
    }
    if !(lo > 0.0 && hi > lo) || cfg.grid < 3 {
        return Err(Error::InvalidArgument(format!(
            "empty ratio bracket [{lo}, {hi}]"
        )));
    }
    let found: Vec<Result<TsdCondition>> = (1..=k1_max)
        .into_par_iter()
        .map(|k1| {
            let err =
                |r: f64| one_shot_error(cfg.omega_t, r, k1, cfg.v, None).unwrap_or(f64::INFINITY);
            let step = (hi - lo) / (cfg.grid - 1) as f64;
            let mut best = (0usize, f64::INFINITY);
            for i in 0..cfg.grid {
                let e = err(lo + step * i as f64);
                if e < best.1 {
                    best = (i, e);
                }
            }
            let a = (lo + step * best.0.saturating_sub(1) as f64).max(lo);
            let b = (lo + step * (best.0 + 1) as f64).min(hi);
            let ratio = golden(err, a, b, 1e-10);
            let map_error = err(ratio);
            let total_error = match cfg.tau {
                Some(_) => one_shot_error(cfg.omega_t, ratio, k1, cfg.v, cfg.tau)?,
                None => map_error,
            };
            let (k2, k3) = implied_k(ratio, k1);
            Ok(TsdCondition {
                k1,
                ratio,
                k2,
                k3,
                residuals: [(k2 - k2.round()).abs(), (k3 - k3.round()).abs()],
                map_error,
                total_error,
            })
        })
        .collect();
    let mut all = found.into_iter().collect::<Result<Vec<_>>>()?;
    all.sort_by(|x, y| {
        x.total_error
            .total_cmp(&y.total_error)
            .then(x.k1.cmp(&y.k1))
            .then(x.ratio.total_cmp(&y.ratio))
    });
    Ok(all[0])
}
