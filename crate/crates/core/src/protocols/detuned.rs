//! Two-pulse detuned controlled-phase gate and its condition solver.

use std::f64::consts::{PI, TAU};

use super::schedule::{diag_phases, wrap_phase, PulseSchedule, Target};
use crate::error::{Error, Result};
use crate::ham::{blockade_register, DriveSpec};
use crate::qcore::{c, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGateSolution {
    pub theta: f64,
    pub delta_over_omega: f64,
    pub xi: f64,
    /// pulse duration times Omega
    pub t_omega: f64,
    pub k: i32,
    /// phase of |01> (and |10>) after both pulses, in (-2 pi, 0]
    pub alpha: f64,
    /// [phase closure, |01> return]
    pub residuals: [f64; 2],
}

struct Parts {
    ob: f64,
    t: f64,
    ep: f64,
    em: f64,
}

fn parts(x: f64) -> Parts {
    let ob = (x * x + 2.0).sqrt();
    let s = (1.0 + x * x).sqrt();
    Parts {
        ob,
        t: TAU / ob,
        ep: 0.5 * (x + s),
        em: 0.5 * (x - s),
    }
}

fn z(p: &Parts) -> C64 {
    let e = |w: f64| C64::from_polar(1.0, p.t * w);
    e(p.ep) * p.em - e(p.em) * p.ep
}

/// Phase alpha of |01> implied by the first closure relation, in (-2 pi, 0].
pub fn alpha_of(x: f64) -> f64 {
    let zz = z(&parts(x));
    let a = (zz.conj() / zz).arg();
    if a > 0.0 {
        a - TAU
    } else {
        a
    }
}

/// 2 alpha + 2 pi (1 + x / Omega_bar) - theta - 2 k pi.
fn closure(x: f64, theta: f64, k: Option<i32>) -> f64 {
    let p = parts(x);
    let g = 2.0 * alpha_of(x) + TAU * (1.0 + x / p.ob) - theta;
    match k {
        Some(k) => g - TAU * k as f64,
        None => wrap_phase(g),
    }
}

/// xi from the unimodular ratio fixing the second pulse's phase.
pub fn xi_of(x: f64) -> f64 {
    let p = parts(x);
    let e = |w: f64| C64::from_polar(1.0, p.t * w);
    let num = (e(p.ep) - e(p.em)) / (e(-p.ep) - e(-p.em));
    let zz = z(&p);
    let zc = e(-p.ep) * p.em - e(-p.em) * p.ep;
    let r = num * zc / zz;
    (-r.arg()).rem_euclid(TAU)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a) < 1e-15 {
            return m;
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Two-level |01>-sector propagator for one pulse over (|01>, |0r>).
fn sector_step(x: f64, t: f64, phase: f64, coupling: f64) -> [[C64; 2]; 2] {
    use crate::qcore::{expm_hermitian, CMat};
    let w = C64::from_polar(0.5 * coupling, phase);
    let h = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), w.conj(), w, c(x, 0.0)]);
    let u = expm_hermitian(&h, t);
    [[u[(0, 0)], u[(0, 1)]], [u[(1, 0)], u[(1, 1)]]]
}

fn sector_return(x: f64, t: f64, xi: f64, coupling: f64) -> C64 {
    let a = sector_step(x, t, 0.0, coupling);
    let b = sector_step(x, t, xi, coupling);
    b[0][0] * a[0][0] + b[0][1] * a[1][0]
}

pub const SCAN_LO: f64 = 1e-3;
pub const SCAN_HI: f64 = 2.0;
pub const SCAN_STEP: f64 = 1e-3;

/// Root-finds Delta/Omega for conditional phase `theta` (units Omega = 1).
/// `k = None` solves modulo 2 pi and reports the branch.
pub fn detuned_phase_solve(theta: f64, k: Option<i32>) -> Result<PhaseGateSolution> {
    if !(theta > 0.0 && theta <= TAU) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside (0, 2 pi]"
        )));
    }
    let f = |x: f64| closure(x, theta, k);
    let n = ((SCAN_HI - SCAN_LO) / SCAN_STEP).round() as usize;
    let mut prev = (SCAN_LO, f(SCAN_LO));
    for i in 1..=n {
        let b = SCAN_LO + i as f64 * SCAN_STEP;
        let fb = f(b);
        let (a, fa) = prev;
        prev = (b, fb);
        // sign change that is not a 2 pi wrap or an alpha jump
        if (fa < 0.0) != (fb < 0.0) && (fa - fb).abs() < 1.0 {
            let x = bisect(f, a, b);
            return Ok(solution_at(theta, x));
        }
    }
    Err(Error::NoRoot {
        lo: SCAN_LO,
        hi: SCAN_HI,
        k: k.unwrap_or(0),
    })
}

/// Solution record at a given Delta/Omega (no search).
pub fn solution_at(theta: f64, x: f64) -> PhaseGateSolution {
    let p = parts(x);
    let alpha = alpha_of(x);
    let g = 2.0 * alpha + TAU * (1.0 + x / p.ob) - theta;
    let k = (g / TAU).round() as i32;
    let xi = xi_of(x);
    let ret = sector_return(x, p.t, xi, 1.0);
    PhaseGateSolution {
        theta,
        delta_over_omega: x,
        xi,
        t_omega: p.t,
        k,
        alpha,
        residuals: [wrap_phase(g).abs(), (ret.norm() - 1.0).abs()],
    }
}

/// Phase of |11> after the first pulse: -pi (1 + Delta/Omega_bar).
pub fn first_pulse_11_phase(x: f64) -> f64 {
    -PI * (1.0 + x / parts(x).ob)
}

/// Both atoms driven 1 <-> r with detuning Delta for two pulses of duration t, the
/// second with Rabi phase xi. `blockade_correction` adds Omega^2 / (2V) to the
/// detuning to offset the |rr> level repulsion of the |11> branch.
pub fn detuned_phase_schedule(
    sol: &PhaseGateSolution,
    omega: f64,
    v: f64,
    blockade_correction: bool,
) -> Result<PulseSchedule> {
    if !(omega > 0.0) {
        return Err(Error::InvalidArgument("Omega must be positive".into()));
    }
    let mut delta = sol.delta_over_omega * omega;
    if blockade_correction {
        delta += omega * omega / (2.0 * v);
    }
    let t = sol.t_omega / omega;
    let reg = blockade_register(v);
    let inputs = reg.subspace(&["0", "1"]);
    let beta = 2.0 * sol.alpha - sol.theta;
    let ideal = diag_phases(&[0.0, sol.alpha, sol.alpha, beta]);
    let mut s = PulseSchedule::new(
        "detuned_phase_gate",
        reg,
        2.0 * t,
        inputs,
        Target::Unitary(ideal),
    );
    for atom in 0..2 {
        s = s.drive(
            DriveSpec::new(atom, "1", "r", omega)
                .detuned(delta)
                .during(0.0, t),
        );
        s = s.drive(
            DriveSpec::new(atom, "1", "r", omega)
                .detuned(delta)
                .phase(sol.xi)
                .during(t, 2.0 * t),
        );
    }
    Ok(s.note(format!("V/Omega = {:.3e}", v / omega)))
}
