//! Geometric phases of the adiabatic dark states along a closed loop in (theta, phi_r).

use std::f64::consts::TAU;

use crate::error::{Error, Result};

pub type LoopFn<'a> = &'a dyn Fn(f64) -> (f64, f64);

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    // split first so periodic integrands cannot fool the initial estimate
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (x0, x1) = (a + h * i as f64, a + h * (i + 1) as f64);
            let (f0, fm, f1) = (f(x0), f(0.5 * (x0 + x1)), f(x1));
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            simpson(&f, x0, x1, f0, fm, f1, whole, tol / pieces as f64, 50)
        })
        .sum()
}

/// (phi1, phi2) for the loop s in [0, 1] -> (theta(s), phi_r(s)):
/// phi1 = -oint sin^2 theta dphi_r, phi2 = -oint sin^2 cos^2 / (cos^4 + 2 sin^4) dphi_r.
/// The loop must close: theta(1) = theta(0) and phi_r(1) - phi_r(0) a multiple of 2 pi.
pub fn berry_phases(path: LoopFn, tol: f64) -> Result<(f64, f64)> {
    let (t0, p0) = path(0.0);
    let (t1, p1) = path(1.0);
    let winding = (p1 - p0) / TAU;
    if (t1 - t0).abs() > 1e-9 || (winding - winding.round()).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "open loop: (theta, phi_r) goes from ({t0}, {p0}) to ({t1}, {p1})"
        )));
    }
    let h = 1e-6;
    let dphi = |s: f64| {
        let (a, b) = ((s - h).max(0.0), (s + h).min(1.0));
        (path(b).1 - path(a).1) / (b - a)
    };
    let w1 = |s: f64| {
        let st = path(s).0.sin();
        -st * st * dphi(s)
    };
    let w2 = |s: f64| {
        let th = path(s).0;
        let (s2, c2) = (th.sin().powi(2), th.cos().powi(2));
        -s2 * c2 / (c2 * c2 + 2.0 * s2 * s2) * dphi(s)
    };
    Ok((
        adaptive_simpson(w1, 0.0, 1.0, tol),
        adaptive_simpson(w2, 0.0, 1.0, tol),
    ))
}
