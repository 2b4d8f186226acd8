//! Dormand-Prince 5(4) with step-size control.
//!
//! The right-hand side receives, besides `t`, the midpoint of the current
//! sub-interval between stop times. Piecewise models use it to decide which
//! segment is active, so stage evaluations that land exactly on a breakpoint
//! are attributed to the step that owns them.

use super::types::{CVec, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_step: None,
            max_steps: 5_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin(out: &mut CVec, y: &CVec, h: f64, terms: &[(f64, &CVec)]) {
    out.copy_from(y);
    for (a, k) in terms {
        if *a != 0.0 {
            out.axpy(C64::new(h * a, 0.0), k, C64::new(1.0, 0.0));
        }
    }
}

fn err_norm(err: &CVec, y0: &CVec, y1: &CVec, opts: &OdeOptions) -> f64 {
    let n = err.len().max(1);
    let mut acc = 0.0;
    for i in 0..err.len() {
        let sc = opts.atol + opts.rtol * y0[i].norm().max(y1[i].norm());
        let r = err[i].norm() / sc;
        acc += r * r;
    }
    (acc / n as f64).sqrt()
}

fn scaled_norm(v: &CVec, y: &CVec, opts: &OdeOptions) -> f64 {
    let n = v.len().max(1);
    let mut acc = 0.0;
    for i in 0..v.len() {
        let sc = opts.atol + opts.rtol * y[i].norm();
        let r = v[i].norm() / sc;
        acc += r * r;
    }
    (acc / n as f64).sqrt()
}

/// Integrates `dy/dt = f(t, region, y)` from `t0` to `t1`, landing exactly on
/// every time in `stops`. `on_step` sees every accepted (t, y), including the
/// initial point.
pub fn integrate<F, G>(
    mut f: F,
    t0: f64,
    t1: f64,
    y0: &CVec,
    stops: &[f64],
    opts: &OdeOptions,
    mut on_step: G,
) -> Result<CVec>
where
    F: FnMut(f64, f64, &CVec, &mut CVec),
    G: FnMut(f64, &CVec),
{
    if !(opts.rtol > 0.0) || !(opts.atol > 0.0) {
        return Err(Error::InvalidArgument("tolerances must be positive".into()));
    }
    if !(t1 >= t0) {
        return Err(Error::InvalidArgument(format!(
            "time span [{t0}, {t1}] is reversed"
        )));
    }
    let mut marks: Vec<f64> = stops
        .iter()
        .copied()
        .filter(|&s| s > t0 && s < t1)
        .collect();
    marks.push(t1);
    marks.sort_by(f64::total_cmp);
    marks.dedup();

    let n = y0.len();
    let mut y = y0.clone();
    let mut t = t0;
    on_step(t, &y);
    if t1 == t0 {
        return Ok(y);
    }

    let mut k1 = CVec::zeros(n);
    let mut k2 = CVec::zeros(n);
    let mut k3 = CVec::zeros(n);
    let mut k4 = CVec::zeros(n);
    let mut k5 = CVec::zeros(n);
    let mut k6 = CVec::zeros(n);
    let mut k7 = CVec::zeros(n);
    let mut tmp = CVec::zeros(n);
    let mut ynew = CVec::zeros(n);
    let mut err = CVec::zeros(n);
    let mut h_prev: Option<f64> = None;
    let mut steps = 0usize;

    for &b in &marks {
        let a = t;
        if b <= a {
            continue;
        }
        let region = 0.5 * (a + b);
        let span = b - a;
        let h_max = opts.max_step.unwrap_or(span).min(span);
        f(t, region, &y, &mut k1);

        let mut h = match h_prev {
            Some(hp) => hp.min(h_max),
            None => {
                // Hairer-Wanner starting step
                let d0 = scaled_norm(&y, &y, opts);
                let d1 = scaled_norm(&k1, &y, opts);
                let h0 = if d0 < 1e-5 || d1 < 1e-5 {
                    1e-6 * span
                } else {
                    0.01 * d0 / d1
                };
                let h0 = h0.min(h_max);
                lin(&mut tmp, &y, h0, &[(1.0, &k1)]);
                f(t + h0, region, &tmp, &mut k2);
                k2.axpy(C64::new(-1.0, 0.0), &k1, C64::new(1.0, 0.0));
                let d2 = scaled_norm(&k2, &y, opts) / h0;
                let h1 = if d1.max(d2) <= 1e-15 {
                    (h0 * 1e-3).max(1e-6 * span)
                } else {
                    (0.01 / d1.max(d2)).powf(0.2)
                };
                (100.0 * h0).min(h1).min(h_max)
            }
        };
        let h_min = 1e-14 * span.max(t.abs()).max(1e-300);

        loop {
            if t >= b {
                break;
            }
            let last = t + h >= b - 1e-12 * span;
            let h_nominal = h;
            if last {
                h = b - t;
            }
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::StepUnderflow { t });
            }

            lin(&mut tmp, &y, h, &[(A21, &k1)]);
            f(t + C2 * h, region, &tmp, &mut k2);
            lin(&mut tmp, &y, h, &[(A31, &k1), (A32, &k2)]);
            f(t + C3 * h, region, &tmp, &mut k3);
            lin(&mut tmp, &y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
            f(t + C4 * h, region, &tmp, &mut k4);
            lin(
                &mut tmp,
                &y,
                h,
                &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
            );
            f(t + C5 * h, region, &tmp, &mut k5);
            lin(
                &mut tmp,
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            );
            let t_end = if last { b } else { t + h };
            f(t_end, region, &tmp, &mut k6);
            lin(
                &mut ynew,
                &y,
                h,
                &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            );
            f(t_end, region, &ynew, &mut k7);

            err.fill(C64::new(0.0, 0.0));
            for (e, k) in [
                (E1, &k1),
                (E3, &k3),
                (E4, &k4),
                (E5, &k5),
                (E6, &k6),
                (E7, &k7),
            ] {
                err.axpy(C64::new(h * e, 0.0), k, C64::new(1.0, 0.0));
            }
            let en = err_norm(&err, &y, &ynew, opts);

            if en <= 1.0 {
                t = t_end;
                std::mem::swap(&mut y, &mut ynew);
                std::mem::swap(&mut k1, &mut k7);
                on_step(t, &y);
                let fac = if en == 0.0 {
                    5.0
                } else {
                    (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
                };
                if last {
                    // a truncated final step says little about the next sub-interval
                    h_prev = Some(h_nominal.max(h * fac));
                    break;
                }
                h = (h * fac).min(h_max);
                h_prev = Some(h);
            } else {
                let fac = if en.is_finite() {
                    (0.9 * en.powf(-0.2)).clamp(0.1, 0.9)
                } else {
                    0.1
                };
                h = if last { h } else { h_nominal } * fac;
                if h < h_min {
                    return Err(Error::StepUnderflow { t });
                }
            }
        }
        t = b;
    }
    Ok(y)
}
