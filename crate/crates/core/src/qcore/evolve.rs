use log::warn;

use super::eig::{expm_general, expm_hermitian};
use super::model::Hamiltonian;
use super::ode::{integrate, OdeOptions};
use super::types::{eye, CMat, CVec, OperatorMatrix, StateVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum Record {
    /// every accepted integrator step
    Steps,
    /// only the final state
    Final,
    /// exactly these times (the integrator lands on each)
    Times(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct EvolveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_step: Option<f64>,
    pub record: Record,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_step: None,
            record: Record::Steps,
        }
    }
}

impl EvolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: (tol * 1e-2).max(1e-14),
            ..Self::default()
        }
    }

    pub fn final_only(mut self) -> Self {
        self.record = Record::Final;
        self
    }

    pub fn times(mut self, times: Vec<f64>) -> Self {
        self.record = Record::Times(times);
        self
    }

    fn ode(&self) -> OdeOptions {
        OdeOptions {
            rtol: self.rtol,
            atol: self.atol,
            max_step: self.max_step,
            ..OdeOptions::default()
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CVec>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&CVec> {
        self.states.last()
    }

    /// Trapezoid integral of sum_i w_i |psi_i(t)|^2 over the recorded samples.
    pub fn integrate_weighted_population(&self, weights: &[f64]) -> f64 {
        let pop =
            |psi: &CVec| -> f64 { psi.iter().zip(weights).map(|(a, w)| w * a.norm_sqr()).sum() };
        self.times
            .windows(2)
            .zip(self.states.windows(2))
            .map(|(t, s)| 0.5 * (t[1] - t[0]) * (pop(&s[0]) + pop(&s[1])))
            .sum()
    }
}

fn evolve_raw(
    h: &Hamiltonian,
    psi0: &CVec,
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    if psi0.len() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: h.dim,
            got: psi0.len(),
        });
    }
    let mut stops = h.breakpoints();
    let sample: Option<Vec<f64>> = match &opts.record {
        Record::Times(ts) => {
            stops.extend(ts.iter().copied());
            let mut s = ts.clone();
            s.sort_by(f64::total_cmp);
            Some(s)
        }
        _ => None,
    };
    let mut traj = Trajectory::default();
    let keep_all = matches!(opts.record, Record::Steps);
    let fin = integrate(
        |t, region, y, dy| h.rhs(t, region, y, dy),
        span.0,
        span.1,
        psi0,
        &stops,
        &opts.ode(),
        |t, y| {
            let take = keep_all
                || sample
                    .as_ref()
                    .is_some_and(|s| s.iter().any(|&x| (x - t).abs() <= 1e-12 * (1.0 + t.abs())));
            if take {
                traj.times.push(t);
                traj.states.push(y.clone());
            }
        },
    )?;
    if traj.times.last().is_none_or(|&t| t != span.1) && !matches!(opts.record, Record::Times(_)) {
        traj.times.push(span.1);
        traj.states.push(fin);
    }
    Ok(traj)
}

/// Integrates the Schrodinger equation d psi/dt = -i H(t) psi.
pub fn evolve(
    h: &Hamiltonian,
    psi0: &StateVector,
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    if !(opts.rtol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    psi0.check_normalized(1e-8)?;
    evolve_raw(h, &psi0.amplitudes, span, opts)
}

/// Final state only; no normalization check (used for non-normalized columns).
pub fn evolve_vector(
    h: &Hamiltonian,
    psi0: &CVec,
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<CVec> {
    let o = EvolveOptions {
        record: Record::Final,
        ..opts.clone()
    };
    let traj = evolve_raw(h, psi0, span, &o)?;
    Ok(traj
        .states
        .into_iter()
        .last()
        .expect("final state recorded"))
}

/// Evolution under H - (i/2) sum Gamma_k |k><k| with per-basis-state rates.
/// Returns the final (unnormalized) state and its squared norm.
pub fn evolve_open(
    h: &Hamiltonian,
    rates: &[f64],
    psi0: &StateVector,
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<(CVec, f64)> {
    psi0.check_normalized(1e-8)?;
    let hd = h.clone().with_decay(rates.to_vec())?;
    let psi = evolve_vector(&hd, &psi0.amplitudes, span, opts)?;
    let survival = psi.norm_squared();
    Ok((psi, survival))
}

/// Ordered product of segment exponentials: U = U_n ... U_2 U_1.
pub fn propagator(segments: &[(OperatorMatrix, f64)]) -> Result<CMat> {
    let Some(first) = segments.first() else {
        warn!("empty schedule: propagator is the identity");
        return Ok(eye(1));
    };
    let n = first.0.dim();
    let mut u = eye(n);
    for (h, dt) in segments {
        if h.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: h.dim(),
            });
        }
        if *dt < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "negative segment duration {dt}"
            )));
        }
        let step = if h.is_hermitian() {
            expm_hermitian(h.entries(), *dt)
        } else {
            expm_general(h.entries(), *dt)
        };
        u = step * u;
    }
    Ok(u)
}

/// Exact propagator of a piecewise-constant model over `span`, one
/// exponential per interval between breakpoints.
pub fn propagator_piecewise(h: &Hamiltonian, span: (f64, f64)) -> Result<CMat> {
    if !h.is_piecewise_constant() {
        return Err(Error::InvalidArgument(
            "model has time-dependent coefficients".into(),
        ));
    }
    let mut marks: Vec<f64> = h
        .breakpoints()
        .into_iter()
        .filter(|&t| t > span.0 && t < span.1)
        .collect();
    marks.insert(0, span.0);
    marks.push(span.1);
    let mut u = eye(h.dim);
    for w in marks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let m = h.matrix_at(0.5 * (a + b), 0.5 * (a + b));
        let step = if h.is_hermitian() {
            expm_hermitian(&m, b - a)
        } else {
            expm_general(&m, b - a)
        };
        u = step * u;
    }
    Ok(u)
}

/// Propagator columns for the given basis inputs by ODE integration.
pub fn propagator_columns(
    h: &Hamiltonian,
    inputs: &[usize],
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<CMat> {
    let mut u = CMat::zeros(h.dim, inputs.len());
    for (col, &idx) in inputs.iter().enumerate() {
        let mut e = CVec::zeros(h.dim);
        e[idx] = super::types::cr(1.0);
        let out = evolve_vector(h, &e, span, opts)?;
        u.set_column(col, &out);
    }
    Ok(u)
}
