//! Doppler dephasing, position-driven interaction fluctuation, decay
//! accounting and closed-form blockade errors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocols::{simulate, GateResult, PulseSchedule, SimOptions};
use crate::qcore::Trajectory;

pub const KB: f64 = 1.380649e-23;
pub const AMU: f64 = 1.66053906660e-27;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    /// uK
    pub temperature: f64,
    /// atomic mass units
    pub mass: f64,
    /// signed effective wavevector along the drive axis (rad/um)
    pub k_eff: f64,
}

impl ThermalSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.temperature >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "temperature {} uK is negative",
                self.temperature
            )));
        }
        if !(self.mass > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "mass {} must be positive",
                self.mass
            )));
        }
        Ok(())
    }

    /// sqrt(kB T / m) in um/us (numerically equal to m/s).
    pub fn sigma_v(&self) -> f64 {
        (KB * self.temperature * 1e-6 / (self.mass * AMU)).sqrt()
    }

    /// T_D = sqrt(2) / (k sigma_v), infinite at T = 0.
    pub fn dephasing_time(&self) -> f64 {
        let ks = (self.k_eff * self.sigma_v()).abs();
        if ks == 0.0 {
            f64::INFINITY
        } else {
            std::f64::consts::SQRT_2 / ks
        }
    }

    /// Ensemble-averaged |<e^{i k v t}>| = exp(-(k sigma_v t)^2 / 2).
    pub fn coherence(&self, t: f64) -> f64 {
        let x = self.k_eff * self.sigma_v() * t;
        (-0.5 * x * x).exp()
    }
}

/// Reported error components; not claimed to sum to the total infidelity.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct ErrorBudget {
    pub decay: f64,
    pub blockade_leak: f64,
    pub dephasing: f64,
    pub residual: f64,
}

/// Sum of 2 pi / lambda_j d_j in rad/um; wavelengths in nm.
pub fn effective_wavevector(wavelengths_nm: &[f64], directions: &[[f64; 3]]) -> Result<[f64; 3]> {
    if wavelengths_nm.len() != directions.len() {
        return Err(Error::DimensionMismatch {
            expected: wavelengths_nm.len(),
            got: directions.len(),
        });
    }
    let mut k = [0.0; 3];
    for (&lam, d) in wavelengths_nm.iter().zip(directions) {
        if lam == 0.0 || !lam.is_finite() {
            return Err(Error::InvalidArgument(
                "wavelength must be finite and nonzero".into(),
            ));
        }
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "direction norm {n} is not 1"
            )));
        }
        let kk = std::f64::consts::TAU / (lam * 1e-3);
        for i in 0..3 {
            k[i] += kk * d[i];
        }
    }
    Ok(k)
}

/// Standard normals from a seeded ChaCha stream.
pub fn standard_normals(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect()
}

/// One-dimensional thermal velocities (um/us). The same seed gives the same
/// underlying normals at every temperature.
pub fn doppler_samples(spec: &ThermalSpec, count: usize, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    if count == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be at least 1".into(),
        ));
    }
    let s = spec.sigma_v();
    Ok(standard_normals(count, seed)
        .into_iter()
        .map(|z| s * z)
        .collect())
}

/// Mean and standard error.
pub fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    if v.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let m = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (m, 0.0);
    }
    let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[derive(Debug, Clone)]
pub struct DopplerStats {
    pub fidelity: (f64, f64),
    pub velocities: Vec<f64>,
    pub results: Vec<GateResult>,
}

/// Monte Carlo over thermal velocities of the listed atoms (independent
/// samples per atom, derived seeds). Trajectories run in parallel and are
/// reduced in sample order.
pub fn apply_doppler(
    schedule: &PulseSchedule,
    spec: &ThermalSpec,
    moving: &[usize],
    count: usize,
    seed: u64,
    base: &SimOptions,
) -> Result<DopplerStats> {
    let n_atoms = schedule.register.atoms.len();
    let per_atom: Vec<Vec<f64>> = moving
        .iter()
        .enumerate()
        .map(|(k, _)| doppler_samples(spec, count, seed.wrapping_add(k as u64)))
        .collect::<Result<_>>()?;
    if let Some(&a) = moving.iter().find(|&&a| a >= n_atoms) {
        return Err(Error::InvalidArgument(format!(
            "atom {a} outside the register"
        )));
    }
    let results: Vec<GateResult> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut v = vec![0.0; n_atoms];
            for (k, &a) in moving.iter().enumerate() {
                v[a] = per_atom[k][i];
            }
            let opts = SimOptions {
                velocities: Some(v),
                ..base.clone()
            };
            simulate(schedule, &opts)
        })
        .collect::<Result<_>>()?;
    let f: Vec<f64> = results.iter().map(GateResult::fidelity).collect();
    Ok(DopplerStats {
        fidelity: mean_se(&f),
        velocities: per_atom.first().cloned().unwrap_or_default(),
        results,
    })
}

/// Relative separation offsets (um) of two trapped atoms along the axis:
/// each atom Gaussian with sigma_x = sqrt(kB T / (m w^2)).
/// Trap frequencies are angular, in rad/us.
pub fn position_fluctuation(
    trap_freqs: [f64; 2],
    temperature_uk: f64,
    mass_amu: f64,
    count: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if trap_freqs.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::InvalidArgument(
            "trap frequencies must be positive".into(),
        ));
    }
    if !(temperature_uk >= 0.0) || !(mass_amu > 0.0) {
        return Err(Error::InvalidArgument(
            "temperature must be >= 0 and mass > 0".into(),
        ));
    }
    let sig =
        |w: f64| (KB * temperature_uk * 1e-6 / (mass_amu * AMU * (w * 1e6).powi(2))).sqrt() * 1e6;
    let (s0, s1) = (sig(trap_freqs[0]), sig(trap_freqs[1]));
    let z = standard_normals(2 * count, seed);
    Ok((0..count)
        .map(|i| s1 * z[2 * i + 1] - s0 * z[2 * i])
        .collect())
}

/// |rr> population after the blockaded 2 pi pulse.
pub fn blockade_error_analytic(omega: f64, v: f64) -> f64 {
    let w2 = v * v + omega * omega;
    let s = (std::f64::consts::PI * w2.sqrt() / omega).sin();
    omega * omega / w2 * s * s
}

/// Fluctuation average Omega^2 / (2 V^2).
pub fn blockade_error_average(omega: f64, v: f64) -> f64 {
    omega * omega / (2.0 * v * v)
}

/// (1/tau) * integral of the excited population, with `rates[i]` = 1/tau of basis state i,
/// averaged over the given trajectories.
pub fn decay_error(trajectories: &[Trajectory], rates: &[f64]) -> f64 {
    if trajectories.is_empty() {
        return 0.0;
    }
    trajectories
        .iter()
        .map(|t| t.integrate_weighted_population(rates))
        .sum::<f64>()
        / trajectories.len() as f64
}
