use super::evolve::EvolveOptions;
use super::model::Hamiltonian;
use super::ode::{integrate, OdeOptions};
use super::types::{CMat, CVec, DensityMatrix, C64};
use crate::error::{Error, Result};

pub const LINDBLAD_DIM_LIMIT: usize = 256;

fn to_vec(m: &CMat) -> CVec {
    CVec::from_column_slice(m.as_slice())
}

fn to_mat(v: &CVec, n: usize) -> CMat {
    CMat::from_column_slice(n, n, v.as_slice())
}

/// d rho/dt = -i[H, rho] + sum_k (L rho L^dag - {L^dag L, rho}/2).
///
/// Returns (t, rho) at each accepted step, or at the requested times.
pub fn evolve_lindblad(
    h: &Hamiltonian,
    collapse: &[CMat],
    rho0: &DensityMatrix,
    span: (f64, f64),
    opts: &EvolveOptions,
) -> Result<Vec<(f64, DensityMatrix)>> {
    let n = h.dim;
    if n > LINDBLAD_DIM_LIMIT {
        return Err(Error::DimensionLimit {
            dim: n,
            limit: LINDBLAD_DIM_LIMIT,
        });
    }
    if rho0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rho0.dim(),
        });
    }
    if let Some(l) = collapse.iter().find(|l| l.nrows() != n || l.ncols() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: l.nrows(),
        });
    }
    if h.decay().is_some() {
        return Err(Error::InvalidArgument(
            "pass decay as collapse operators, not as a non-Hermitian term".into(),
        ));
    }
    let ldl: CMat = collapse
        .iter()
        .fold(CMat::zeros(n, n), |acc, l| acc + l.adjoint() * l);
    let half = C64::new(0.5, 0.0);
    let mi = C64::new(0.0, -1.0);

    let mut stops = h.breakpoints();
    let sample = match &opts.record {
        super::evolve::Record::Times(ts) => {
            stops.extend(ts.iter().copied());
            Some(ts.clone())
        }
        _ => None,
    };
    let keep_all = matches!(opts.record, super::evolve::Record::Steps);

    let mut out = Vec::new();
    let fin = integrate(
        |t, region, y, dy| {
            let rho = to_mat(y, n);
            let hm = h.matrix_at(t, region);
            let mut d = (&hm * &rho - &rho * &hm) * mi;
            for l in collapse {
                d += l * &rho * l.adjoint();
            }
            d -= (&ldl * &rho + &rho * &ldl) * half;
            dy.copy_from(&to_vec(&d));
        },
        span.0,
        span.1,
        &to_vec(rho0.entries()),
        &stops,
        &OdeOptions {
            rtol: opts.rtol,
            atol: opts.atol,
            max_step: opts.max_step,
            ..OdeOptions::default()
        },
        |t, y| {
            let take = keep_all
                || sample
                    .as_ref()
                    .is_some_and(|s| s.iter().any(|&x| (x - t).abs() <= 1e-12 * (1.0 + t.abs())));
            if take {
                out.push((t, DensityMatrix::from_raw(to_mat(y, n))));
            }
        },
    )?;
    if matches!(opts.record, super::evolve::Record::Final) {
        out.push((span.1, DensityMatrix::from_raw(to_mat(&fin, n))));
    }
    Ok(out)
}
