use nalgebra::SymmetricEigen;

use super::types::{cr, CMat, OperatorMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Eigen {
    /// ascending
    pub values: Vec<f64>,
    /// orthonormal eigenvectors as columns, ordered like `values`
    pub vectors: CMat,
}

fn sorted_eigen(m: &CMat) -> Eigen {
    let n = m.nrows();
    let se = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Eigen { values, vectors }
}

pub fn eig_hermitian(h: &OperatorMatrix) -> Result<Eigen> {
    if !h.is_hermitian() {
        let asym = super::types::max_asymmetry(h.entries());
        return Err(Error::NonHermitian {
            max_asymmetry: asym,
        });
    }
    if h.dim() == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    Ok(sorted_eigen(h.entries()))
}

/// Ascending eigenvalues of a matrix assumed Hermitian (no check).
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let se = SymmetricEigen::new(m.clone());
    let mut v: Vec<f64> = se.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// exp(-i H t) for Hermitian H via its eigendecomposition.
pub fn expm_hermitian(h: &CMat, t: f64) -> CMat {
    let e = sorted_eigen(h);
    let n = h.nrows();
    let mut scaled = e.vectors.clone();
    for (j, lam) in e.values.iter().enumerate() {
        let ph = C64::from_polar(1.0, -lam * t);
        for i in 0..n {
            scaled[(i, j)] *= ph;
        }
    }
    scaled * e.vectors.adjoint()
}

/// exp(-i H t) for a general (e.g. decay-augmented) H.
pub fn expm_general(h: &CMat, t: f64) -> CMat {
    (h * C64::new(0.0, -t)).exp()
}

/// Square root of a positive semidefinite Hermitian matrix; eigenvalues below
/// `clip` are an error, those in [clip, 0) are set to zero. Eigenvalues at the
/// roundoff floor (n eps times the largest) are also zeroed, since their square
/// roots would otherwise inject O(sqrt eps) noise.
pub fn sqrtm_psd(m: &CMat, clip: f64) -> Result<CMat> {
    let e = sorted_eigen(m);
    if let Some(&min) = e.values.first() {
        if min < clip {
            return Err(Error::InvalidDensity(format!(
                "eigenvalue {min:.3e} below {clip:.1e}"
            )));
        }
    }
    let n = m.nrows();
    let floor = n as f64 * f64::EPSILON * e.values.last().map_or(0.0, |x| x.abs());
    let mut scaled = e.vectors.clone();
    for (j, lam) in e.values.iter().enumerate() {
        let s = cr(if *lam <= floor { 0.0 } else { lam.sqrt() });
        for i in 0..n {
            scaled[(i, j)] *= s;
        }
    }
    Ok(scaled * e.vectors.adjoint())
}

/// Sum of |eigenvalues| of a Hermitian matrix (trace norm).
pub fn trace_norm_hermitian(m: &CMat) -> f64 {
    hermitian_eigenvalues(m).iter().map(|x| x.abs()).sum()
}
