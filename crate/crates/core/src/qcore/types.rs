use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const HERMITIAN_TOL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entrywise |A - A^dag|.
/// n x n identity.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn max_asymmetry(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitian_tol(a: &CMat) -> f64 {
    // absolute 1e-12 for O(1) entries, relative for larger ones
    let scale = a.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    HERMITIAN_TOL * scale
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: CVec,
    pub labels: Vec<String>,
}

impl StateVector {
    pub fn new(amplitudes: CVec, labels: Vec<String>) -> Result<Self> {
        if !labels.is_empty() && labels.len() != amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: amplitudes.len(),
                got: labels.len(),
            });
        }
        Ok(Self { amplitudes, labels })
    }

    pub fn from_amplitudes(amplitudes: CVec) -> Self {
        Self {
            amplitudes,
            labels: Vec::new(),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = CVec::zeros(dim);
        v[index] = cr(1.0);
        Self::from_amplitudes(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn population(&self, i: usize) -> f64 {
        self.amplitudes[i].norm_sqr()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: CMat,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Hermitian operator; rejects input whose asymmetry exceeds the tolerance.
    pub fn hermitian(entries: CMat) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        let asym = max_asymmetry(&entries);
        if asym > hermitian_tol(&entries) {
            return Err(Error::NonHermitian {
                max_asymmetry: asym,
            });
        }
        Ok(Self {
            entries,
            hermitian: true,
        })
    }

    pub fn general(entries: CMat) -> Self {
        Self {
            entries,
            hermitian: false,
        }
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn into_entries(self) -> CMat {
        self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMat,
}

impl DensityMatrix {
    pub const TOL_HERM: f64 = 1e-12;
    pub const TOL_TRACE: f64 = 1e-10;
    pub const TOL_POS: f64 = 1e-10;

    pub fn new(entries: CMat) -> Result<Self> {
        let rho = Self { entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps a matrix without validation (integrator output, intermediate algebra).
    pub fn from_raw(entries: CMat) -> Self {
        Self { entries }
    }

    pub fn from_pure(psi: &CVec) -> Self {
        Self {
            entries: psi * psi.adjoint(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: eye(dim) * cr(1.0 / dim as f64),
        }
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn validate(&self) -> Result<()> {
        if !self.entries.is_square() {
            return Err(Error::InvalidDensity("not square".into()));
        }
        let asym = max_asymmetry(&self.entries);
        if asym > Self::TOL_HERM {
            return Err(Error::InvalidDensity(format!("not Hermitian ({asym:.3e})")));
        }
        let tr = self.entries.trace();
        if (tr.re - 1.0).abs() > Self::TOL_TRACE || tr.im.abs() > Self::TOL_TRACE {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let ev = crate::qcore::eig::hermitian_eigenvalues(&self.entries);
        if let Some(min) = ev.first() {
            if *min < -Self::TOL_POS {
                return Err(Error::InvalidDensity(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
    }
}
