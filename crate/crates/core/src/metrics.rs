//! Gate and state fidelity measures.

use crate::error::{Error, Result};
use crate::qcore::eig::{sqrtm_psd, trace_norm_hermitian};
use crate::qcore::{cr, eye, CMat, CVec, DensityMatrix, C64};

const SQRT_CLIP: f64 = -1e-12;

/// Row i holds output probabilities for basis input i.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub rows: Vec<Vec<f64>>,
}

impl TruthTable {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if r.iter().any(|&p| !(-1e-12..=1.0 + 1e-12).contains(&p)) {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has an entry outside [0,1]"
                )));
            }
            if r.iter().sum::<f64>() > 1.0 + 1e-10 {
                return Err(Error::InvalidArgument(format!("row {i} sums above 1")));
            }
        }
        Ok(Self { rows })
    }

    /// |<j|U|i>|^2 with row = input i, column = output j.
    pub fn from_map(u: &CMat) -> Self {
        let n = u.ncols();
        let rows = (0..n)
            .map(|i| (0..u.nrows()).map(|j| u[(j, i)].norm_sqr()).collect())
            .collect();
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

fn check_trace(rho: &DensityMatrix) -> Result<()> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > DensityMatrix::TOL_TRACE {
        return Err(Error::InvalidDensity(format!("trace {tr}")));
    }
    Ok(())
}

fn check_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            got: rho.dim(),
        });
    }
    check_trace(rho)?;
    check_trace(sigma)
}

/// Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, evaluated as the
/// squared trace norm of sqrt(rho) sqrt(sigma).
pub fn state_fidelity(rho: &DensityMatrix, rho_id: &DensityMatrix) -> Result<f64> {
    check_pair(rho, rho_id)?;
    let a = sqrtm_psd(rho.entries(), SQRT_CLIP)?;
    let b = sqrtm_psd(rho_id.entries(), SQRT_CLIP)?;
    let f = (a * b).singular_values().sum().powi(2);
    Ok(f.clamp(0.0, 1.0))
}

/// Trace distance (1/2) Tr|rho - sigma|.
pub fn trace_distance(rho: &DensityMatrix, rho_id: &DensityMatrix) -> Result<f64> {
    check_pair(rho, rho_id)?;
    let d = rho.entries() - rho_id.entries();
    let d = (&d + d.adjoint()) * cr(0.5);
    Ok(0.5 * trace_norm_hermitian(&d))
}

pub fn trace_distance_fidelity(rho: &DensityMatrix, rho_id: &DensityMatrix) -> Result<f64> {
    Ok((1.0 - trace_distance(rho, rho_id)?).clamp(0.0, 1.0))
}

/// Tr(U^T Ucal)/d on probability tables; blind to output phases.
pub fn truth_table_fidelity(realized: &TruthTable, ideal: &TruthTable) -> Result<f64> {
    if realized.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.dim(),
            got: realized.dim(),
        });
    }
    let d = ideal.dim();
    let mut tr = 0.0;
    for i in 0..d {
        for j in 0..d {
            tr += ideal.rows[i][j] * realized.rows[i][j];
        }
    }
    Ok(tr / d as f64)
}

/// Single-qubit Paulis I, X, Y, Z.
pub fn paulis() -> [CMat; 4] {
    let z = cr(0.0);
    let o = cr(1.0);
    let i = C64::new(0.0, 1.0);
    [
        CMat::from_row_slice(2, 2, &[o, z, z, o]),
        CMat::from_row_slice(2, 2, &[z, o, o, z]),
        CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// All 4^d Pauli products, qubit 0 leftmost in the Kronecker product.
pub fn pauli_basis(d: usize) -> Vec<CMat> {
    let p = paulis();
    let mut out = vec![eye(1)];
    for _ in 0..d {
        out = out
            .iter()
            .flat_map(|a| p.iter().map(move |b| a.kronecker(b)))
            .collect();
    }
    out
}

/// Average gate fidelity for a channel evaluated on the Pauli-product basis.
pub fn nielsen_fidelity<F>(channel: F, u_ideal: &CMat, d: usize) -> Result<f64>
where
    F: Fn(&CMat) -> CMat,
{
    let n = 1usize << d;
    if u_ideal.nrows() != n || u_ideal.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u_ideal.nrows(),
        });
    }
    let mut sum = C64::new(0.0, 0.0);
    for x in pauli_basis(d) {
        let ex = channel(&x);
        if ex.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: ex.nrows(),
            });
        }
        if x == eye(n) && ex.trace().re > n as f64 * (1.0 + 1e-9) {
            return Err(Error::InvalidArgument("channel increases the trace".into()));
        }
        sum += (u_ideal * x.adjoint() * u_ideal.adjoint() * ex).trace();
    }
    let nf = n as f64;
    Ok(1.0 / (nf + 1.0) + sum.re / (nf * nf * (nf + 1.0)))
}

/// Channel X -> M X M^dag for a (possibly non-unitary) map M.
pub fn kraus_channel(m: &CMat) -> impl Fn(&CMat) -> CMat + '_ {
    move |x: &CMat| m * x * m.adjoint()
}

/// [|Tr(U^dag Ucal)|^2 + Tr(U^dag Ucal Ucal^dag U)] / (N(N+1)).
pub fn pedersen_fidelity(u_realized: &CMat, u_ideal: &CMat) -> Result<f64> {
    let n = u_ideal.nrows();
    if u_realized.nrows() != n || u_realized.ncols() != n || u_ideal.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u_realized.nrows(),
        });
    }
    let m = u_ideal.adjoint() * u_realized;
    let a = m.trace().norm_sqr();
    let b = (&m * m.adjoint()).trace().re;
    let nf = n as f64;
    Ok((a + b) / (nf * (nf + 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl std::str::FromStr for Bell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi+" | "Phi+" | "PhiPlus" => Ok(Bell::PhiPlus),
            "phi-" | "Phi-" | "PhiMinus" => Ok(Bell::PhiMinus),
            "psi+" | "Psi+" | "PsiPlus" => Ok(Bell::PsiPlus),
            "psi-" | "Psi-" | "PsiMinus" => Ok(Bell::PsiMinus),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

impl Bell {
    pub fn state(self) -> CVec {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = match self {
            Bell::PhiPlus => [h, 0.0, 0.0, h],
            Bell::PhiMinus => [h, 0.0, 0.0, -h],
            Bell::PsiPlus => [0.0, h, h, 0.0],
            Bell::PsiMinus => [0.0, h, -h, 0.0],
        };
        CVec::from_iterator(4, v.iter().map(|&x| cr(x)))
    }
}

pub fn bell_fidelity_pure(psi: &CVec, target: Bell) -> Result<f64> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: psi.len(),
        });
    }
    Ok(target.state().dotc(psi).norm_sqr())
}

pub fn bell_fidelity(rho: &DensityMatrix, target: Bell) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let b = target.state();
    Ok((b.adjoint() * rho.entries() * &b)[(0, 0)].re)
}

/// |<target|psi>|^2 for arbitrary dimension.
pub fn overlap_fidelity(psi: &CVec, target: &CVec) -> f64 {
    target.dotc(psi).norm_sqr()
}
