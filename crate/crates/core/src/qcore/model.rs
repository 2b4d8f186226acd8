use std::fmt;
use std::sync::Arc;

use super::types::{cr, max_asymmetry, CMat, CVec, OperatorMatrix, C64};
use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// Sparse operator as (row, col, value) triplets; duplicates add.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseOp {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl SparseOp {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, v: C64) {
        if v != C64::new(0.0, 0.0) {
            self.entries.push((row, col, v));
        }
    }

    pub fn from_dense(m: &CMat) -> Self {
        let mut op = Self::new(m.nrows());
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                op.push(i, j, m[(i, j)]);
            }
        }
        op
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] += v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&(i, j, v)| (j, i, v.conj()))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// out += s * A * x
    #[inline]
    pub fn apply_add(&self, s: C64, x: &CVec, out: &mut CVec) {
        for &(i, j, v) in &self.entries {
            out[i] += s * v * x[j];
        }
    }

    /// out += s * A^dag * x
    #[inline]
    pub fn apply_adjoint_add(&self, s: C64, x: &CVec, out: &mut CVec) {
        for &(i, j, v) in &self.entries {
            out[j] += s * v.conj() * x[i];
        }
    }
}

#[derive(Clone)]
pub enum Coefficient {
    Const(C64),
    Fn(ScalarFn),
}

impl Coefficient {
    #[inline]
    pub fn at(&self, t: f64) -> C64 {
        match self {
            Coefficient::Const(v) => *v,
            Coefficient::Fn(f) => f(t),
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Coefficient::Const(_))
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Const(v) => write!(f, "Const({v})"),
            Coefficient::Fn(_) => write!(f, "Fn(..)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermKind {
    /// c(t) A + conj(c(t)) A^dag
    Coupling,
    /// Re c(t) A, with A Hermitian
    Hermitian,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub op: SparseOp,
    pub coeff: Coefficient,
    pub kind: TermKind,
    /// active on [start, end); None means always
    pub window: Option<(f64, f64)>,
}

impl Term {
    #[inline]
    fn active(&self, region: f64) -> bool {
        match self.window {
            None => true,
            Some((a, b)) => region >= a && region < b,
        }
    }
}

/// Time-dependent H/hbar (rad/us) over a fixed basis, optionally augmented by
/// per-basis-state decay rates as -(i/2) Gamma.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub dim: usize,
    pub terms: Vec<Term>,
    decay: Option<Vec<f64>>,
}

impl Hamiltonian {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
            decay: None,
        }
    }

    pub fn from_static(h: &OperatorMatrix) -> Self {
        let mut m = Self::new(h.dim());
        m.add_hermitian(
            SparseOp::from_dense(h.entries()),
            Coefficient::Const(cr(1.0)),
            None,
        );
        m
    }

    pub fn add_coupling(&mut self, op: SparseOp, coeff: Coefficient, window: Option<(f64, f64)>) {
        self.terms.push(Term {
            op,
            coeff,
            kind: TermKind::Coupling,
            window,
        });
    }

    pub fn add_hermitian(&mut self, op: SparseOp, coeff: Coefficient, window: Option<(f64, f64)>) {
        self.terms.push(Term {
            op,
            coeff,
            kind: TermKind::Hermitian,
            window,
        });
    }

    pub fn add_static(&mut self, m: &CMat) {
        self.add_hermitian(SparseOp::from_dense(m), Coefficient::Const(cr(1.0)), None);
    }

    pub fn with_decay(mut self, rates: Vec<f64>) -> Result<Self> {
        self.set_decay(rates)?;
        Ok(self)
    }

    pub fn set_decay(&mut self, rates: Vec<f64>) -> Result<()> {
        if rates.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: rates.len(),
            });
        }
        if let Some((level, &rate)) = rates.iter().enumerate().find(|(_, r)| !(**r >= 0.0)) {
            return Err(Error::NegativeRate { level, rate });
        }
        self.decay = if rates.iter().all(|&r| r == 0.0) {
            None
        } else {
            Some(rates)
        };
        Ok(())
    }

    pub fn decay(&self) -> Option<&[f64]> {
        self.decay.as_deref()
    }

    pub fn is_hermitian(&self) -> bool {
        self.decay.is_none()
    }

    /// Window edges of all terms, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .terms
            .iter()
            .filter_map(|t| t.window)
            .flat_map(|(a, b)| [a, b])
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// True when every term coefficient is constant (segment-wise constant H).
    pub fn is_piecewise_constant(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_const())
    }

    /// out = -i H(t) psi, with the active segment decided by `region`.
    pub fn rhs(&self, t: f64, region: f64, psi: &CVec, out: &mut CVec) {
        out.fill(C64::new(0.0, 0.0));
        let mi = C64::new(0.0, -1.0);
        for term in &self.terms {
            if !term.active(region) {
                continue;
            }
            let c = term.coeff.at(t);
            match term.kind {
                TermKind::Coupling => {
                    term.op.apply_add(mi * c, psi, out);
                    term.op.apply_adjoint_add(mi * c.conj(), psi, out);
                }
                TermKind::Hermitian => term.op.apply_add(mi * c.re, psi, out),
            }
        }
        if let Some(g) = &self.decay {
            for (i, rate) in g.iter().enumerate() {
                out[i] -= psi[i] * (0.5 * rate);
            }
        }
    }

    /// Dense H(t) (including the decay augmentation when present).
    pub fn matrix_at(&self, t: f64, region: f64) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for term in &self.terms {
            if !term.active(region) {
                continue;
            }
            let c = term.coeff.at(t);
            for &(i, j, v) in &term.op.entries {
                match term.kind {
                    TermKind::Coupling => {
                        m[(i, j)] += c * v;
                        m[(j, i)] += (c * v).conj();
                    }
                    TermKind::Hermitian => m[(i, j)] += v * c.re,
                }
            }
        }
        if let Some(g) = &self.decay {
            for (i, rate) in g.iter().enumerate() {
                m[(i, i)] -= C64::new(0.0, 0.5 * rate);
            }
        }
        m
    }

    pub fn hermitian_part_at(&self, t: f64) -> Result<OperatorMatrix> {
        let mut m = self.clone();
        m.decay = None;
        let h = m.matrix_at(t, t);
        let asym = max_asymmetry(&h);
        if asym > 1e-9 {
            return Err(Error::NonHermitian {
                max_asymmetry: asym,
            });
        }
        OperatorMatrix::hermitian((&h + h.adjoint()) * cr(0.5))
    }
}
