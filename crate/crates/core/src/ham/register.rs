//! Atoms, product basis and drive/interaction assembly.

use std::sync::Arc;

use super::envelope::Envelope;
use crate::error::{Error, Result};
use crate::qcore::{c, cr, Coefficient, Hamiltonian, SparseOp, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub levels: Vec<String>,
    /// decay rate per level (1/us)
    pub decay: Vec<f64>,
}

impl Atom {
    pub fn new(levels: &[&str]) -> Self {
        Self {
            levels: levels.iter().map(|s| s.to_string()).collect(),
            decay: vec![0.0; levels.len()],
        }
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.levels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn with_decay(mut self, label: &str, rate: f64) -> Result<Self> {
        let i = self.index(label)?;
        if !(rate >= 0.0) {
            return Err(Error::NegativeRate { level: i, rate });
        }
        self.decay[i] = rate;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Pairwise interaction between atoms `a` and `b` (a != b).
#[derive(Debug, Clone, PartialEq)]
pub enum Interaction {
    /// v |la lb><la lb|
    Shift {
        a: usize,
        b: usize,
        la: String,
        lb: String,
        v: f64,
    },
    /// v |to><from| + h.c. on the pair
    Flip {
        a: usize,
        b: usize,
        from: (String, String),
        to: (String, String),
        v: f64,
    },
}

/// One drive on `lower <-> upper` of `atom`: (rabi(t)/2) e^{i phase} |upper><lower| + h.c.
/// plus detuning(t) |upper><upper|, active on `window`.
#[derive(Debug, Clone)]
pub struct DriveSpec {
    pub atom: usize,
    pub lower: String,
    pub upper: String,
    pub rabi: Envelope,
    pub phase: f64,
    pub detuning: Envelope,
    pub window: Option<(f64, f64)>,
    /// effective wavevector along the motion axis (rad/um)
    pub k_eff: Option<f64>,
}

impl DriveSpec {
    pub fn new(atom: usize, lower: &str, upper: &str, rabi: f64) -> Self {
        Self {
            atom,
            lower: lower.into(),
            upper: upper.into(),
            rabi: Envelope::Const(rabi),
            phase: 0.0,
            detuning: Envelope::zero(),
            window: None,
            k_eff: None,
        }
    }

    pub fn envelope(mut self, e: Envelope) -> Self {
        self.rabi = e;
        self
    }

    pub fn phase(mut self, p: f64) -> Self {
        self.phase = p;
        self
    }

    pub fn detuned(mut self, d: f64) -> Self {
        self.detuning = Envelope::Const(d);
        self
    }

    pub fn detuning_envelope(mut self, d: Envelope) -> Self {
        self.detuning = d;
        self
    }

    pub fn during(mut self, t0: f64, t1: f64) -> Self {
        self.window = Some((t0, t1));
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k_eff = Some(k);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Register {
    pub atoms: Vec<Atom>,
    pub interactions: Vec<Interaction>,
}

impl Register {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self {
            atoms,
            interactions: Vec::new(),
        }
    }

    /// N identical atoms.
    pub fn uniform(n: usize, levels: &[&str]) -> Self {
        Self::new((0..n).map(|_| Atom::new(levels)).collect())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.atoms.iter().map(Atom::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn level(&self, atom: usize, label: &str) -> Result<usize> {
        self.atoms
            .get(atom)
            .ok_or_else(|| Error::InvalidArgument(format!("atom {atom} not in register")))?
            .index(label)
    }

    /// Product-basis index, atom 0 most significant.
    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(self.dims())
            .fold(0, |acc, (&d, n)| acc * n + d)
    }

    pub fn index_of(&self, labels: &[&str]) -> Result<usize> {
        if labels.len() != self.atoms.len() {
            return Err(Error::DimensionMismatch {
                expected: self.atoms.len(),
                got: labels.len(),
            });
        }
        let digits = labels
            .iter()
            .enumerate()
            .map(|(a, l)| self.level(a, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.index(&digits))
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let dims = self.dims();
        let mut d = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            d[k] = idx % dims[k];
            idx /= dims[k];
        }
        d
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.dim())
            .map(|i| {
                self.digits(i)
                    .iter()
                    .enumerate()
                    .map(|(a, &d)| self.atoms[a].levels[d].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }

    pub fn with_interaction(mut self, i: Interaction) -> Self {
        self.interactions.push(i);
        self
    }

    /// Same diagonal shift `v` on every pair of listed levels, for all atom pairs.
    pub fn all_pairs_shift(mut self, levels: &[&str], v: f64) -> Self {
        let n = self.atoms.len();
        for a in 0..n {
            for b in a + 1..n {
                for la in levels {
                    for lb in levels {
                        self.interactions.push(Interaction::Shift {
                            a,
                            b,
                            la: la.to_string(),
                            lb: lb.to_string(),
                            v,
                        });
                    }
                }
            }
        }
        self
    }

    /// |upper><lower| on one atom, identity elsewhere.
    pub fn local_op(&self, atom: usize, upper: usize, lower: usize) -> SparseOp {
        let mut op = SparseOp::new(self.dim());
        for i in 0..self.dim() {
            let mut d = self.digits(i);
            if d[atom] != lower {
                continue;
            }
            d[atom] = upper;
            op.push(self.index(&d), i, cr(1.0));
        }
        op
    }

    fn pair_op(&self, a: usize, b: usize, from: (usize, usize), to: (usize, usize)) -> SparseOp {
        let mut op = SparseOp::new(self.dim());
        for i in 0..self.dim() {
            let mut d = self.digits(i);
            if d[a] != from.0 || d[b] != from.1 {
                continue;
            }
            d[a] = to.0;
            d[b] = to.1;
            op.push(self.index(&d), i, cr(1.0));
        }
        op
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b || a >= self.atoms.len() || b >= self.atoms.len() {
            return Err(Error::InvalidArgument(format!(
                "invalid atom pair ({a}, {b})"
            )));
        }
        Ok(())
    }

    /// Static interaction operator (Hermitian, dense-sparse form).
    pub fn interaction_terms(&self, h: &mut Hamiltonian) -> Result<()> {
        for it in &self.interactions {
            match it {
                Interaction::Shift { a, b, la, lb, v } => {
                    self.check_pair(*a, *b)?;
                    let p = (self.level(*a, la)?, self.level(*b, lb)?);
                    h.add_hermitian(self.pair_op(*a, *b, p, p), Coefficient::Const(cr(*v)), None);
                }
                Interaction::Flip { a, b, from, to, v } => {
                    self.check_pair(*a, *b)?;
                    let f = (self.level(*a, &from.0)?, self.level(*b, &from.1)?);
                    let t = (self.level(*a, &to.0)?, self.level(*b, &to.1)?);
                    h.add_coupling(self.pair_op(*a, *b, f, t), Coefficient::Const(cr(*v)), None);
                }
            }
        }
        Ok(())
    }

    /// Adds one drive's coupling and detuning terms.
    pub fn drive_terms(&self, h: &mut Hamiltonian, d: &DriveSpec) -> Result<()> {
        let lo = self.level(d.atom, &d.lower)?;
        let up = self.level(d.atom, &d.upper)?;
        let ph = C64::from_polar(0.5, d.phase);
        let coeff = match &d.rabi {
            Envelope::Const(v) => Coefficient::Const(ph * *v),
            e => {
                let e = e.clone();
                Coefficient::Fn(Arc::new(move |t| ph * e.at(t)))
            }
        };
        if !d.rabi.is_zero() {
            h.add_coupling(self.local_op(d.atom, up, lo), coeff, d.window);
        }
        if !d.detuning.is_zero() {
            let dc = match &d.detuning {
                Envelope::Const(v) => Coefficient::Const(cr(*v)),
                e => {
                    let e = e.clone();
                    Coefficient::Fn(Arc::new(move |t| c(e.at(t), 0.0)))
                }
            };
            h.add_hermitian(self.local_op(d.atom, up, up), dc, d.window);
        }
        Ok(())
    }

    /// Static diagonal shift on one level of one atom (always on).
    pub fn level_shift(
        &self,
        h: &mut Hamiltonian,
        atom: usize,
        label: &str,
        shift: f64,
    ) -> Result<()> {
        let l = self.level(atom, label)?;
        h.add_hermitian(
            self.local_op(atom, l, l),
            Coefficient::Const(cr(shift)),
            None,
        );
        Ok(())
    }

    /// Full model: interactions plus every drive.
    pub fn hamiltonian(&self, drives: &[DriveSpec]) -> Result<Hamiltonian> {
        let mut h = Hamiltonian::new(self.dim());
        self.interaction_terms(&mut h)?;
        for d in drives {
            if d.atom >= self.atoms.len() {
                return Err(Error::InvalidArgument(format!(
                    "drive targets atom {} outside the register",
                    d.atom
                )));
            }
            self.drive_terms(&mut h, d)?;
        }
        Ok(h)
    }

    /// Sum of per-atom level decay rates for each product state.
    pub fn decay_rates(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                self.digits(i)
                    .iter()
                    .enumerate()
                    .map(|(a, &d)| self.atoms[a].decay[d])
                    .sum()
            })
            .collect()
    }

    /// Product-basis indices whose every atom sits in one of `levels`.
    pub fn subspace(&self, levels: &[&str]) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                self.digits(i)
                    .iter()
                    .enumerate()
                    .all(|(a, &d)| levels.contains(&self.atoms[a].levels[d].as_str()))
            })
            .collect()
    }
}
