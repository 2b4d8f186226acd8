//! Hamiltonians for the excitation schemes and gate configurations.

use std::sync::Arc;

use super::envelope::Envelope;
use super::register::{Atom, DriveSpec, Interaction, Register};
use crate::error::{Error, Result};
use crate::qcore::{c, cr, CMat, Coefficient, Hamiltonian, OperatorMatrix, SparseOp, C64};

fn sp(dim: usize, entries: &[(usize, usize, C64)]) -> SparseOp {
    let mut s = SparseOp::new(dim);
    for &(i, j, v) in entries {
        s.push(i, j, v);
    }
    s
}

/// (Omega/2)|r><g| + h.c. over the basis (g, r).
pub fn one_photon(omega: C64) -> Hamiltonian {
    let mut h = Hamiltonian::new(2);
    h.add_coupling(
        sp(2, &[(1, 0, cr(1.0))]),
        Coefficient::Const(omega * 0.5),
        None,
    );
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonSpec {
    pub omega1: f64,
    pub omega2: f64,
    /// intermediate-state detuning
    pub delta: f64,
    pub stark_r: f64,
    pub stark_g: f64,
}

/// Three-level g-p-r model over (g, p, r).
pub fn two_photon_full(s: &TwoPhotonSpec) -> Hamiltonian {
    let mut m = CMat::zeros(3, 3);
    m[(1, 0)] = cr(0.5 * s.omega1);
    m[(0, 1)] = cr(0.5 * s.omega1);
    m[(2, 1)] = cr(0.5 * s.omega2);
    m[(1, 2)] = cr(0.5 * s.omega2);
    m[(1, 1)] = cr(s.delta);
    m[(2, 2)] = cr(s.stark_r);
    m[(0, 0)] = cr(s.stark_g);
    let mut h = Hamiltonian::new(3);
    h.add_static(&m);
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveDrive {
    pub omega_eff: f64,
    pub delta_r: f64,
    pub delta_g: f64,
    /// max(|Omega1|, |Omega2|) / |Delta|
    pub ratio: f64,
}

impl EffectiveDrive {
    /// Two-level model over (g, r).
    pub fn hamiltonian(&self) -> Hamiltonian {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                cr(self.delta_g),
                cr(0.5 * self.omega_eff),
                cr(0.5 * self.omega_eff),
                cr(self.delta_r),
            ],
        );
        let mut h = Hamiltonian::new(2);
        h.add_static(&m);
        h
    }
}

pub fn adiabatic_eliminate(s: &TwoPhotonSpec) -> Result<EffectiveDrive> {
    if s.delta == 0.0 {
        return Err(Error::InvalidArgument(
            "intermediate detuning is zero; elimination undefined".into(),
        ));
    }
    let ratio = s.omega1.abs().max(s.omega2.abs()) / s.delta.abs();
    if ratio > 0.1 {
        log::warn!("adiabatic elimination with Omega/Delta = {ratio:.3}");
    }
    Ok(EffectiveDrive {
        omega_eff: -s.omega1 * s.omega2 / (2.0 * s.delta),
        delta_r: -s.omega2 * s.omega2 / (4.0 * s.delta) + s.stark_r,
        delta_g: -s.omega1 * s.omega1 / (4.0 * s.delta) + s.stark_g,
        ratio,
    })
}

/// Field inputs for the ac Stark shifts, all SI (V/m, rad/s, C m^2/V, C, kg, J s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarkFields {
    pub e1: f64,
    pub e2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub charge: f64,
    pub electron_mass: f64,
    pub hbar: f64,
}

/// (Delta_r^ac, Delta_g^ac) in rad/us: the free-electron ponderomotive shift of the
/// Rydberg level and the polarizability shift of the ground level.
pub fn stark_shifts_from_fields(f: &StarkFields) -> (f64, f64) {
    let r = -f.charge * f.charge / (4.0 * f.electron_mass * f.hbar)
        * (f.e1 * f.e1 / (f.omega1 * f.omega1) + f.e2 * f.e2 / (f.omega2 * f.omega2));
    let g = -(f.alpha1 * f.e1 * f.e1 + f.alpha2 * f.e2 * f.e2) / (4.0 * f.hbar);
    (r * 1e-6, g * 1e-6)
}

/// Two atoms with levels {0, 1, r} and V on |rr>.
pub fn blockade_register(v: f64) -> Register {
    Register::uniform(2, &["0", "1", "r"]).with_interaction(Interaction::Shift {
        a: 0,
        b: 1,
        la: "r".into(),
        lb: "r".into(),
        v,
    })
}

/// 9-state pair model: both atoms driven on 1 <-> r with common detuning delta.
pub fn pair_blockade(omega_c: C64, omega_t: C64, delta: f64, v: f64) -> Result<Hamiltonian> {
    let reg = blockade_register(v);
    let drives = [
        DriveSpec::new(0, "1", "r", omega_c.norm())
            .phase(omega_c.arg())
            .detuned(delta),
        DriveSpec::new(1, "1", "r", omega_t.norm())
            .phase(omega_t.arg())
            .detuned(delta),
    ];
    let mut h = reg.hamiltonian(&drives)?;
    // a zero drive drops its detuning term together with the coupling; restore it
    for (atom, om) in [(0, omega_c), (1, omega_t)] {
        if om.norm() == 0.0 && delta != 0.0 {
            reg.level_shift(&mut h, atom, "r", delta)?;
        }
    }
    Ok(h)
}

/// Strong-interaction 5x5 model over (|1r>, |r1>, |r0>, |11>, |10>).
pub fn tsd_three_state(omega_c: f64, omega_t: f64) -> OperatorMatrix {
    let (c_, t) = (0.5 * omega_c, 0.5 * omega_t);
    let mut m = CMat::zeros(5, 5);
    for &(i, j, v) in &[(0, 3, t), (0, 4, t), (1, 3, c_), (2, 4, c_)] {
        m[(i, j)] = cr(v);
        m[(j, i)] = cr(v);
    }
    OperatorMatrix::hermitian(m).expect("symmetric by construction")
}

/// Full 9-state one-shot TSD model with finite V: control 1<->r, target 0<->r and 1<->r.
pub fn tsd_three_state_full(omega_c: f64, omega_t: f64, v: f64) -> Result<(Register, Hamiltonian)> {
    let reg = blockade_register(v);
    let drives = [
        DriveSpec::new(0, "1", "r", omega_c),
        DriveSpec::new(1, "0", "r", omega_t),
        DriveSpec::new(1, "1", "r", omega_t),
    ];
    let h = reg.hamiltonian(&drives)?;
    Ok((reg, h))
}

/// Two atoms with levels {0, 1, r, r'} and V on every doubly excited pair.
pub fn tsd_two_rydberg_register(v: f64) -> Register {
    Register::uniform(2, &["0", "1", "r", "r'"]).all_pairs_shift(&["r", "r'"], v)
}

/// Basis (|r1 1>, |r1 r2>, |r3 r4>): Omega(t)/2 on the first link, V on the second.
pub fn dark_state_forster(omega: &Envelope, v: f64) -> Result<Hamiltonian> {
    if v == 0.0 {
        return Err(Error::InvalidArgument(
            "dark-state model needs V != 0".into(),
        ));
    }
    let mut h = Hamiltonian::new(3);
    let coeff = match omega {
        Envelope::Const(w) => Coefficient::Const(cr(0.5 * w)),
        e => {
            let e = e.clone();
            Coefficient::Fn(Arc::new(move |t| c(0.5 * e.at(t), 0.0)))
        }
    };
    h.add_coupling(sp(3, &[(1, 0, cr(1.0))]), coeff, None);
    h.add_coupling(sp(3, &[(2, 1, cr(1.0))]), Coefficient::Const(cr(v)), None);
    Ok(h)
}

/// Instantaneous dark state (2V, 0, -Omega), unnormalized.
pub fn dark_state_vector(omega: f64, v: f64) -> [f64; 3] {
    [2.0 * v, 0.0, -omega]
}

/// Rotating-frame model (Omega_m/4)|r><1| + h.c. + omega |r><r| over (1, r).
pub fn modulated_drive_effective(omega_m: f64, omega: f64) -> OperatorMatrix {
    let m = CMat::from_row_slice(
        2,
        2,
        &[cr(0.0), cr(0.25 * omega_m), cr(0.25 * omega_m), cr(omega)],
    );
    OperatorMatrix::hermitian(m).expect("symmetric by construction")
}

/// Two atoms {1, r} with V on |rr> and a common drive on both atoms.
pub fn two_atom_driven(rabi: &Envelope, detuning: f64, v: f64) -> Result<(Register, Hamiltonian)> {
    let reg = Register::new(vec![Atom::new(&["1", "r"]), Atom::new(&["1", "r"])]).with_interaction(
        Interaction::Shift {
            a: 0,
            b: 1,
            la: "r".into(),
            lb: "r".into(),
            v,
        },
    );
    let drives: Vec<DriveSpec> = (0..2)
        .map(|a| {
            DriveSpec::new(a, "1", "r", 0.0)
                .envelope(rabi.clone())
                .detuned(detuning)
        })
        .collect();
    let h = reg.hamiltonian(&drives)?;
    Ok((reg, h))
}

/// Symmetric ensemble model over (|g...g>, |r_bar>): sqrt(N) Omega(t)/2 coupling,
/// -delta/2 and +delta/2 on the diagonal.
pub fn ensemble_two_level(n: usize, omega: &Envelope, delta: &Envelope) -> Hamiltonian {
    let s = (n as f64).sqrt();
    let mut h = Hamiltonian::new(2);
    let om = omega.clone();
    h.add_coupling(
        sp(2, &[(1, 0, cr(1.0))]),
        Coefficient::Fn(Arc::new(move |t| c(0.5 * s * om.at(t), 0.0))),
        None,
    );
    let de = delta.clone();
    h.add_hermitian(
        sp(2, &[(0, 0, cr(-0.5)), (1, 1, cr(0.5))]),
        Coefficient::Fn(Arc::new(move |t| c(de.at(t), 0.0))),
        None,
    );
    h
}

/// Two-channel sweep over (|r1 r2>, |r3 r4>): V coupling, defect(t) on the second state.
pub fn forster_two_channel(v: f64, defect: &Envelope) -> Hamiltonian {
    let mut h = Hamiltonian::new(2);
    h.add_coupling(sp(2, &[(1, 0, cr(1.0))]), Coefficient::Const(cr(v)), None);
    let d = defect.clone();
    let coeff = match defect {
        Envelope::Const(x) => Coefficient::Const(cr(*x)),
        _ => Coefficient::Fn(Arc::new(move |t| c(d.at(t), 0.0))),
    };
    h.add_hermitian(sp(2, &[(1, 1, cr(1.0))]), coeff, None);
    h
}
