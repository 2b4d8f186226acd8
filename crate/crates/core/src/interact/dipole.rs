//! Dipole-dipole matrix elements between two-atom fine-structure states.

use std::f64::consts::PI;

use super::cg::clebsch_gordan;
use crate::error::{Error, Result};
use crate::qcore::{c, C64};

const E_CHARGE: f64 = 1.602176634e-19;
const BOHR: f64 = 5.29177210903e-11;
const EPS0: f64 = 8.8541878128e-12;
const HBAR: f64 = 1.054571817e-34;

/// (e a0)^2 / (4 pi eps0 hbar) in rad/us * um^3.
pub fn dd_unit() -> f64 {
    let si = (E_CHARGE * BOHR).powi(2) / (4.0 * PI * EPS0 * HBAR);
    si * 1e-6 * 1e18
}

/// Fine-structure level without projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    pub j: f64,
}

impl Level {
    pub fn new(n: u32, l: u32, j: f64) -> Self {
        Self { n, l, j }
    }

    pub fn same(&self, o: &Level) -> bool {
        self.n == o.n && self.l == o.l && (self.j - o.j).abs() < 1e-9
    }

    /// All allowed projections -j..=j.
    pub fn projections(&self) -> Vec<f64> {
        let k = (2.0 * self.j).round() as i64;
        (0..=k).map(|i| -self.j + i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomState {
    pub level: Level,
    pub m: f64,
}

impl AtomState {
    pub fn new(n: u32, l: u32, j: f64, m: f64) -> Self {
        Self {
            level: Level::new(n, l, j),
            m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState {
    pub a: AtomState,
    pub b: AtomState,
}

impl PairState {
    pub fn new(a: AtomState, b: AtomState) -> Self {
        Self { a, b }
    }

    pub fn total_m(&self) -> f64 {
        self.a.m + self.b.m
    }
}

/// One element <bra|V|ket>: bra = (A, B), ket = (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub bra: PairState,
    pub ket: PairState,
    /// <A||d||a>, <B||d||b> in e a0
    pub reduced: [f64; 2],
    /// rad/us
    pub defect: f64,
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        for s in [self.bra.a, self.bra.b, self.ket.a, self.ket.b] {
            if s.m.abs() > s.level.j + 1e-9 {
                return Err(Error::InvalidSpin(format!(
                    "|m| = {} exceeds j = {}",
                    s.m.abs(),
                    s.level.j
                )));
            }
        }
        for (k, (up, lo)) in [(self.bra.a, self.ket.a), (self.bra.b, self.ket.b)]
            .iter()
            .enumerate()
        {
            let dl = up.level.l as i64 - lo.level.l as i64;
            if dl.abs() != 1 && self.reduced[k] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "atom {k}: l {} -> {} is dipole-forbidden but the reduced element is nonzero",
                    lo.level.l, up.level.l
                )));
            }
        }
        Ok(())
    }
}

/// Interatomic axis: length in um, polar and azimuthal angles to the quantization axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub l: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Geometry {
    pub fn new(l: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "separation must be positive, got {l}"
            )));
        }
        Ok(Self { l, theta, phi })
    }
}

/// sqrt(4 pi / 5) Y_2M(theta, phi).
pub fn spherical_tensor_rank2(m: i32, theta: f64, phi: f64) -> Result<C64> {
    let (s, co) = theta.sin_cos();
    let e = |k: f64| C64::from_polar(1.0, k * phi);
    Ok(match m {
        0 => c(0.5 * (3.0 * co * co - 1.0), 0.0),
        1 => e(1.0) * (-(1.5f64).sqrt() * s * co),
        -1 => e(-1.0) * ((1.5f64).sqrt() * s * co),
        2 | -2 => e(m as f64) * ((3.0f64 / 8.0).sqrt() * s * s),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "rank-2 component M = {m} out of range"
            )))
        }
    })
}

/// Angular part: -sqrt(6) sum_M (-1)^M Psi_{-M} sum C(1 a 1 b|2 M) C(ja ma 1 a|jA mA) C(jb mb 1 b|jB mB).
///
/// The (-1)^M Psi_{-M} = Psi_M^* weighting reproduces d_A.d_B - 3 (d_A.n)(d_B.n) for every geometry;
/// dropping the sign only agrees when the odd-M terms vanish (theta = 0 or pi/2).
pub fn angular_factor(bra: &PairState, ket: &PairState, theta: f64, phi: f64) -> Result<C64> {
    let mut s = c(0.0, 0.0);
    for big_m in -2i32..=2 {
        let psi = spherical_tensor_rank2(big_m, theta, phi)?.conj();
        for qa in -1i32..=1 {
            let qb = big_m - qa;
            if qb.abs() > 1 {
                continue;
            }
            let c12 = clebsch_gordan(1.0, qa as f64, 1.0, qb as f64, 2.0, big_m as f64)?;
            let ca = clebsch_gordan(
                ket.a.level.j,
                ket.a.m,
                1.0,
                qa as f64,
                bra.a.level.j,
                bra.a.m,
            )?;
            if ca == 0.0 {
                continue;
            }
            let cb = clebsch_gordan(
                ket.b.level.j,
                ket.b.m,
                1.0,
                qb as f64,
                bra.b.level.j,
                bra.b.m,
            )?;
            s += psi * (c12 * ca * cb);
        }
    }
    Ok(s * (-(6.0f64).sqrt()))
}

/// <A B|V|a b> in rad/us.
pub fn dipole_dipole_element(ch: &ChannelSpec, geom: &Geometry) -> Result<C64> {
    if !(geom.l > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "separation must be positive, got {}",
            geom.l
        )));
    }
    ch.validate()?;
    let red = ch.reduced[0] * ch.reduced[1];
    if red == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let ang = angular_factor(&ch.bra, &ch.ket, geom.theta, geom.phi)?;
    Ok(ang * (dd_unit() * red / geom.l.powi(3)))
}
