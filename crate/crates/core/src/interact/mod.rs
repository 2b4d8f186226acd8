//! Angular-momentum algebra, dipole-dipole elements and van der Waals sums.

pub mod cg;
pub mod dipole;
pub mod fixtures;
pub mod vdw;

pub use cg::{cg2, clebsch_gordan};
pub use dipole::{
    angular_factor, dd_unit, dipole_dipole_element, spherical_tensor_rank2, AtomState, ChannelSpec,
    Geometry, Level, PairState,
};
pub use vdw::{parse_channel_table, vdw_matrix, Channel, CHANNEL_HEADER};

use std::f64::consts::TAU;

/// h x GHz -> rad/us.
pub fn ghz_to_rad_us(ghz: f64) -> f64 {
    TAU * ghz * 1e3
}

/// h x MHz -> rad/us.
pub fn mhz_to_rad_us(mhz: f64) -> f64 {
    TAU * mhz
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteractionKind {
    /// C6 / L^6
    Vdw,
    /// C3 / L^3
    Dipole,
}

/// Interaction in rad/us for a coefficient in h x GHz um^n at separation L (um).
pub fn interaction_at(kind: InteractionKind, coefficient_ghz: f64, l: f64) -> f64 {
    let p = match kind {
        InteractionKind::Vdw => 6,
        InteractionKind::Dipole => 3,
    };
    ghz_to_rad_us(coefficient_ghz) / l.powi(p)
}
