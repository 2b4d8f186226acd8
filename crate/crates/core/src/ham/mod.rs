//! Hamiltonian builders for excitation schemes and gate configurations.

pub mod builders;
pub mod envelope;
pub mod register;

pub use builders::*;
pub use envelope::{Envelope, RealFn};
pub use register::{Atom, DriveSpec, Interaction, Register};
