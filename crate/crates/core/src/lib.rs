//! Simulation of Rydberg-atom entangling gates: Hamiltonian builders, time
//! evolution, interaction algebra, noise models, gate protocols and metrics.

// `!(x > 0.0)` style guards are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod ham;
pub mod interact;
pub mod metrics;
pub mod noise;
pub mod protocols;
pub mod qcore;

pub use error::{Error, Result};
