//! Dense complex linear algebra and time-evolution engines.
//!
//! Hamiltonians are H/hbar in rad/us and times are in us throughout.

pub mod eig;
pub mod evolve;
pub mod lindblad;
pub mod model;
pub mod ode;
pub mod types;

pub use eig::{eig_hermitian, expm_general, expm_hermitian, sqrtm_psd, Eigen};
pub use evolve::{
    evolve, evolve_open, evolve_vector, propagator, propagator_columns, propagator_piecewise,
    EvolveOptions, Record, Trajectory,
};
pub use lindblad::{evolve_lindblad, LINDBLAD_DIM_LIMIT};
pub use model::{Coefficient, Hamiltonian, ScalarFn, SparseOp, Term, TermKind};
pub use types::{c, cr, eye, CMat, CVec, DensityMatrix, OperatorMatrix, StateVector, C64};
