//! Gate and entanglement protocols: schedule builders, solvers and scoring.

pub mod berry;
pub mod detuned;
pub mod gates;
pub mod schedule;
pub mod tsd;

pub use berry::berry_phases;
pub use detuned::{detuned_phase_schedule, detuned_phase_solve, PhaseGateSolution};
pub use gates::*;
pub use schedule::{
    conditional_phase, diag_phases, simulate, wrap_phase, Event, GateResult, PulseSchedule,
    SimOptions, Target,
};
pub use tsd::{
    tsd_cnot_one_shot, tsd_cnot_two_pulse, tsd_condition_search, TsdCondition, TsdSearch,
};
