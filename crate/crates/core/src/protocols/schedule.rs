//! Pulse schedules and their simulation.

use crate::error::{Error, Result};
use crate::ham::{DriveSpec, Register};
use crate::metrics::{overlap_fidelity, pedersen_fidelity, TruthTable};
use crate::noise::ErrorBudget;
use crate::qcore::{
    cr, evolve_vector, propagator_piecewise, CMat, CVec, EvolveOptions, Hamiltonian, C64,
};

/// Instantaneous operation applied at `time` (e.g. a fast microwave flip).
#[derive(Debug, Clone)]
pub struct Event {
    pub time: f64,
    pub op: CMat,
    pub label: String,
}

#[derive(Debug, Clone)]
pub enum Target {
    /// ideal map on the computational subspace (outputs x inputs)
    Unitary(CMat),
    /// ideal final state (full dimension) for the first input
    State(CVec),
}

#[derive(Debug, Clone)]
pub struct PulseSchedule {
    pub name: String,
    pub register: Register,
    pub drives: Vec<DriveSpec>,
    pub events: Vec<Event>,
    pub duration: f64,
    /// basis indices of the input states
    pub inputs: Vec<usize>,
    /// basis indices spanning the computational subspace used for projection
    pub outputs: Vec<usize>,
    pub target: Target,
    /// levels that pick up the Doppler shift of another level on the same atom: (atom, follower, leader)
    pub doppler_followers: Vec<(usize, String, String)>,
    pub notes: Vec<String>,
}

impl PulseSchedule {
    pub fn new(
        name: &str,
        register: Register,
        duration: f64,
        inputs: Vec<usize>,
        target: Target,
    ) -> Self {
        Self {
            name: name.into(),
            register,
            drives: Vec::new(),
            events: Vec::new(),
            duration,
            outputs: inputs.clone(),
            inputs,
            target,
            doppler_followers: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn drive(mut self, d: DriveSpec) -> Self {
        self.drives.push(d);
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// Checks windows and the same-transition overlap rule.
    pub fn validate(&self) -> Result<()> {
        for d in &self.drives {
            if let Some((a, b)) = d.window {
                if !(a >= 0.0 && b >= a) {
                    return Err(Error::InvalidArgument(format!("bad window [{a}, {b}]")));
                }
            }
        }
        for (i, x) in self.drives.iter().enumerate() {
            for y in &self.drives[i + 1..] {
                let same = x.atom == y.atom && x.lower == y.lower && x.upper == y.upper;
                if let (true, Some((a0, a1)), Some((b0, b1))) = (same, x.window, y.window) {
                    if a0 < b1 && b0 < a1 {
                        return Err(Error::InvalidArgument(format!(
                            "overlapping drives on atom {} {}<->{}",
                            x.atom, x.lower, x.upper
                        )));
                    }
                }
            }
        }
        if let Target::Unitary(u) = &self.target {
            if u.nrows() != self.outputs.len() || u.ncols() != self.inputs.len() {
                return Err(Error::DimensionMismatch {
                    expected: self.inputs.len(),
                    got: u.ncols(),
                });
            }
        }
        Ok(())
    }

    /// Model including interactions, drives, optional decay and per-atom velocities.
    pub fn hamiltonian(&self, opts: &SimOptions) -> Result<Hamiltonian> {
        let reg = &self.register;
        let mut h = reg.hamiltonian(&self.drives)?;
        if let Some(v) = &opts.velocities {
            if v.len() != reg.atoms.len() {
                return Err(Error::DimensionMismatch {
                    expected: reg.atoms.len(),
                    got: v.len(),
                });
            }
            for (atom, &va) in v.iter().enumerate() {
                if va == 0.0 {
                    continue;
                }
                let mut shifted: Vec<(String, f64)> = Vec::new();
                for d in self.drives.iter().filter(|d| d.atom == atom) {
                    let k = d.k_eff.ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "drive {}<->{} on atom {atom} has no k_eff",
                            d.lower, d.upper
                        ))
                    })?;
                    if !shifted.iter().any(|(l, _)| *l == d.upper) {
                        shifted.push((d.upper.clone(), k));
                    }
                }
                for (a, f, l) in &self.doppler_followers {
                    if *a == atom {
                        if let Some(k) = shifted.iter().find(|(x, _)| x == l).map(|p| p.1) {
                            if !shifted.iter().any(|(x, _)| x == f) {
                                shifted.push((f.clone(), k));
                            }
                        }
                    }
                }
                for (level, k) in shifted {
                    reg.level_shift(&mut h, atom, &level, k * va)?;
                }
            }
        }
        if opts.decay {
            h.set_decay(reg.decay_rates())?;
        }
        Ok(h)
    }
}

#[derive(Debug, Clone)]
pub struct SimOptions {
    pub tol: f64,
    pub decay: bool,
    /// velocity per atom (um/us)
    pub velocities: Option<Vec<f64>>,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            decay: false,
            velocities: None,
        }
    }
}

impl SimOptions {
    pub fn with_decay(mut self) -> Self {
        self.decay = true;
        self
    }
}

#[derive(Debug, Clone)]
pub struct GateResult {
    /// final states, one column per input (full dimension)
    pub columns: CMat,
    /// projection onto the computational subspace (outputs x inputs)
    pub map: CMat,
    pub truth_table: TruthTable,
    pub pedersen: Option<f64>,
    pub state_fidelity: Option<f64>,
    /// 1 - |projected column|^2 per input
    pub leakage: Vec<f64>,
    /// squared norm per input
    pub survival: Vec<f64>,
    pub budget: ErrorBudget,
}

impl GateResult {
    /// Headline fidelity: Pedersen for gates, overlap for state targets.
    pub fn fidelity(&self) -> f64 {
        self.pedersen.or(self.state_fidelity).unwrap_or(f64::NAN)
    }

    /// arg(m11) - arg(m01) - arg(m10) + arg(m00) on a two-qubit map, wrapped to (-pi, pi].
    pub fn conditional_phase(&self) -> f64 {
        conditional_phase(&self.map)
    }
}

pub fn wrap_phase(x: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let y = x.rem_euclid(t);
    if y > std::f64::consts::PI {
        y - t
    } else {
        y
    }
}

pub fn conditional_phase(m: &CMat) -> f64 {
    let a = |i: usize| m[(i, i)].arg();
    wrap_phase(a(3) - a(1) - a(2) + a(0))
}

fn evolve_block(h: &Hamiltonian, y: &CMat, span: (f64, f64), tol: f64) -> Result<CMat> {
    if span.1 <= span.0 {
        return Ok(y.clone());
    }
    if h.is_piecewise_constant() {
        return Ok(propagator_piecewise(h, span)? * y);
    }
    let opts = EvolveOptions::with_tol(tol).final_only();
    let mut out = CMat::zeros(y.nrows(), y.ncols());
    for j in 0..y.ncols() {
        let col: CVec = y.column(j).into_owned();
        out.set_column(j, &evolve_vector(h, &col, span, &opts)?);
    }
    Ok(out)
}

/// Evolves every input column through drives and instantaneous events.
pub fn simulate(s: &PulseSchedule, opts: &SimOptions) -> Result<GateResult> {
    s.validate()?;
    let h = s.hamiltonian(opts)?;
    let dim = h.dim;
    let mut y = CMat::zeros(dim, s.inputs.len());
    for (j, &i) in s.inputs.iter().enumerate() {
        y[(i, j)] = cr(1.0);
    }
    let mut events: Vec<&Event> = s.events.iter().collect();
    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    let mut t = 0.0;
    for e in events {
        y = evolve_block(&h, &y, (t, e.time), opts.tol)?;
        if e.op.nrows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: e.op.nrows(),
            });
        }
        y = &e.op * y;
        t = e.time;
    }
    y = evolve_block(&h, &y, (t, s.duration), opts.tol)?;
    score(s, y)
}

pub(crate) fn score(s: &PulseSchedule, columns: CMat) -> Result<GateResult> {
    let n_in = s.inputs.len();
    let mut map = CMat::zeros(s.outputs.len(), n_in);
    for (r, &o) in s.outputs.iter().enumerate() {
        for j in 0..n_in {
            map[(r, j)] = columns[(o, j)];
        }
    }
    let survival: Vec<f64> = (0..n_in)
        .map(|j| columns.column(j).norm_squared())
        .collect();
    let leakage: Vec<f64> = (0..n_in)
        .map(|j| 1.0 - map.column(j).norm_squared())
        .collect();
    let (pedersen, state_fidelity) = match &s.target {
        Target::Unitary(u) if u.nrows() == u.ncols() => (Some(pedersen_fidelity(&map, u)?), None),
        Target::Unitary(_) => (None, None),
        Target::State(psi) => (
            None,
            Some(overlap_fidelity(&columns.column(0).into_owned(), psi)),
        ),
    };
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len().max(1) as f64;
    let decay = (1.0 - mean(&survival)).max(0.0);
    let leak = (mean(&leakage) - decay).max(0.0);
    let budget = ErrorBudget {
        decay,
        blockade_leak: leak,
        dephasing: 0.0,
        residual: 0.0,
    };
    Ok(GateResult {
        truth_table: TruthTable::from_map(&map),
        columns,
        map,
        pedersen,
        state_fidelity,
        leakage,
        survival,
        budget,
    })
}

/// diag(e^{i phi_k}) as a square complex matrix.
pub fn diag_phases(phases: &[f64]) -> CMat {
    let n = phases.len();
    let mut m = CMat::zeros(n, n);
    for (i, &p) in phases.iter().enumerate() {
        m[(i, i)] = C64::from_polar(1.0, p);
    }
    m
}
