//! Schedule builders for the blockade, wait-phase, spin-echo, antiblockade,
//! GHZ, dark-state, ensemble and Forster-sweep protocols.

use std::f64::consts::{PI, SQRT_2, TAU};

use super::schedule::{diag_phases, Event, PulseSchedule, Target};
use crate::error::{Error, Result};
use crate::ham::{blockade_register, Atom, DriveSpec, Envelope, Interaction, Register};
use crate::qcore::{
    cr, eig_hermitian, evolve, evolve_vector, eye, propagator_piecewise, CMat, CVec, EvolveOptions,
    OperatorMatrix, StateVector,
};

fn cz() -> CMat {
    diag_phases(&[0.0, PI, PI, PI])
}

/// pi (control) - 2 pi (target) - pi (control), all on 1 <-> r with detuning delta.
pub fn blockade_cz(omega: f64, v: f64, delta: f64) -> Result<PulseSchedule> {
    if !(omega > 0.0) {
        return Err(Error::InvalidArgument("Omega must be positive".into()));
    }
    let tp = PI / omega;
    let reg = blockade_register(v);
    let inputs = reg.subspace(&["0", "1"]);
    Ok(
        PulseSchedule::new("blockade_cz", reg, 4.0 * tp, inputs, Target::Unitary(cz()))
            .drive(
                DriveSpec::new(0, "1", "r", omega)
                    .detuned(delta)
                    .during(0.0, tp),
            )
            .drive(
                DriveSpec::new(1, "1", "r", omega)
                    .detuned(delta)
                    .during(tp, 3.0 * tp),
            )
            .drive(
                DriveSpec::new(0, "1", "r", omega)
                    .detuned(delta)
                    .during(3.0 * tp, 4.0 * tp),
            )
            .note(format!("V/Omega = {:.3e}", v / omega)),
    )
}

/// Simultaneous pi - wait |phi/V| - simultaneous pi. The ideal map carries the
/// conditional phase -V T on |11>. With `compensate_pulses` the wait is
/// shortened by 3 pi / (4 Omega), the first-order phase picked up during the pulses.
pub fn wait_phase_gate(
    omega: f64,
    v: f64,
    phi: f64,
    compensate_pulses: bool,
) -> Result<PulseSchedule> {
    if v == 0.0 {
        return Err(Error::InvalidArgument(
            "wait-phase gate needs V != 0".into(),
        ));
    }
    let tp = PI / omega;
    let mut wait = (phi / v).abs();
    if compensate_pulses {
        wait = (wait - 0.75 * PI / omega).max(0.0);
    }
    let reg = blockade_register(v);
    let inputs = reg.subspace(&["0", "1"]);
    let cond = -v.signum() * phi.abs();
    let ideal = diag_phases(&[0.0, PI, PI, cond]);
    let t2 = tp + wait;
    let mut s = PulseSchedule::new(
        "wait_phase_gate",
        reg,
        t2 + tp,
        inputs,
        Target::Unitary(ideal),
    );
    for a in 0..2 {
        s = s
            .drive(DriveSpec::new(a, "1", "r", omega).during(0.0, tp))
            .drive(DriveSpec::new(a, "1", "r", omega).during(t2, t2 + tp));
    }
    Ok(s.note(format!("wait = {wait:.6e} us")))
}

/// Fast microwave pi flip on every atom: r -> r', r' -> -r.
pub fn microwave_flip(reg: &Register) -> Result<CMat> {
    let n = reg.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        let mut d = reg.digits(i);
        let mut sign = 1.0;
        for (a, atom) in reg.atoms.iter().enumerate() {
            let r = atom.index("r")?;
            let rp = atom.index("r'")?;
            if d[a] == r {
                d[a] = rp;
            } else if d[a] == rp {
                d[a] = r;
                sign = -sign;
            }
        }
        m[(reg.index(&d), i)] = cr(sign);
    }
    Ok(m)
}

pub fn echo_register(v0: f64, v0p: f64) -> Register {
    Register::uniform(2, &["0", "1", "r", "r'"])
        .with_interaction(Interaction::Shift {
            a: 0,
            b: 1,
            la: "r".into(),
            lb: "r".into(),
            v: v0,
        })
        .with_interaction(Interaction::Shift {
            a: 0,
            b: 1,
            la: "r'".into(),
            lb: "r'".into(),
            v: v0p,
        })
}

/// Control pi (1->r) - target pi at Omega - microwave flip - target pi at
/// Omega' = Omega V0'/V0 on r' - control pi (r'->1). `microwave` = Some(Omega_mu)
/// replaces the instantaneous flip by a finite pulse with Rabi i Omega_mu.
/// With frozen V and the flip sign convention above the full map is diag(1, 1, -1, -1).
pub fn spin_echo_cz(
    omega: f64,
    v0: f64,
    v0p: f64,
    microwave: Option<f64>,
) -> Result<PulseSchedule> {
    if v0 == 0.0 || !(omega > 0.0) {
        return Err(Error::InvalidArgument(
            "spin echo needs V0 != 0 and Omega > 0".into(),
        ));
    }
    let omp = omega * v0p / v0;
    let tp = PI / omega;
    let tpp = PI / omp.abs();
    let t_mw = microwave.map(|w| PI / w).unwrap_or(0.0);
    let reg = echo_register(v0, v0p);
    let inputs = reg.subspace(&["0", "1"]);
    let ideal = diag_phases(&[0.0, 0.0, PI, PI]);
    let t1 = 2.0 * tp;
    let t2 = t1 + t_mw;
    let t3 = t2 + tpp;
    let mut s = PulseSchedule::new(
        "spin_echo_cz",
        reg.clone(),
        t3 + tp,
        inputs,
        Target::Unitary(ideal),
    )
    .drive(DriveSpec::new(0, "1", "r", omega).during(0.0, tp))
    .drive(DriveSpec::new(1, "1", "r", omega).during(tp, t1))
    .drive(
        DriveSpec::new(1, "1", "r'", omp.abs())
            .phase(if omp < 0.0 { PI } else { 0.0 })
            .during(t2, t3),
    )
    .drive(DriveSpec::new(0, "1", "r'", omega).during(t3, t3 + tp));
    match microwave {
        None => s.events.push(Event {
            time: t1,
            op: microwave_flip(&reg)?,
            label: "microwave flip".into(),
        }),
        Some(w) => {
            for a in 0..2 {
                s = s.drive(
                    DriveSpec::new(a, "r", "r'", w)
                        .phase(PI / 2.0)
                        .during(t1, t2),
                );
            }
        }
    }
    Ok(s.note(format!("Omega' = {omp:.6e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiblockadeMode {
    /// Delta = V/2 on each singly excited level (|rr> resonant)
    DetuningMatch,
    /// Omega(t) = Omega_m cos(omega t) with V = 2 omega
    Modulation,
    /// modulation with V lowered by the |rr> light shift Omega_m^2 / (6 omega)
    ModulationCompensated,
}

/// Effective |11> <-> |rr> Rabi frequency for the mode.
pub fn antiblockade_rate(omega: f64, scale: f64, mode: AntiblockadeMode) -> f64 {
    match mode {
        AntiblockadeMode::DetuningMatch => omega * omega / scale,
        _ => omega * omega / (4.0 * scale),
    }
}

/// Two atoms {1, r}; one full |11> <-> |rr> flop. `scale` is Delta for the
/// detuning match and omega for modulation. The ideal state is -|11> (first input).
pub fn antiblockade_cz(
    omega: f64,
    scale: f64,
    mode: AntiblockadeMode,
    v_factor: f64,
) -> Result<PulseSchedule> {
    if !(omega > 0.0 && scale > 0.0) {
        return Err(Error::InvalidArgument(
            "Omega and the detuning/modulation frequency must be positive".into(),
        ));
    }
    let (rabi, det, v) = match mode {
        AntiblockadeMode::DetuningMatch => (Envelope::Const(omega), -scale, 2.0 * scale),
        AntiblockadeMode::Modulation => (
            Envelope::Cosine {
                amp: omega,
                omega: scale,
                phase: 0.0,
            },
            0.0,
            2.0 * scale,
        ),
        AntiblockadeMode::ModulationCompensated => (
            Envelope::Cosine {
                amp: omega,
                omega: scale,
                phase: 0.0,
            },
            0.0,
            2.0 * scale - omega * omega / (6.0 * scale),
        ),
    };
    let v = v * v_factor;
    let reg = Register::uniform(2, &["1", "r"]).with_interaction(Interaction::Shift {
        a: 0,
        b: 1,
        la: "r".into(),
        lb: "r".into(),
        v,
    });
    let period = TAU / antiblockade_rate(omega, scale, mode);
    let i11 = reg.index_of(&["1", "1"])?;
    let mut target = CVec::zeros(reg.dim());
    target[i11] = cr(-1.0);
    let mut s = PulseSchedule::new(
        "antiblockade_cz",
        reg,
        period,
        vec![i11],
        Target::State(target),
    );
    for a in 0..2 {
        s = s.drive(
            DriveSpec::new(a, "1", "r", 0.0)
                .envelope(rabi.clone())
                .detuned(det),
        );
    }
    let validity = omega / scale;
    Ok(s.note(format!("perturbative ratio Omega/scale = {validity:.3e}")))
}

/// GHZ via asymmetric interactions over per-atom levels {0, 1, s, p}.
pub const GHZ_MAX_ATOMS: usize = 5;

pub fn ghz_register(n: usize, v_ss: f64, v_sp: f64, v_pp: f64) -> Register {
    let mut reg = Register::uniform(n, &["0", "1", "s", "p"]);
    for a in 0..n {
        for b in a + 1..n {
            for (la, lb, v) in [
                ("s", "s", v_ss),
                ("s", "p", v_sp),
                ("p", "s", v_sp),
                ("p", "p", v_pp),
            ] {
                if v != 0.0 {
                    reg.interactions.push(Interaction::Shift {
                        a,
                        b,
                        la: la.into(),
                        lb: lb.into(),
                        v,
                    });
                }
            }
        }
    }
    reg
}

/// Step one drives 0 <-> s at Omega/2 for pi/(sqrt(N) Omega) (a collective pi/2),
/// step two the chain 0 <-> p <-> 1 at Omega for sqrt(2) pi / Omega, step three
/// 0 <-> s at Omega for pi/(sqrt(N) Omega) (a collective pi).
pub fn ghz_asymmetric(
    n: usize,
    omega: f64,
    v_ss: f64,
    v_sp: f64,
    v_pp: f64,
) -> Result<PulseSchedule> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "GHZ needs at least two atoms".into(),
        ));
    }
    if n > GHZ_MAX_ATOMS {
        return Err(Error::DimensionLimit {
            dim: 4usize.pow(n as u32),
            limit: 4usize.pow(GHZ_MAX_ATOMS as u32),
        });
    }
    let t1 = PI / ((n as f64).sqrt() * omega);
    let t2 = SQRT_2 * PI / omega;
    let reg = ghz_register(n, v_ss, v_sp, v_pp);
    let zeros = reg.index(&vec![0; n]);
    let ones = reg.index(&vec![1; n]);
    let mut target = CVec::zeros(reg.dim());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    target[zeros] = cr(-h);
    target[ones] = cr(if n.is_multiple_of(2) { h } else { -h });
    let mut s = PulseSchedule::new(
        "ghz_asymmetric",
        reg,
        2.0 * t1 + t2,
        vec![zeros],
        Target::State(target),
    );
    s.outputs = vec![zeros, ones];
    for a in 0..n {
        s = s
            .drive(DriveSpec::new(a, "0", "s", 0.5 * omega).during(0.0, t1))
            .drive(DriveSpec::new(a, "0", "p", omega).during(t1, t1 + t2))
            .drive(DriveSpec::new(a, "p", "1", omega).during(t1, t1 + t2))
            .drive(DriveSpec::new(a, "0", "s", omega).during(t1 + t2, 2.0 * t1 + t2));
    }
    Ok(s)
}

/// pi/(sqrt(N) Omega) (2 + sqrt(2 N)) = pi/Omega (2/sqrt(N) + sqrt(2)).
pub fn ghz_duration(n: usize, omega: f64) -> f64 {
    PI / omega * (2.0 / (n as f64).sqrt() + SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkStateParams {
    pub omega_m: f64,
    pub t_t: f64,
    pub sigma: f64,
    /// rad/us
    pub v: f64,
    /// control pi-pulse Rabi frequency
    pub omega_c: f64,
    /// effective wavevector of the target drive (rad/um)
    pub k_eff: f64,
}

/// Smaller sigma giving a 2 pi area of the shifted Gaussian (bisection on the rising branch).
pub fn dark_state_sigma(omega_m: f64, t_t: f64) -> Result<f64> {
    let area = |s: f64| {
        Envelope::ShiftedGaussian {
            amp: omega_m,
            t0: 0.0,
            duration: t_t,
            sigma: s,
        }
        .area(0.0, t_t, 4000)
    };
    let (mut lo, mut hi) = (t_t / 20.0, t_t / 4.0);
    // locate the maximum on a grid, then bisect below it
    let n = 400;
    let mut best = (lo, f64::MIN);
    for i in 0..=n {
        let s = lo + (hi - lo) * i as f64 / n as f64;
        let a = area(s);
        if a > best.1 {
            best = (s, a);
        }
    }
    if best.1 < TAU {
        return Err(Error::NoRoot { lo, hi, k: 0 });
    }
    hi = best.0;
    if area(lo) > TAU {
        return Err(Error::NoRoot { lo, hi, k: 0 });
    }
    for _ in 0..100 {
        let m = 0.5 * (lo + hi);
        if area(m) < TAU {
            lo = m;
        } else {
            hi = m;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Control {0, 1, r1, r3}, target {0, 1, r2, r4}; Forster coupling V between
/// |r1 r2> and |r3 r4>. pi (control) - shifted Gaussian (target) - pi (control).
pub fn dark_state_gate(p: &DarkStateParams) -> Result<PulseSchedule> {
    if p.v == 0.0 {
        return Err(Error::InvalidArgument(
            "dark-state gate needs V != 0".into(),
        ));
    }
    let reg = Register::new(vec![
        Atom::new(&["0", "1", "r1", "r3"]),
        Atom::new(&["0", "1", "r2", "r4"]),
    ])
    .with_interaction(Interaction::Flip {
        a: 0,
        b: 1,
        from: ("r1".into(), "r2".into()),
        to: ("r3".into(), "r4".into()),
        v: p.v,
    });
    let tp = PI / p.omega_c;
    let inputs = reg.subspace(&["0", "1"]);
    let env = Envelope::ShiftedGaussian {
        amp: p.omega_m,
        t0: tp,
        duration: p.t_t,
        sigma: p.sigma,
    };
    let end = tp + p.t_t;
    let mut s = PulseSchedule::new(
        "dark_state_gate",
        reg,
        end + tp,
        inputs,
        Target::Unitary(cz()),
    )
    .drive(DriveSpec::new(0, "1", "r1", p.omega_c).during(0.0, tp))
    .drive(
        DriveSpec::new(1, "1", "r2", 0.0)
            .envelope(env)
            .during(tp, end)
            .with_k(p.k_eff),
    )
    .drive(DriveSpec::new(0, "1", "r1", p.omega_c).during(end, end + tp));
    s.doppler_followers.push((1, "r4".into(), "r2".into()));
    Ok(s.note(format!("sigma = {:.6e} us", p.sigma)))
}

/// Single collective two-level model (|G>, |R>) with sqrt(N) Omega(t) and sweep delta(t).
pub fn ensemble_adiabatic_excitation(
    n: usize,
    omega: &Envelope,
    delta: &Envelope,
    duration: f64,
) -> Result<PulseSchedule> {
    if n == 0 {
        return Err(Error::InvalidArgument("ensemble needs N >= 1".into()));
    }
    let reg = Register::new(vec![Atom::new(&["G", "R"])]);
    let mut target = CVec::zeros(2);
    target[1] = cr(1.0);
    let s = PulseSchedule::new(
        "ensemble_adiabatic_excitation",
        reg,
        duration,
        vec![0],
        Target::State(target),
    )
    .drive(
        DriveSpec::new(0, "G", "R", 0.0)
            .envelope(omega.scaled((n as f64).sqrt()))
            .detuning_envelope(delta.clone())
            .during(0.0, duration),
    );
    Ok(s)
}

/// Adiabaticity diagnostics max |dOmega/dt| / W^2 and max |ddelta/dt| / W^2, W = sqrt(Omega^2 + delta^2),
/// sampled on `n` points.
pub fn adiabaticity(omega: &Envelope, delta: &Envelope, duration: f64, n: usize) -> (f64, f64) {
    let mut out = (0.0f64, 0.0f64);
    for i in 0..=n {
        let t = duration * i as f64 / n as f64;
        let w2 = omega.at(t).powi(2) + delta.at(t).powi(2);
        if w2 == 0.0 {
            continue;
        }
        out.0 = out.0.max(omega.derivative(t).abs() / w2);
        out.1 = out.1.max(delta.derivative(t).abs() / w2);
    }
    out
}

/// Two-channel sweep over (|r1 r2>, |r3 r4>) with coupling V and defect(t) on |r3 r4>.
pub fn swept_forster_transfer(v: f64, defect: &Envelope, duration: f64) -> Result<PulseSchedule> {
    let reg = Register::new(vec![Atom::new(&["r1r2", "r3r4"])]);
    let mut target = CVec::zeros(2);
    target[1] = cr(1.0);
    Ok(PulseSchedule::new(
        "swept_forster_transfer",
        reg,
        duration,
        vec![0],
        Target::State(target),
    )
    .drive(
        DriveSpec::new(0, "r1r2", "r3r4", 2.0 * v)
            .detuning_envelope(defect.clone())
            .during(0.0, duration),
    ))
}

/// Identity helper for composing schedules with pure-event steps.
pub fn identity_event(reg: &Register, time: f64) -> Event {
    Event {
        time,
        op: eye(reg.dim()),
        label: "identity".into(),
    }
}

/// |rr> population after the target 2 pi pulse with the control parked in |r>.
pub fn blockade_leak(omega: f64, v: f64) -> Result<f64> {
    let reg = blockade_register(v);
    let start = reg.index_of(&["r", "1"])?;
    let rr = reg.index_of(&["r", "r"])?;
    let h = reg.hamiltonian(&[DriveSpec::new(1, "1", "r", omega)])?;
    let u = propagator_piecewise(&h, (0.0, TAU / omega))?;
    Ok(u[(rr, start)].norm_sqr())
}

/// max |(U' M U - M) e_j| over the control-excited sector {|r 1>, |r r>}, where U is the
/// target pi pulse at Omega with V0, M the microwave flip and U' the target pi pulse on
/// 1 <-> r' at Omega' (default Omega V0'/V0) with V0'.
pub fn spin_echo_identity_error(
    omega: f64,
    v0: f64,
    v0p: f64,
    omega_prime: Option<f64>,
) -> Result<f64> {
    let reg = echo_register(v0, v0p);
    let omp = omega_prime.unwrap_or(omega * v0p / v0);
    let u1 = propagator_piecewise(
        &reg.hamiltonian(&[DriveSpec::new(1, "1", "r", omega)])?,
        (0.0, PI / omega),
    )?;
    let d2 = DriveSpec::new(1, "1", "r'", omp.abs()).phase(if omp < 0.0 { PI } else { 0.0 });
    let u2 = propagator_piecewise(&reg.hamiltonian(&[d2])?, (0.0, PI / omp.abs()))?;
    let m = microwave_flip(&reg)?;
    let total = &u2 * &m * &u1;
    let mut err = 0.0f64;
    for labels in [["r", "1"], ["r", "r"]] {
        let j = reg.index_of(&labels)?;
        err = err.max((total.column(j) - m.column(j)).norm());
    }
    Ok(err)
}

/// Twice the time of the |rr> population maximum starting from |11>, located on
/// `samples` points over `horizon` and refined by a parabola. The horizon should hold
/// one slow maximum only (about 1.25 expected periods); the fast ripple on top of the
/// flop is then too small to move the global maximum.
pub fn flop_period(s: &PulseSchedule, horizon: f64, samples: usize) -> Result<f64> {
    let h = s.hamiltonian(&super::SimOptions::default())?;
    let reg = &s.register;
    let i11 = reg.index_of(&["1", "1"])?;
    let rr = reg.index_of(&["r", "r"])?;
    let mut psi0 = CVec::zeros(reg.dim());
    psi0[i11] = cr(1.0);
    let times: Vec<f64> = (0..=samples)
        .map(|i| horizon * i as f64 / samples as f64)
        .collect();
    let opts = EvolveOptions::with_tol(1e-10).times(times.clone());
    let traj = evolve(
        &h,
        &StateVector::from_amplitudes(psi0),
        (0.0, horizon),
        &opts,
    )?;
    let pop: Vec<f64> = traj.states.iter().map(|p| p[rr].norm_sqr()).collect();
    let i = (1..pop.len() - 1)
        .max_by(|&a, &b| pop[a].total_cmp(&pop[b]))
        .ok_or_else(|| Error::InvalidArgument("too few samples".into()))?;
    let (a, b, c) = (pop[i - 1], pop[i], pop[i + 1]);
    let denom = a - 2.0 * b + c;
    let shift = if denom != 0.0 {
        0.5 * (a - c) / denom
    } else {
        0.0
    };
    Ok(2.0 * (times[i] + shift * (times[1] - times[0])))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForsterTransfer {
    /// |<r3 r4|psi(T)>|^2 starting from |r1 r2>
    pub bare: f64,
    /// dressed-state transfer: start in the eigenstate of H(0) connected to |r1 r2>,
    /// overlap with the eigenstate of H(T) connected to |r3 r4>
    pub dressed: f64,
}

fn dressed_state(v: f64, defect: f64, lean: usize) -> Result<CVec> {
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = cr(v);
    m[(1, 0)] = cr(v);
    m[(1, 1)] = cr(defect);
    let e = eig_hermitian(&OperatorMatrix::hermitian(m)?)?.vectors;
    let j = if e[(lean, 0)].norm() >= e[(lean, 1)].norm() {
        0
    } else {
        1
    };
    Ok(e.column(j).into_owned())
}

/// Bare and dressed transfer of a Forster sweep (see `swept_forster_transfer`).
pub fn forster_transfer(v: f64, defect: &Envelope, duration: f64) -> Result<ForsterTransfer> {
    let s = swept_forster_transfer(v, defect, duration)?;
    let h = s.hamiltonian(&super::SimOptions::default())?;
    let opts = EvolveOptions::with_tol(1e-10).final_only();
    let mut bare0 = CVec::zeros(2);
    bare0[0] = cr(1.0);
    let bare = evolve_vector(&h, &bare0, (0.0, duration), &opts)?[1].norm_sqr();
    let start = dressed_state(v, defect.at(0.0), 0)?;
    let end = dressed_state(v, defect.at(duration), 1)?;
    let psi = evolve_vector(&h, &start, (0.0, duration), &opts)?;
    Ok(ForsterTransfer {
        bare,
        dressed: end.dotc(&psi).norm_sqr(),
    })
}

/// Target-pulse-only evolution of |r1 1> (control parked in r1): returns (phase, 1 - population).
pub fn dark_state_return(p: &DarkStateParams, opts: &super::SimOptions) -> Result<(f64, f64)> {
    let s = dark_state_gate(p)?;
    let h = s.hamiltonian(opts)?;
    let reg = &s.register;
    let i = reg.index_of(&["r1", "1"])?;
    let mut psi = CVec::zeros(reg.dim());
    psi[i] = cr(1.0);
    let t0 = PI / p.omega_c;
    let out = evolve_vector(
        &h,
        &psi,
        (t0, t0 + p.t_t),
        &EvolveOptions::with_tol(opts.tol).final_only(),
    )?;
    Ok((out[i].arg(), 1.0 - out[i].norm_sqr()))
}

/// Defect sweep from -span to +span over [0, duration] following sinh(a (2t/T - 1)) / sinh(a):
/// slow through zero, fast where the defect is large. `a` -> 0 recovers the linear sweep.
pub fn sinh_sweep(span: f64, duration: f64, a: f64) -> Envelope {
    if a.abs() < 1e-12 {
        return Envelope::Linear {
            from: -span,
            to: span,
            t0: 0.0,
            t1: duration,
        };
    }
    let norm = a.sinh();
    Envelope::Custom(std::sync::Arc::new(move |t: f64| {
        let s = (t / duration).clamp(0.0, 1.0);
        span * (a * (2.0 * s - 1.0)).sinh() / norm
    }))
}

impl DarkStateParams {
    pub const CESIUM_AMU: f64 = 133.0;

    /// Frequencies in rad/us, C3 in h x GHz um^3, L in um. `sigma` None picks the
    /// width giving the target pulse an area of 2 pi.
    pub fn from_physical(
        omega_m: f64,
        t_t: f64,
        sigma: Option<f64>,
        c3_ghz: f64,
        l: f64,
    ) -> Result<Self> {
        if !(l > 0.0 && t_t > 0.0 && omega_m > 0.0) {
            return Err(Error::InvalidArgument(
                "Omega_m, T_t and L must be positive".into(),
            ));
        }
        let sigma = match sigma {
            Some(s) => s,
            None => dark_state_sigma(omega_m, t_t)?,
        };
        Ok(Self {
            omega_m,
            t_t,
            sigma,
            v: crate::interact::interaction_at(crate::interact::InteractionKind::Dipole, c3_ghz, l),
            omega_c: TAU * 50.0,
            k_eff: TAU / 0.319,
        })
    }
}
