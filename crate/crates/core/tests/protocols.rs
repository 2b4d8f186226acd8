use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use proptest::prelude::*;
use rydgate::ham::{blockade_register, Envelope};
use rydgate::noise::standard_normals;
use rydgate::protocols::detuned::{first_pulse_11_phase, solution_at};
use rydgate::protocols::tsd::{
    admissible_alpha, alpha_branch, implied_k, one_shot_error, one_shot_ideal,
};
use rydgate::protocols::{self as p, simulate, wrap_phase, SimOptions, Target};
use rydgate::qcore::{cr, CMat, CVec, C64};
use rydgate::Error;

fn run(s: &p::PulseSchedule) -> p::GateResult {
    simulate(s, &SimOptions::default()).unwrap()
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn diag(v: &[f64]) -> CMat {
    CMat::from_diagonal(&CVec::from_iterator(v.len(), v.iter().map(|&x| cr(x))))
}

const OM: f64 = TAU;

// blockade C_Z

#[test]
fn deep_blockade_is_a_cz() {
    let r = run(&p::blockade_cz(OM, 1e4 * OM, 0.0).unwrap());
    assert!(r.fidelity() >= 1.0 - 1e-6, "{}", r.fidelity());
}

#[test]
fn leaked_population_after_the_target_pulse() {
    for ratio in [2.0, 5.0, 10.0, 20.0] {
        let mut s = p::blockade_cz(OM, ratio * OM, 0.0).unwrap();
        s.drives.pop();
        s.duration = 3.0 * PI / OM;
        let r = run(&s);
        let rr = s.register.index_of(&["r", "r"]).unwrap();
        let leak = r.columns[(rr, 3)].norm_sqr();
        let want = rydgate::noise::blockade_error_analytic(OM, ratio * OM);
        assert!(
            (leak - want).abs() < 1e-8,
            "V/Omega = {ratio}: {leak} vs {want}"
        );
    }
}

#[test]
fn no_interaction_gives_a_product_map() {
    let r = run(&p::blockade_cz(OM, 0.0, 0.0).unwrap());
    assert!(max_abs(&(&r.map - diag(&[1.0, -1.0, -1.0, 1.0]))) < 1e-10);
}

#[test]
fn blockade_infidelity_falls_over_decades() {
    let inf: Vec<f64> = [10.0, 100.0, 1e3, 1e4]
        .iter()
        .map(|&x| 1.0 - run(&p::blockade_cz(OM, x * OM, 0.0).unwrap()).fidelity())
        .collect();
    assert!(inf.windows(2).all(|w| w[1] < w[0]), "{inf:?}");
}

// detuned controlled phase

#[test]
fn reference_solution_triples() {
    for (theta, x, xi, t) in [
        (PI, 0.3773711, 3.902423, 4.292682),
        (PI / 2.0, 0.7281492, 4.059675, 3.950048),
        (PI / 3.0, 0.9384181, 4.022575, 3.701998),
    ] {
        let s = p::detuned_phase_solve(theta, None).unwrap();
        assert!((s.delta_over_omega - x).abs() < 1e-6, "{s:?}");
        assert!((s.xi - xi).abs() < 1e-5, "{s:?}");
        assert!((s.t_omega - t).abs() < 1e-5, "{s:?}");
    }
}

#[test]
fn solutions_are_fixed_points() {
    for theta in [0.4, 1.0, PI / 2.0, 2.5, PI, 4.0] {
        let Ok(s) = p::detuned_phase_solve(theta, None) else {
            continue;
        };
        assert!(s.residuals.iter().all(|&r| r < 1e-9), "{s:?}");
        let again = solution_at(theta, s.delta_over_omega);
        assert_eq!(again, s);
        assert!(s.alpha > -TAU && s.alpha <= 0.0);
        assert!((2.0 * s.alpha - (2.0 * s.alpha - s.theta) - theta).abs() < 1e-12);
    }
}

#[test]
fn solver_rejects_bad_requests() {
    assert!(p::detuned_phase_solve(0.0, None).is_err());
    assert!(p::detuned_phase_solve(7.0, None).is_err());
    match p::detuned_phase_solve(PI, Some(40)) {
        Err(Error::NoRoot { lo, hi, k: 40 }) => assert!(lo < hi),
        other => panic!("{other:?}"),
    }
}

#[test]
fn eleven_phase_after_first_pulse() {
    let sol = p::detuned_phase_solve(PI, None).unwrap();
    let mut s = p::detuned_phase_schedule(&sol, OM, 1e8 * OM, false).unwrap();
    s.duration = sol.t_omega / OM;
    let r = run(&s);
    let m = r.map[(3, 3)];
    assert!((m.norm() - 1.0).abs() < 1e-6);
    assert!(wrap_phase(m.arg() - first_pulse_11_phase(sol.delta_over_omega)).abs() < 1e-6);
}

#[test]
fn blockade_correction_improves_eleven_return() {
    let sol = p::detuned_phase_solve(PI, None).unwrap();
    let v = 50.0 * OM;
    let ideal = C64::from_polar(1.0, 2.0 * sol.alpha - sol.theta);
    let err = |corr: bool| {
        (run(&p::detuned_phase_schedule(&sol, OM, v, corr).unwrap()).map[(3, 3)] - ideal).norm()
    };
    let (plain, fixed) = (err(false), err(true));
    assert!(fixed < plain, "{fixed:.3e} vs {plain:.3e}");
}

// TSD CNOT

#[test]
fn admissible_control_ratios() {
    assert!((admissible_alpha(1) - 15f64.sqrt()).abs() < 1e-15);
    assert_eq!(alpha_branch(63f64.sqrt()).unwrap(), 2);
    let msg = p::tsd_cnot_two_pulse(OM, 3.9, 1e9, None)
        .unwrap_err()
        .to_string();
    assert!(
        msg.contains("sqrt(15)") && msg.contains("sqrt(63)"),
        "{msg}"
    );
    assert!(alpha_branch(-1.0).is_err());
}

#[test]
fn two_pulse_cnot_in_the_blockade_limit() {
    let r = run(&p::tsd_cnot_two_pulse(OM, admissible_alpha(1), 1e9, None).unwrap());
    assert!(r.fidelity() >= 1.0 - 1e-6, "{}", r.fidelity());
}

#[test]
fn one_shot_idle_sector_returns() {
    let r = run(&p::tsd_cnot_one_shot(OM, 4.245739, 3, 1e9, None).unwrap());
    let ideal = one_shot_ideal();
    for j in 0..2 {
        assert!((r.map.column(j) - ideal.column(j)).norm() < 1e-8);
    }
}

#[test]
fn implied_integers_for_injected_ratios() {
    // k2 = ratio k1 / sqrt(2)
    let (k2, _) = implied_k(SQRT_2 * 7.0 / 3.0, 3);
    assert!((k2 - 7.0).abs() < 1e-12);
    // k3 = (sqrt(ratio^2 + 2) sqrt(2) k1 - 1) / 2
    let (k1, m) = (3u32, 9.0);
    let r = (((2.0 * m + 1.0) / (SQRT_2 * k1 as f64)).powi(2) - 2.0).sqrt();
    let (_, k3) = implied_k(r, k1);
    assert!((k3 - m).abs() < 1e-12);
}

#[test]
fn reference_ratio_is_a_local_optimum() {
    let e = |r: f64| one_shot_error(OM, r, 3, 1e9, None).unwrap();
    let r0 = 4.245739;
    assert!(e(r0) < e(r0 * 1.01) && e(r0) < e(r0 * 0.99));
}

#[test]
fn search_argument_errors() {
    let cfg = p::TsdSearch::default();
    assert!(p::tsd_condition_search(0, (4.0, 4.5), &cfg).is_err());
    assert!(p::tsd_condition_search(3, (4.5, 4.0), &cfg).is_err());
}

// dark-state gate

#[test]
fn dark_state_idle_target_picks_up_pi() {
    let d = p::DarkStateParams::from_physical(TAU * 7.643, 0.29, None, -33.0, 10.0).unwrap();
    let r = run(&p::dark_state_gate(&d).unwrap());
    let m = r.map[(1, 1)];
    assert!((m.norm() - 1.0).abs() < 1e-3);
    assert!(wrap_phase(m.arg() - PI).abs() < 1e-3, "{}", m.arg());
}

// GHZ

#[test]
fn ghz_improves_with_interaction() {
    let f: Vec<f64> = [5.0, 10.0, 20.0, 50.0]
        .iter()
        .map(|&x| run(&p::ghz_asymmetric(2, OM, x * OM, x * OM, 0.0).unwrap()).fidelity())
        .collect();
    assert!(f.windows(2).all(|w| w[1] > w[0]), "{f:?}");
}

#[test]
fn ghz_step_one_makes_symmetric_superposition() {
    for n in 2..=3usize {
        let mut s = p::ghz_asymmetric(n, OM, 50.0 * OM, 50.0 * OM, 0.0).unwrap();
        s.duration = PI / ((n as f64).sqrt() * OM);
        let r = run(&s);
        let mut want = CVec::zeros(s.register.dim());
        want[s.register.index(&vec![0; n])] = cr(FRAC_1_SQRT_2);
        for a in 0..n {
            let mut digits = vec![0; n];
            digits[a] = 2;
            want[s.register.index(&digits)] = C64::new(0.0, -FRAC_1_SQRT_2 / (n as f64).sqrt());
        }
        let overlap = want.dotc(&r.columns.column(0).into_owned()).norm_sqr();
        assert!(overlap > 1.0 - 1e-3, "N = {n}: {overlap}");
    }
}

#[test]
fn ghz_size_limits_and_duration() {
    assert!(matches!(
        p::ghz_asymmetric(6, OM, 1.0, 1.0, 0.0),
        Err(Error::DimensionLimit { .. })
    ));
    assert!(p::ghz_asymmetric(1, OM, 1.0, 1.0, 0.0).is_err());
    for n in 2..=5 {
        let s = p::ghz_asymmetric(n, OM, 1.0, 1.0, 0.0).unwrap();
        assert!((s.duration - p::ghz_duration(n, OM)).abs() < 1e-12);
    }
}

// spin echo

#[test]
fn echo_survives_global_interaction_scaling() {
    let (v0, v0p) = (TAU * 12.0, -TAU * 7.0);
    for scale in [1.0, 1.3] {
        let e = p::spin_echo_identity_error(OM, scale * v0, scale * v0p, None).unwrap();
        assert!(e < 1e-10, "scale {scale}: {e}");
    }
}

#[test]
fn echo_return_error_is_quadratic_in_rabi_mismatch() {
    let (v0, v0p) = (TAU * 12.0, -TAU * 7.0);
    let omp = OM * v0p / v0;
    let pop = |d: f64| {
        p::spin_echo_identity_error(OM, v0, v0p, Some(omp * (1.0 + d)))
            .unwrap()
            .powi(2)
    };
    // the |rr> interaction phase mismatch is (V0/Omega) pi d, so d must stay well below Omega/(pi V0)
    let (a, b) = (pop(1e-3), pop(2e-3));
    assert!(b > a && (b / a / 4.0 - 1.0).abs() < 0.1, "{a:.3e} {b:.3e}");
}

#[test]
fn finite_microwave_approaches_instantaneous_flip() {
    let (v0, v0p) = (TAU * 12.0, -TAU * 7.0);
    let fast = run(&p::spin_echo_cz(OM, v0, v0p, None).unwrap());
    let slow = run(&p::spin_echo_cz(OM, v0, v0p, Some(TAU * 2000.0)).unwrap());
    assert!((fast.fidelity() - slow.fidelity()).abs() < 1e-3);
}

// antiblockade

#[test]
fn detuned_match_follows_two_level_oracle() {
    let delta = 10.0 * OM;
    let v = 2.0 * delta * 1.1;
    let s = p::antiblockade_cz(OM, delta, p::AntiblockadeMode::DetuningMatch, 1.1).unwrap();
    // second-order |11> <-> |rr> model: |1r>, |r1> sit at -Delta, |rr> at V - 2 Delta
    let q = OM * OM / 4.0;
    let rabi = 2.0 * q * (1.0 / delta + 1.0 / (v - delta));
    let det = (v - 2.0 * delta) + 2.0 * q / (v - delta) - 2.0 * q / delta;
    let w = (rabi * rabi + det * det).sqrt();
    // time-averaged |rr> population over whole slow periods is half the transfer amplitude;
    // the average also removes interference with the fast dressed-state ripple
    let want = 0.5 * rabi * rabi / (w * w);
    let h = s.hamiltonian(&SimOptions::default()).unwrap();
    let i11 = s.register.index_of(&["1", "1"]).unwrap();
    let rr = s.register.index_of(&["r", "r"]).unwrap();
    let horizon = 4.0 * TAU / w;
    let n = 8000;
    let times: Vec<f64> = (0..=n).map(|i| horizon * i as f64 / n as f64).collect();
    let opts = rydgate::qcore::EvolveOptions::with_tol(1e-10).times(times);
    let psi = rydgate::qcore::StateVector::basis(s.register.dim(), i11);
    let traj = rydgate::qcore::evolve(&h, &psi, (0.0, horizon), &opts).unwrap();
    let mut weights = vec![0.0; s.register.dim()];
    weights[rr] = 1.0;
    let mean = traj.integrate_weighted_population(&weights) / horizon;
    assert!((mean / want - 1.0).abs() < 0.1, "{mean:.4e} vs {want:.4e}");
}

#[test]
fn modulation_period_follows_floquet_shift() {
    let w = 10.0 * OM;
    let eff = p::antiblockade_rate(OM, w, p::AntiblockadeMode::Modulation);
    let bare = p::antiblockade_cz(OM, w, p::AntiblockadeMode::Modulation, 1.0).unwrap();
    let shifted = TAU / (eff * (1.0f64 + 4.0 / 9.0).sqrt());
    let per = p::flop_period(&bare, 1.25 * shifted, 40000).unwrap();
    assert!((per / shifted - 1.0).abs() < 0.05, "{per} vs {shifted}");
    let comp = p::antiblockade_cz(OM, w, p::AntiblockadeMode::ModulationCompensated, 1.0).unwrap();
    let per = p::flop_period(&comp, 1.25 * TAU / eff, 40000).unwrap();
    assert!((per * eff / TAU - 1.0).abs() < 0.1, "{per}");
}

// wait-phase gate

#[test]
fn weak_interaction_conditional_phase() {
    let v = 0.01 * OM;
    let r = run(&p::wait_phase_gate(OM, v, PI, true).unwrap());
    assert!(
        wrap_phase(r.conditional_phase() - PI).abs() < 1e-2,
        "{}",
        r.conditional_phase()
    );
    let att = run(&p::wait_phase_gate(OM, -v, PI, true).unwrap());
    assert!(wrap_phase(att.conditional_phase() + PI).abs() < 1e-2);
}

#[test]
fn zero_phase_is_two_pi_pairs() {
    let s = p::wait_phase_gate(OM, 1e-9, 0.0, false).unwrap();
    assert!((s.duration - 2.0 * PI / OM).abs() < 1e-15);
    assert!(max_abs(&(&run(&s).map - diag(&[1.0, -1.0, -1.0, 1.0]))) < 1e-8);
    assert!(p::wait_phase_gate(OM, 0.0, PI, false).is_err());
}

#[test]
fn interaction_noise_spreads_the_phase() {
    let v0 = 0.01 * OM;
    let base = p::wait_phase_gate(OM, v0, PI, true).unwrap();
    let phases: Vec<f64> = standard_normals(400, 23)
        .iter()
        .map(|z| {
            let mut s = base.clone();
            s.register = blockade_register(v0 * (1.0 + 0.05 * z));
            wrap_phase(run(&s).conditional_phase() - PI)
        })
        .collect();
    let m = phases.iter().sum::<f64>() / phases.len() as f64;
    let sd =
        (phases.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (phases.len() - 1) as f64).sqrt();
    assert!((sd / (0.05 * PI) - 1.0).abs() < 0.1, "{sd}");
}

// ensemble excitation

#[test]
fn far_detuned_ensemble_stays_put() {
    let t = 4.0;
    let o = Envelope::Gaussian {
        amp: TAU * 4.0,
        center: t / 2.0,
        sigma: t / 6.0,
    };
    for n in 1..=7 {
        let r = run(
            &p::ensemble_adiabatic_excitation(n, &o, &Envelope::Const(TAU * 500.0), t).unwrap(),
        );
        assert!(r.fidelity() < 1e-3, "N = {n}: {}", r.fidelity());
    }
    assert!(p::ensemble_adiabatic_excitation(0, &o, &Envelope::Const(0.0), t).is_err());
}

#[test]
fn adiabaticity_of_a_linear_sweep() {
    let (t, span, om) = (4.0, TAU * 10.0, TAU * 2.0);
    let d = Envelope::Linear {
        from: -span,
        to: span,
        t0: 0.0,
        t1: t,
    };
    let (a, b) = p::adiabaticity(&Envelope::Const(om), &d, t, 400);
    assert_eq!(a, 0.0);
    assert!((b - 2.0 * span / t / (om * om)).abs() < 1e-12);
}

// Forster sweep

fn forster(v: f64, dur: f64) -> p::ForsterTransfer {
    p::forster_transfer(v, &p::sinh_sweep(TAU * 20.0, dur, 3.0), dur).unwrap()
}

#[test]
fn slow_sweep_transfers() {
    let f = forster(TAU, 10.0);
    assert!(f.dressed >= 0.999, "{f:?}");
    assert!(f.bare >= 0.99, "{f:?}");
}

#[test]
fn sudden_sweep_does_not_transfer() {
    let f = forster(TAU, 1e-5);
    assert!(f.bare < 1e-3, "{f:?}");
}

#[test]
fn sweep_is_robust_to_interaction_scale() {
    let f0 = forster(TAU, 10.0).dressed;
    for s in [0.8, 1.2] {
        assert!((forster(s * TAU, 10.0).dressed - f0).abs() < 1e-3);
    }
}

// Berry phases

proptest! {
    #[test]
    fn constant_angle_loop(theta in 0.0f64..PI / 2.0, winding in 1i32..3) {
        let w = winding as f64;
        let path = move |s: f64| (theta, TAU * w * s);
        let (p1, _) = p::berry_phases(&path, 1e-10).unwrap();
        prop_assert!((p1 + TAU * w * theta.sin().powi(2)).abs() < 1e-8);
    }
}

#[test]
fn berry_reference_values() {
    let (a, b) = p::berry_phases(&|s: f64| (0.0, TAU * s), 1e-10).unwrap();
    assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
    let (_, b) = p::berry_phases(&|s: f64| (PI / 4.0, TAU * s), 1e-10).unwrap();
    assert!((b + TAU / 3.0).abs() < 1e-8);
    assert!(p::berry_phases(&|s: f64| (0.3 * s, TAU * s), 1e-10).is_err());
    assert!(p::berry_phases(&|s: f64| (0.3, 2.0 * s), 1e-10).is_err());
}

// every target is unitary or normalized

#[test]
fn ideal_targets_are_unitary() {
    let d = p::DarkStateParams::from_physical(TAU * 7.643, 0.29, None, -33.0, 10.0).unwrap();
    let sol = p::detuned_phase_solve(PI / 3.0, None).unwrap();
    let o = Envelope::Gaussian {
        amp: TAU * 4.0,
        center: 2.0,
        sigma: 0.6,
    };
    let schedules = vec![
        p::blockade_cz(OM, 10.0 * OM, 0.0).unwrap(),
        p::wait_phase_gate(OM, 0.3, 1.1, false).unwrap(),
        p::spin_echo_cz(OM, 3.0, -2.0, None).unwrap(),
        p::antiblockade_cz(OM, 10.0 * OM, p::AntiblockadeMode::DetuningMatch, 1.0).unwrap(),
        p::ghz_asymmetric(3, OM, 50.0, 50.0, 0.0).unwrap(),
        p::dark_state_gate(&d).unwrap(),
        p::ensemble_adiabatic_excitation(3, &o, &Envelope::Const(1.0), 4.0).unwrap(),
        p::swept_forster_transfer(TAU, &p::sinh_sweep(10.0, 1.0, 2.0), 1.0).unwrap(),
        p::detuned_phase_schedule(&sol, OM, 1e3 * OM, false).unwrap(),
        p::tsd_cnot_two_pulse(OM, admissible_alpha(2), 1e6, None).unwrap(),
        p::tsd_cnot_one_shot(OM, 4.2, 3, 1e6, None).unwrap(),
    ];
    for s in &schedules {
        match &s.target {
            Target::Unitary(u) => {
                let n = u.ncols();
                assert!(
                    max_abs(&(u.adjoint() * u - CMat::identity(n, n))) < 1e-12,
                    "{}",
                    s.name
                );
            }
            Target::State(psi) => assert!((psi.norm() - 1.0).abs() < 1e-12, "{}", s.name),
        }
    }
}
