use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rydgate::ham::{
    adiabatic_eliminate, blockade_register, dark_state_forster, dark_state_vector,
    modulated_drive_effective, one_photon, pair_blockade, tsd_three_state, two_photon_full, Atom,
    DriveSpec, Envelope, Interaction, Register, TwoPhotonSpec,
};
use rydgate::qcore::{
    c, cr, eig_hermitian, evolve, evolve_lindblad, propagator_piecewise, CMat, CVec, DensityMatrix,
    EvolveOptions, Hamiltonian, OperatorMatrix, StateVector,
};

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn static_matrix(h: &Hamiltonian) -> CMat {
    h.matrix_at(0.0, 0.0)
}

#[test]
fn one_photon_pi_pulse() {
    let u = propagator_piecewise(&one_photon(cr(TAU)), (0.0, 0.5)).unwrap();
    assert!((u[(1, 0)] - c(0.0, -1.0)).norm() < 1e-12);
    assert!(u[(0, 0)].norm() < 1e-12);
}

#[test]
fn one_photon_zero_rabi_is_zero_operator() {
    assert_eq!(max_abs(&static_matrix(&one_photon(cr(0.0)))), 0.0);
}

proptest! {
    #[test]
    fn phase_twist_rotates_the_axis(xi in -PI..PI, om in 0.5f64..10.0, t in 0.0f64..2.0) {
        let u = propagator_piecewise(&one_photon(cr(om) * c(xi.cos(), xi.sin())), (0.0, t)).unwrap();
        // U = cos(a) I - i sin(a) M with M = [[0, e^{-i xi}], [e^{i xi}, 0]]
        let (s, co) = (0.5 * om * t).sin_cos();
        let e = c(xi.cos(), xi.sin());
        let want = CMat::from_row_slice(2, 2, &[cr(co), c(0.0, -s) * e.conj(), c(0.0, -s) * e, cr(co)]);
        prop_assert!(max_abs(&(u - want)) < 1e-12);
    }
}

#[test]
fn two_photon_without_drive_is_diagonal() {
    let h = static_matrix(&two_photon_full(&TwoPhotonSpec {
        omega1: 0.0,
        omega2: 0.0,
        delta: 5.0,
        stark_r: 1.0,
        stark_g: -2.0,
    }));
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert_eq!(h[(i, j)].norm(), 0.0);
            }
        }
    }
    assert_eq!(h[(1, 1)].re, 5.0);
}

#[test]
fn intermediate_population_stays_small() {
    let om = TAU;
    let spec = TwoPhotonSpec {
        omega1: om,
        omega2: om,
        delta: 20.0 * om,
        stark_r: 0.0,
        stark_g: 0.0,
    };
    let eff = adiabatic_eliminate(&spec).unwrap();
    let t = PI / eff.omega_eff.abs();
    let traj = evolve(
        &two_photon_full(&spec),
        &StateVector::basis(3, 0),
        (0.0, t),
        &EvolveOptions::with_tol(1e-10),
    )
    .unwrap();
    let bound = (spec.omega1 / spec.delta).powi(2);
    let worst = traj
        .states
        .iter()
        .map(|s| s[1].norm_sqr())
        .fold(0.0, f64::max);
    assert!(worst < bound, "max p population {worst} vs {bound}");
    assert!(traj.last().unwrap()[2].norm_sqr() > 0.99);
}

#[test]
fn intermediate_scattering_matches_estimate() {
    // Lindblad run with p decaying into an extra sink level
    let om = TAU;
    let delta = 50.0 * om;
    let tau_p: f64 = 1.0;
    let spec = TwoPhotonSpec {
        omega1: om,
        omega2: om,
        delta,
        stark_r: 0.0,
        stark_g: 0.0,
    };
    let m3 = static_matrix(&two_photon_full(&spec));
    let mut m = CMat::zeros(4, 4);
    m.view_mut((0, 0), (3, 3)).copy_from(&m3);
    let mut h = Hamiltonian::new(4);
    h.add_static(&m);
    let mut l = CMat::zeros(4, 4);
    l[(3, 1)] = cr((1.0 / tau_p).sqrt());
    let t = PI / adiabatic_eliminate(&spec).unwrap().omega_eff.abs();
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(4, 0).amplitudes);
    let out = evolve_lindblad(
        &h,
        &[l],
        &rho0,
        (0.0, t),
        &EvolveOptions::with_tol(1e-9).final_only(),
    )
    .unwrap();
    let scattered = out.last().unwrap().1.entries()[(3, 3)].re;
    let estimate = PI / (2.0 * tau_p * delta);
    assert!(
        (scattered / estimate - 1.0).abs() < 0.2,
        "scattered {scattered} vs {estimate}"
    );
}

#[test]
fn elimination_reference_values() {
    let om = TAU;
    let e = adiabatic_eliminate(&TwoPhotonSpec {
        omega1: om,
        omega2: om,
        delta: 20.0 * om,
        stark_r: 0.0,
        stark_g: 0.0,
    })
    .unwrap();
    assert!((e.omega_eff + TAU * 0.025).abs() < 1e-12);
    assert!((e.delta_r + TAU * 0.0125).abs() < 1e-12);
    assert!((e.delta_g + TAU * 0.0125).abs() < 1e-12);
    let e = adiabatic_eliminate(&TwoPhotonSpec {
        omega1: om,
        omega2: om,
        delta: 5.0 * om,
        stark_r: 0.0,
        stark_g: 0.0,
    })
    .unwrap();
    assert!((e.omega_eff + TAU * 0.1).abs() < 1e-12);
    assert!((e.delta_r + TAU * 0.05).abs() < 1e-12);
    assert!((e.delta_g + TAU * 0.05).abs() < 1e-12);
}

#[test]
fn stark_shift_cancels_rydberg_light_shift() {
    let (o2, d) = (3.0, 40.0);
    let e = adiabatic_eliminate(&TwoPhotonSpec {
        omega1: 2.0,
        omega2: o2,
        delta: d,
        stark_r: o2 * o2 / (4.0 * d),
        stark_g: 0.0,
    })
    .unwrap();
    assert!(e.delta_r.abs() < 1e-15);
}

#[test]
fn elimination_rejects_zero_detuning() {
    assert!(adiabatic_eliminate(&TwoPhotonSpec {
        omega1: 1.0,
        omega2: 1.0,
        delta: 0.0,
        stark_r: 0.0,
        stark_g: 0.0
    })
    .is_err());
}

#[test]
fn effective_pi_pulse_matches_three_level_model() {
    let om = TAU;
    let spec = TwoPhotonSpec {
        omega1: om,
        omega2: om,
        delta: 100.0 * om,
        stark_r: 0.0,
        stark_g: 0.0,
    };
    let eff = adiabatic_eliminate(&spec).unwrap();
    let t = PI / eff.omega_eff.abs();
    let opts = EvolveOptions::with_tol(1e-10).final_only();
    let full = evolve(
        &two_photon_full(&spec),
        &StateVector::basis(3, 0),
        (0.0, t),
        &opts,
    )
    .unwrap();
    let red = evolve(
        &eff.hamiltonian(),
        &StateVector::basis(2, 0),
        (0.0, t),
        &opts,
    )
    .unwrap();
    let (pf, pr) = (
        full.last().unwrap()[2].norm_sqr(),
        red.last().unwrap()[1].norm_sqr(),
    );
    assert!((pf - pr).abs() < 1e-3, "{pf} vs {pr}");
}

#[test]
fn undriven_control_leaves_detuned_two_level_sector() {
    let (om, d) = (2.0, 0.7);
    let h = static_matrix(&pair_blockade(cr(0.0), cr(om), d, 9.0).unwrap());
    let reg = blockade_register(9.0);
    let idx = [
        reg.index_of(&["0", "1"]).unwrap(),
        reg.index_of(&["0", "r"]).unwrap(),
    ];
    let block = CMat::from_fn(2, 2, |i, j| h[(idx[i], idx[j])]);
    let e = eig_hermitian(&OperatorMatrix::hermitian(block).unwrap()).unwrap();
    let w = (om * om + d * d).sqrt();
    assert!((e.values[0] - (d - w) / 2.0).abs() < 1e-12);
    assert!((e.values[1] - (d + w) / 2.0).abs() < 1e-12);
    // the sector is closed
    for k in 0..9 {
        if !idx.contains(&k) {
            assert_eq!(h[(idx[0], k)].norm() + h[(idx[1], k)].norm(), 0.0);
        }
    }
}

#[test]
fn strong_blockade_suppresses_double_excitation() {
    let om = TAU;
    let v = 1e6 * om;
    let h = pair_blockade(cr(om), cr(om), 0.0, v).unwrap();
    let reg = blockade_register(v);
    let u = propagator_piecewise(&h, (0.0, TAU / (2f64.sqrt() * om))).unwrap();
    let p = u[(
        reg.index_of(&["r", "r"]).unwrap(),
        reg.index_of(&["1", "1"]).unwrap(),
    )]
        .norm_sqr();
    assert!(p < 1e-10, "{p}");
}

proptest! {
    #[test]
    fn finite_blockade_leak_matches_formula(ratio in 1.5f64..30.0) {
        let om = TAU;
        let v = ratio * om;
        let reg = blockade_register(v);
        let u = propagator_piecewise(&pair_blockade(cr(0.0), cr(om), 0.0, v).unwrap(), (0.0, TAU / om)).unwrap();
        let p = u[(reg.index_of(&["r", "r"]).unwrap(), reg.index_of(&["r", "1"]).unwrap())].norm_sqr();
        let w2 = v * v + om * om;
        let formula = om * om / w2 * (PI * w2.sqrt() / om).sin().powi(2);
        prop_assert!((p - formula).abs() < 1e-8);
    }

    #[test]
    fn builders_are_hermitian(oc in 0.0f64..5.0, ot in 0.0f64..5.0, pc in -PI..PI, d in -3.0f64..3.0, v in -20.0f64..20.0) {
        let h = static_matrix(&pair_blockade(cr(oc) * c(pc.cos(), pc.sin()), cr(ot), d, v).unwrap());
        prop_assert!(max_abs(&(&h - h.adjoint())) < 1e-12);
        let t = tsd_three_state(oc, ot).into_entries();
        prop_assert!(max_abs(&(&t - t.adjoint())) < 1e-12);
        let m = modulated_drive_effective(oc + 0.1, ot + 0.1).into_entries();
        prop_assert!(max_abs(&(&m - m.adjoint())) < 1e-12);
    }

    #[test]
    fn tsd_spectrum_is_symmetric(oc in 0.1f64..5.0, ot in 0.1f64..5.0) {
        let e = eig_hermitian(&tsd_three_state(oc, ot)).unwrap();
        let n = e.values.len();
        for i in 0..n {
            prop_assert!((e.values[i] + e.values[n - 1 - i]).abs() < 1e-12);
        }
    }
}

#[test]
fn doubly_occupied_sector_projects_to_bright_coupling() {
    let om = 1.7;
    let h = static_matrix(&pair_blockade(cr(om), cr(om), 0.0, 4.0).unwrap());
    let reg = blockade_register(4.0);
    let l = reg.index_of(&["1", "1"]).unwrap();
    let mut bright = CVec::zeros(9);
    bright[reg.index_of(&["1", "r"]).unwrap()] = cr(1.0 / 2f64.sqrt());
    bright[reg.index_of(&["r", "1"]).unwrap()] = cr(1.0 / 2f64.sqrt());
    let mut e11 = CVec::zeros(9);
    e11[l] = cr(1.0);
    let coupling = (bright.adjoint() * &h * &e11)[(0, 0)];
    assert!((coupling - cr(2f64.sqrt() * om / 2.0)).norm() < 1e-14);
}

#[test]
fn tsd_eigenvalues_and_ten_expansion() {
    let (oc, ot) = (3.0, 1.1);
    let e = eig_hermitian(&tsd_three_state(oc, ot)).unwrap();
    let obar = (oc * oc + 2.0 * ot * ot).sqrt();
    for want in [-obar / 2.0, -oc / 2.0, 0.0, oc / 2.0, obar / 2.0] {
        assert!(
            e.values.iter().any(|x| (x - want).abs() < 1e-12),
            "missing {want}"
        );
    }
    // |10> is basis 4; weight 1/4 on each nonzero eigenvector
    for (k, &lam) in e.values.iter().enumerate() {
        let w = e.vectors[(4, k)].norm_sqr();
        let want = if lam.abs() < 1e-9 { 0.0 } else { 0.25 };
        assert!((w - want).abs() < 1e-12, "eigenvalue {lam}: weight {w}");
    }
}

#[test]
fn tsd_without_target_drive_decouples_inputs() {
    let m = tsd_three_state(2.0, 0.0).into_entries();
    let reach = |start: usize| {
        let mut seen = vec![start];
        let mut i = 0;
        while i < seen.len() {
            for k in 0..5 {
                if m[(seen[i], k)].norm() > 0.0 && !seen.contains(&k) {
                    seen.push(k);
                }
            }
            i += 1;
        }
        seen
    };
    assert!(!reach(3).contains(&4));
    assert!(!reach(4).contains(&3));
}

#[test]
fn undriven_dark_state_is_the_initial_state() {
    let h = static_matrix(&dark_state_forster(&Envelope::Const(0.0), 2.5).unwrap());
    let d = dark_state_vector(0.0, 2.5);
    let v = CVec::from_iterator(3, d.iter().map(|&x| cr(x)));
    assert!((h * &v).norm() < 1e-14);
    assert!(d[1] == 0.0 && d[2] == 0.0);
}

proptest! {
    #[test]
    fn dark_state_is_annihilated(om in -20.0f64..20.0, v in prop_oneof![-20.0f64..-0.1, 0.1f64..20.0]) {
        let h = static_matrix(&dark_state_forster(&Envelope::Const(om), v).unwrap());
        let d = dark_state_vector(om, v);
        let x = CVec::from_iterator(3, d.iter().map(|&x| cr(x)));
        prop_assert!((h.clone() * x).norm() < 1e-12 * (1.0 + om.abs() + v.abs()).powi(2));
        // bright states sit at +/- sqrt(Omega^2/4 + V^2)
        let e = eig_hermitian(&OperatorMatrix::hermitian(h).unwrap()).unwrap();
        let gap = (om * om / 4.0 + v * v).sqrt();
        prop_assert!((e.values[2] - gap).abs() < 1e-10 && (e.values[0] + gap).abs() < 1e-10 && e.values[1].abs() < 1e-10);
    }
}

#[test]
fn dark_state_model_rejects_zero_coupling() {
    assert!(dark_state_forster(&Envelope::Const(1.0), 0.0).is_err());
}

#[test]
fn modulated_effective_model_entries() {
    let m = modulated_drive_effective(4.0, 1.0).into_entries();
    assert_eq!(m[(0, 1)], cr(1.0));
    assert_eq!(m[(1, 0)], cr(1.0));
    assert_eq!(m[(1, 1)], cr(1.0));
    assert_eq!(m[(0, 0)], cr(0.0));
}

#[test]
fn far_detuned_modulation_suppresses_transfer() {
    let om = 1.0;
    let w = 50.0 * om;
    let h = Hamiltonian::from_static(&modulated_drive_effective(om, w));
    let times: Vec<f64> = (1..=400).map(|k| k as f64 * 0.05).collect();
    let traj = evolve(
        &h,
        &StateVector::basis(2, 0),
        (0.0, 20.0),
        &EvolveOptions::with_tol(1e-10).times(times),
    )
    .unwrap();
    let worst = traj
        .states
        .iter()
        .map(|s| s[1].norm_sqr())
        .fold(0.0, f64::max);
    assert!(worst < 1e-3, "{worst}");
}

#[test]
fn register_rejects_unknown_levels() {
    let reg = Register::new(vec![Atom::new(&["g", "r"])]);
    assert!(reg
        .hamiltonian(&[DriveSpec::new(0, "g", "x", 1.0)])
        .is_err());
    assert!(reg.index_of(&["q"]).is_err());
}

#[test]
fn interaction_shift_lands_on_the_pair_state() {
    let reg = Register::uniform(2, &["g", "r"]).with_interaction(Interaction::Shift {
        a: 0,
        b: 1,
        la: "r".into(),
        lb: "r".into(),
        v: 3.5,
    });
    let h = static_matrix(&reg.hamiltonian(&[]).unwrap());
    let rr = reg.index_of(&["r", "r"]).unwrap();
    for i in 0..4 {
        assert_eq!(h[(i, i)].re, if i == rr { 3.5 } else { 0.0 });
    }
}

#[test]
fn shifted_gaussian_vanishes_at_both_ends() {
    let e = Envelope::ShiftedGaussian {
        amp: 3.0,
        t0: 0.2,
        duration: 0.29,
        sigma: 0.05,
    };
    assert!(e.at(0.2).abs() < 1e-14);
    assert!(e.at(0.49).abs() < 1e-14);
    assert!(e.at(0.345) > 0.0);
}
