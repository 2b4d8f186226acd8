use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use rydgate::ham::{blockade_register, one_photon, pair_blockade, DriveSpec};
use rydgate::qcore::{
    c, cr, eig_hermitian, evolve, evolve_lindblad, evolve_open, evolve_vector, eye, propagator,
    propagator_piecewise, CMat, CVec, DensityMatrix, EvolveOptions, Hamiltonian, OperatorMatrix,
    StateVector, C64,
};
use rydgate::Error;

fn herm(n: usize, data: &[f64]) -> CMat {
    let mut m = CMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        m[(i, i)] = cr(data[k]);
        k += 1;
        for j in i + 1..n {
            m[(i, j)] = c(data[k], data[k + 1]);
            m[(j, i)] = m[(i, j)].conj();
            k += 2;
        }
    }
    m
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn two_level(omega: f64, d: f64) -> OperatorMatrix {
    OperatorMatrix::hermitian(CMat::from_row_slice(
        2,
        2,
        &[cr(0.0), cr(0.5 * omega), cr(0.5 * omega), cr(d)],
    ))
    .unwrap()
}

#[test]
fn symmetric_two_level_eigenvalues() {
    let e = eig_hermitian(&two_level(1.0, 0.0)).unwrap();
    assert!((e.values[0] + 0.5).abs() < 1e-14 && (e.values[1] - 0.5).abs() < 1e-14);
}

#[test]
fn shifted_two_level_eigenvalues() {
    let e = eig_hermitian(&two_level(1.0, 1.0)).unwrap();
    let s = 2f64.sqrt();
    assert!((e.values[0] - (1.0 - s) / 2.0).abs() < 1e-14);
    assert!((e.values[1] - (1.0 + s) / 2.0).abs() < 1e-14);
}

#[test]
fn non_hermitian_input_reports_asymmetry() {
    let m = CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.75), cr(0.0)]);
    match OperatorMatrix::hermitian(m) {
        Err(Error::NonHermitian { max_asymmetry }) => assert!((max_asymmetry - 0.25).abs() < 1e-15),
        other => panic!("expected rejection, got {other:?}"),
    }
}

proptest! {
    #[test]
    fn eigendecomposition_reconstructs(data in prop::collection::vec(-3.0f64..3.0, 36)) {
        let h = herm(6, &data);
        let e = eig_hermitian(&OperatorMatrix::hermitian(h.clone()).unwrap()).unwrap();
        let lam = CMat::from_diagonal(&CVec::from_iterator(6, e.values.iter().map(|&x| cr(x))));
        let back = &e.vectors * lam * e.vectors.adjoint();
        prop_assert!(max_abs(&(back - &h)) < 1e-10);
        prop_assert!(max_abs(&(e.vectors.adjoint() * &e.vectors - eye(6))) < 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let tr: f64 = e.values.iter().sum();
        prop_assert!((tr - h.trace().re).abs() < 1e-10 * (1.0 + h.trace().re.abs()));
    }

    #[test]
    fn closed_evolution_keeps_norm(data in prop::collection::vec(-2.0f64..2.0, 16), t in 0.1f64..3.0) {
        let h = Hamiltonian::from_static(&OperatorMatrix::hermitian(herm(4, &data)).unwrap());
        let tol = 1e-9;
        let traj = evolve(&h, &StateVector::basis(4, 0), (0.0, t), &EvolveOptions::with_tol(tol)).unwrap();
        for s in &traj.states {
            prop_assert!((s.norm() - 1.0).abs() < 10.0 * tol);
        }
        let exact = propagator(&[(OperatorMatrix::hermitian(herm(4, &data)).unwrap(), t)]).unwrap().column(0).into_owned();
        prop_assert!((traj.last().unwrap() - exact).norm() < 10.0 * tol * (1.0 + t));
    }

    #[test]
    fn propagators_compose(a in prop::collection::vec(-2.0f64..2.0, 9), b in prop::collection::vec(-2.0f64..2.0, 9),
                           ta in 0.0f64..2.0, tb in 0.0f64..2.0) {
        let ha = OperatorMatrix::hermitian(herm(3, &a)).unwrap();
        let hb = OperatorMatrix::hermitian(herm(3, &b)).unwrap();
        let both = propagator(&[(ha.clone(), ta), (hb.clone(), tb)]).unwrap();
        let ua = propagator(&[(ha, ta)]).unwrap();
        let ub = propagator(&[(hb, tb)]).unwrap();
        prop_assert!(max_abs(&(both.clone() - ub * ua)) < 1e-10);
        prop_assert!(max_abs(&(both.adjoint() * both - eye(3))) < 1e-10);
    }

    #[test]
    fn open_without_decay_matches_closed(data in prop::collection::vec(-2.0f64..2.0, 9), t in 0.1f64..2.0) {
        let h = Hamiltonian::from_static(&OperatorMatrix::hermitian(herm(3, &data)).unwrap());
        let psi = StateVector::basis(3, 1);
        let opts = EvolveOptions::with_tol(1e-11);
        let (open, survival) = evolve_open(&h, &[0.0; 3], &psi, (0.0, t), &opts).unwrap();
        let closed = evolve_vector(&h, &psi.amplitudes, (0.0, t), &opts).unwrap();
        prop_assert!((open - closed).norm() < 1e-10);
        prop_assert!((survival - 1.0).abs() < 1e-10);
    }
}

#[test]
fn resonant_pi_pulse_gives_minus_i() {
    let h = one_photon(cr(TAU));
    let traj = evolve(
        &h,
        &StateVector::basis(2, 0),
        (0.0, 0.5),
        &EvolveOptions::with_tol(1e-11),
    )
    .unwrap();
    let psi = traj.last().unwrap();
    assert!(psi[0].norm() < 1e-8);
    assert!((psi[1] - c(0.0, -1.0)).norm() < 1e-8);
}

#[test]
fn blockaded_second_pulse_matches_closed_form() {
    // control parked in r, target driven: |r1> <-> |rr> detuned by V
    let (om, v) = (TAU, 3.0 * TAU);
    let h = pair_blockade(cr(0.0), cr(om), 0.0, v).unwrap();
    let reg = blockade_register(v);
    let (i_r1, i_rr) = (
        reg.index_of(&["r", "1"]).unwrap(),
        reg.index_of(&["r", "r"]).unwrap(),
    );
    let mut psi0 = CVec::zeros(9);
    psi0[i_r1] = c(0.0, -1.0);
    let times: Vec<f64> = (1..=8).map(|k| 0.125 * k as f64).collect();
    let opts = EvolveOptions::with_tol(1e-11).times(times.clone());
    let traj = evolve(&h, &StateVector::from_amplitudes(psi0), (0.0, 1.0), &opts).unwrap();
    let w = (om * om + v * v).sqrt();
    for (t, psi) in traj.times.iter().zip(&traj.states) {
        let (s, co) = (0.5 * w * t).sin_cos();
        let ph = C64::from_polar(1.0, -0.5 * v * t) * c(0.0, -1.0);
        let a = ph * c(co, v / w * s);
        let b = ph * c(0.0, -om / w * s);
        assert!((psi[i_r1] - a).norm() < 1e-8, "t = {t}");
        assert!((psi[i_rr] - b).norm() < 1e-8, "t = {t}");
    }
}

#[test]
fn zero_hamiltonian_is_identity() {
    let h = Hamiltonian::new(3);
    let psi = StateVector::from_amplitudes(CVec::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8), cr(0.0)]));
    let out = evolve(&h, &psi, (0.0, 7.3), &EvolveOptions::default()).unwrap();
    assert!((out.last().unwrap() - &psi.amplitudes).norm() < 1e-14);
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let h = Hamiltonian::new(2);
    assert!(evolve(
        &h,
        &StateVector::basis(2, 0),
        (0.0, 1.0),
        &EvolveOptions::with_tol(0.0)
    )
    .is_err());
}

#[test]
fn single_pi_segment_is_minus_i() {
    let u = propagator(&[(two_level(TAU, 0.0), 0.5)]).unwrap();
    assert!((u[(1, 0)] - c(0.0, -1.0)).norm() < 1e-12);
    assert!((u[(0, 1)] - c(0.0, -1.0)).norm() < 1e-12);
}

#[test]
fn two_half_pulses_equal_one_pi_pulse() {
    let h = two_level(TAU, 0.0);
    let a = propagator(&[(h.clone(), 0.25), (h.clone(), 0.25)]).unwrap();
    let b = propagator(&[(h, 0.5)]).unwrap();
    assert!(max_abs(&(a - b)) < 1e-10);
}

#[test]
fn empty_schedule_is_identity() {
    assert_eq!(propagator(&[]).unwrap(), eye(1));
}

#[test]
fn truncated_three_pulse_blockade_sequence() {
    let om = TAU;
    let reg = blockade_register(0.0);
    let rr = reg.index_of(&["r", "r"]).unwrap();
    let seg = |atom: usize| {
        let h = reg
            .hamiltonian(&[DriveSpec::new(atom, "1", "r", om)])
            .unwrap()
            .matrix_at(0.0, 0.0);
        OperatorMatrix::hermitian(h.remove_row(rr).remove_column(rr)).unwrap()
    };
    let tp = PI / om;
    let u = propagator(&[(seg(0), tp), (seg(1), 2.0 * tp), (seg(0), tp)]).unwrap();
    // computational indices after dropping |rr> (the last state)
    let comp: Vec<usize> = [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]
        .iter()
        .map(|l| reg.index_of(l).unwrap())
        .collect();
    let want = [1.0, -1.0, -1.0, -1.0];
    for (a, &i) in comp.iter().enumerate() {
        for (b, &j) in comp.iter().enumerate() {
            let w = if a == b { cr(want[a]) } else { cr(0.0) };
            assert!((u[(i, j)] - w).norm() < 1e-10, "entry ({a}, {b})");
        }
    }
}

#[test]
fn piecewise_propagator_equals_segment_product() {
    let reg = blockade_register(5.0);
    let h = reg
        .hamiltonian(&[
            DriveSpec::new(0, "1", "r", 2.0).during(0.0, 0.7),
            DriveSpec::new(1, "1", "r", 3.0).phase(0.4).during(0.5, 1.5),
        ])
        .unwrap();
    let u = propagator_piecewise(&h, (0.0, 1.5)).unwrap();
    let seg = |t: f64| OperatorMatrix::hermitian(h.matrix_at(t, t)).unwrap();
    let v = propagator(&[(seg(0.25), 0.5), (seg(0.6), 0.2), (seg(1.0), 0.8)]).unwrap();
    assert!(max_abs(&(u - v)) < 1e-10);
}

#[test]
fn decay_free_survival_is_one() {
    let h = one_photon(cr(3.0));
    let (_, s) = evolve_open(
        &h,
        &[0.0, 0.0],
        &StateVector::basis(2, 0),
        (0.0, 2.0),
        &EvolveOptions::default(),
    )
    .unwrap();
    assert!((s - 1.0).abs() < 1e-10);
}

#[test]
fn parked_rydberg_survival_is_exponential() {
    let tau = 330.0;
    let t = 40.0;
    let h = Hamiltonian::new(2);
    let (_, s) = evolve_open(
        &h,
        &[0.0, 1.0 / tau],
        &StateVector::basis(2, 1),
        (0.0, t),
        &EvolveOptions::default(),
    )
    .unwrap();
    assert!((s - (-t / tau).exp()).abs() < 1e-8);
}

#[test]
fn negative_rate_is_rejected() {
    let h = Hamiltonian::new(2);
    let r = evolve_open(
        &h,
        &[0.0, -1.0],
        &StateVector::basis(2, 1),
        (0.0, 1.0),
        &EvolveOptions::default(),
    );
    assert!(matches!(r, Err(Error::NegativeRate { level: 1, .. })));
}

proptest! {
    #[test]
    fn survival_decreases_with_rate(g1 in 0.0f64..0.5, extra in 0.01f64..0.5) {
        let h = one_photon(cr(2.0));
        let run = |g: f64| evolve_open(&h, &[0.0, g], &StateVector::basis(2, 0), (0.0, 3.0), &EvolveOptions::default()).unwrap().1;
        prop_assert!(run(g1 + extra) < run(g1));
    }
}

#[test]
fn lindblad_without_collapse_matches_schrodinger() {
    let h = one_photon(c(1.3, 0.4));
    let psi = StateVector::basis(2, 0);
    let opts = EvolveOptions::with_tol(1e-11).final_only();
    let rho = evolve_lindblad(
        &h,
        &[],
        &DensityMatrix::from_pure(&psi.amplitudes),
        (0.0, 2.2),
        &opts,
    )
    .unwrap();
    let out = evolve_vector(&h, &psi.amplitudes, (0.0, 2.2), &opts).unwrap();
    let want = &out * out.adjoint();
    assert!(max_abs(&(rho.last().unwrap().1.entries() - want)) < 1e-8);
}

#[test]
fn lindblad_pure_decay() {
    let g: f64 = 0.7;
    let h = Hamiltonian::new(2);
    let mut l = CMat::zeros(2, 2);
    l[(0, 1)] = cr(g.sqrt());
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(2, 1).amplitudes);
    let ts = vec![0.5, 1.0, 2.0];
    let out = evolve_lindblad(
        &h,
        &[l],
        &rho0,
        (0.0, 2.0),
        &EvolveOptions::with_tol(1e-11).times(ts),
    )
    .unwrap();
    for (t, rho) in &out {
        assert!((rho.entries()[(1, 1)].re - (-g * t).exp()).abs() < 1e-8);
        assert!((rho.trace() - 1.0).abs() < 1e-8);
    }
}

/// Fixed-step classical RK4 on the driven, decaying two-level master equation.
fn rk4_reference(om: f64, g: f64, t: f64, steps: usize) -> [[C64; 2]; 2] {
    let hm = [[cr(0.0), cr(0.5 * om)], [cr(0.5 * om), cr(0.0)]];
    let f = |r: &[[C64; 2]; 2]| {
        let mut d = [[cr(0.0); 2]; 2];
        let mi = c(0.0, -1.0);
        for i in 0..2 {
            for j in 0..2 {
                let mut comm = cr(0.0);
                for k in 0..2 {
                    comm += hm[i][k] * r[k][j] - r[i][k] * hm[k][j];
                }
                d[i][j] = mi * comm;
            }
        }
        // L = sqrt(g) |0><1|
        d[0][0] += r[1][1] * g;
        d[1][1] -= r[1][1] * g;
        d[0][1] -= r[0][1] * (0.5 * g);
        d[1][0] -= r[1][0] * (0.5 * g);
        d
    };
    let add = |a: &[[C64; 2]; 2], b: &[[C64; 2]; 2], s: f64| {
        let mut o = *a;
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] += b[i][j] * s;
            }
        }
        o
    };
    let dt = t / steps as f64;
    let mut r = [[cr(1.0), cr(0.0)], [cr(0.0), cr(0.0)]];
    for _ in 0..steps {
        let k1 = f(&r);
        let k2 = f(&add(&r, &k1, 0.5 * dt));
        let k3 = f(&add(&r, &k2, 0.5 * dt));
        let k4 = f(&add(&r, &k3, dt));
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] += (k1[i][j] + k2[i][j] * 2.0 + k3[i][j] * 2.0 + k4[i][j]) * (dt / 6.0);
            }
        }
    }
    r
}

#[test]
fn lindblad_matches_fixed_step_reference() {
    let (om, g, t): (f64, f64, f64) = (1.0, 1.0, 6.0);
    let h = one_photon(cr(om));
    let mut l = CMat::zeros(2, 2);
    l[(0, 1)] = cr(g.sqrt());
    let rho0 = DensityMatrix::from_pure(&StateVector::basis(2, 0).amplitudes);
    let out = evolve_lindblad(
        &h,
        &[l],
        &rho0,
        (0.0, t),
        &EvolveOptions::with_tol(1e-11).final_only(),
    )
    .unwrap();
    let rho = out.last().unwrap().1.entries().clone();
    let r = rk4_reference(om, g, t, 6000);
    for i in 0..2 {
        for j in 0..2 {
            assert!((rho[(i, j)] - r[i][j]).norm() < 1e-6, "({i}, {j})");
        }
    }
    let ev = rydgate::qcore::eig::hermitian_eigenvalues(&rho);
    assert!(ev.iter().all(|&x| x > -1e-8));
}

#[test]
fn lindblad_rejects_large_dimension() {
    let h = Hamiltonian::new(300);
    let rho0 = DensityMatrix::maximally_mixed(300);
    let r = evolve_lindblad(&h, &[], &rho0, (0.0, 1.0), &EvolveOptions::default());
    assert!(matches!(
        r,
        Err(Error::DimensionLimit {
            dim: 300,
            limit: 256
        })
    ));
}
