use std::f64::consts::PI;

use proptest::prelude::*;
use rydgate::metrics::{
    bell_fidelity, bell_fidelity_pure, kraus_channel, nielsen_fidelity, overlap_fidelity,
    pedersen_fidelity, state_fidelity, trace_distance, trace_distance_fidelity,
    truth_table_fidelity, Bell, TruthTable,
};
use rydgate::protocols::tsd::cnot;
use rydgate::protocols::{diag_phases, ghz_asymmetric, simulate, SimOptions};
use rydgate::qcore::{cr, eye, CMat, CVec, DensityMatrix, C64};
use rydgate::Error;

fn cz() -> CMat {
    diag_phases(&[0.0, 0.0, 0.0, PI])
}

fn dm(m: CMat) -> DensityMatrix {
    DensityMatrix::new(m).unwrap()
}

fn diag_dm(p: &[f64]) -> DensityMatrix {
    dm(CMat::from_diagonal(&CVec::from_iterator(
        p.len(),
        p.iter().map(|&x| cr(x)),
    )))
}

fn density_from(re: &[f64], im: &[f64], n: usize) -> DensityMatrix {
    let a = CMat::from_iterator(n, n, re.iter().zip(im).map(|(&x, &y)| C64::new(x, y)));
    let m = &a * a.adjoint();
    let tr = m.trace().re;
    dm(m / cr(tr))
}

fn unitary_from(re: &[f64], im: &[f64], n: usize) -> CMat {
    let a = CMat::from_iterator(n, n, re.iter().zip(im).map(|(&x, &y)| C64::new(x, y)));
    a.qr().q()
}

#[test]
fn state_fidelity_examples() {
    let bell = DensityMatrix::from_pure(&Bell::PhiPlus.state());
    assert!((state_fidelity(&bell, &bell).unwrap() - 1.0).abs() < 1e-10);
    let mixed = DensityMatrix::maximally_mixed(4);
    assert!((state_fidelity(&mixed, &bell).unwrap() - 0.25).abs() < 1e-10);
    let (p, q): ([f64; 4], [f64; 4]) = ([0.5, 0.3, 0.2, 0.0], [0.1, 0.2, 0.3, 0.4]);
    let bhatt: f64 = p
        .iter()
        .zip(&q)
        .map(|(a, b)| (a * b).sqrt())
        .sum::<f64>()
        .powi(2);
    assert!((state_fidelity(&diag_dm(&p), &diag_dm(&q)).unwrap() - bhatt).abs() < 1e-10);
}

#[test]
fn state_fidelity_input_errors() {
    let a = DensityMatrix::maximally_mixed(2);
    let b = DensityMatrix::maximally_mixed(4);
    assert!(matches!(
        state_fidelity(&a, &b),
        Err(Error::DimensionMismatch { .. })
    ));
    let bad = DensityMatrix::from_raw(eye(2));
    assert!(state_fidelity(&bad, &a).is_err());
}

#[test]
fn trace_distance_examples() {
    let bell = DensityMatrix::from_pure(&Bell::PhiPlus.state());
    assert!((trace_distance_fidelity(&bell, &bell).unwrap() - 1.0).abs() < 1e-12);
    let up = DensityMatrix::from_pure(&CVec::from_vec(vec![cr(1.0), cr(0.0)]));
    let down = DensityMatrix::from_pure(&CVec::from_vec(vec![cr(0.0), cr(1.0)]));
    assert!(trace_distance_fidelity(&up, &down).unwrap().abs() < 1e-12);
    // dephased Bell: coherences halved
    let mut m = bell.entries().clone();
    m[(0, 3)] *= cr(0.5);
    m[(3, 0)] *= cr(0.5);
    let dephased = dm(m);
    let uhl = state_fidelity(&dephased, &bell).unwrap();
    let td = trace_distance_fidelity(&dephased, &bell).unwrap();
    // pure dephasing with coherence factor c gives F = 1 - D = (1 + c)/2 exactly;
    // the distance score is lower only against the unsquared (root) fidelity
    assert!((uhl - 0.75).abs() < 1e-10);
    assert!((td - 0.75).abs() < 1e-10);
    assert!(td < uhl.sqrt() - 0.1);
}

proptest! {
    #[test]
    fn state_metric_properties(re in prop::collection::vec(-1.0f64..1.0, 32), im in prop::collection::vec(-1.0f64..1.0, 32)) {
        let a = density_from(&re[..16], &im[..16], 4);
        let b = density_from(&re[16..], &im[16..], 4);
        let f = state_fidelity(&a, &b).unwrap();
        prop_assert!((f - state_fidelity(&b, &a).unwrap()).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&f));
        let d = trace_distance(&a, &b).unwrap();
        prop_assert!((d - trace_distance(&b, &a).unwrap()).abs() < 1e-12);
        prop_assert!(1.0 - f.sqrt() <= d + 1e-9 && d <= (1.0 - f).sqrt() + 1e-9);
    }

    #[test]
    fn pure_reference_reduces_to_expectation(re in prop::collection::vec(-1.0f64..1.0, 20), im in prop::collection::vec(-1.0f64..1.0, 20)) {
        let rho = density_from(&re[..16], &im[..16], 4);
        let psi = CVec::from_iterator(4, re[16..].iter().zip(&im[16..]).map(|(&x, &y)| C64::new(x, y)));
        let psi = &psi / cr(psi.norm());
        let want = (psi.adjoint() * rho.entries() * &psi)[(0, 0)].re;
        let f = state_fidelity(&rho, &DensityMatrix::from_pure(&psi)).unwrap();
        prop_assert!((f - want).abs() < 1e-9);
    }

    #[test]
    fn pedersen_agrees_with_nielsen(re in prop::collection::vec(-1.0f64..1.0, 32), im in prop::collection::vec(-1.0f64..1.0, 32), g in -PI..PI) {
        let u = unitary_from(&re[..16], &im[..16], 4);
        let ideal = unitary_from(&re[16..], &im[16..], 4);
        let fp = pedersen_fidelity(&u, &ideal).unwrap();
        let fnl = nielsen_fidelity(kraus_channel(&u), &ideal, 2).unwrap();
        prop_assert!((fp - fnl).abs() < 1e-10);
        let shifted = &u * C64::from_polar(1.0, g);
        prop_assert!((pedersen_fidelity(&shifted, &ideal).unwrap() - fp).abs() < 1e-12);
        prop_assert!((pedersen_fidelity(&u, &u).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn truth_table_examples() {
    let ideal = TruthTable::from_map(&cnot());
    assert!((truth_table_fidelity(&ideal, &ideal).unwrap() - 1.0).abs() < 1e-15);
    assert!(
        (truth_table_fidelity(&TruthTable::from_map(&cz()), &ideal).unwrap() - 0.5).abs() < 1e-15
    );
    let phased = diag_phases(&[0.3, -1.2, 2.0, 0.7]) * cnot();
    assert!(
        (truth_table_fidelity(&TruthTable::from_map(&phased), &ideal).unwrap() - 1.0).abs() < 1e-15
    );
}

#[test]
fn truth_table_validation() {
    assert!(TruthTable::new(vec![vec![1.0, 0.0], vec![0.0]]).is_err());
    assert!(TruthTable::new(vec![vec![0.7, 0.6], vec![0.0, 1.0]]).is_err());
    assert!(TruthTable::new(vec![vec![1.2, 0.0], vec![0.0, 1.0]]).is_err());
    let t = TruthTable::new(vec![vec![0.9, 0.1], vec![0.0, 1.0]]).unwrap();
    assert!(truth_table_fidelity(&t, &TruthTable::from_map(&cnot())).is_err());
}

#[test]
fn nielsen_examples() {
    let u = cnot();
    assert!(
        (nielsen_fidelity(|x: &CMat| &u * x * u.adjoint(), &u, 2).unwrap() - 1.0).abs() < 1e-10
    );
    let depol = |x: &CMat| eye(4) * (x.trace() / cr(4.0));
    assert!((nielsen_fidelity(depol, &u, 2).unwrap() - 0.25).abs() < 1e-12);
    for phi in [0.01, 0.3, 1.7] {
        let realized = diag_phases(&[0.0, 0.0, 0.0, PI + phi]);
        let fp = pedersen_fidelity(&realized, &cz()).unwrap();
        let fnl = nielsen_fidelity(kraus_channel(&realized), &cz(), 2).unwrap();
        assert!((fp - fnl).abs() < 1e-10);
    }
    assert!(nielsen_fidelity(|x: &CMat| x * cr(2.0), &u, 2).is_err());
    assert!(nielsen_fidelity(|x: &CMat| x.clone(), &eye(3), 2).is_err());
}

#[test]
fn pedersen_examples() {
    let z = diag_phases(&[0.0, 0.0, 0.0, PI]);
    assert!((pedersen_fidelity(&z, &eye(4)).unwrap() - 0.4).abs() < 1e-12);
    assert!(pedersen_fidelity(&eye(3), &eye(4)).is_err());
    // leakage lowers the score through both terms
    let mut lossy = cnot();
    lossy[(0, 0)] = cr(0.9);
    assert!(pedersen_fidelity(&lossy, &cnot()).unwrap() < 1.0);
}

#[test]
fn bell_examples() {
    let phi = Bell::PhiPlus.state();
    assert!((bell_fidelity_pure(&phi, Bell::PhiPlus).unwrap() - 1.0).abs() < 1e-15);
    let zero = CVec::from_vec(vec![cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
    assert!((bell_fidelity_pure(&zero, Bell::PhiPlus).unwrap() - 0.5).abs() < 1e-15);
    assert!(bell_fidelity_pure(&phi, Bell::PsiMinus).unwrap().abs() < 1e-15);
    let rho = DensityMatrix::maximally_mixed(4);
    assert!((bell_fidelity(&rho, Bell::PsiPlus).unwrap() - 0.25).abs() < 1e-15);
    assert!(bell_fidelity_pure(&CVec::zeros(3), Bell::PhiPlus).is_err());
    assert_eq!("psi-".parse::<Bell>().unwrap(), Bell::PsiMinus);
    assert!("chi".parse::<Bell>().is_err());
}

#[test]
fn ghz_pair_output_is_a_bell_state() {
    let om = std::f64::consts::TAU;
    let s = ghz_asymmetric(2, om, 50.0 * om, 50.0 * om, 0.0).unwrap();
    let r = simulate(&s, &SimOptions::default()).unwrap();
    let col = r.columns.column(0);
    let psi = CVec::from_vec(vec![
        col[s.register.index_of(&["0", "0"]).unwrap()],
        col[s.register.index_of(&["0", "1"]).unwrap()],
        col[s.register.index_of(&["1", "0"]).unwrap()],
        col[s.register.index_of(&["1", "1"]).unwrap()],
    ]);
    // (-|00> + |11>)/sqrt 2 is Phi- up to a global sign
    assert!(bell_fidelity_pure(&psi, Bell::PhiMinus).unwrap() >= 0.99);
    assert!(overlap_fidelity(&psi, &Bell::PhiMinus.state()) >= 0.99);
}
