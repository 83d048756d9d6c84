use std::collections::BTreeMap;

use noonsim_core::coherent::{coherent_state, rotation_operator, BlochDirection};
use noonsim_core::schwinger::{fock_to_spin, spin_to_fock};
use noonsim_core::statefile::{load_state, save_spin, save_two_mode};
use noonsim_core::{su2, Complex64, HalfInteger, LoadedState, SpinState, StereoLabel};
use proptest::prelude::*;

fn label() -> impl Strategy<Value = Complex64> {
    (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn random_state(twice: u32, raw: &[(f64, f64)]) -> SpinState {
    let j = HalfInteger::from_twice(twice);
    let amps = raw
        .iter()
        .take(j.dim())
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    SpinState::normalized(j, amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn propagators_compose(twice in 1u32..16, a in -1.0..1.0f64, b in -1.0..1.0f64,
                           c in -1.0..1.0f64, t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
        let j = HalfInteger::from_twice(twice);
        let x = su2::jx(j);
        let y = su2::jy(j);
        let z = su2::jz(j);
        let h = &(&(&x.scale(Complex64::new(a, 0.0)) + &y.scale(Complex64::new(b, 0.0)))
            + &z.scale(Complex64::new(c, 0.0))) + &(&z * &z);
        let u1 = h.exp_minus_i(t1).unwrap();
        let u2 = h.exp_minus_i(t2).unwrap();
        let u12 = h.exp_minus_i(t1 + t2).unwrap();
        prop_assert!((&u1 * &u2).distance(&u12) < 1e-10);
    }

    #[test]
    fn rotation_reproduces_expansion(twice in 1u32..31, g in label()) {
        let j = HalfInteger::from_twice(twice);
        let l = StereoLabel::Finite(g);
        let r = rotation_operator(j, &l).unwrap();
        prop_assert!(r.unitarity_residual() < 1e-12);
        let out = r.apply(&SpinState::basis(j.lowest())).unwrap();
        prop_assert!(out.fidelity(&coherent_state(j, &l)).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn stereographic_round_trip(theta in 0.0..(std::f64::consts::PI - 1e-6), phi in 0.0..std::f64::consts::TAU) {
        let dir = BlochDirection::new(theta, phi).unwrap();
        let back = dir.to_label().to_direction();
        prop_assert!((back.theta() - theta).abs() < 1e-12);
        let dphi = (back.phi() - phi).rem_euclid(std::f64::consts::TAU);
        prop_assert!(theta < 1e-12 || dphi.min(std::f64::consts::TAU - dphi) < 1e-12);
    }

    #[test]
    fn coherent_states_are_normalized(twice in 0u32..200, g in label()) {
        let s = coherent_state(HalfInteger::from_twice(twice), &StereoLabel::Finite(g));
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_fock_round_trip(twice in 0u32..20, raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 21)) {
        prop_assume!(raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3);
        let s = random_state(twice, &raw);
        let t = spin_to_fock(&s);
        prop_assert_eq!(t.n_total(), twice);
        prop_assert_eq!(fock_to_spin(&t), s);
    }

    #[test]
    fn state_file_round_trip_is_bit_exact(twice in 0u32..20, raw in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 21)) {
        prop_assume!(raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3);
        let s = random_state(twice, &raw);
        let dir = tempfile::tempdir().unwrap();

        let p = dir.path().join("spin.json");
        save_spin(&p, &s, BTreeMap::new()).unwrap();
        let LoadedState::Spin(back) = load_state(&p).unwrap() else { panic!("wrong kind") };
        for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }

        let t = spin_to_fock(&s);
        let p = dir.path().join("fock.json");
        save_two_mode(&p, &t, BTreeMap::new()).unwrap();
        prop_assert_eq!(load_state(&p).unwrap(), LoadedState::TwoMode(t));
    }
}
