//! Self-check suite behind the `verify` command.
//!
//! Each section runs one family of identities over a range of irreps and
//! records every check whose residual exceeds its tolerance.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coherent::{self, coherent_state, BlochDirection, StereoLabel};
use crate::dynamics::{
    self, fit_two_component, quarter_period_evolve, KerrHamiltonian,
};
use crate::error::Result;
use crate::metrology;
use crate::operator::SpinOperator;
use crate::schwinger::{self, NoonRoute, TwoModeState};
use crate::state::SpinState;
use crate::su2::{self, HalfInteger};

pub const SUITE_SEED: u64 = 0x5eed_2011;

#[derive(Clone, Debug, PartialEq)]
pub struct SectionReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Observations that are reported but carry no pass/fail contract.
    pub notes: Vec<String>,
}

impl SectionReport {
    fn new(name: &'static str) -> Self {
        SectionReport {
            name,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a residual that must not exceed `tol`.
    fn check(&mut self, what: impl FnOnce() -> String, residual: f64, tol: f64) {
        self.checks += 1;
        if !(residual <= tol) {
            self.failures
                .push(format!("{}: residual {residual:e} > {tol:e}", what()));
        }
    }

    fn check_result<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub max_twice_j: u32,
    pub sections: Vec<SectionReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(SectionReport::passed)
    }

    pub fn total_checks(&self) -> usize {
        self.sections.iter().map(|s| s.checks).sum()
    }
}

fn random_label(rng: &mut ChaCha8Rng) -> Complex64 {
    let theta = rng.random_range(0.0..0.9 * PI);
    let phi = rng.random_range(0.0..TAU);
    Complex64::from_polar((theta / 2.0).tan(), phi)
}

fn algebra(max_twice_j: u32) -> SectionReport {
    let mut s = SectionReport::new("algebra");
    let i = Complex64::new(0.0, 1.0);
    for twice in 0..=max_twice_j {
        let j = HalfInteger::from_twice(twice);
        let (p, m) = (su2::j_plus(j), su2::j_minus(j));
        let (x, y, z) = (su2::jx(j), su2::jy(j), su2::jz(j));
        let tag = |w: &'static str| move || format!("2j={twice} {w}");
        s.check(tag("[J+,J-]-2Jz"), (&p.commutator(&m) - &z.scale(Complex64::new(2.0, 0.0))).residual(), 1e-12);
        s.check(tag("[J+,Jz]+J+"), (&p.commutator(&z) + &p).residual(), 1e-12);
        s.check(tag("[J-,Jz]-J-"), (&m.commutator(&z) - &m).residual(), 1e-12);
        s.check(tag("[Jx,Jy]-iJz"), (&x.commutator(&y) - &z.scale(i)).residual(), 1e-12);
        s.check(tag("[Jy,Jz]-iJx"), (&y.commutator(&z) - &x.scale(i)).residual(), 1e-12);
        s.check(tag("[Jz,Jx]-iJy"), (&z.commutator(&x) - &y.scale(i)).residual(), 1e-12);
        let cas = su2::casimir(j);
        let scalar = SpinOperator::identity(j).scale(Complex64::new(j.casimir_eigenvalue(), 0.0));
        s.check(tag("J^2-j(j+1)"), cas.distance(&scalar), 1e-12);
        for g in [&x, &y, &z] {
            s.check(tag("[J^2,Ja]"), cas.commutator(g).residual(), 1e-12);
        }
        s.check(tag("Jx hermitian"), x.hermiticity_residual(), 1e-12);
        s.check(tag("Jy hermitian"), y.hermiticity_residual(), 1e-12);
    }
    s
}

fn coherent_states(max_twice_j: u32, rng: &mut ChaCha8Rng) -> SectionReport {
    let mut s = SectionReport::new("coherent");
    for twice in 0..=max_twice_j {
        let j = HalfInteger::from_twice(twice);
        let lowest = SpinState::basis(j.lowest());
        for _ in 0..20 {
            let g = random_label(rng);
            let label = StereoLabel::Finite(g);
            let expanded = coherent_state(j, &label);
            s.check(|| format!("2j={twice} norm"), (expanded.norm() - 1.0).abs(), 1e-12);
            let Some(r) = s.check_result("rotation operator", coherent::rotation_operator(j, &label)) else {
                continue;
            };
            s.check(|| format!("2j={twice} R unitary"), r.unitarity_residual(), 1e-12);
            let rotated = r.apply(&lowest).expect("same irrep");
            let f = expanded.fidelity(&rotated).expect("same irrep");
            s.check(|| format!("2j={twice} gamma={g} expansion vs rotation"), 1.0 - f, 1e-10);

            let back = label.to_direction().to_label().as_finite().expect("finite");
            s.check(|| format!("gamma={g} stereographic"), (back - g).norm() / g.norm().max(1.0), 1e-12);
        }
        let (plus, minus) = coherent::jy_extremal_states(j);
        let jv = j.value();
        let y = su2::jy(j);
        s.check(|| format!("2j={twice} <Jy>=+j"), (plus.expectation(&y).unwrap().re - jv).abs(), 1e-12 * jv.max(1.0));
        s.check(|| format!("2j={twice} <Jy>=-j"), (minus.expectation(&y).unwrap().re + jv).abs(), 1e-12 * jv.max(1.0));
        if twice > 0 {
            let ref_plus = coherent_state(j, &StereoLabel::Finite(coherent::JY_HIGHEST_LABEL));
            s.check(|| format!("2j={twice} |j,+j>_y = |j,-i>"), 1.0 - plus.fidelity(&ref_plus).unwrap(), 1e-12);
            let ab = coherent_state(j, &StereoLabel::finite(0.0, 1.0));
            let ms = coherent::mean_spin(&ab);
            let ms_neg = coherent::mean_spin(&coherent_state(j, &StereoLabel::finite(0.0, -1.0)));
            let anti = (0..3).map(|k| (ms[k] + ms_neg[k]).abs()).fold(0.0, f64::max);
            s.check(|| format!("2j={twice} antipodal"), anti, 1e-10);
        }
    }
    for k in 0..=100 {
        let theta = (PI - 1e-6) * k as f64 / 100.0;
        let phi = TAU * ((k * 37) % 100) as f64 / 100.0;
        let dir = BlochDirection::new(theta, phi).expect("in range");
        let back = dir.to_label().to_direction();
        let dphi = if theta == 0.0 { 0.0 } else { (back.phi() - phi).abs() };
        s.check(|| format!("direction ({theta}, {phi}) round trip"), (back.theta() - theta).abs().max(dphi), 1e-12);
    }
    s
}

fn cat_identity(max_twice_j: u32, rng: &mut ChaCha8Rng) -> SectionReport {
    let mut s = SectionReport::new("cat identity");
    for twice in (2..=max_twice_j).step_by(2) {
        let j = HalfInteger::from_twice(twice);
        let jv = twice / 2;
        let expected_phase = FRAC_PI_2 + PI * jv as f64;
        for g in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), random_label(rng)] {
            for omega in [0.0, 2.0 / jv as f64] {
                let Some(f) = s.check_result("cat identity", dynamics::verify_cat_identity(j, g, omega)) else {
                    continue;
                };
                s.check(|| format!("j={jv} gamma={g} omega={omega} fidelity"), 1.0 - f, 1e-10);
            }
            let h = KerrHamiltonian::z(j, 0.0).expect("j > 0");
            let evolved = quarter_period_evolve(&h, &coherent_state(j, &StereoLabel::Finite(g))).unwrap();
            s.check(|| format!("j={jv} norm"), (evolved.norm() - 1.0).abs(), 1e-12);
            let fit = fit_two_component(&evolved, g).unwrap();
            let dphase = angle_distance(fit.decomposition.relative_phase(), expected_phase);
            s.check(|| format!("j={jv} gamma={g} relative phase"), dphase, 1e-8);
        }
        let h = KerrHamiltonian::z(j, 0.0).expect("j > 0");
        let full = h.propagator(h.period());
        let phase = full[(0, 0)];
        s.check(|| format!("j={jv} full period"), full.distance(&SpinOperator::identity(j).scale(phase)), 1e-10);
    }
    s
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn rotated_frame(max_twice_j: u32) -> SectionReport {
    let mut s = SectionReport::new("rotated frame");
    let mut printed_mismatch = Vec::new();
    for twice in 1..=max_twice_j {
        let j = HalfInteger::from_twice(twice);
        let rx = su2::rotation_x(j, FRAC_PI_2);
        let rx_inv = su2::rotation_x(j, -FRAC_PI_2);
        let (y, z) = (su2::jy(j), su2::jz(j));
        let conj = |op: &SpinOperator| &(&rx * op) * &rx_inv;
        s.check(|| format!("2j={twice} Rx Jz^2 Rx^-1 = Jy^2"), conj(&(&z * &z)).distance(&(&y * &y)), 1e-12);
        s.check(|| format!("2j={twice} Rx Jz Rx^-1 = -Jy"), conj(&z).distance(&y.scale(Complex64::new(-1.0, 0.0))), 1e-12);
        let hz = KerrHamiltonian::z(j, 0.0).unwrap();
        let hy = KerrHamiltonian::y(j, 0.0).unwrap();
        let t = hz.quarter_period();
        s.check(|| format!("2j={twice} conjugated propagator"), conj(&hz.propagator(t)).distance(&hy.propagator(t)), 1e-10);
        if !j.is_integer() {
            continue;
        }
        let jv = twice / 2;
        for omega in [0.0, 2.0 / jv as f64] {
            let Some(r) = s.check_result("rotated identity", dynamics::verify_rotated_identity(j, omega)) else {
                continue;
            };
            s.check(|| format!("j={jv} omega={omega} direct vs conjugated"), r.path_discrepancy, 1e-10);
            s.check(|| format!("j={jv} omega={omega} extreme weight"), (1.0 - r.extreme_weight).abs(), 1e-10);
            s.check(|| format!("j={jv} omega={omega} relative phase"), angle_distance(r.relative_phase, FRAC_PI_2), 1e-8);
            if omega == 0.0 && 1.0 - r.fidelity > 1e-10 {
                printed_mismatch.push(jv);
            }
        }
    }
    if !printed_mismatch.is_empty() {
        s.notes.push(format!(
            "closed form with (-1)^j on |j,-j>: fidelity below 1 - 1e-10 for j in {printed_mismatch:?}; \
             observed amplitude ratio a(-j)/a(+j) = +i for every integer j"
        ));
    }
    s
}

fn schwinger_section(max_twice_j: u32) -> SectionReport {
    let mut s = SectionReport::new("schwinger");
    for twice in 0..=max_twice_j {
        let j = HalfInteger::from_twice(twice);
        let r = schwinger::verify_schwinger_realization(j);
        s.check(|| format!("2j={twice} realization"), r.max_residual(), 1e-12);
        let top = schwinger::spin_to_fock(&SpinState::basis(j.highest()));
        let bottom = schwinger::spin_to_fock(&SpinState::basis(j.lowest()));
        let exact = top == TwoModeState::fock(twice, twice).unwrap()
            && bottom == TwoModeState::fock(twice, 0).unwrap();
        s.check(|| format!("2j={twice} extreme Fock states"), if exact { 0.0 } else { 1.0 }, 0.0);
        let probe = coherent_state(j, &StereoLabel::finite(0.3, -0.7));
        let back = schwinger::fock_to_spin(&schwinger::spin_to_fock(&probe));
        s.check(|| format!("2j={twice} round trip"), if back == probe { 0.0 } else { 1.0 }, 0.0);
    }
    s
}

fn noon_section(max_twice_j: u32) -> SectionReport {
    let mut s = SectionReport::new("noon pipeline");
    let mut odd = Vec::new();
    for n in 1..=max_twice_j {
        for route in [NoonRoute::LabelI, NoonRoute::LabelOne] {
            let Some(t) = s.check_result("make_noon", schwinger::make_noon(n, 0.0, route)) else {
                continue;
            };
            s.check(|| format!("N={n} norm"), (t.norm() - 1.0).abs(), 1e-12);
            let (f, _) = schwinger::noon_fidelity(&t);
            if n % 2 == 0 {
                s.check(|| format!("N={n} {route:?} fidelity"), 1.0 - f, 1e-10);
                s.check(|| format!("N={n} {route:?} off-support mass"), t.off_support_mass(), 1e-20);
            } else if route == NoonRoute::LabelI && n <= 7 {
                odd.push(format!("N={n}: {f:.6}"));
            }
        }
    }
    if !odd.is_empty() {
        s.notes.push(format!("odd-N pipeline fidelities (exploratory): {}", odd.join(", ")));
    }
    s
}

fn metrology_section(max_twice_j: u32) -> SectionReport {
    let mut s = SectionReport::new("metrology");
    for n in 1..=100u32 {
        let Some(d) = s.check_result("phase_uncertainty", metrology::phase_uncertainty(n)) else {
            continue;
        };
        s.check(|| format!("N={n} N*dphi"), (d * n as f64 - 1.0).abs(), 1e-9);
        let qfi = metrology::quantum_fisher_information(&schwinger::NoonState::new(n, 0.0).unwrap().to_state());
        s.check(|| format!("N={n} Cramer-Rao"), 1.0 / qfi.sqrt() - d, 1e-9);
    }
    for n in (2..=max_twice_j).step_by(2) {
        let t = schwinger::make_noon(n, 0.0, NoonRoute::LabelI).unwrap();
        let qfi = metrology::quantum_fisher_information(&t);
        let n2 = f64::from(n * n);
        s.check(|| format!("N={n} QFI of pipeline output"), (qfi - n2).abs() / n2, 1e-8);
    }
    for n in [1u32, 2, 5, 10, 25] {
        let Some(p) = s.check_result("fringe", metrology::fringe_period(n, 10_000)) else {
            continue;
        };
        s.check(|| format!("N={n} fringe period"), (p - TAU / n as f64).abs(), TAU / 10_000.0);
    }
    s
}

/// Runs every section up to `max_twice_j`.
pub fn run_suite(max_twice_j: u32) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let sections = vec![
        algebra(max_twice_j),
        coherent_states(max_twice_j, &mut rng),
        cat_identity(max_twice_j, &mut rng),
        rotated_frame(max_twice_j),
        schwinger_section(max_twice_j),
        noon_section(max_twice_j),
        metrology_section(max_twice_j),
    ];
    SuiteReport {
        max_twice_j,
        sections,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_suite(8);
        for s in &report.sections {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
        }
        assert!(report.sections.len() >= 5);
        assert!(report.total_checks() > 100);
    }

    #[test]
    fn angle_distance_wraps() {
        assert!((angle_distance(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
        assert!(angle_distance(FRAC_PI_2 + 3.0 * PI, -FRAC_PI_2) < 1e-12);
    }
}
