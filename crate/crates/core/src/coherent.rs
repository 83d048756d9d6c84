//! SU(2) coherent states.
//!
//! The normative definition is the explicit expansion
//!
//! ```text
//! |j, γ⟩ = (1 + |γ|²)^(−j) Σ_m C(2j, j+m)^(1/2) γ^(j+m) |j, m⟩_z
//! ```
//!
//! so `γ = 0` is the lowest weight `|j, −j⟩_z` and `γ = ∞` the highest
//! weight `|j, +j⟩_z`. The label `γ = e^{iφ} tan(θ/2)` is the stereographic
//! image of the angles `(θ, φ)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::SpinOperator;
use crate::state::SpinState;
use crate::su2::{self, HalfInteger};

/// Stereographic label of the `+j` eigenstate of `J_y` under the expansion
/// convention. The `−j` eigenstate carries the negated label.
pub const JY_HIGHEST_LABEL: Complex64 = Complex64::new(0.0, -1.0);

/// Angles `(θ, φ)` with `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta = {theta} outside [0, pi]"
            )));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "phi = {phi} outside [0, 2pi)"
            )));
        }
        Ok(BlochDirection { theta, phi })
    }

    /// Like [`BlochDirection::new`] but reduces `φ` modulo `2π` first.
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        Self::new(theta, wrap_angle(phi))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_label(&self) -> StereoLabel {
        StereoLabel::from_direction(self)
    }
}

fn wrap_angle(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Complex stereographic coordinate, with the pole `θ = π` kept exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StereoLabel {
    Finite(Complex64),
    Infinity,
}

impl StereoLabel {
    pub fn finite(re: f64, im: f64) -> Self {
        StereoLabel::Finite(Complex64::new(re, im))
    }

    pub fn from_direction(dir: &BlochDirection) -> Self {
        if dir.theta == PI {
            return StereoLabel::Infinity;
        }
        StereoLabel::Finite(Complex64::from_polar((dir.theta / 2.0).tan(), dir.phi))
    }

    pub fn to_direction(&self) -> BlochDirection {
        match *self {
            StereoLabel::Infinity => BlochDirection { theta: PI, phi: 0.0 },
            StereoLabel::Finite(g) => {
                let (r, arg) = g.to_polar();
                let phi = if r == 0.0 { 0.0 } else { wrap_angle(arg) };
                BlochDirection {
                    theta: 2.0 * r.atan(),
                    phi,
                }
            }
        }
    }

    pub fn negated(&self) -> Self {
        match *self {
            StereoLabel::Finite(g) => StereoLabel::Finite(-g),
            StereoLabel::Infinity => StereoLabel::Infinity,
        }
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            StereoLabel::Finite(g) => Some(g),
            StereoLabel::Infinity => None,
        }
    }
}

impl From<Complex64> for StereoLabel {
    fn from(g: Complex64) -> Self {
        StereoLabel::Finite(g)
    }
}

/// `ln C(n, k)` for all `k = 0..=n`.
fn ln_binomials(n: usize) -> Vec<f64> {
    let mut ln_fact = vec![0.0; n + 1];
    for k in 1..=n {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    (0..=n)
        .map(|k| ln_fact[n] - ln_fact[k] - ln_fact[n - k])
        .collect()
}

/// Coherent state by direct evaluation of the expansion.
///
/// Magnitudes are accumulated in log space so large `2j` and large `|γ|`
/// neither overflow nor underflow prematurely.
pub fn coherent_state(j: HalfInteger, label: &StereoLabel) -> SpinState {
    let dim = j.dim();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    match *label {
        StereoLabel::Infinity => amps[dim - 1] = Complex64::new(1.0, 0.0),
        StereoLabel::Finite(g) if g == Complex64::new(0.0, 0.0) => {
            amps[0] = Complex64::new(1.0, 0.0)
        }
        StereoLabel::Finite(g) => {
            let (r, arg) = g.to_polar();
            let jv = j.value();
            let ln_r = r.ln();
            // j·ln(1 + r²), written to avoid overflowing r² for huge r.
            let ln_norm = if r <= 1.0 {
                jv * (r * r).ln_1p()
            } else {
                2.0 * jv * ln_r + jv * (1.0 / (r * r)).ln_1p()
            };
            for (k, lnc) in ln_binomials(dim - 1).into_iter().enumerate() {
                let mag = (0.5 * lnc + k as f64 * ln_r - ln_norm).exp();
                amps[k] = Complex64::from_polar(mag, k as f64 * arg);
            }
        }
    }
    SpinState::from_vector_unchecked(j, nalgebra::DVector::from_vec(amps))
}

/// Rotation `R(γ)` carrying `|j, −j⟩_z` onto `|j, γ⟩`:
///
/// `R(γ) = exp[(θ/2)(J₊ e^{iφ} − J₋ e^{−iφ})]`, with `(θ, φ)` from `γ`.
pub fn rotation_operator(j: HalfInteger, label: &StereoLabel) -> Result<SpinOperator> {
    if matches!(label, StereoLabel::Infinity) {
        return Err(Error::PoleLabel);
    }
    let dir = label.to_direction();
    let half = dir.theta() / 2.0;
    let e = Complex64::from_polar(1.0, dir.phi());
    let plus = su2::j_plus(j).scale(e * half);
    let minus = su2::j_minus(j).scale(e.conj() * half);
    let anti_hermitian = &plus - &minus;
    // exp(A) = exp(−i H) with H = iA Hermitian.
    anti_hermitian
        .scale(Complex64::new(0.0, 1.0))
        .exp_minus_i(1.0)
}

pub fn overlap(a: &SpinState, b: &SpinState) -> Result<Complex64> {
    a.overlap(b)
}

/// Eigenstates `(|j, +j⟩_y, |j, −j⟩_y)` of `J_y`, each phased to coincide
/// with the coherent state it equals.
pub fn jy_extremal_states(j: HalfInteger) -> (SpinState, SpinState) {
    let spectrum = su2::jy(j)
        .spectrum()
        .expect("J_y is Hermitian by construction");
    let top = spectrum.eigenvector(j.dim() - 1);
    let bottom = spectrum.eigenvector(0);
    let plus = align_phase(top, &coherent_state(j, &StereoLabel::Finite(JY_HIGHEST_LABEL)));
    let minus = align_phase(
        bottom,
        &coherent_state(j, &StereoLabel::Finite(-JY_HIGHEST_LABEL)),
    );
    (plus, minus)
}

/// Rotates the global phase of `state` so `⟨reference|state⟩` is real positive.
fn align_phase(state: SpinState, reference: &SpinState) -> SpinState {
    let ov = reference.overlap(&state).expect("same irrep");
    if ov.norm() == 0.0 {
        return state;
    }
    state.with_global_phase(ov.conj() / ov.norm())
}

/// Mean spin vector `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)`.
pub fn mean_spin(state: &SpinState) -> [f64; 3] {
    let j = state.j();
    let e = |op: SpinOperator| state.expectation(&op).expect("same irrep").re;
    [e(su2::jx(j)), e(su2::jy(j)), e(su2::jz(j))]
}

/// Superposition `c₊|j, γ₊⟩ + c₋|j, γ₋⟩` of two coherent states.
#[derive(Clone, Debug, PartialEq)]
pub struct CatDecomposition {
    pub j: HalfInteger,
    pub label_plus: StereoLabel,
    pub label_minus: StereoLabel,
    pub coeff_plus: Complex64,
    pub coeff_minus: Complex64,
}

impl CatDecomposition {
    /// Amplitude vector of the superposition, not renormalized.
    pub fn amplitudes(&self) -> Vec<Complex64> {
        let a = coherent_state(self.j, &self.label_plus);
        let b = coherent_state(self.j, &self.label_minus);
        SpinState::superpose(self.j, &[(self.coeff_plus, &a), (self.coeff_minus, &b)])
            .expect("same irrep")
            .as_slice()
            .to_vec()
    }

    /// The superposition as a state; fails unless it is already unit norm.
    pub fn materialize(&self) -> Result<SpinState> {
        SpinState::new(self.j, self.amplitudes())
    }

    /// `arg(c₋ / c₊)`, in `(−π, π]`.
    pub fn relative_phase(&self) -> f64 {
        (self.coeff_minus / self.coeff_plus).arg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lowest_weight_at_zero_label() {
        for twice in 0..=10 {
            let j = HalfInteger::from_twice(twice);
            let s = coherent_state(j, &StereoLabel::finite(0.0, 0.0));
            assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
            assert!(s.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
            let s = coherent_state(j, &StereoLabel::Infinity);
            assert_eq!(s.amplitudes()[twice as usize], c(1.0, 0.0));
            assert!(s.amplitudes()[..twice as usize].iter().all(|a| a.norm() == 0.0));
        }
    }

    #[test]
    fn spin_one_at_label_i() {
        let s = coherent_state(HalfInteger::ONE, &StereoLabel::finite(0.0, 1.0));
        let expect = [c(0.5, 0.0), c(0.0, FRAC_1_SQRT_2), c(-0.5, 0.0)];
        for (a, b) in s.amplitudes().iter().zip(expect) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn spin_half_at_label_one() {
        let s = coherent_state(HalfInteger::HALF, &StereoLabel::finite(1.0, 0.0));
        for a in s.amplitudes() {
            assert!((a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn stereographic_examples() {
        let g = |t, p| {
            BlochDirection::new(t, p)
                .unwrap()
                .to_label()
                .as_finite()
                .unwrap()
        };
        assert!((g(FRAC_PI_2, FRAC_PI_2) - c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(g(0.0, 1.234), c(0.0, 0.0));
        assert!((g(FRAC_PI_2, 0.0) - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(
            BlochDirection::new(PI, 0.3).unwrap().to_label(),
            StereoLabel::Infinity
        );
        assert_eq!(StereoLabel::Infinity.to_direction().theta(), PI);
    }

    #[test]
    fn direction_validation() {
        assert!(BlochDirection::new(-0.1, 0.0).is_err());
        assert!(BlochDirection::new(3.2, 0.0).is_err());
        assert!(BlochDirection::new(1.0, TAU).is_err());
        assert!(BlochDirection::wrapped(1.0, TAU + 0.5).is_ok());
        assert!((BlochDirection::wrapped(1.0, -0.5).unwrap().phi() - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn rotation_identity_and_pole() {
        let j = HalfInteger::from_twice(4);
        let r = rotation_operator(j, &StereoLabel::finite(0.0, 0.0)).unwrap();
        assert!(r.distance(&SpinOperator::identity(j)) < 1e-15);
        assert_eq!(
            rotation_operator(j, &StereoLabel::Infinity),
            Err(Error::PoleLabel)
        );
    }

    #[test]
    fn jy_pairing_convention_spin_half() {
        // Frozen convention: the +1/2 eigenvector of J_y is the coherent
        // state with label −i, the −1/2 eigenvector the one with label +i.
        let j = HalfInteger::HALF;
        let spectrum = su2::jy(j).spectrum().unwrap();
        let top = spectrum.eigenvector(1);
        assert!((spectrum.eigenvalues()[1] - 0.5).abs() < 1e-14);
        let with_minus_i = top
            .fidelity(&coherent_state(j, &StereoLabel::finite(0.0, -1.0)))
            .unwrap();
        let with_plus_i = top
            .fidelity(&coherent_state(j, &StereoLabel::finite(0.0, 1.0)))
            .unwrap();
        assert!((with_minus_i - 1.0).abs() < 1e-14);
        assert!(with_plus_i < 1e-14);
        assert_eq!(JY_HIGHEST_LABEL, c(0.0, -1.0));
    }

    #[test]
    fn mean_spin_poles_and_equator() {
        let j = HalfInteger::from_twice(6);
        let top = SpinState::basis(j.highest());
        let m = mean_spin(&top);
        assert!(m[0].abs() < 1e-15 && m[1].abs() < 1e-15 && (m[2] - 3.0).abs() < 1e-15);
        let eq = coherent_state(j, &StereoLabel::finite(0.0, 1.0));
        assert!(mean_spin(&eq)[2].abs() < 1e-12);
    }

    #[test]
    fn cat_relative_phase() {
        let cat = CatDecomposition {
            j: HalfInteger::ONE,
            label_plus: StereoLabel::finite(0.0, 1.0),
            label_minus: StereoLabel::finite(0.0, -1.0),
            coeff_plus: c(1.0, 0.0),
            coeff_minus: c(0.0, 1.0),
        };
        assert!((cat.relative_phase() - FRAC_PI_2).abs() < 1e-15);
        assert!(cat.materialize().is_err());
    }
}
