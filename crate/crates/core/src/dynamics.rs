//! One-axis twisting dynamics and the quarter-period cat.
//!
//! Under `H = ωJ_a + (λ/2j)J_a²` the period is `τ = 4πj/λ`. After `τ/4`
//! (with the linear phase `ωτ/4` a multiple of `2π`) a coherent state of
//! integer `j` becomes
//!
//! ```text
//! (1/√2)[e^{−iπ/4}|j, γ⟩ + (−1)^j e^{iπ/4}|j, −γ⟩].
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;

use crate::coherent::{coherent_state, CatDecomposition, StereoLabel};
use crate::error::{Error, Result};
use crate::operator::SpinOperator;
use crate::state::SpinState;
use crate::su2::{self, HalfInteger};

/// Nonlinear strength used wherever the caller does not choose one. With
/// the evolution time fixed to a quarter period, `λ` drops out of the
/// quadratic phase.
pub const DEFAULT_LAMBDA: f64 = 1.0;

/// Slack allowed when deciding whether `ωτ/4` is a multiple of `2π`.
const PHASE_COMMENSURATE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KerrAxis {
    Z,
    Y,
}

/// `H = ωJ_a + (λ/2j)J_a²` on the irrep `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KerrHamiltonian {
    j: HalfInteger,
    omega: f64,
    lambda: f64,
    axis: KerrAxis,
}

impl KerrHamiltonian {
    pub fn new(j: HalfInteger, omega: f64, lambda: f64, axis: KerrAxis) -> Result<Self> {
        if j.twice() == 0 {
            return Err(Error::ZeroSpin);
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        if !omega.is_finite() {
            return Err(Error::InvalidParameter(format!("omega = {omega}")));
        }
        Ok(KerrHamiltonian {
            j,
            omega,
            lambda,
            axis,
        })
    }

    pub fn z(j: HalfInteger, omega: f64) -> Result<Self> {
        Self::new(j, omega, DEFAULT_LAMBDA, KerrAxis::Z)
    }

    pub fn y(j: HalfInteger, omega: f64) -> Result<Self> {
        Self::new(j, omega, DEFAULT_LAMBDA, KerrAxis::Y)
    }

    pub fn j(&self) -> HalfInteger {
        self.j
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn axis(&self) -> KerrAxis {
        self.axis
    }

    /// `τ = 4πj/λ`.
    pub fn period(&self) -> f64 {
        4.0 * PI * self.j.value() / self.lambda
    }

    pub fn quarter_period(&self) -> f64 {
        self.period() / 4.0
    }

    /// True when the linear phase `ωτ/4` accumulated over a quarter period
    /// is a multiple of `2π`.
    pub fn linear_phase_vanishes(&self) -> bool {
        let turns = self.omega * self.quarter_period() / TAU;
        (turns - turns.round()).abs() <= PHASE_COMMENSURATE_TOL
    }

    pub fn operator(&self) -> SpinOperator {
        let a = match self.axis {
            KerrAxis::Z => su2::jz(self.j),
            KerrAxis::Y => su2::jy(self.j),
        };
        let quad = (&a * &a).scale(Complex64::new(self.lambda / (2.0 * self.j.value()), 0.0));
        &a.scale(Complex64::new(self.omega, 0.0)) + &quad
    }

    /// `exp(−iHt)`.
    pub fn propagator(&self, t: f64) -> SpinOperator {
        self.operator()
            .exp_minus_i(t)
            .expect("Hamiltonian is Hermitian by construction")
    }
}

/// `exp(−iHτ/4)|ψ⟩`.
pub fn quarter_period_evolve(h: &KerrHamiltonian, input: &SpinState) -> Result<SpinState> {
    if input.j() != h.j() {
        return Err(Error::IrrepMismatch {
            left: h.j(),
            right: input.j(),
        });
    }
    h.propagator(h.quarter_period()).apply(input)
}

/// The two-component superposition predicted for integer `j`.
pub fn predicted_cat(j: HalfInteger, gamma: Complex64) -> Result<CatDecomposition> {
    let sign = j.parity_sign().ok_or(Error::HalfIntegerUnsupported(j))?;
    if !(gamma.re.is_finite() && gamma.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("gamma = {gamma}")));
    }
    Ok(CatDecomposition {
        j,
        label_plus: StereoLabel::Finite(gamma),
        label_minus: StereoLabel::Finite(-gamma),
        coeff_plus: Complex64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4),
        coeff_minus: Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4) * sign,
    })
}

fn require_integer_and_trivial_phase(h: &KerrHamiltonian) -> Result<()> {
    if !h.j().is_integer() {
        return Err(Error::HalfIntegerUnsupported(h.j()));
    }
    if !h.linear_phase_vanishes() {
        return Err(Error::PreconditionViolated(format!(
            "omega * tau/4 = {} is not a multiple of 2pi",
            h.omega() * h.quarter_period()
        )));
    }
    Ok(())
}

/// `|⟨U(τ/4)|j, γ⟩, predicted cat⟩|` for integer `j`.
pub fn verify_cat_identity(j: HalfInteger, gamma: Complex64, omega: f64) -> Result<f64> {
    let h = KerrHamiltonian::z(j, omega)?;
    require_integer_and_trivial_phase(&h)?;
    let evolved = quarter_period_evolve(&h, &coherent_state(j, &StereoLabel::Finite(gamma)))?;
    let predicted = predicted_cat(j, gamma)?.amplitudes();
    Ok(evolved
        .vector()
        .iter()
        .zip(&predicted)
        .map(|(a, p)| p.conj() * a)
        .sum::<Complex64>()
        .norm())
}

/// Least-squares projection of a state onto `span{|j, γ⟩, |j, −γ⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatFit {
    pub decomposition: CatDecomposition,
    /// Norm of the projection, equal to the best two-component fidelity.
    pub fidelity: f64,
}

pub fn fit_two_component(state: &SpinState, gamma: Complex64) -> Result<CatFit> {
    let j = state.j();
    let plus = coherent_state(j, &StereoLabel::Finite(gamma));
    let minus = coherent_state(j, &StereoLabel::Finite(-gamma));
    let g = plus.overlap(&minus)?;
    let bp = plus.overlap(state)?;
    let bm = minus.overlap(state)?;
    let det = 1.0 - g.norm_sqr();
    let (cp, cm) = if det > 1e-14 {
        // Solve [[1, g], [g*, 1]] (cp, cm) = (bp, bm).
        ((bp - g * bm) / det, (bm - g.conj() * bp) / det)
    } else {
        // The two labels describe the same state; keep a single component.
        (bp, Complex64::new(0.0, 0.0))
    };
    let projection = SpinState::superpose(j, &[(cp, &plus), (cm, &minus)])?;
    Ok(CatFit {
        decomposition: CatDecomposition {
            j,
            label_plus: StereoLabel::Finite(gamma),
            label_minus: StereoLabel::Finite(-gamma),
            coeff_plus: cp,
            coeff_minus: cm,
        },
        fidelity: projection.norm(),
    })
}

/// One row of a [`cat_scan`] report.
#[derive(Clone, Debug, PartialEq)]
pub struct CatScanRow {
    pub twice_j: u32,
    pub omega: f64,
    pub fidelity: f64,
    pub coeff_plus: Complex64,
    pub coeff_minus: Complex64,
}

/// Quarter-period evolution of `|j, γ⟩` fitted onto the two-component span,
/// for every `(j, ω)` pair. No contract is attached to half-integer rows.
pub fn cat_scan(j_list: &[HalfInteger], omega_list: &[f64], gamma: Complex64) -> Result<Vec<CatScanRow>> {
    let mut rows = Vec::with_capacity(j_list.len() * omega_list.len());
    for &j in j_list {
        let start = coherent_state(j, &StereoLabel::Finite(gamma));
        for &omega in omega_list {
            let h = KerrHamiltonian::z(j, omega)?;
            let evolved = quarter_period_evolve(&h, &start)?;
            let fit = fit_two_component(&evolved, gamma)?;
            rows.push(CatScanRow {
                twice_j: j.twice(),
                omega,
                fidelity: fit.fidelity,
                coeff_plus: fit.decomposition.coeff_plus,
                coeff_minus: fit.decomposition.coeff_minus,
            });
        }
    }
    Ok(rows)
}

/// `R_x(π/2)|ψ⟩`.
pub fn rotate_x_quarter(input: &SpinState) -> SpinState {
    su2::rotation_x(input.j(), FRAC_PI_2)
        .apply(input)
        .expect("rotation built on the input irrep")
}

/// `R_y(π/2)|ψ⟩`.
pub fn rotate_y_quarter(input: &SpinState) -> SpinState {
    su2::rotation_y(input.j(), FRAC_PI_2)
        .apply(input)
        .expect("rotation built on the input irrep")
}

/// `(1/√2)[e^{−iπ/4}|j, j⟩_z + (−1)^j e^{iπ/4}|j, −j⟩_z]`, the closed form
/// quoted for the rotated-frame evolution of `|j, j⟩_z`.
pub fn rotated_prediction(j: HalfInteger) -> Result<SpinState> {
    let sign = j.parity_sign().ok_or(Error::HalfIntegerUnsupported(j))?;
    let mut amps = vec![Complex64::new(0.0, 0.0); j.dim()];
    amps[j.dim() - 1] = Complex64::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4);
    amps[0] += Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_4) * sign;
    SpinState::new(j, amps)
}

/// Outcome of evolving `|j, j⟩_z` under `H′ = ωJ_y + (λ/2j)J_y²` for `τ/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotatedIdentityReport {
    pub j: HalfInteger,
    /// Result of the direct `H′` evolution.
    pub direct: SpinState,
    /// Result of `R_x(π/2) exp(−iHτ/4) R_x(−π/2)|j, j⟩_z`.
    pub conjugated: SpinState,
    /// `‖direct − conjugated‖₂`, compared componentwise.
    pub path_discrepancy: f64,
    /// `|⟨rotated_prediction(j)|direct⟩|`.
    pub fidelity: f64,
    /// `|a₊ⱼ|² + |a₋ⱼ|²` of the direct result.
    pub extreme_weight: f64,
    /// `arg(a₋ⱼ / a₊ⱼ)` of the direct result.
    pub relative_phase: f64,
}

pub fn verify_rotated_identity(j: HalfInteger, omega: f64) -> Result<RotatedIdentityReport> {
    let hz = KerrHamiltonian::z(j, omega)?;
    require_integer_and_trivial_phase(&hz)?;
    let hy = KerrHamiltonian::y(j, omega)?;
    let t = hz.quarter_period();
    let top = SpinState::basis(j.highest());

    let direct = hy.propagator(t).apply(&top)?;

    let rx = su2::rotation_x(j, FRAC_PI_2);
    let rx_inv = su2::rotation_x(j, -FRAC_PI_2);
    let conjugated = (&(&rx * &hz.propagator(t)) * &rx_inv).apply(&top)?;

    let path_discrepancy = (direct.vector() - conjugated.vector()).norm();
    let fidelity = rotated_prediction(j)?.fidelity(&direct)?;
    let hi = direct.amplitude(j.highest());
    let lo = direct.amplitude(j.lowest());
    Ok(RotatedIdentityReport {
        j,
        path_discrepancy,
        fidelity,
        extreme_weight: hi.norm_sqr() + lo.norm_sqr(),
        relative_phase: (lo / hi).arg(),
        direct,
        conjugated,
    })
}
