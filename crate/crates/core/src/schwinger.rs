//! Two-mode Fock sector of the Schwinger realization and the N00N pipeline.
//!
//! `J₊ = a†b`, `J₋ = ab†`, `J_z = (a†a − b†b)/2`, `J₀ = (a†a + b†b)/2`.
//! The weight state `|j, m⟩_z` is the Fock state `|j+m⟩_a ⊗ |j−m⟩_b`, so a
//! spin-`j` irrep is the sector of total photon number `N = 2j`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::coherent::{coherent_state, StereoLabel};
use crate::dynamics::{quarter_period_evolve, rotate_x_quarter, rotate_y_quarter, KerrHamiltonian};
use crate::error::{Error, Result};
use crate::operator::SpinOperator;
use crate::state::{SpinState, NORM_TOLERANCE};
use crate::su2::{self, HalfInteger, WeightLabel};

/// Pure state in the fixed-`N` sector, indexed by `n_a = 0..=N`
/// (`n_b = N − n_a`).
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    n_total: u32,
    amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    pub fn new(n_total: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = n_total as usize + 1;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: amplitudes.len(),
            });
        }
        let s = TwoModeState {
            n_total,
            amplitudes,
        };
        let norm = s.norm();
        if !((norm - 1.0).abs() <= NORM_TOLERANCE) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    pub fn normalized(n_total: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expected = n_total as usize + 1;
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(TwoModeState {
            n_total,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub(crate) fn from_amplitudes_unchecked(n_total: u32, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), n_total as usize + 1);
        TwoModeState {
            n_total,
            amplitudes,
        }
    }

    /// `|n_a⟩_a ⊗ |N − n_a⟩_b`.
    pub fn fock(n_total: u32, n_a: u32) -> Result<Self> {
        if n_a > n_total {
            return Err(Error::InvalidParameter(format!(
                "n_a = {n_a} exceeds N = {n_total}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n_total as usize + 1];
        amps[n_a as usize] = Complex64::new(1.0, 0.0);
        Ok(TwoModeState {
            n_total,
            amplitudes: amps,
        })
    }

    pub fn n_total(&self) -> u32 {
        self.n_total
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude on `|n_a⟩_a ⊗ |N − n_a⟩_b`.
    pub fn amplitude(&self, n_a: u32) -> Complex64 {
        self.amplitudes[n_a as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn overlap(&self, other: &TwoModeState) -> Result<Complex64> {
        if self.n_total != other.n_total {
            return Err(Error::SectorMismatch {
                left: self.n_total,
                right: other.n_total,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn fidelity(&self, other: &TwoModeState) -> Result<f64> {
        Ok(self.overlap(other)?.norm())
    }

    /// Probability mass outside `|N,0⟩` and `|0,N⟩`.
    pub fn off_support_mass(&self) -> f64 {
        let n = self.n_total as usize;
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != 0 && k != n)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Fock index `n_a = j + m` of a weight.
fn fock_index(w: WeightLabel) -> usize {
    ((w.j().twice() as i32 + w.twice_m()) / 2) as usize
}

pub fn spin_to_fock(s: &SpinState) -> TwoModeState {
    let j = s.j();
    let mut amps = vec![Complex64::new(0.0, 0.0); j.dim()];
    for w in j.weights() {
        amps[fock_index(w)] = s.amplitude(w);
    }
    TwoModeState::from_amplitudes_unchecked(j.twice(), amps)
}

pub fn fock_to_spin(t: &TwoModeState) -> SpinState {
    let j = HalfInteger::from_twice(t.n_total);
    let amps: Vec<Complex64> = j.weights().map(|w| t.amplitudes[fock_index(w)]).collect();
    SpinState::from_vector_unchecked(j, DVector::from_vec(amps))
}

/// Truncated single-mode annihilator on `|0⟩ … |cutoff⟩`.
fn annihilator(cutoff: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(cutoff + 1, cutoff + 1);
    for n in 1..=cutoff {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

/// Matrix of `A ⊗ B` restricted to the fixed-`N` sector, where `A` acts on
/// mode `a` and `B` on mode `b`. Only bilinears that conserve `N` are
/// meaningful here.
fn sector_bilinear(n: usize, mode_a: &DMatrix<f64>, mode_b: &DMatrix<f64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(n + 1, n + 1, |p, q| {
        Complex64::new(mode_a[(p, q)] * mode_b[(n - p, n - q)], 0.0)
    })
}

/// Schwinger-realization generators on the sector `N = 2j`, expressed in
/// the spin basis through the weight/Fock correspondence.
#[derive(Clone, Debug)]
pub struct SchwingerGenerators {
    pub j_plus: SpinOperator,
    pub j_minus: SpinOperator,
    pub jz: SpinOperator,
    pub j0: SpinOperator,
}

impl SchwingerGenerators {
    pub fn new(j: HalfInteger) -> Self {
        let n = j.twice() as usize;
        let a = annihilator(n);
        let ad = a.transpose();
        let id = DMatrix::<f64>::identity(n + 1, n + 1);
        let na = &ad * &a;

        let plus = sector_bilinear(n, &ad, &a);
        let minus = sector_bilinear(n, &a, &ad);
        let number_a = sector_bilinear(n, &na, &id);
        let number_b = sector_bilinear(n, &id, &na);
        let half = Complex64::new(0.5, 0.0);
        let jz = (&number_a - &number_b) * half;
        let j0 = (&number_a + &number_b) * half;

        // Permutation P[fock, spin] from the weight correspondence.
        let mut perm = DMatrix::<Complex64>::zeros(n + 1, n + 1);
        for w in j.weights() {
            perm[(fock_index(w), w.index())] = Complex64::new(1.0, 0.0);
        }
        let to_spin = |m: DMatrix<Complex64>| {
            SpinOperator::from_matrix(j, perm.adjoint() * m * &perm).expect("sector dimension")
        };
        SchwingerGenerators {
            j_plus: to_spin(plus),
            j_minus: to_spin(minus),
            jz: to_spin(jz),
            j0: to_spin(j0),
        }
    }
}

/// Residuals of the Schwinger realization against the irrep generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchwingerReport {
    /// Largest residual over `J₊, J₋, J_z, J_x, J_y`.
    pub generator_residual: f64,
    /// `J² − J₀(J₀ + 1)`.
    pub casimir_residual: f64,
    /// `J₀ − j·1`.
    pub j0_residual: f64,
}

impl SchwingerReport {
    pub fn max_residual(&self) -> f64 {
        self.generator_residual
            .max(self.casimir_residual)
            .max(self.j0_residual)
    }
}

pub fn verify_schwinger_realization(j: HalfInteger) -> SchwingerReport {
    let g = SchwingerGenerators::new(j);
    let half = Complex64::new(0.5, 0.0);
    let bx = (&g.j_plus + &g.j_minus).scale(half);
    let by = (&g.j_plus - &g.j_minus).scale(Complex64::new(0.0, -0.5));

    let generator_residual = [
        g.j_plus.distance(&su2::j_plus(j)),
        g.j_minus.distance(&su2::j_minus(j)),
        g.jz.distance(&su2::jz(j)),
        bx.distance(&su2::jx(j)),
        by.distance(&su2::jy(j)),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let casimir = &(&(&bx * &bx) + &(&by * &by)) + &(&g.jz * &g.jz);
    let j0_sq = &(&g.j0 * &g.j0) + &g.j0;
    let casimir_residual = casimir.distance(&j0_sq);
    let j0_residual = g
        .j0
        .distance(&SpinOperator::identity(j).scale(Complex64::new(j.value(), 0.0)));

    SchwingerReport {
        generator_residual,
        casimir_residual,
        j0_residual,
    }
}

/// `(e^{−iφ}|N,0⟩ + e^{iφ}|0,N⟩)/√2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoonState {
    pub n_total: u32,
    pub phi: f64,
}

impl NoonState {
    pub fn new(n_total: u32, phi: f64) -> Result<Self> {
        if n_total == 0 {
            return Err(Error::InvalidN(0));
        }
        Ok(NoonState { n_total, phi })
    }

    pub fn to_state(&self) -> TwoModeState {
        let n = self.n_total as usize;
        let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
        amps[n] = Complex64::from_polar(FRAC_1_SQRT_2, -self.phi);
        amps[0] = Complex64::from_polar(FRAC_1_SQRT_2, self.phi);
        TwoModeState::from_amplitudes_unchecked(self.n_total, amps)
    }
}

/// Starting label and final rotation of the N00N pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NoonRoute {
    /// `γ = i`, final `π/2` rotation about `x`.
    #[default]
    LabelI,
    /// `γ = 1`, final `π/2` rotation about `y`.
    LabelOne,
}

/// Coherent state → quarter-period evolution → `π/2` rotation → Fock basis.
///
/// Even `N` yields a N00N state. Odd `N` runs through the same steps, but
/// the output is not a N00N state and should be judged by [`noon_fidelity`].
pub fn make_noon(n: u32, omega: f64, route: NoonRoute) -> Result<TwoModeState> {
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    let j = HalfInteger::from_twice(n);
    let label = match route {
        NoonRoute::LabelI => Complex64::new(0.0, 1.0),
        NoonRoute::LabelOne => Complex64::new(1.0, 0.0),
    };
    let start = coherent_state(j, &StereoLabel::Finite(label));
    let cat = quarter_period_evolve(&KerrHamiltonian::z(j, omega)?, &start)?;
    let aligned = match route {
        NoonRoute::LabelI => rotate_x_quarter(&cat),
        NoonRoute::LabelOne => rotate_y_quarter(&cat),
    };
    Ok(spin_to_fock(&aligned))
}

/// Best fidelity with a N00N state over its phase, and the maximizing phase
/// reduced to `[0, π)` (`φ` and `φ + π` differ only by a global sign).
pub fn noon_fidelity(t: &TwoModeState) -> (f64, f64) {
    let n = t.n_total() as usize;
    let hi = t.amplitudes()[n];
    let lo = t.amplitudes()[0];
    if n == 0 {
        return (hi.norm(), 0.0);
    }
    let fidelity = (hi.norm() + lo.norm()) * FRAC_1_SQRT_2;
    let mut phi = ((lo.arg() - hi.arg()) / 2.0).rem_euclid(PI);
    if phi >= PI {
        phi = 0.0;
    }
    (fidelity, phi)
}
