//! Phase estimation with N00N probes.
//!
//! The phase is imprinted by `exp(−iφ n_a)` (a shift in the `a` arm) and
//! read out with the extreme-coherence observable
//! `A = |N,0⟩⟨0,N| + |0,N⟩⟨N,0|`. For a N00N probe `⟨A⟩` oscillates as
//! `cos(Nφ + 2φ₀)` and error propagation gives `Δφ = 1/N`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schwinger::{NoonState, TwoModeState};

/// Multiplies the amplitude on `n_a` by `e^{−i n_a φ}`.
pub fn apply_phase_shift(t: &TwoModeState, phi: f64) -> TwoModeState {
    let amps = t
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n_a, a)| a * Complex64::from_polar(1.0, -(n_a as f64) * phi))
        .collect();
    TwoModeState::from_amplitudes_unchecked(t.n_total(), amps)
}

/// Expectation values of the readout observable and the moments needed for
/// error propagation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceReadout {
    /// `⟨A⟩`.
    pub mean: f64,
    /// `⟨A²⟩`.
    pub second_moment: f64,
    /// `∂⟨A⟩/∂φ = i⟨[n_a, A]⟩`.
    pub slope: f64,
}

impl CoherenceReadout {
    pub fn std_dev(&self) -> f64 {
        (self.second_moment - self.mean * self.mean).max(0.0).sqrt()
    }

    /// `ΔA / |∂⟨A⟩/∂φ|`.
    pub fn phase_uncertainty(&self) -> f64 {
        self.std_dev() / self.slope.abs()
    }
}

/// Reads `A` on `t` (already phase shifted).
pub fn coherence_readout(t: &TwoModeState) -> Result<CoherenceReadout> {
    let n = t.n_total() as usize;
    if n == 0 {
        return Err(Error::InvalidN(0));
    }
    let hi = t.amplitudes()[n];
    let lo = t.amplitudes()[0];
    let cross = hi.conj() * lo;
    // [n_a, A] = N(|N,0⟩⟨0,N| − |0,N⟩⟨N,0|), so i⟨[n_a, A]⟩ = −2N Im(a_N* a_0).
    Ok(CoherenceReadout {
        mean: 2.0 * cross.re,
        second_moment: hi.norm_sqr() + lo.norm_sqr(),
        slope: -2.0 * n as f64 * cross.im,
    })
}

/// `⟨A⟩` for the N00N probe of phase `φ₀` after a shift `φ`.
pub fn noon_signal(n: u32, phi0: f64, phi: f64) -> Result<f64> {
    let probe = NoonState::new(n, phi0)?.to_state();
    Ok(coherence_readout(&apply_phase_shift(&probe, phi))?.mean)
}

/// Error-propagation phase uncertainty of a `φ₀ = 0` N00N probe at the
/// steepest point of its fringe, `φ = π/(2N)`.
pub fn phase_uncertainty(n: u32) -> Result<f64> {
    let probe = NoonState::new(n, 0.0)?.to_state();
    let operating_point = FRAC_PI_2 / n as f64;
    Ok(coherence_readout(&apply_phase_shift(&probe, operating_point))?.phase_uncertainty())
}

/// Pure-state quantum Fisher information `4 Var(n_a)`.
pub fn quantum_fisher_information(t: &TwoModeState) -> f64 {
    let (mut m1, mut m2) = (0.0, 0.0);
    for (n_a, a) in t.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        let n = n_a as f64;
        m1 += p * n;
        m2 += p * n * n;
    }
    4.0 * (m2 - m1 * m1)
}

/// Two-mode binomial probe `Σ √(C(N,k)/2^N) |k, N−k⟩`: a coherent spin state
/// on the equator, the shot-noise reference.
pub fn binomial_probe(n: u32) -> TwoModeState {
    let n_us = n as usize;
    let mut ln_fact = vec![0.0; n_us + 1];
    for k in 1..=n_us {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    let ln_half = -(n as f64) * std::f64::consts::LN_2;
    let amps = (0..=n_us)
        .map(|k| {
            let ln_c = ln_fact[n_us] - ln_fact[k] - ln_fact[n_us - k];
            Complex64::new((0.5 * (ln_c + ln_half)).exp(), 0.0)
        })
        .collect();
    TwoModeState::from_amplitudes_unchecked(n, amps)
}

/// Period of `φ ↦ noon_signal(N, 0, φ)` estimated from a uniform sweep of
/// `samples` points over `[0, 2π)`, using interpolated upward zero crossings.
pub fn fringe_period(n: u32, samples: usize) -> Result<f64> {
    if samples < 3 {
        return Err(Error::InvalidParameter(format!("{samples} sweep samples")));
    }
    let step = TAU / samples as f64;
    let signal = (0..samples)
        .map(|k| noon_signal(n, 0.0, k as f64 * step))
        .collect::<Result<Vec<_>>>()?;
    let mut crossings = Vec::new();
    for k in 0..samples - 1 {
        let (a, b) = (signal[k], signal[k + 1]);
        if a < 0.0 && b >= 0.0 {
            crossings.push((k as f64 + a / (a - b)) * step);
        }
    }
    if crossings.len() < 2 {
        // Fewer than two rising edges inside one sweep: a single fringe.
        return Ok(TAU / crossings.len().max(1) as f64);
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Ok(span / (crossings.len() - 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingRow {
    pub n: u32,
    pub delta_phi_noon: f64,
    pub delta_phi_sql_reference: f64,
    pub qfi: f64,
}

/// `(N, Δφ_N00N, 1/√N, QFI)` for every `N`.
pub fn scaling_table(n_list: &[u32]) -> Result<Vec<ScalingRow>> {
    n_list
        .iter()
        .map(|&n| {
            Ok(ScalingRow {
                n,
                delta_phi_noon: phase_uncertainty(n)?,
                delta_phi_sql_reference: 1.0 / (n as f64).sqrt(),
                qfi: quantum_fisher_information(&NoonState::new(n, 0.0)?.to_state()),
            })
        })
        .collect()
}
