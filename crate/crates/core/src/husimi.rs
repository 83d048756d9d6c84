//! Husimi `Q(θ, φ) = |⟨j, γ(θ, φ)|ψ⟩|²` on a uniform angle grid.

use std::f64::consts::{PI, TAU};

use crate::coherent::{coherent_state, BlochDirection};
use crate::error::{Error, Result};
use crate::state::SpinState;

#[derive(Clone, Debug, PartialEq)]
pub struct HusimiGrid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    /// Row-major, `values[i * phis.len() + k]` is `Q(thetas[i], phis[k])`.
    pub values: Vec<f64>,
}

impl HusimiGrid {
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.phis.len() + k]
    }

    /// `(θ, φ, Q)` for every cell, θ-major.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.thetas.iter().enumerate().flat_map(move |(i, &t)| {
            self.phis
                .iter()
                .enumerate()
                .map(move |(k, &p)| (t, p, self.get(i, k)))
        })
    }

    /// Cell indices whose value is a strict-or-equal local maximum over its
    /// neighbours (φ wraps around, θ does not), with `Q ≥ floor`.
    pub fn local_maxima(&self, floor: f64) -> Vec<(usize, usize)> {
        let (nt, np) = (self.thetas.len(), self.phis.len());
        let mut out = Vec::new();
        for i in 0..nt {
            for k in 0..np {
                let q = self.get(i, k);
                if q < floor {
                    continue;
                }
                let mut is_max = true;
                for di in [-1i64, 0, 1] {
                    for dk in [-1i64, 0, 1] {
                        if di == 0 && dk == 0 {
                            continue;
                        }
                        let ii = i as i64 + di;
                        if ii < 0 || ii >= nt as i64 {
                            continue;
                        }
                        let kk = (k as i64 + dk).rem_euclid(np as i64) as usize;
                        if self.get(ii as usize, kk) > q {
                            is_max = false;
                        }
                    }
                }
                if is_max {
                    out.push((i, k));
                }
            }
        }
        out
    }
}

/// Evaluates `Q` with `θᵢ = πi/(n_theta − 1)` (both poles included) and
/// `φₖ = 2πk/n_phi`.
pub fn husimi_grid(state: &SpinState, n_theta: usize, n_phi: usize) -> Result<HusimiGrid> {
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::InvalidParameter(format!(
            "husimi grid needs n_theta >= 2 and n_phi >= 1, got {n_theta} x {n_phi}"
        )));
    }
    let thetas: Vec<f64> = (0..n_theta)
        .map(|i| {
            if i == n_theta - 1 {
                PI
            } else {
                PI * i as f64 / (n_theta - 1) as f64
            }
        })
        .collect();
    let phis: Vec<f64> = (0..n_phi).map(|k| TAU * k as f64 / n_phi as f64).collect();
    let j = state.j();
    let mut values = Vec::with_capacity(n_theta * n_phi);
    for &theta in &thetas {
        for &phi in &phis {
            let label = BlochDirection::new(theta, phi)?.to_label();
            let q = coherent_state(j, &label).overlap(state)?.norm_sqr();
            // Squared overlap of unit vectors; clip rounding just above 1.
            values.push(q.min(1.0));
        }
    }
    Ok(HusimiGrid {
        thetas,
        phis,
        values,
    })
}
