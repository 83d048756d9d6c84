use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::SpinOperator;
use crate::su2::{HalfInteger, WeightLabel};

/// Norm tolerance accepted when a state is built from external amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Pure state of one irrep in the `|j, m⟩_z` basis, ascending `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    j: HalfInteger,
    amplitudes: DVector<Complex64>,
}

impl SpinState {
    /// Builds a state from amplitudes that must already be unit norm.
    pub fn new(j: HalfInteger, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != j.dim() {
            return Err(Error::DimensionMismatch {
                expected: j.dim(),
                actual: amplitudes.len(),
            });
        }
        let state = SpinState {
            j,
            amplitudes: DVector::from_vec(amplitudes),
        };
        let norm = state.norm();
        if !((norm - 1.0).abs() <= NORM_TOLERANCE) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(state)
    }

    /// Builds a state and rescales it to unit norm.
    pub fn normalized(j: HalfInteger, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != j.dim() {
            return Err(Error::DimensionMismatch {
                expected: j.dim(),
                actual: amplitudes.len(),
            });
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        Ok(SpinState {
            j,
            amplitudes: v.unscale(norm),
        })
    }

    pub(crate) fn from_vector_unchecked(j: HalfInteger, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), j.dim());
        SpinState { j, amplitudes }
    }

    /// The basis state `|j, m⟩_z`.
    pub fn basis(weight: WeightLabel) -> Self {
        let j = weight.j();
        let mut v = DVector::zeros(j.dim());
        v[weight.index()] = Complex64::new(1.0, 0.0);
        SpinState { j, amplitudes: v }
    }

    pub fn j(&self) -> HalfInteger {
        self.j
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, weight: WeightLabel) -> Complex64 {
        self.amplitudes[weight.index()]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &SpinState) -> Result<Complex64> {
        self.check_irrep(other.j)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn fidelity(&self, other: &SpinState) -> Result<f64> {
        Ok(self.overlap(other)?.norm())
    }

    /// `⟨self| op |self⟩`.
    pub fn expectation(&self, op: &SpinOperator) -> Result<Complex64> {
        self.check_irrep(op.j())?;
        Ok(self.amplitudes.dotc(&(op.matrix() * &self.amplitudes)))
    }

    /// Multiplies every amplitude by `phase`.
    pub fn with_global_phase(&self, phase: Complex64) -> SpinState {
        SpinState {
            j: self.j,
            amplitudes: &self.amplitudes * phase,
        }
    }

    /// Linear combination `Σ cₖ |ψₖ⟩`, returned without renormalization.
    pub fn superpose(j: HalfInteger, terms: &[(Complex64, &SpinState)]) -> Result<DVector<Complex64>> {
        let mut v = DVector::zeros(j.dim());
        for (c, s) in terms {
            if s.j != j {
                return Err(Error::IrrepMismatch { left: j, right: s.j });
            }
            v.axpy(*c, &s.amplitudes, Complex64::new(1.0, 0.0));
        }
        Ok(v)
    }

    fn check_irrep(&self, other: HalfInteger) -> Result<()> {
        if self.j != other {
            return Err(Error::IrrepMismatch {
                left: self.j,
                right: other,
            });
        }
        Ok(())
    }
}
