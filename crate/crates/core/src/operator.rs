//! Dense operators on a single irrep and the Hermitian matrix exponential.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::SpinState;
use crate::su2::HalfInteger;

/// Hermiticity residual above which exponentiation is refused.
pub const HERMITIAN_GATE: f64 = 1e-9;

/// Dense `(2j+1) × (2j+1)` complex matrix acting on the irrep `j`.
///
/// Rows and columns are ordered by ascending weight. Arithmetic between
/// operators of different irreps panics, the same way mismatched matrix
/// dimensions do.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperator {
    j: HalfInteger,
    matrix: DMatrix<Complex64>,
}

impl SpinOperator {
    pub fn zeros(j: HalfInteger) -> Self {
        SpinOperator {
            j,
            matrix: DMatrix::zeros(j.dim(), j.dim()),
        }
    }

    pub fn identity(j: HalfInteger) -> Self {
        SpinOperator {
            j,
            matrix: DMatrix::identity(j.dim(), j.dim()),
        }
    }

    pub fn from_matrix(j: HalfInteger, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != j.dim() || matrix.ncols() != j.dim() {
            return Err(Error::DimensionMismatch {
                expected: j.dim(),
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(SpinOperator { j, matrix })
    }

    pub fn j(&self) -> HalfInteger {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        SpinOperator {
            j: self.j,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        SpinOperator {
            j: self.j,
            matrix: &self.matrix * factor,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &SpinOperator) -> SpinOperator {
        &(self * other) - &(other * self)
    }

    /// Frobenius norm divided by the dimension. Used for every residual check.
    pub fn residual(&self) -> f64 {
        self.matrix.norm() / self.dim() as f64
    }

    /// `‖H − H†‖_F / dim`.
    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm() / self.dim() as f64
    }

    /// `‖U†U − 1‖_F / dim`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        (self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(n, n)).norm()
            / n as f64
    }

    /// Residual distance `‖self − other‖_F / dim`.
    pub fn distance(&self, other: &SpinOperator) -> f64 {
        (self - other).residual()
    }

    pub fn apply(&self, state: &SpinState) -> Result<SpinState> {
        if state.j() != self.j {
            return Err(Error::IrrepMismatch {
                left: self.j,
                right: state.j(),
            });
        }
        let out: DVector<Complex64> = &self.matrix * state.vector();
        Ok(SpinState::from_vector_unchecked(self.j, out))
    }

    /// Eigendecomposition of a Hermitian operator.
    pub fn spectrum(&self) -> Result<HermitianSpectrum> {
        HermitianSpectrum::new(self)
    }

    /// `exp(−i · self · t)` for Hermitian `self`.
    pub fn exp_minus_i(&self, t: f64) -> Result<SpinOperator> {
        Ok(self.spectrum()?.exp_minus_i(t))
    }
}

/// `exp(−iHt)` computed through the eigendecomposition of `H`.
pub fn expm_hermitian(h: &SpinOperator, t: f64) -> Result<SpinOperator> {
    h.exp_minus_i(t)
}

impl Index<(usize, usize)> for SpinOperator {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.matrix[idx]
    }
}

impl IndexMut<(usize, usize)> for SpinOperator {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.matrix[idx]
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&SpinOperator> for &SpinOperator {
            type Output = SpinOperator;

            fn $method(self, rhs: &SpinOperator) -> SpinOperator {
                assert_eq!(self.j, rhs.j, "operators act on different irreps");
                SpinOperator {
                    j: self.j,
                    matrix: &self.matrix $op &rhs.matrix,
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianSpectrum {
    j: HalfInteger,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl HermitianSpectrum {
    pub fn new(h: &SpinOperator) -> Result<Self> {
        let residual = h.hermiticity_residual();
        if !(residual <= HERMITIAN_GATE) {
            return Err(Error::NonHermitianInput { residual });
        }
        // Symmetrize so the solver sees an exactly Hermitian input.
        let sym = (h.matrix() + h.matrix().adjoint()) * Complex64::new(0.5, 0.0);
        // Real symmetric input takes the real solver, which is more accurate.
        let (values, vectors) = if sym.iter().all(|z| z.im == 0.0) {
            let eig = SymmetricEigen::new(sym.map(|z| z.re));
            (eig.eigenvalues, eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
        } else {
            let eig = SymmetricEigen::new(sym);
            (eig.eigenvalues, eig.eigenvectors)
        };

        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let eigenvalues = order.iter().map(|&k| values[k]).collect();
        let eigenvectors = DMatrix::from_fn(h.dim(), h.dim(), |r, c| vectors[(r, order[c])]);
        Ok(HermitianSpectrum {
            j: h.j(),
            eigenvalues,
            eigenvectors,
        })
    }

    /// Replaces the computed eigenvalues with exactly known ones (same order).
    pub(crate) fn with_exact_eigenvalues(mut self, exact: Vec<f64>) -> Self {
        debug_assert!(self
            .eigenvalues
            .iter()
            .zip(&exact)
            .all(|(a, b)| (a - b).abs() < 1e-8));
        self.eigenvalues = exact;
        self
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> SpinState {
        SpinState::from_vector_unchecked(self.j, self.eigenvectors.column(k).into_owned())
    }

    pub fn exp_minus_i(&self, t: f64) -> SpinOperator {
        let v = &self.eigenvectors;
        let phases = DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues
                .iter()
                .map(|&e| Complex64::from_polar(1.0, -e * t)),
        );
        let mut scaled = v.clone();
        for (mut col, p) in scaled.column_iter_mut().zip(phases.iter()) {
            col *= *p;
        }
        SpinOperator {
            j: self.j,
            matrix: scaled * v.adjoint(),
        }
    }
}
