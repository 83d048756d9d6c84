//! Irrep labels and the su(2) generator matrices.
//!
//! Every matrix acts on the `2j + 1` dimensional irrep in the `|j, m⟩_z`
//! basis, ordered by ascending weight `m = -j, ..., +j`. Units have ħ = 1.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::SpinOperator;

/// Spin label `j`, stored exactly as the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInteger {
    twice: u32,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };
    pub const ONE: HalfInteger = HalfInteger { twice: 2 };

    pub const fn from_twice(twice: u32) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_integer(j: u32) -> Self {
        HalfInteger { twice: 2 * j }
    }

    /// The stored value `2j`.
    pub const fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Irrep dimension `2j + 1`.
    pub const fn dim(self) -> usize {
        self.twice as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    /// `(-1)^j`, defined only for integer `j`.
    pub fn parity_sign(self) -> Option<f64> {
        if !self.is_integer() {
            return None;
        }
        Some(if (self.twice / 2).is_multiple_of(2) { 1.0 } else { -1.0 })
    }

    /// Casimir eigenvalue `j(j + 1)`.
    pub fn casimir_eigenvalue(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// All weights of the irrep, ascending.
    pub fn weights(self) -> impl Iterator<Item = WeightLabel> {
        let t = self.twice as i32;
        (0..=self.twice as i32).map(move |k| WeightLabel {
            j: self,
            twice_m: 2 * k - t,
        })
    }

    pub fn lowest(self) -> WeightLabel {
        WeightLabel {
            j: self,
            twice_m: -(self.twice as i32),
        }
    }

    pub fn highest(self) -> WeightLabel {
        WeightLabel {
            j: self,
            twice_m: self.twice as i32,
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Weight label `m` (stored as `2m`) attached to its parent irrep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightLabel {
    j: HalfInteger,
    twice_m: i32,
}

impl WeightLabel {
    pub fn new(j: HalfInteger, twice_m: i32) -> Result<Self> {
        let t = j.twice() as i32;
        if twice_m < -t || twice_m > t || (twice_m - t) % 2 != 0 {
            return Err(Error::InvalidWeight { j, twice_m });
        }
        Ok(WeightLabel { j, twice_m })
    }

    pub fn j(self) -> HalfInteger {
        self.j
    }

    pub fn twice_m(self) -> i32 {
        self.twice_m
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_m) / 2.0
    }

    /// Position in the ascending-`m` basis, `j + m`.
    pub fn index(self) -> usize {
        ((self.twice_m + self.j.twice() as i32) / 2) as usize
    }

    pub fn from_index(j: HalfInteger, index: usize) -> Result<Self> {
        if index >= j.dim() {
            return Err(Error::DimensionMismatch {
                expected: j.dim(),
                actual: index + 1,
            });
        }
        Ok(WeightLabel {
            j,
            twice_m: 2 * index as i32 - j.twice() as i32,
        })
    }
}

/// `J_z = diag(-j, ..., j)`.
pub fn jz(j: HalfInteger) -> SpinOperator {
    let mut op = SpinOperator::zeros(j);
    for w in j.weights() {
        op[(w.index(), w.index())] = Complex64::new(w.value(), 0.0);
    }
    op
}

/// Raising operator with `⟨j, m+1| J₊ |j, m⟩ = √(j(j+1) − m(m+1))`.
pub fn j_plus(j: HalfInteger) -> SpinOperator {
    let mut op = SpinOperator::zeros(j);
    let c = j.casimir_eigenvalue();
    for w in j.weights().take(j.dim().saturating_sub(1)) {
        let m = w.value();
        let k = w.index();
        op[(k + 1, k)] = Complex64::new((c - m * (m + 1.0)).sqrt(), 0.0);
    }
    op
}

pub fn j_minus(j: HalfInteger) -> SpinOperator {
    j_plus(j).adjoint()
}

/// `J_x = (J₊ + J₋) / 2`.
pub fn jx(j: HalfInteger) -> SpinOperator {
    let p = j_plus(j);
    let m = p.adjoint();
    (&p + &m).scale(Complex64::new(0.5, 0.0))
}

/// `J_y = (J₊ − J₋) / 2i`.
pub fn jy(j: HalfInteger) -> SpinOperator {
    let p = j_plus(j);
    let m = p.adjoint();
    (&p - &m).scale(Complex64::new(0.0, -0.5))
}

/// `J² = J_x² + J_y² + J_z²`, assembled from the generators.
pub fn casimir(j: HalfInteger) -> SpinOperator {
    let x = jx(j);
    let y = jy(j);
    let z = jz(j);
    &(&(&x * &x) + &(&y * &y)) + &(&z * &z)
}

/// Rotation about a generator whose spectrum is the weight set `−j … j`.
fn rotation(generator: SpinOperator, angle: f64) -> SpinOperator {
    let j = generator.j();
    generator
        .spectrum()
        .expect("generators are Hermitian by construction")
        .with_exact_eigenvalues(j.weights().map(|w| w.value()).collect())
        .exp_minus_i(angle)
}

/// `R_x(angle) = exp(−i · angle · J_x)`.
pub fn rotation_x(j: HalfInteger, angle: f64) -> SpinOperator {
    rotation(jx(j), angle)
}

/// `R_y(angle) = exp(−i · angle · J_y)`.
pub fn rotation_y(j: HalfInteger, angle: f64) -> SpinOperator {
    rotation(jy(j), angle)
}
