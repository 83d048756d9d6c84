//! Finite-dimensional simulation of SU(2) spin cats and N00N states.
//!
//! The pipeline starts from a spin coherent state, evolves it for a quarter
//! period under the one-axis twisting Hamiltonian `ωJ_z + (λ/2j)J_z²` into a
//! two-component cat, rotates the cat onto the `z` poles, and reads the result
//! in the two-mode Fock basis of the Schwinger realization. The [`metrology`]
//! module checks the resulting `1/N` phase sensitivity.
//!
//! Conventions: ħ = 1, spin labels are stored as `2j` and `2m`, and every
//! vector or matrix over an irrep is ordered by ascending `m`.

pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod husimi;
pub mod metrology;
pub mod operator;
pub mod report;
pub mod schwinger;
pub mod state;
pub mod statefile;
pub mod su2;
pub mod verify;

pub use coherent::{BlochDirection, CatDecomposition, StereoLabel};
pub use dynamics::{KerrAxis, KerrHamiltonian};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use operator::{expm_hermitian, HermitianSpectrum, SpinOperator};
pub use schwinger::{NoonRoute, NoonState, TwoModeState};
pub use state::SpinState;
pub use statefile::{LoadedState, StateFileV1};
pub use su2::{HalfInteger, WeightLabel};
