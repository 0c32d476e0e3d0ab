//! Exact invariant symmetric tensors of the classical Lie algebras and G₂.
//!
//! Everything is generic over a real coefficient type `T` (see
//! [`scalar::Real`]); entries are `Complex<T>`. The aliases below fix
//! `T = BigRational`, the Gaussian rationals, under which every identity
//! and primitivity verdict is decided with zero tolerance.

pub mod algebra;
pub mod error;
pub mod export;
pub mod identity;
pub mod index;
pub mod invariant;
pub mod matrix;
pub mod scalar;
pub mod tensor;

use num_complex::Complex;
use num_rational::BigRational;

pub use algebra::{build_algebra, AlgebraSpec, Family, Realization, StructureConstants};
pub use error::{Error, Result};
pub use identity::{Identity, PowerSumPoly};
pub use index::multiset_indices;
pub use matrix::Matrix;
pub use scalar::{Real, RealField};
pub use tensor::{sym_product, wedge_stage, AntiTensor, Bracket, DenseTensor, StagedWedge, SymTensor};

/// `a + b·i` with arbitrary-precision rational parts.
pub type GaussianRational = Complex<BigRational>;
pub type ExactMatrix = Matrix<BigRational>;
pub type ExactSymTensor = SymTensor<BigRational>;
pub type ExactAntiTensor = AntiTensor<BigRational>;
pub type ExactRealization = Realization<BigRational>;
