//! Defining-representation realizations of A_l, B_l, C_l, D_l and G₂.

mod catalog;
mod g2;
pub mod linalg;
mod structure;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, RealField};
use crate::tensor::SymTensor;

pub use catalog::build_algebra;
pub use g2::{g2_nullspace, G2_TRIPLES};
pub use structure::{d_tensor, structure_constants, StructureConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    family: Family,
    rank: usize,
}

impl AlgebraSpec {
    /// Validated spec. The rank is forced to 2 for G₂.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C | Family::D => 2,
            Family::G2 => return Ok(AlgebraSpec { family, rank: 2 }),
        };
        if rank < min {
            return Err(Error::InvalidAlgebra(format!("{family:?}{rank}: rank must be at least {min}")));
        }
        Ok(AlgebraSpec { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size `n` of the defining matrices.
    pub fn rep_dim(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l + 1,
            Family::B => 2 * l + 1,
            Family::C | Family::D => 2 * l,
            Family::G2 => 7,
        }
    }

    /// Number of generators `N`.
    pub fn adjoint_dim(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 2),
            Family::B | Family::C => l * (2 * l + 1),
            Family::D => l * (2 * l - 1),
            Family::G2 => 14,
        }
    }

    /// Whether odd symmetrized traces vanish (an invariant form `η` or the
    /// G₂ embedding in so(7) relates `X` to `-Xᵗ`).
    pub fn odd_traces_vanish(&self) -> bool {
        self.family != Family::A || self.rank == 1
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::G2 => write!(f, "G2"),
            fam => write!(f, "{fam:?}{}", self.rank),
        }
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("g2") {
            return AlgebraSpec::new(Family::G2, 2);
        }
        let bad = || Error::InvalidAlgebra(format!("unknown algebra token {s:?}"));
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        AlgebraSpec::new(family, rank)
    }
}

/// Generators in the defining representation plus the trace form.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization<T> {
    spec: AlgebraSpec,
    generators: Vec<Matrix<T>>,
    metric: SymTensor<T>,
    metric_inv: SymTensor<T>,
    preserved_form: Option<Matrix<T>>,
}

impl<T: RealField> Realization<T> {
    /// Assemble from explicit generators; computes `g_ij = Tr(X_i X_j)` and
    /// its inverse. Hermiticity is not enforced here so that broken
    /// realizations can be built on purpose.
    pub fn from_generators(
        spec: AlgebraSpec,
        generators: Vec<Matrix<T>>,
        preserved_form: Option<Matrix<T>>,
    ) -> Result<Self> {
        let n = spec.rep_dim();
        if generators.len() != spec.adjoint_dim() {
            return Err(Error::DimensionMismatch { expected: spec.adjoint_dim(), found: generators.len() });
        }
        if let Some(bad) = generators.iter().chain(&preserved_form).find(|m| m.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        let dim = generators.len();
        let metric = SymTensor::from_fn(dim, 2, |ij| generators[ij[0]].trace_product(&generators[ij[1]]));
        let gm = Matrix::from_fn(dim, |i, j| metric.get(&[i, j]).clone());
        let inv = gm.inverse()?;
        let metric_inv = SymTensor::from_fn(dim, 2, |ij| inv.get(ij[0], ij[1]).clone());
        Ok(Realization { spec, generators, metric, metric_inv, preserved_form })
    }

    pub fn spec(&self) -> AlgebraSpec {
        self.spec
    }

    pub fn rep_dim(&self) -> usize {
        self.spec.rep_dim()
    }

    pub fn adjoint_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Matrix<T>] {
        &self.generators
    }

    pub fn metric(&self) -> &SymTensor<T> {
        &self.metric
    }

    pub fn metric_inv(&self) -> &SymTensor<T> {
        &self.metric_inv
    }

    pub fn preserved_form(&self) -> Option<&Matrix<T>> {
        self.preserved_form.as_ref()
    }

    /// `F(y) = Σ y^i X_i`.
    pub fn span(&self, y: &[Complex<T>]) -> Result<Matrix<T>> {
        if y.len() != self.adjoint_dim() {
            return Err(Error::DimensionMismatch { expected: self.adjoint_dim(), found: y.len() });
        }
        Ok(Matrix::linear_combination(y, &self.generators))
    }

    /// Same realization with one generator swapped out. The metric is
    /// recomputed.
    pub fn with_generator(&self, i: usize, x: Matrix<T>) -> Result<Self> {
        let mut gens = self.generators.clone();
        if i >= gens.len() {
            return Err(Error::SlotOutOfRange { slot: i, order: gens.len() });
        }
        gens[i] = x;
        Realization::from_generators(self.spec, gens, self.preserved_form.clone())
    }
}

/// `X_i η = -η X_iᵗ` for every generator.
pub fn verify_defining_form<T: Real>(r: &Realization<T>) -> Result<bool> {
    let Some(eta) = r.preserved_form.as_ref() else {
        return Err(Error::NotApplicable {
            algebra: r.spec.to_string(),
            reason: "no preserved bilinear form in the catalog".into(),
        });
    };
    Ok(r.generators.iter().all(|x| {
        let lhs = x * eta;
        let rhs = eta * &x.transpose();
        (&lhs + &rhs).entries().iter().all(Zero::is_zero)
    }))
}
