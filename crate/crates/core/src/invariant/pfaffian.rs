use num_complex::Complex;

use crate::algebra::{Family, Realization};
use crate::error::{Error, Result};
use crate::scalar::RealField;
use crate::tensor::SymTensor;

use super::trace::span_polynomials;
use super::{InvariantTensor, Provenance};

/// `Pf_{i₁…i_l} = (1/(2^l l!)) ε^{a₁…a_{2l}} (X_{i₁})_{a₁a₂} ⋯ (X_{i_l})_{a_{2l-1}a_{2l}}`,
/// obtained as the coefficients of `Pf F(y)`.
pub fn pfaffian_tensor<T: RealField>(r: &Realization<T>) -> Result<InvariantTensor<T>> {
    let spec = r.spec();
    if spec.family() != Family::D {
        return Err(Error::NotApplicable { algebra: spec.to_string(), reason: "the Pfaffian is defined for D only".into() });
    }
    let f = span_polynomials(r);
    let rows: Vec<usize> = (0..r.rep_dim()).collect();
    let tensor = expand(&f, &rows, r.adjoint_dim())?;
    Ok(InvariantTensor::new(tensor, Provenance::Pfaffian, spec))
}

/// Expansion along the first remaining row:
/// `Pf(A) = Σ_t (-1)^{t+1} a_{s₀ s_t} Pf(A without s₀, s_t)`.
fn expand<T: RealField>(f: &[Vec<SymTensor<T>>], rows: &[usize], dim: usize) -> Result<SymTensor<T>> {
    if rows.is_empty() {
        return Ok(SymTensor::scalar(dim, Complex::new(T::one(), T::zero())));
    }
    let first = rows[0];
    let mut acc = SymTensor::zeros(dim, rows.len() / 2);
    for t in 1..rows.len() {
        let a = &f[first][rows[t]];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = rows[1..].iter().copied().filter(|&v| v != rows[t]).collect();
        let minor = expand(f, &rest, dim)?;
        let sign = if t % 2 == 1 { T::one() } else { -T::one() };
        acc.add_scaled(&Complex::new(sign, T::zero()), &a.sym_product(&minor)?)?;
    }
    Ok(acc)
}
