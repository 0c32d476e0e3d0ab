use num_complex::Complex;
use rayon::prelude::*;

use crate::algebra::Realization;
use crate::error::{Error, Result};
use crate::index::next_permutation;
use crate::matrix::Matrix;
use crate::scalar::RealField;

use super::InvariantTensor;

/// `C = h^{i₁…i_m} X_{i₁} ⋯ X_{i_m}` with every index raised by `g⁻¹`,
/// rejected unless it commutes with all generators.
///
/// Computed as `h_{a₁…a_m} Y^{a₁} ⋯ Y^{a_m}` with `Y^a = g^{ai} X_i`.
pub fn casimir_matrix<T: RealField>(r: &Realization<T>, h: &InvariantTensor<T>) -> Result<Matrix<T>> {
    let x = r.generators();
    let n = r.adjoint_dim();
    if h.tensor.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.tensor.dim() });
    }
    let ginv = r.metric_inv();
    let y: Vec<Matrix<T>> = (0..n)
        .map(|a| {
            let coeffs: Vec<Complex<T>> = (0..n).map(|i| ginv.get(&[a, i]).clone()).collect();
            Matrix::linear_combination(&coeffs, x)
        })
        .collect();
    let dim = r.rep_dim();
    let slots: Vec<(Vec<usize>, Complex<T>)> = h.tensor.nonzero().map(|(i, v)| (i, v.clone())).collect();
    let c = slots
        .par_iter()
        .map(|(slot, v)| {
            let mut word = slot.clone();
            let mut sum = Matrix::zeros(dim);
            loop {
                let p = word.iter().fold(Matrix::identity(dim), |acc, &a| &acc * &y[a]);
                sum = &sum + &p;
                if !next_permutation(&mut word) {
                    break;
                }
            }
            sum.scale(v)
        })
        .reduce(|| Matrix::zeros(dim), |a, b| &a + &b);
    if let Some(i) = x.iter().position(|xi| !c.commutator(xi).is_zero()) {
        return Err(Error::NotCentral(i));
    }
    Ok(c)
}
