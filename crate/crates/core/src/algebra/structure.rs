use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::SubsetIndexer;
use crate::matrix::Matrix;
use crate::scalar::{rational, ratio, ComplexExt, RealField};
use crate::tensor::{AntiTensor, Bracket, SymTensor};

use super::Realization;

/// `[X_i, X_j] = c_{ij}^k X_k` and the all-lower `f_{ijk} = c_{ij}^m g_{mk}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<T> {
    bracket: Bracket<T>,
    f_lower: AntiTensor<T>,
}

impl<T: RealField> StructureConstants<T> {
    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Complex<T> {
        self.bracket.get(i, j, k)
    }

    pub fn bracket(&self) -> &Bracket<T> {
        &self.bracket
    }

    pub fn f_lower(&self) -> &AntiTensor<T> {
        &self.f_lower
    }

    /// Cyclic Jacobi sum `c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l`
    /// vanishes for every `i, j, k, l`.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        let c = |i, j, k| self.bracket.get(i, j, k);
        (0..n).into_par_iter().all(|i| {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = Complex::<T>::zero();
                        for m in 0..n {
                            acc = acc
                                + c(i, j, m).clone() * c(m, k, l).clone()
                                + c(j, k, m).clone() * c(m, i, l).clone()
                                + c(k, i, m).clone() * c(m, j, l).clone();
                        }
                        if !acc.negligible() {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    /// `c_{ρi}^m g_{mj} + c_{ρj}^m g_{im} = 0`.
    pub fn preserves(&self, g: &SymTensor<T>) -> bool {
        let n = self.dim();
        (0..n).all(|rho| {
            (0..n).all(|i| {
                (i..n).all(|j| {
                    let mut acc = Complex::<T>::zero();
                    for m in 0..n {
                        acc = acc
                            + self.c(rho, i, m).clone() * g.get(&[m, j]).clone()
                            + self.c(rho, j, m).clone() * g.get(&[i, m]).clone();
                    }
                    acc.negligible()
                })
            })
        })
    }
}

/// `c_{ij}^k = Tr([X_i, X_j] X_m) g^{mk}`, with the commutator re-expanded
/// in the basis as a closure check.
pub fn structure_constants<T: RealField>(r: &Realization<T>) -> Result<StructureConstants<T>> {
    let x = r.generators();
    let n = x.len();
    let ginv = r.metric_inv();
    let pairs: Vec<Vec<usize>> = SubsetIndexer::new(n, 2).iter().collect();
    // per pair: (Tr([X_i,X_j] X_m))_m and c_{ij}^k
    let rows: Vec<(Vec<Complex<T>>, Vec<Complex<T>>)> = pairs
        .par_iter()
        .map(|ij| {
            let (i, j) = (ij[0], ij[1]);
            let comm = x[i].commutator(&x[j]);
            let t: Vec<Complex<T>> = x.iter().map(|xm| comm.trace_product(xm)).collect();
            let c: Vec<Complex<T>> = (0..n)
                .map(|k| {
                    let mut acc = Complex::zero();
                    for (m, tm) in t.iter().enumerate() {
                        if !tm.is_zero() {
                            acc = acc + tm.clone() * ginv.get(&[m, k]).clone();
                        }
                    }
                    acc
                })
                .collect();
            if !(&comm - &Matrix::linear_combination(&c, x)).is_zero() {
                return Err(Error::NonClosure(i, j));
            }
            Ok((t, c))
        })
        .collect::<Result<_>>()?;

    let pair_index = SubsetIndexer::new(n, 2);
    let lookup = |i: usize, j: usize| &rows[pair_index.rank(&[i, j])];
    let bracket = Bracket::from_fn(n, |i, j, k| lookup(i, j).1[k].clone());
    let f_lower = AntiTensor::from_fn(n, 3, |ijk| lookup(ijk[0], ijk[1]).0[ijk[2]].clone());
    Ok(StructureConstants { bracket, f_lower })
}

/// `d_{ijk} = ¼ Tr({X_i, X_j} X_k)`.
pub fn d_tensor<T: RealField>(r: &Realization<T>) -> SymTensor<T> {
    let x = r.generators();
    let quarter = rational::<T>(&ratio(1, 4));
    SymTensor::from_fn(r.adjoint_dim(), 3, |ijk| {
        x[ijk[0]].anticommutator(&x[ijk[1]]).trace_product(&x[ijk[2]]) * quarter.clone()
    })
}
