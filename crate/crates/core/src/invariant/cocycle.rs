use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};
use crate::index::{insert_sorted, multinomial, MultisetIndexer, SubsetIndexer};
use crate::scalar::{from_u64, RealField};
use crate::tensor::{wedge_stage, AntiTensor, SymTensor};

use super::InvariantTensor;

/// `Ω_{i₁…i_{2m-2}σ} = c_{[i₁i₂}^{j₁} ⋯ c_{i_{2m-3}i_{2m-2}}^{j_{m-1}} h_{σ]j₁…j_{m-1}}`
/// with unit-weight antisymmetrization.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle<T> {
    pub tensor: AntiTensor<T>,
    pub source_order: usize,
    /// Set when `2m - 1` exceeds the adjoint dimension, so that no
    /// antisymmetric slot exists.
    pub trivially_zero: bool,
}

impl<T: RealField> Cocycle<T> {
    pub fn order(&self) -> usize {
        2 * self.source_order - 1
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }
}

pub fn cocycle<T: RealField>(sc: &StructureConstants<T>, h: &InvariantTensor<T>) -> Result<Cocycle<T>> {
    cocycle_of(sc, &h.tensor)
}

pub(crate) fn cocycle_of<T: RealField>(sc: &StructureConstants<T>, h: &SymTensor<T>) -> Result<Cocycle<T>> {
    let n = sc.dim();
    let m = h.order();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
    }
    if m < 2 {
        return Err(Error::OrderOutOfRange { order: m, reason: "cocycles need a tensor of order >= 2".into() });
    }
    let order = 2 * m - 1;
    if order > n {
        return Ok(Cocycle { tensor: AntiTensor::zeros(n, order), source_order: m, trivially_zero: true });
    }
    let r = m - 1;
    let w = wedge_stage(sc.bracket(), r)?;
    let uppers: Vec<Vec<usize>> = MultisetIndexer::new(n, r).iter().collect();
    // weighted[σ][U] = mult(U) · h_{σ∪U}
    let weighted: Vec<Vec<Complex<T>>> = (0..n)
        .into_par_iter()
        .map(|sigma| {
            let mut buf = Vec::with_capacity(m);
            uppers
                .iter()
                .map(|u| {
                    insert_sorted(u, sigma, &mut buf);
                    let v = h.get_sorted(&buf);
                    if v.is_zero() {
                        Complex::zero()
                    } else {
                        v.clone() * Complex::new(from_u64::<T>(multinomial(u)), T::zero())
                    }
                })
                .collect()
        })
        .collect();
    let norm = Complex::new(from_u64::<T>(order as u64), T::zero());
    let lower = w.lower();
    let slots: Vec<Vec<usize>> = SubsetIndexer::new(n, order).iter().collect();
    let entries: Vec<Complex<T>> = slots
        .par_iter()
        .map(|a| {
            let mut acc = Complex::<T>::zero();
            let mut rest = Vec::with_capacity(order - 1);
            for p in 0..order {
                rest.clear();
                rest.extend(a.iter().enumerate().filter(|&(t, _)| t != p).map(|(_, &v)| v));
                let block = w.block(lower.rank(&rest));
                let hs = &weighted[a[p]];
                let mut t = Complex::<T>::zero();
                for (wv, hv) in block.iter().zip(hs) {
                    if !wv.is_zero() && !hv.is_zero() {
                        t = t + wv.clone() * hv.clone();
                    }
                }
                acc = if p % 2 == 0 { acc + t } else { acc - t };
            }
            if acc.is_zero() {
                acc
            } else {
                acc / norm.clone()
            }
        })
        .collect();
    Ok(Cocycle { tensor: AntiTensor::from_entries(n, order, entries)?, source_order: m, trivially_zero: false })
}

/// Rough count of scalar multiply-adds for `cocycle` on an order-`m`
/// tensor in dimension `n`, assuming about four nonzero entries per
/// bracket row. Used to gate long runs.
pub fn cocycle_cost(n: usize, m: usize) -> f64 {
    use crate::index::binomial;
    if m < 2 || 2 * m - 1 > n {
        return 0.0;
    }
    let mut cost = 0.0;
    for s in 2..m {
        let prev_width = binomial(n + s - 2, s - 1) as f64;
        cost += binomial(n, 2 * s) as f64 * binomial(2 * s, 2) as f64 * 4.0 * prev_width;
    }
    let width = binomial(n + m - 2, m - 1) as f64;
    cost + binomial(n, 2 * m - 1) as f64 * (2 * m - 1) as f64 * width
}
