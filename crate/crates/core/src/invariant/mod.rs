//! Invariant symmetric tensors, cocycles and Casimir matrices.

mod casimir;
mod cocycle;
mod pfaffian;
mod sudbery;
mod trace;

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{d_tensor, AlgebraSpec, Realization, StructureConstants};
use crate::error::{Error, Result};
use crate::scalar::{ComplexExt, RealField};
use crate::tensor::SymTensor;

pub use casimir::casimir_matrix;
pub use cocycle::{cocycle, cocycle_cost, Cocycle};
pub use pfaffian::pfaffian_tensor;
pub use sudbery::{sudbery_metric, sudbery_tensor};
pub use trace::{sym_trace, trace_power, TraceMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    SymTrace(usize),
    Sudbery(usize),
    Pfaffian,
    Metric,
    D3,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::SymTrace(m) => write!(f, "sym_trace({m})"),
            Provenance::Sudbery(k) => write!(f, "sudbery({k})"),
            Provenance::Pfaffian => write!(f, "pfaffian"),
            Provenance::Metric => write!(f, "metric"),
            Provenance::D3 => write!(f, "d3"),
            Provenance::External => write!(f, "external"),
        }
    }
}

/// A symmetric tensor together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantTensor<T> {
    pub tensor: SymTensor<T>,
    pub provenance: Provenance,
    pub spec: AlgebraSpec,
}

impl<T: RealField> InvariantTensor<T> {
    pub fn new(tensor: SymTensor<T>, provenance: Provenance, spec: AlgebraSpec) -> Self {
        InvariantTensor { tensor, provenance, spec }
    }

    pub fn order(&self) -> usize {
        self.tensor.order()
    }

    pub fn metric(r: &Realization<T>) -> Self {
        InvariantTensor::new(r.metric().clone(), Provenance::Metric, r.spec())
    }

    pub fn d3(r: &Realization<T>) -> Self {
        InvariantTensor::new(d_tensor(r), Provenance::D3, r.spec())
    }
}

/// `k^(m)` by the default trace method.
pub fn sym_trace_tensor<T: RealField>(r: &Realization<T>, m: usize) -> Result<InvariantTensor<T>> {
    if m < 2 {
        return Err(Error::OrderOutOfRange { order: m, reason: "symmetrized traces start at order 2".into() });
    }
    Ok(InvariantTensor::new(sym_trace(r, m, TraceMethod::Auto)?, Provenance::SymTrace(m), r.spec()))
}

/// `Σ_s c_{ν i_s}^ρ h_{i₁…ρ…i_m} = 0` for every `ν` and every slot.
pub fn check_invariance<T: RealField>(h: &SymTensor<T>, sc: &StructureConstants<T>) -> Result<bool> {
    let n = sc.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
    }
    if h.order() == 0 {
        return Ok(true);
    }
    let slots: Vec<Vec<usize>> = h.indexer().iter().collect();
    let c = sc.bracket();
    Ok(slots.par_iter().all(|slot| {
        let mut idx = slot.clone();
        (0..n).all(|nu| {
            let mut acc = Complex::<T>::zero();
            for s in 0..slot.len() {
                let i = slot[s];
                if i == nu {
                    continue;
                }
                let (lo, hi, flip) = if nu < i { (nu, i, false) } else { (i, nu, true) };
                for (rho, v) in c.upper_entries(lo, hi) {
                    idx[s] = *rho;
                    let term = v.clone() * h.get(&idx).clone();
                    acc = if flip { acc - term } else { acc + term };
                }
                idx[s] = i;
            }
            acc.negligible()
        })
    }))
}
