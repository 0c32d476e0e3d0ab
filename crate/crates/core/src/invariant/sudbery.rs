use num_complex::Complex;

use crate::algebra::{d_tensor, Family, Realization};
use crate::error::{Error, Result};
use crate::scalar::{rational, ratio, RealField};
use crate::tensor::SymTensor;

use super::{trace::sym_trace, InvariantTensor, Provenance, TraceMethod};

/// Inverse of `g/2`, the tensor that raises indices in the chains.
pub fn sudbery_metric<T: RealField>(r: &Realization<T>) -> SymTensor<T> {
    r.metric_inv().scale(&rational(&ratio(2, 1)))
}

/// `d^(k)`: a chain of copies of the base tensor contracted through
/// `(g/2)⁻¹` and symmetrized. The base is `d_ijk` for A_l and
/// `d^(4) = ½ k^(4)` for B_l.
pub fn sudbery_tensor<T: RealField>(r: &Realization<T>, k: usize) -> Result<InvariantTensor<T>> {
    let spec = r.spec();
    let base = match spec.family() {
        Family::A => {
            if k < 4 {
                return Err(Error::OrderOutOfRange { order: k, reason: "chains start at order 4".into() });
            }
            d_tensor(r)
        }
        Family::B => {
            if k != 6 && k != 8 {
                return Err(Error::OrderOutOfRange {
                    order: k,
                    reason: "only the order 6 and 8 chains are defined for B".into(),
                });
            }
            sym_trace(r, 4, TraceMethod::Auto)?.scale(&rational(&ratio(1, 2)))
        }
        _ => {
            return Err(Error::NotApplicable {
                algebra: spec.to_string(),
                reason: "no base tensor for a chain".into(),
            })
        }
    };
    let tensor = chain(&base, &sudbery_metric(r), k)?;
    Ok(InvariantTensor::new(tensor, Provenance::Sudbery(k), spec))
}

/// `b_{(… x} G^{xw} b_{w … y} G^{yz} ⋯ b_{z …)}` with every copy of the
/// order-`b` base keeping `b - 2` free slots in the middle of the chain.
fn chain<T: RealField>(base: &SymTensor<T>, raise: &SymTensor<T>, k: usize) -> Result<SymTensor<T>> {
    let b = base.order();
    let n = base.dim();
    let ends = 2 * (b - 1);
    if k < ends || !(k - ends).is_multiple_of(b - 2) {
        return Err(Error::OrderOutOfRange { order: k, reason: format!("no chain of order-{b} tensors has order {k}") });
    }
    let middles = (k - ends) / (b - 2);
    let fixed: Vec<SymTensor<T>> = (0..n).map(|x| base.fix_slot(x)).collect::<Result<_>>()?;
    // open[x]: partial chain with its last contraction index at x
    let mut open = fixed.clone();
    for _ in 0..middles {
        let raised = raise_open(&open, raise)?;
        open = (0..n)
            .map(|z| {
                let mut acc = SymTensor::zeros(n, raised[0].order() + b - 2);
                for (w, rw) in raised.iter().enumerate() {
                    if rw.is_zero() {
                        continue;
                    }
                    let link = fixed[z].fix_slot(w)?;
                    acc.add_scaled(&one(), &rw.sym_product(&link)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
    }
    let raised = raise_open(&open, raise)?;
    let mut out = SymTensor::zeros(n, k);
    for (w, rw) in raised.iter().enumerate() {
        if !rw.is_zero() {
            out.add_scaled(&one(), &rw.sym_product(&fixed[w])?)?;
        }
    }
    Ok(out)
}

fn raise_open<T: RealField>(open: &[SymTensor<T>], raise: &SymTensor<T>) -> Result<Vec<SymTensor<T>>> {
    let n = open.len();
    (0..n)
        .map(|w| {
            let mut acc = SymTensor::zeros(open[0].dim(), open[0].order());
            for (x, px) in open.iter().enumerate() {
                let g = raise.get(&[x, w]);
                if !num_traits::Zero::is_zero(g) {
                    acc.add_scaled(g, px)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn one<T: RealField>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}
