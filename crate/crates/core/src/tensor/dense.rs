use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{multinomial, MultisetIndexer};
use crate::scalar::{from_u64, ComplexExt, Real, RealField};

use super::SymTensor;

/// Dense tensor with no symmetry, `dim^order` entries in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<T> {
    dim: usize,
    order: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseTensor<T> {
    pub fn zeros(dim: usize, order: usize) -> Self {
        DenseTensor { dim, order, data: vec![Complex::zero(); dim.pow(order as u32)] }
    }

    pub fn from_fn(dim: usize, order: usize, f: impl Fn(&[usize]) -> Complex<T>) -> Self {
        let mut out = Self::zeros(dim, order);
        let mut idx = vec![0; order];
        for flat in 0..out.data.len() {
            out.unflatten(flat, &mut idx);
            out.data[flat] = f(&idx);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, idx: &[usize]) -> &Complex<T> {
        &self.data[self.flatten(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ComplexExt::negligible)
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn unflatten(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    /// `R_{…} = Σ_{x,y} A_{…x…} (g⁻¹)^{xy} B_{…y…}`.
    ///
    /// Remaining slots of `self` come first, then those of `other`, each in
    /// their original order. The result is not symmetrized.
    pub fn contract(
        &self,
        slot_a: usize,
        other: &DenseTensor<T>,
        slot_b: usize,
        metric_inv: &SymTensor<T>,
    ) -> Result<DenseTensor<T>> {
        if slot_a >= self.order {
            return Err(Error::SlotOutOfRange { slot: slot_a, order: self.order });
        }
        if slot_b >= other.order {
            return Err(Error::SlotOutOfRange { slot: slot_b, order: other.order });
        }
        for d in [other.dim, metric_inv.dim()] {
            if d != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: d });
            }
        }
        let n = self.dim;
        // raise B's slot first: B'_{…x…} = Σ_y g^{xy} B_{…y…}
        let raised = DenseTensor::from_fn(n, other.order, |idx| {
            let mut j = idx.to_vec();
            let mut acc = Complex::zero();
            for y in 0..n {
                let g = metric_inv.get(&[idx[slot_b], y]);
                if g.is_zero() {
                    continue;
                }
                j[slot_b] = y;
                acc = acc + g.clone() * other.get(&j).clone();
            }
            acc
        });
        let order = self.order + other.order - 2;
        Ok(DenseTensor::from_fn(n, order, |idx| {
            let (left, right) = idx.split_at(self.order - 1);
            let mut ia = vec![0; self.order];
            let mut ib = vec![0; other.order];
            ia[..slot_a].copy_from_slice(&left[..slot_a]);
            ia[slot_a + 1..].copy_from_slice(&left[slot_a..]);
            ib[..slot_b].copy_from_slice(&right[..slot_b]);
            ib[slot_b + 1..].copy_from_slice(&right[slot_b..]);
            let mut acc = Complex::zero();
            for x in 0..n {
                ia[slot_a] = x;
                ib[slot_b] = x;
                let a = self.get(&ia);
                if !a.is_zero() {
                    acc = acc + a.clone() * raised.get(&ib).clone();
                }
            }
            acc
        }))
    }

    /// Contract two slots of one tensor through `g⁻¹`.
    pub fn trace(&self, slot_a: usize, slot_b: usize, metric_inv: &SymTensor<T>) -> Result<DenseTensor<T>> {
        if slot_a >= self.order || slot_b >= self.order || slot_a == slot_b {
            return Err(Error::SlotOutOfRange { slot: slot_a.max(slot_b), order: self.order });
        }
        let n = self.dim;
        let (lo, hi) = (slot_a.min(slot_b), slot_a.max(slot_b));
        Ok(DenseTensor::from_fn(n, self.order - 2, |idx| {
            let mut full = Vec::with_capacity(self.order);
            full.extend_from_slice(&idx[..lo]);
            full.push(0);
            full.extend_from_slice(&idx[lo..hi - 1]);
            full.push(0);
            full.extend_from_slice(&idx[hi - 1..]);
            let mut acc = Complex::zero();
            for x in 0..n {
                for y in 0..n {
                    let g = metric_inv.get(&[x, y]);
                    if g.is_zero() {
                        continue;
                    }
                    full[lo] = x;
                    full[hi] = y;
                    acc = acc + g.clone() * self.get(&full).clone();
                }
            }
            acc
        }))
    }
}

impl<T: RealField> DenseTensor<T> {
    /// Unit-weight symmetrization onto canonical slots.
    pub fn symmetrize(&self) -> SymTensor<T> {
        let indexer = MultisetIndexer::new(self.dim, self.order);
        let mut sums = vec![Complex::<T>::zero(); indexer.len()];
        let mut idx = vec![0; self.order];
        for (flat, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            self.unflatten(flat, &mut idx);
            idx.sort_unstable();
            let r = indexer.rank(&idx);
            sums[r] = sums[r].clone() + v.clone();
        }
        let entries = indexer
            .iter()
            .zip(sums)
            .map(|(slot, s)| s / Complex::new(from_u64::<T>(multinomial(&slot)), T::zero()))
            .collect();
        SymTensor::from_entries(self.dim, self.order, entries).expect("slot count matches")
    }
}
