use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::{insert_sorted, merge_sorted, multinomial, MultisetIndexer};
use crate::scalar::{from_u64, ComplexExt, Real, RealField};

use super::DenseTensor;

/// Totally symmetric tensor stored on sorted multi-indices.
///
/// Entries are the tensor components themselves (unit weight); the
/// multinomial multiplicity of a slot only enters through [`evaluate`]
/// and products.
///
/// [`evaluate`]: SymTensor::evaluate
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor<T> {
    indexer: MultisetIndexer,
    entries: Vec<Complex<T>>,
}

impl<T: Real> SymTensor<T> {
    pub fn zeros(dim: usize, order: usize) -> Self {
        let indexer = MultisetIndexer::new(dim, order);
        let entries = vec![Complex::zero(); indexer.len()];
        SymTensor { indexer, entries }
    }

    /// Fill every canonical slot from `f`, in parallel.
    pub fn from_fn<F>(dim: usize, order: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> Complex<T> + Sync,
    {
        let indexer = MultisetIndexer::new(dim, order);
        let slots: Vec<Vec<usize>> = indexer.iter().collect();
        let entries = slots.par_iter().map(|s| f(s)).collect();
        SymTensor { indexer, entries }
    }

    pub fn from_entries(dim: usize, order: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        let indexer = MultisetIndexer::new(dim, order);
        if entries.len() != indexer.len() {
            return Err(Error::DimensionMismatch { expected: indexer.len(), found: entries.len() });
        }
        Ok(SymTensor { indexer, entries })
    }

    /// Order-0 tensor holding a single scalar.
    pub fn scalar(dim: usize, value: Complex<T>) -> Self {
        SymTensor { indexer: MultisetIndexer::new(dim, 0), entries: vec![value] }
    }

    pub fn dim(&self) -> usize {
        self.indexer.dim()
    }

    pub fn order(&self) -> usize {
        self.indexer.order()
    }

    /// Number of stored canonical slots.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indexer(&self) -> &MultisetIndexer {
        &self.indexer
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Component at any index ordering.
    pub fn get(&self, index: &[usize]) -> &Complex<T> {
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        self.get_sorted(&sorted)
    }

    pub fn get_sorted(&self, sorted: &[usize]) -> &Complex<T> {
        &self.entries[self.indexer.rank(sorted)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex<T>) {
        let mut sorted = index.to_vec();
        sorted.sort_unstable();
        let r = self.indexer.rank(&sorted);
        self.entries[r] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Complex<T>)> + '_ {
        self.indexer.iter().zip(self.entries.iter())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Complex<T>)> + '_ {
        self.iter().filter(|(_, v)| !v.negligible())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ComplexExt::negligible)
    }

    pub fn map<U: Real>(&self, f: impl Fn(&Complex<T>) -> Complex<U>) -> SymTensor<U> {
        SymTensor { indexer: self.indexer.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Complex<T>) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Complex<T>, other: &SymTensor<T>) -> Result<()> {
        self.check_shape(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &SymTensor<T>) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(&Complex::new(T::one(), T::zero()), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &SymTensor<T>) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(&Complex::new(-T::one(), T::zero()), other)?;
        Ok(out)
    }

    /// First canonical slot where the two tensors differ.
    pub fn first_difference(&self, other: &SymTensor<T>) -> Result<Option<Vec<usize>>> {
        self.check_shape(other)?;
        Ok(self
            .iter()
            .zip(&other.entries)
            .find(|((_, a), b)| !((*a).clone() - (*b).clone()).negligible())
            .map(|((idx, _), _)| idx))
    }

    /// `Σ T_{i₁…i_m} y^{i₁}⋯y^{i_m}` over all index orderings.
    pub fn evaluate(&self, y: &[Complex<T>]) -> Result<Complex<T>> {
        if y.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: y.len() });
        }
        let mut acc = Complex::zero();
        for (idx, v) in self.nonzero() {
            let mut term = v.clone() * Complex::new(from_u64::<T>(multinomial(&idx)), T::zero());
            for &i in &idx {
                term = term * y[i].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    pub fn evaluate_real(&self, y: &[T]) -> Result<Complex<T>> {
        let y: Vec<Complex<T>> = y.iter().map(|v| Complex::new(v.clone(), T::zero())).collect();
        self.evaluate(&y)
    }

    /// Order `m-1` tensor `T(·, …, ·, e_x)`.
    pub fn fix_slot(&self, x: usize) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::SlotOutOfRange { slot: 0, order: 0 });
        }
        if x >= self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x + 1 });
        }
        let mut buf = Vec::with_capacity(self.order());
        let indexer = MultisetIndexer::new(self.dim(), self.order() - 1);
        let entries = indexer
            .iter()
            .map(|j| {
                insert_sorted(&j, x, &mut buf);
                self.get_sorted(&buf).clone()
            })
            .collect();
        Ok(SymTensor { indexer, entries })
    }

    pub fn to_dense(&self) -> DenseTensor<T> {
        DenseTensor::from_fn(self.dim(), self.order(), |idx| self.get(idx).clone())
    }

    fn check_shape(&self, other: &SymTensor<T>) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), found: other.order() });
        }
        Ok(())
    }
}

impl<T: RealField> SymTensor<T> {
    /// Unit-weight symmetrized outer product `A ⊙ B`.
    ///
    /// Computed as a product of the associated homogeneous polynomials,
    /// so `evaluate(A ⊙ B, y) = evaluate(A, y) · evaluate(B, y)`.
    pub fn sym_product(&self, other: &SymTensor<T>) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let dim = self.dim();
        let indexer = MultisetIndexer::new(dim, self.order() + other.order());
        let weighted = |t: &SymTensor<T>| -> Vec<(Vec<usize>, Complex<T>)> {
            t.nonzero()
                .map(|(idx, v)| {
                    let w = from_u64::<T>(multinomial(&idx));
                    (idx, v.clone() * Complex::new(w, T::zero()))
                })
                .collect()
        };
        let a = weighted(self);
        let b = weighted(other);
        let mut coeffs = vec![Complex::<T>::zero(); indexer.len()];
        let mut buf = Vec::with_capacity(indexer.order());
        for (ia, va) in &a {
            for (ib, vb) in &b {
                merge_sorted(ia, ib, &mut buf);
                let slot = &mut coeffs[indexer.rank(&buf)];
                *slot = slot.clone() + va.clone() * vb.clone();
            }
        }
        let entries = indexer
            .iter()
            .zip(coeffs)
            .map(|(idx, c)| {
                if c.is_zero() {
                    c
                } else {
                    c / Complex::new(from_u64::<T>(multinomial(&idx)), T::zero())
                }
            })
            .collect();
        Ok(SymTensor { indexer, entries })
    }

    /// `A ⊙ A ⊙ ⋯` (`k` factors); `k = 0` gives the scalar one.
    pub fn sym_power(&self, k: usize) -> Result<Self> {
        let mut out = SymTensor::scalar(self.dim(), Complex::new(T::one(), T::zero()));
        for _ in 0..k {
            out = out.sym_product(self)?;
        }
        Ok(out)
    }
}

/// Free-function form of [`SymTensor::sym_product`].
pub fn sym_product<T: RealField>(a: &SymTensor<T>, b: &SymTensor<T>) -> Result<SymTensor<T>> {
    a.sym_product(b)
}
