use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{sort_with_parity, SubsetIndexer};
use crate::scalar::{ComplexExt, Real};

/// Totally antisymmetric tensor stored on strictly increasing indices.
///
/// Reads at a permuted index pick up the permutation parity; a repeated
/// index reads as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AntiTensor<T> {
    indexer: SubsetIndexer,
    entries: Vec<Complex<T>>,
    zero: Complex<T>,
}

impl<T: Real> AntiTensor<T> {
    pub fn zeros(dim: usize, order: usize) -> Self {
        let indexer = SubsetIndexer::new(dim, order);
        let entries = vec![Complex::zero(); indexer.len()];
        AntiTensor { indexer, entries, zero: Complex::zero() }
    }

    pub fn from_entries(dim: usize, order: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        let indexer = SubsetIndexer::new(dim, order);
        if entries.len() != indexer.len() {
            return Err(Error::DimensionMismatch { expected: indexer.len(), found: entries.len() });
        }
        Ok(AntiTensor { indexer, entries, zero: Complex::zero() })
    }

    pub fn from_fn(dim: usize, order: usize, f: impl Fn(&[usize]) -> Complex<T>) -> Self {
        let indexer = SubsetIndexer::new(dim, order);
        let entries = indexer.iter().map(|i| f(&i)).collect();
        AntiTensor { indexer, entries, zero: Complex::zero() }
    }

    pub fn dim(&self) -> usize {
        self.indexer.dim()
    }

    pub fn order(&self) -> usize {
        self.indexer.order()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn indexer(&self) -> &SubsetIndexer {
        &self.indexer
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Component at an arbitrary index, applying the sign rule.
    pub fn get(&self, index: &[usize]) -> Complex<T> {
        let mut sorted = index.to_vec();
        match sort_with_parity(&mut sorted) {
            None => Complex::zero(),
            Some(1) => self.get_increasing(&sorted).clone(),
            Some(_) => -self.get_increasing(&sorted).clone(),
        }
    }

    pub fn get_increasing(&self, increasing: &[usize]) -> &Complex<T> {
        if self.entries.is_empty() {
            return &self.zero;
        }
        &self.entries[self.indexer.rank(increasing)]
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

    pub fn scale(&self, c: &Complex<T>) -> Self {
        AntiTensor {
            indexer: self.indexer.clone(),
            entries: self.entries.iter().map(|v| v.clone() * c.clone()).collect(),
            zero: Complex::zero(),
        }
    }

    /// `Some(c)` with `self = c · other`, when the two are proportional and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &AntiTensor<T>) -> Option<Complex<T>>
    where
        T: crate::scalar::RealField,
    {
        if self.indexer != other.indexer {
            return None;
        }
        let (_, pivot) = other.nonzero().next()?;
        let pos = other.entries.iter().position(|v| !v.negligible())?;
        let c = self.entries[pos].clone() / pivot.clone();
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| (a.clone() - c.clone() * b.clone()).negligible())
            .then_some(c)
    }
}
