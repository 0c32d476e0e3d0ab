use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::{binomial, MultisetIndexer, SubsetIndexer};
use crate::scalar::{from_u64, ComplexExt, Real, RealField};

/// An order-3 array `c_{ij}{}^k`, antisymmetric in its two lower slots,
/// with the nonzero upper entries of each lower pair listed for sparse
/// iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket<T> {
    dim: usize,
    data: Vec<Complex<T>>,
    // for each i < j (subset rank), the (k, c_{ij}^k) with nonzero value
    sparse: Vec<Vec<(usize, Complex<T>)>>,
    pairs: SubsetIndexer,
}

impl<T: Real> Bracket<T> {
    /// Builds from values on `i < j`; the `i > j` half is filled by
    /// antisymmetry and the diagonal is zero.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> Complex<T>) -> Self {
        let mut data = vec![Complex::zero(); dim * dim * dim];
        let pairs = SubsetIndexer::new(dim, 2);
        let mut sparse = vec![Vec::new(); pairs.len()];
        for (r, ij) in pairs.iter().enumerate() {
            let (i, j) = (ij[0], ij[1]);
            for k in 0..dim {
                let v = f(i, j, k);
                if v.negligible() {
                    continue;
                }
                data[(j * dim + i) * dim + k] = -v.clone();
                data[(i * dim + j) * dim + k] = v.clone();
                sparse[r].push((k, v));
            }
        }
        Bracket { dim, data, sparse, pairs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Complex<T> {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(k, c_{ij}^k)` for `i < j`.
    pub fn upper_entries(&self, i: usize, j: usize) -> &[(usize, Complex<T>)] {
        debug_assert!(i < j);
        &self.sparse[self.pairs.rank(&[i, j])]
    }
}

/// `W^{(r)}_{a₁…a_{2r}}{}^{j₁…j_r} = c_{[a₁a₂}{}^{j₁} ⋯ c_{a_{2r-1}a_{2r}]}{}^{j_r}`
/// with unit-weight antisymmetrization over the lower indices.
///
/// The upper indices come out symmetric (exchanging two factors is an even
/// permutation of the lower slots), so they are stored as a multiset.
#[derive(Debug, Clone, PartialEq)]
pub struct StagedWedge<T> {
    stage: usize,
    lower: SubsetIndexer,
    upper: MultisetIndexer,
    data: Vec<Complex<T>>,
}

impl<T: Real> StagedWedge<T> {
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &SubsetIndexer {
        &self.lower
    }

    pub fn upper(&self) -> &MultisetIndexer {
        &self.upper
    }

    /// Number of lower antisymmetric slots, `C(N, 2r)`.
    pub fn lower_slots(&self) -> usize {
        self.lower.len()
    }

    pub fn get(&self, lower: &[usize], upper_sorted: &[usize]) -> &Complex<T> {
        let r = self.lower.rank(lower);
        &self.data[r * self.upper.len() + self.upper.rank(upper_sorted)]
    }

    /// Block of all upper entries belonging to one lower slot.
    pub fn block(&self, lower_rank: usize) -> &[Complex<T>] {
        let w = self.upper.len();
        &self.data[lower_rank * w..(lower_rank + 1) * w]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ComplexExt::negligible)
    }
}

/// Build `W^{(r)}` by `r - 1` pairwise antisymmetrized stages on top of
/// `W^{(1)} = c`.
pub fn wedge_stage<T: RealField>(c: &Bracket<T>, r: usize) -> Result<StagedWedge<T>> {
    let n = c.dim();
    if r == 0 || 2 * r > n {
        return Err(Error::OrderOutOfRange {
            order: r,
            reason: format!("staged wedge needs 1 <= r and 2r <= {n}"),
        });
    }
    let mut w = StagedWedge {
        stage: 1,
        lower: SubsetIndexer::new(n, 2),
        upper: MultisetIndexer::new(n, 1),
        data: Vec::new(),
    };
    w.data = w
        .lower
        .iter()
        .flat_map(|ab| (0..n).map(move |k| (ab.clone(), k)))
        .map(|(ab, k)| c.get(ab[0], ab[1], k).clone())
        .collect();
    for _ in 1..r {
        w = next_stage(&w, c);
    }
    Ok(w)
}

fn next_stage<T: RealField>(prev: &StagedWedge<T>, c: &Bracket<T>) -> StagedWedge<T> {
    let n = prev.dim();
    let s = prev.stage + 1;
    let lower = SubsetIndexer::new(n, 2 * s);
    let upper = MultisetIndexer::new(n, s);
    let prev_upper: Vec<Vec<usize>> = prev.upper.iter().collect();
    let lowers: Vec<Vec<usize>> = lower.iter().collect();
    let norm = Complex::new(from_u64::<T>(binomial(2 * s, 2) as u64), T::zero());
    let width = upper.len();
    let mut data = vec![Complex::<T>::zero(); lowers.len() * width];

    data.par_chunks_mut(width).zip(lowers.par_iter()).for_each(|(block, a)| {
        let mut rest = Vec::with_capacity(2 * s - 2);
        let mut u = Vec::with_capacity(s);
        for p in 0..a.len() {
            for q in p + 1..a.len() {
                let entries = c.upper_entries(a[p], a[q]);
                if entries.is_empty() {
                    continue;
                }
                rest.clear();
                rest.extend(a.iter().enumerate().filter(|&(t, _)| t != p && t != q).map(|(_, &v)| v));
                let from = prev.block(prev.lower.rank(&rest));
                let odd = (p + q + 1) % 2 == 1;
                for (j, cv) in entries {
                    let cv = if odd { -cv.clone() } else { cv.clone() };
                    // the new factor carries the largest upper index
                    for (pu, wv) in prev_upper.iter().zip(from) {
                        if wv.is_zero() || pu.last().is_some_and(|&m| m > *j) {
                            continue;
                        }
                        u.clear();
                        u.extend_from_slice(pu);
                        u.push(*j);
                        let slot = &mut block[upper.rank(&u)];
                        *slot = slot.clone() + wv.clone() * cv.clone();
                    }
                }
            }
        }
        for v in block.iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / norm.clone();
            }
        }
    });
    StagedWedge { stage: s, lower, upper, data }
}
