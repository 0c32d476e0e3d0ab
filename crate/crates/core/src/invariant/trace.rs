//! Symmetrized traces `k^(m)_{i₁…i_m} = sTr(X_{i₁} ⋯ X_{i_m})`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::Realization;
use crate::error::{Error, Result};
use crate::index::{next_permutation, MultisetIndexer};
use crate::scalar::{RealField, Real};
use crate::tensor::SymTensor;

/// How `sym_trace_tensor` evaluates the traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMethod {
    /// Word cache when the generators are exact, polynomial otherwise.
    #[default]
    Auto,
    /// Cyclic word enumeration over Gaussian integers with a per-thread
    /// cache of half-word products.
    WordCache,
    /// Coefficients of `Tr F(y)^m` by polynomial matrix powers.
    Polynomial,
}

pub fn sym_trace<T: RealField>(r: &Realization<T>, m: usize, method: TraceMethod) -> Result<SymTensor<T>> {
    if m < 1 {
        return Err(Error::OrderOutOfRange { order: m, reason: "symmetrized trace needs m >= 1".into() });
    }
    match method {
        TraceMethod::Polynomial => Ok(polynomial_trace(r, m)),
        TraceMethod::WordCache => word_trace(r, m).ok_or_else(|| Error::NotApplicable {
            algebra: r.spec().to_string(),
            reason: "generator entries are not exact or overflow the integer kernel".into(),
        }),
        TraceMethod::Auto => Ok(word_trace(r, m).unwrap_or_else(|| polynomial_trace(r, m))),
    }
}

/// `F(y)_{ab}` as order-1 tensors in `y`.
pub(crate) fn span_polynomials<T: RealField>(r: &Realization<T>) -> Vec<Vec<SymTensor<T>>> {
    let n = r.rep_dim();
    let dim = r.adjoint_dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let entries = r.generators().iter().map(|x| x.get(a, b).clone()).collect();
                    SymTensor::from_entries(dim, 1, entries).expect("one slot per generator")
                })
                .collect()
        })
        .collect()
}

pub(crate) fn poly_matmul<T: RealField>(a: &[Vec<SymTensor<T>>], b: &[Vec<SymTensor<T>>]) -> Vec<Vec<SymTensor<T>>> {
    let n = a.len();
    let dim = a[0][0].dim();
    let order = a[0][0].order() + b[0][0].order();
    (0..n)
        .into_par_iter()
        .map(|p| {
            (0..n)
                .map(|q| {
                    let mut acc = SymTensor::zeros(dim, order);
                    for k in 0..n {
                        if a[p][k].is_zero() || b[k][q].is_zero() {
                            continue;
                        }
                        let t = a[p][k].sym_product(&b[k][q]).expect("same dimension");
                        acc.add_scaled(&Complex::new(T::one(), T::zero()), &t).expect("same shape");
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn polynomial_trace<T: RealField>(r: &Realization<T>, m: usize) -> SymTensor<T> {
    let f = span_polynomials(r);
    let mut power = f.clone();
    for _ in 1..m {
        power = poly_matmul(&power, &f);
    }
    let mut acc = SymTensor::zeros(r.adjoint_dim(), m);
    for (a, row) in power.iter().enumerate() {
        acc.add_scaled(&Complex::new(T::one(), T::zero()), &row[a]).expect("same shape");
    }
    acc
}

/// Integer kernel scalar: `i64` or `i128`.
trait Lane: Real + Copy + TryFrom<i64> + Into<i128> {}
impl Lane for i64 {}
impl Lane for i128 {}

const CACHE_LIMIT: usize = 1 << 16;

struct Kernel<K> {
    n: usize,
    dim: usize,
    gens: Vec<Vec<Complex<K>>>,
}

impl<K: Lane> Kernel<K> {
    fn product(&self, word: &[usize]) -> Vec<Complex<K>> {
        let n = self.n;
        let mut acc = self.gens[word[0]].clone();
        let mut next = vec![Complex::<K>::zero(); n * n];
        for &w in &word[1..] {
            let x = &self.gens[w];
            for v in next.iter_mut() {
                *v = Complex::zero();
            }
            for p in 0..n {
                for k in 0..n {
                    let a = acc[p * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let b = x[k * n + q];
                        if !b.is_zero() {
                            next[p * n + q] = next[p * n + q] + a * b;
                        }
                    }
                }
            }
            std::mem::swap(&mut acc, &mut next);
        }
        acc
    }

    fn key(&self, word: &[usize]) -> u64 {
        word.iter().fold(0u64, |k, &w| k * self.dim as u64 + w as u64)
    }

    /// `Σ Tr(w)` over distinct words of the slot beginning with its
    /// smallest letter, and the number of such words.
    fn slot_sum(&self, slot: &[usize], cache: &mut HashMap<(usize, u64), Vec<Complex<K>>>) -> (Complex<K>, u64) {
        let m = slot.len();
        let n = self.n;
        if m == 1 {
            let x = &self.gens[slot[0]];
            let t = (0..n).fold(Complex::zero(), |acc, i| acc + x[i * n + i]);
            return (t, 1);
        }
        let h = m.div_ceil(2);
        let mut word = slot.to_vec();
        let mut total = Complex::<K>::zero();
        let mut count = 0u64;
        loop {
            let (u, v) = word.split_at(h);
            let ku = (u.len(), self.key(u));
            let kv = (v.len(), self.key(v));
            if cache.len() > CACHE_LIMIT {
                cache.clear();
            }
            cache.entry(ku).or_insert_with(|| self.product(u));
            cache.entry(kv).or_insert_with(|| self.product(v));
            let (pu, pv) = (&cache[&ku], &cache[&kv]);
            for p in 0..n {
                for q in 0..n {
                    let a = pu[p * n + q];
                    if !a.is_zero() {
                        total = total + a * pv[q * n + p];
                    }
                }
            }
            count += 1;
            if !next_permutation(&mut word[1..]) {
                break;
            }
        }
        (total, count)
    }
}

/// Generators as Gaussian integers after clearing a common denominator.
fn integer_generators<T: RealField>(r: &Realization<T>) -> Option<(Vec<Vec<(BigInt, BigInt)>>, BigInt)> {
    let mut exact = Vec::with_capacity(r.adjoint_dim());
    let mut den = BigInt::one();
    for x in r.generators() {
        let mut e = Vec::with_capacity(x.entries().len());
        for z in x.entries() {
            let (re, im) = (z.re.to_exact()?, z.im.to_exact()?);
            den = den.lcm(re.denom()).lcm(im.denom());
            e.push((re, im));
        }
        exact.push(e);
    }
    let scaled = exact
        .into_iter()
        .map(|e| {
            e.into_iter()
                .map(|(re, im)| {
                    let s = BigRational::from_integer(den.clone());
                    ((re * &s).to_integer(), (im * &s).to_integer())
                })
                .collect()
        })
        .collect();
    Some((scaled, den))
}

fn word_trace<T: RealField>(r: &Realization<T>, m: usize) -> Option<SymTensor<T>> {
    let (ints, den) = integer_generators(r)?;
    let n = r.rep_dim();
    let dim = r.adjoint_dim();
    let max_entry = ints
        .iter()
        .flatten()
        .map(|(a, b)| a.abs() + b.abs())
        .max()
        .unwrap_or_default()
        .to_f64()?;
    let words = (1..m).product::<usize>() as f64;
    // |Σ Tr(w)| ≤ (#words) · n^m · M^m per component
    let bound = words * (n as f64).powi(m as i32) * max_entry.powi(m as i32);
    let sums: Vec<(BigInt, BigInt, u64)> = if bound < 2f64.powi(62) {
        run_kernel::<i64>(&ints, n, dim, m)?
    } else if bound < 2f64.powi(126) {
        run_kernel::<i128>(&ints, n, dim, m)?
    } else {
        return None;
    };
    let scale = num_traits::pow(den, m);
    let entries = sums
        .into_iter()
        .map(|(re, im, count)| {
            let d = &scale * BigInt::from(count);
            let q = |v: BigInt| T::from_rational(&BigRational::new(v, d.clone()));
            Complex::new(q(re), q(im))
        })
        .collect();
    SymTensor::from_entries(dim, m, entries).ok()
}

fn run_kernel<K: Lane>(ints: &[Vec<(BigInt, BigInt)>], n: usize, dim: usize, m: usize) -> Option<Vec<(BigInt, BigInt, u64)>> {
    let lane = |v: &BigInt| -> Option<K> { K::try_from(v.to_i64()?).ok() };
    let gens = ints
        .iter()
        .map(|e| e.iter().map(|(a, b)| Some(Complex::new(lane(a)?, lane(b)?))).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let kernel = Kernel { n, dim, gens };
    let slots: Vec<Vec<usize>> = MultisetIndexer::new(dim, m).iter().collect();
    Some(
        slots
            .par_iter()
            .map_init(HashMap::new, |cache, slot| {
                let (t, count) = kernel.slot_sum(slot, cache);
                let big = |v: K| BigInt::from(Into::<i128>::into(v));
                (big(t.re), big(t.im), count)
            })
            .collect(),
    )
}

/// `Tr F(y)^m` straight from the matrices, for oracles.
pub fn trace_power<T: RealField>(r: &Realization<T>, y: &[Complex<T>], m: usize) -> Result<Complex<T>> {
    Ok(r.span(y)?.pow(m).trace())
}
