use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{rational, RealField};

/// `p_{k₁} p_{k₂} ⋯ · (Pf²)^e` with parts sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    parts: Vec<usize>,
    pf2: usize,
}

impl Monomial {
    pub fn new(mut parts: Vec<usize>, pf2: usize) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Monomial { parts, pf2 }
    }

    pub fn one() -> Self {
        Monomial { parts: Vec::new(), pf2: 0 }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn pf2(&self) -> usize {
        self.pf2
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    /// Degree in `y`; `Pf²` counts as `pfaffian_order` (i.e. `2l`).
    pub fn degree(&self, pfaffian_order: usize) -> usize {
        self.parts.iter().sum::<usize>() + self.pf2 * pfaffian_order
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Monomial::new(parts, self.pf2 + other.pf2)
    }
}

/// Polynomial in the power sums `p_k = Tr F^k` (and optionally `Pf²`)
/// with exact rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PowerSumPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl PowerSumPoly {
    pub fn zero() -> Self {
        PowerSumPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        PowerSumPoly::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        PowerSumPoly::constant(BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PowerSumPoly { terms }
    }

    /// `p_k`.
    pub fn p(k: usize) -> Self {
        PowerSumPoly::term(Monomial::new(vec![k], 0), BigRational::one())
    }

    pub fn pf2() -> Self {
        PowerSumPoly::term(Monomial::new(Vec::new(), 1), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in descending monomial order (the rendering order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn uses_pfaffian(&self) -> bool {
        self.terms.keys().any(|m| m.pf2 > 0)
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::largest_part).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return PowerSumPoly::zero();
        }
        PowerSumPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(PowerSumPoly::one(), |acc, _| &acc * self)
    }

    fn accumulate(&mut self, m: Monomial, c: BigRational) {
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Replace every factor `p_k` by `f(k)` and every `Pf²` by `pf2`.
    pub fn substitute(&self, mut f: impl FnMut(usize) -> PowerSumPoly, pf2: &PowerSumPoly) -> PowerSumPoly {
        let mut out = PowerSumPoly::zero();
        for (m, c) in &self.terms {
            let mut t = PowerSumPoly::constant(c.clone());
            for &k in &m.parts {
                t = &t * &f(k);
            }
            t = &t * &pf2.pow(m.pf2);
            out = &out + &t;
        }
        out
    }

    /// Value at given power sums, `p(k)` for each part.
    pub fn evaluate<T: RealField>(&self, p: impl Fn(usize) -> Complex<T>, pf2: Option<&Complex<T>>) -> Complex<T> {
        let mut acc = Complex::<T>::zero();
        for (m, c) in &self.terms {
            let mut t = rational::<T>(c);
            for &k in &m.parts {
                t = t * p(k);
            }
            if m.pf2 > 0 {
                let v = pf2.expect("Pf² value supplied for a Pfaffian term");
                for _ in 0..m.pf2 {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl Add for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn add(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn sub(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        self + &(-rhs)
    }
}

impl Neg for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn neg(self) -> PowerSumPoly {
        PowerSumPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &PowerSumPoly {
    type Output = PowerSumPoly;
    fn mul(self, rhs: &PowerSumPoly) -> PowerSumPoly {
        let mut out = PowerSumPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.accumulate(a.times(b), ca * cb);
            }
        }
        out
    }
}

/// `e_1 … e_{m_max}`, the coefficients of `α^m` in `det(1 + αF)`, from
/// `e_m = (1/m) Σ_{k=1}^{m} (-1)^{k-1} e_{m-k} p_k`. With `traceless`
/// the `p_1` terms are dropped.
pub fn det_expansion(m_max: usize, traceless: bool) -> Vec<PowerSumPoly> {
    let mut e = vec![PowerSumPoly::one()];
    for m in 1..=m_max {
        let mut acc = PowerSumPoly::zero();
        for k in 1..=m {
            if traceless && k == 1 {
                continue;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = BigRational::new(BigInt::from(sign), BigInt::from(m));
            acc = &acc + &(&e[m - k] * &PowerSumPoly::p(k)).scale(&c);
        }
        e.push(acc);
    }
    e.remove(0);
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn mono(parts: &[usize]) -> Monomial {
        Monomial::new(parts.to_vec(), 0)
    }

    #[test]
    fn low_order_coefficients() {
        let e = det_expansion(5, true);
        assert!(e[0].is_zero());
        assert_eq!(e[1], PowerSumPoly::p(2).scale(&ratio(-1, 2)));
        assert_eq!(e[2], PowerSumPoly::p(3).scale(&ratio(1, 3)));
        assert_eq!(e[3].coefficient(&mono(&[4])), ratio(-1, 4));
        assert_eq!(e[3].coefficient(&mono(&[2, 2])), ratio(1, 8));
        assert_eq!(e[4].coefficient(&mono(&[3, 2])), ratio(-1, 6));
        assert_eq!(e[4].len(), 2);
    }

    #[test]
    fn traceful_keeps_p1() {
        let e = det_expansion(2, false);
        assert_eq!(e[0], PowerSumPoly::p(1));
        let want = &PowerSumPoly::p(1).pow(2).scale(&ratio(1, 2)) - &PowerSumPoly::p(2).scale(&ratio(1, 2));
        assert_eq!(e[1], want);
    }

    #[test]
    fn arithmetic_cancels() {
        let a = &PowerSumPoly::p(2) + &PowerSumPoly::p(3);
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &a).len(), 3);
        let sub = a.substitute(|k| if k == 3 { PowerSumPoly::zero() } else { PowerSumPoly::p(k) }, &PowerSumPoly::pf2());
        assert_eq!(sub, PowerSumPoly::p(2));
    }

    #[test]
    fn monomial_order_is_descending_partition() {
        let e8 = det_expansion(8, true).pop().unwrap();
        let order: Vec<Vec<usize>> = e8.terms().map(|(m, _)| m.parts().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![8], vec![6, 2], vec![5, 3], vec![4, 4], vec![4, 2, 2], vec![3, 3, 2], vec![2, 2, 2, 2]]
        );
    }
}
