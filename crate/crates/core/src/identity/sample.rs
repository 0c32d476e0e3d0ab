use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Realization;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{ratio, rational, ComplexExt, RealField};

use super::derive::Identity;

/// Residuals of `lhs - rhs` at seeded random vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport<T> {
    pub seed: u64,
    pub vectors: Vec<Vec<BigRational>>,
    pub residuals: Vec<Complex<T>>,
}

impl<T: RealField> SampleReport<T> {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(ComplexExt::negligible)
    }

    /// Index of the first nonzero residual.
    pub fn first_failure(&self) -> Option<usize> {
        self.residuals.iter().position(|z| !z.negligible())
    }
}

/// Entries `a/b` with `a ∈ −9..9`, `b ∈ 1..9`.
pub fn random_rational_vector(rng: &mut impl Rng, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect()
}

/// `Tr F^k` for `k = 1..=m`.
pub fn power_sums<T: RealField>(f: &Matrix<T>, m: usize) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(m);
    let mut acc = f.clone();
    for k in 1..=m {
        if k > 1 {
            acc = &acc * f;
        }
        out.push(acc.trace());
    }
    out
}

/// `lhs - rhs` at `F(y)`.
pub fn residual_at<T: RealField>(id: &Identity, f: &Matrix<T>) -> Complex<T> {
    let poly = id.residual();
    let top = poly.largest_part().unwrap_or(0);
    let p = power_sums(f, top.max(1));
    let pf2 = poly.uses_pfaffian().then(|| {
        let pf = f.pfaffian();
        pf.clone() * pf
    });
    poly.evaluate(|k| p[k - 1].clone(), pf2.as_ref())
}

pub fn sample_verify<T: RealField>(
    id: &Identity,
    r: &Realization<T>,
    trials: usize,
    seed: u64,
) -> Result<SampleReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vectors = Vec::with_capacity(trials);
    let mut residuals = Vec::with_capacity(trials);
    for _ in 0..trials {
        let y = random_rational_vector(&mut rng, r.adjoint_dim());
        let yc: Vec<Complex<T>> = y.iter().map(rational).collect();
        residuals.push(residual_at(id, &r.span(&yc)?));
        vectors.push(y);
    }
    Ok(SampleReport { seed, vectors, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, AlgebraSpec};
    use crate::identity::{g2_reduction, pfaffian_identity, vanishing_identity, Lhs, PowerSumPoly};
    use crate::scalar::from_i64;

    type Q = BigRational;

    fn alg(tok: &str) -> Realization<Q> {
        build_algebra(tok.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_quintic_at_unit_vector() {
        let r = alg("A2");
        let id = vanishing_identity(r.spec(), 5).unwrap();
        let mut y = vec![Complex::new(from_i64::<Q>(0), from_i64(0)); 8];
        y[0] = Complex::new(from_i64(1), from_i64(0));
        assert!(residual_at(&id, &r.span(&y).unwrap()).negligible());
    }

    #[test]
    fn g2_quartic_and_octic() {
        let r = alg("G2");
        assert!(sample_verify(&g2_reduction(4).unwrap(), &r, 10, 7).unwrap().all_zero());
        assert!(sample_verify(&g2_reduction(8).unwrap(), &r, 10, 7).unwrap().all_zero());
        assert!(sample_verify(&g2_reduction(10).unwrap(), &r, 3, 7).unwrap().all_zero());
    }

    #[test]
    fn false_identity_fails_first_trial() {
        let r = alg("A2");
        let id = Identity::new(r.spec(), Lhs::PowerSum(4), PowerSumPoly::p(2).pow(2));
        let rep = sample_verify(&id, &r, 3, 1).unwrap();
        assert_eq!(rep.first_failure(), Some(0));
    }

    #[test]
    fn pfaffian_squares() {
        for l in [2, 3] {
            let id = pfaffian_identity(l).unwrap();
            let r = alg(&format!("D{l}"));
            assert!(sample_verify(&id, &r, 10, 11).unwrap().all_zero());
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let r = alg("B2");
        let id = vanishing_identity(r.spec(), 6).unwrap();
        let a = sample_verify(&id, &r, 4, 3).unwrap();
        let b = sample_verify(&id, &r, 4, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.all_zero());
    }

    #[test]
    fn every_family_identity_samples_to_zero() {
        for tok in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D2", "D3"] {
            let spec: AlgebraSpec = tok.parse().unwrap();
            let r = alg(tok);
            for m in 2..=10 {
                if let Ok(id) = vanishing_identity(spec, m) {
                    assert!(sample_verify(&id, &r, 3, m as u64).unwrap().all_zero(), "{tok} {id}");
                }
            }
        }
    }
}
