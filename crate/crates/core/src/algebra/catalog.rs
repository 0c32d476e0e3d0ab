use num_complex::Complex;
use num_traits::Zero;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{from_i64, gauss, RealField};

use super::g2::g2_nullspace;
use super::{AlgebraSpec, Family, Realization};

/// Catalog realization of `spec`.
pub fn build_algebra<T: RealField>(spec: AlgebraSpec) -> Result<Realization<T>> {
    let l = spec.rank();
    let (gens, form) = match spec.family() {
        Family::A => (special_unitary(l + 1), None),
        Family::B => (orthogonal(2 * l + 1), Some(Matrix::identity(2 * l + 1))),
        Family::D => (orthogonal(2 * l), Some(Matrix::identity(2 * l))),
        Family::C => (symplectic(l), Some(symplectic_form(l))),
        Family::G2 => (exceptional_g2(), None),
    };
    Realization::from_generators(spec, gens, form)
}

fn unit<T: RealField>(n: usize, entries: &[(usize, usize, Complex<T>)]) -> Matrix<T> {
    let mut m = Matrix::zeros(n);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
    }
    m
}

/// Off-diagonal pairs `e_ab + e_ba`, `-i e_ab + i e_ba` for `a < b`, then
/// `H_k = diag(1, …, 1, -k, 0, …)` for `k = 1..n-1`.
fn special_unitary<T: RealField>(n: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::with_capacity(n * n - 1);
    for a in 0..n {
        for b in a + 1..n {
            out.push(unit(n, &[(a, b, gauss(1, 0)), (b, a, gauss(1, 0))]));
            out.push(unit(n, &[(a, b, gauss(0, -1)), (b, a, gauss(0, 1))]));
        }
    }
    for k in 1..n {
        let mut h = Matrix::zeros(n);
        for i in 0..k {
            h.set(i, i, gauss(1, 0));
        }
        h.set(k, k, gauss(-(k as i64), 0));
        out.push(h);
    }
    out
}

/// `X_ab = -i(e_ab - e_ba)`, `a < b` in lexicographic order.
fn orthogonal<T: RealField>(n: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(unit(n, &[(a, b, gauss(0, -1)), (b, a, gauss(0, 1))]));
        }
    }
    out
}

fn symplectic_form<T: RealField>(l: usize) -> Matrix<T> {
    Matrix::from_fn(2 * l, |i, j| {
        if j == i + l {
            gauss(1, 0)
        } else if i == j + l {
            gauss(-1, 0)
        } else {
            Complex::zero()
        }
    })
}

/// Hermitian `[[A, B], [B̄, -Ā]]` with `A` hermitian and `B` complex
/// symmetric. The `A` blocks come first, then the `B` blocks, each over
/// pairs `a ≤ b` with the real member before the imaginary one.
fn symplectic<T: RealField>(l: usize) -> Vec<Matrix<T>> {
    let n = 2 * l;
    let mut out = Vec::with_capacity(l * (2 * l + 1));
    let block = |a: &[(usize, usize, Complex<T>)], b: &[(usize, usize, Complex<T>)]| {
        let mut m = Matrix::zeros(n);
        for (i, j, v) in a {
            m.set(*i, *j, v.clone());
            m.set(i + l, j + l, -v.conj());
        }
        for (i, j, v) in b {
            m.set(*i, j + l, v.clone());
            m.set(i + l, *j, v.conj());
        }
        m
    };
    for a in 0..l {
        for b in a..l {
            if a == b {
                out.push(block(&[(a, a, gauss(1, 0))], &[]));
            } else {
                out.push(block(&[(a, b, gauss(1, 0)), (b, a, gauss(1, 0))], &[]));
                out.push(block(&[(a, b, gauss(0, -1)), (b, a, gauss(0, 1))], &[]));
            }
        }
    }
    for a in 0..l {
        for b in a..l {
            for unit_value in [gauss(1, 0), gauss(0, 1)] {
                let entries: Vec<_> = if a == b {
                    vec![(a, a, unit_value)]
                } else {
                    vec![(a, b, unit_value.clone()), (b, a, unit_value)]
                };
                out.push(block(&[], &entries));
            }
        }
    }
    out
}

/// `-i A` for each integer antisymmetric 7×7 matrix `A` in the nullspace
/// basis.
fn exceptional_g2<T: RealField>() -> Vec<Matrix<T>> {
    g2_nullspace()
        .iter()
        .map(|v| Matrix::from_fn(7, |a, d| Complex::new(T::zero(), -from_i64::<T>(v[a * 7 + d]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_defining_form;
    use crate::scalar::rational;
    use num_rational::BigRational;
    use num_traits::One;

    type Q = BigRational;

    fn all() -> Vec<Realization<Q>> {
        ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D2", "D3", "D4", "G2"]
            .iter()
            .map(|t| build_algebra(t.parse().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn generators_are_hermitian_traceless() {
        for r in all() {
            assert_eq!(r.generators().len(), r.spec().adjoint_dim());
            for x in r.generators() {
                assert!(x.is_hermitian(), "{}", r.spec());
                assert!(x.trace().is_zero(), "{}", r.spec());
            }
        }
    }

    #[test]
    fn metric_is_real_with_positive_diagonal() {
        for r in all() {
            for (idx, v) in r.metric().iter() {
                assert!(v.im.is_zero());
                if idx[0] == idx[1] {
                    assert!(v.re > Q::zero(), "{} {idx:?}", r.spec());
                }
            }
        }
    }

    #[test]
    fn pauli_basis() {
        let r: Realization<Q> = build_algebra("A1".parse().unwrap()).unwrap();
        let s = r.generators();
        assert_eq!(s[0].get(0, 1), &gauss(1, 0));
        assert_eq!(s[1].get(0, 1), &gauss(0, -1));
        assert_eq!(s[2].get(1, 1), &gauss(-1, 0));
        for (idx, v) in r.metric().iter() {
            assert_eq!(v, &gauss(if idx[0] == idx[1] { 2 } else { 0 }, 0));
        }
    }

    #[test]
    fn metric_inverse_is_exact() {
        for r in all() {
            let n = r.adjoint_dim();
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Complex::<Q>::zero();
                    for k in 0..n {
                        acc = acc + r.metric().get(&[i, k]).clone() * r.metric_inv().get(&[k, j]).clone();
                    }
                    let want = if i == j { Complex::one() } else { Complex::zero() };
                    assert_eq!(acc, want);
                }
            }
        }
    }

    #[test]
    fn forms_are_preserved() {
        for r in all() {
            match r.spec().family() {
                Family::A | Family::G2 => assert!(verify_defining_form(&r).is_err()),
                _ => assert!(verify_defining_form(&r).unwrap(), "{}", r.spec()),
            }
        }
    }

    #[test]
    fn corrupted_generator_breaks_form() {
        for tok in ["B2", "C2"] {
            let r: Realization<Q> = build_algebra(tok.parse().unwrap()).unwrap();
            let mut x = r.generators()[0].clone();
            let v = x.get(0, 1).clone();
            x.set(0, 1, -v + rational(&crate::scalar::ratio(1, 1)));
            let bad = r.with_generator(0, x).unwrap();
            assert!(!verify_defining_form(&bad).unwrap(), "{tok}");
        }
    }

    #[test]
    fn g2_generators_are_imaginary_antisymmetric() {
        let r: Realization<Q> = build_algebra("G2".parse().unwrap()).unwrap();
        for x in r.generators() {
            for a in 0..7 {
                for d in 0..7 {
                    assert!(x.get(a, d).re.is_zero());
                    assert_eq!(x.get(a, d).clone(), -x.get(d, a).clone());
                }
            }
        }
    }
}
