//! Scalar layer.
//!
//! Every tensor entry in this crate is a complex number `Complex<T>` over a
//! real coefficient type `T`. The exact instantiation `T = BigRational`
//! gives the Gaussian rationals; `f64` and `f32` give fast approximate
//! backends, and machine integers back the trace kernels when all entries
//! are Gaussian integers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Real coefficient ring underneath the complex scalars.
pub trait Real:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Zero test behind every verdict. Exact types compare with zero,
    /// floating types use an absolute threshold.
    fn negligible(&self) -> bool;

    /// Exact rational value, when the type carries one.
    fn to_exact(&self) -> Option<BigRational>;

    fn to_f64_lossy(&self) -> f64;
}

/// A real type with exact (or floating) division, able to represent any
/// rational constant the algorithms introduce.
pub trait RealField: Real {
    fn from_rational(q: &BigRational) -> Self;
}

impl Real for BigRational {
    fn negligible(&self) -> bool {
        self.is_zero()
    }
    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl RealField for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Real for f64 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-9
    }
    fn to_exact(&self) -> Option<BigRational> {
        None
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl RealField for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn negligible(&self) -> bool {
        self.abs() < 1e-4
    }
    fn to_exact(&self) -> Option<BigRational> {
        None
    }
    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

impl RealField for f32 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

macro_rules! integer_real {
    ($($t:ty),*) => {$(
        impl Real for $t {
            fn negligible(&self) -> bool {
                *self == 0
            }
            fn to_exact(&self) -> Option<BigRational> {
                Some(BigRational::from_integer(BigInt::from(*self)))
            }
            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    )*};
}

integer_real!(i64, i128);

/// Complex helpers shared by all kernels.
pub trait ComplexExt {
    fn negligible(&self) -> bool;
}

impl<T: Real> ComplexExt for Complex<T> {
    fn negligible(&self) -> bool {
        self.re.negligible() && self.im.negligible()
    }
}

/// `re + im·i` from small integers.
pub fn gauss<T: Real>(re: i64, im: i64) -> Complex<T> {
    Complex::new(from_i64(re), from_i64(im))
}

pub fn from_i64<T: Real>(v: i64) -> T {
    T::from_i64(v).expect("integer constant representable in scalar type")
}

pub fn from_u64<T: Real>(v: u64) -> T {
    T::from_u64(v).expect("integer constant representable in scalar type")
}

pub fn real<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

/// Lift an exact rational into any field scalar.
pub fn rational<T: RealField>(q: &BigRational) -> Complex<T> {
    real(T::from_rational(q))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact Gaussian-rational view of a complex scalar, if it has one.
pub fn to_exact_complex<T: Real>(z: &Complex<T>) -> Option<Complex<BigRational>> {
    Some(Complex::new(z.re.to_exact()?, z.im.to_exact()?))
}

/// `"p/q"` with a positive denominator; zero is written `"0"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Accepts `"p/q"`, `"p"` and a leading sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Display for complex scalars: `a` for real values, otherwise `a + b i`.
pub fn format_complex<T: Real>(z: &Complex<T>) -> String {
    match to_exact_complex(z) {
        Some(q) if q.im.is_zero() => format_rational(&q.re),
        Some(q) => format!("{} + {} i", format_rational(&q.re), format_rational(&q.im)),
        None => format!("{:?}", z),
    }
}
