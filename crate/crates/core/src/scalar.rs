//! Scalar abstractions.
//!
//! Floating-point code (group elements, cochain complexes) is written against
//! [`Real`]; exact polytope code is written against [`Field`], which is also
//! implemented for `f64` so the same routines can run approximately.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Real floating-point scalar used by the numerical modules.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the type cannot hold it.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal not representable")
    }

    /// Lossy conversion to `f64` for reporting.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ordered field used by vertex enumeration and volume computation.
///
/// `is_negligible` is exact equality with zero for rationals and a small
/// absolute threshold for floats.
pub trait Field: Clone + PartialOrd + Num + Signed + Debug + Send + Sync {
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_negligible(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Field for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-10
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
    fn is_negligible(&self) -> bool {
        self.abs() < 1e-5
    }
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Field for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
