//! Arithmetic shared by the floating-point and exact code paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::Rational;

/// A number type the quadrature and bound routines can run on.
///
/// Implemented for `f64` (user integrands) and [`Rational`] (certification).
pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::from_i64(1);
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn powu(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn powu(&self, exp: u32) -> Self {
        self.pow(exp)
    }
}
