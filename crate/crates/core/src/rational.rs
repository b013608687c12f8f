//! Exact rational numbers.
//!
//! [`Rational`] wraps [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. Nothing in this module ever
//! rounds except the explicit conversions to `f64` and decimal text.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Nearest `f64` (correctly rounded by `num-rational`).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Always `p/q`, including `q = 1`. This is the CSV cell format.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Decimal rendering rounded half away from zero to `digits`
    /// significant digits. Positional for moderate magnitudes,
    /// scientific (`d.ddde±x`) otherwise.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let x = self.abs();
        // exponent e with 10^e <= x < 10^(e+1)
        let mut e = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
        if x < pow10(e) {
            e -= 1;
        } else if x >= pow10(e + 1) {
            e += 1;
        }
        let scale = digits as i64 - 1 - e;
        let scaled = &x * &pow10(scale);
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let mut mantissa = q;
        if &r * BigInt::from(2) >= *scaled.denom() {
            mantissa += 1;
        }
        // rounding may carry into a new digit (9.99.. -> 10.0..)
        if mantissa.to_string().len() > digits {
            mantissa /= 10;
            e += 1;
        }
        let mut s = mantissa.to_string();
        let sign = if negative { "-" } else { "" };
        if (-5..15).contains(&e) {
            let point = e + 1;
            if point <= 0 {
                s = format!("0.{}{}", "0".repeat((-point) as usize), s);
            } else if point as usize >= s.len() {
                s.push_str(&"0".repeat(point as usize - s.len()));
            } else {
                s.insert(point as usize, '.');
            }
            format!("{sign}{}", trim_fraction(&s))
        } else {
            let (lead, rest) = s.split_at(1);
            let frac = rest.trim_end_matches('0');
            if frac.is_empty() {
                format!("{sign}{lead}e{e}")
            } else {
                format!("{sign}{lead}.{frac}e{e}")
            }
        }
    }
}

fn pow10(e: i64) -> Rational {
    let p = Rational::from_integer(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        p
    } else {
        Rational::one() / p
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl fmt::Display for Rational {
    /// `p/q`, or just `p` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or an integer literal, optionally signed. Decimals are
    /// rejected so that exact inputs never pass through a float.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::ParseRational(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let numer = parse_int(n)?;
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let denom = parse_int(d)?;
                if denom.sign() == Sign::NoSign {
                    return Err(Error::DivisionByZero);
                }
                Rational::from_bigints(numer, denom)
            }
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.partial_cmp(&Rational::from_integer(*other))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $amethod(&mut self, rhs: Rational) {
                self.0.$amethod(rhs.0)
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $amethod(&mut self, rhs: &'a Rational) {
                self.0.$amethod(&rhs.0)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
// panics on a zero divisor, like the integer operators; see `checked_div`
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4));
        assert_eq!("-1/2".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!("10/4".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert_eq!("+7".parse::<Rational>().unwrap(), Rational::from_integer(7));
    }

    #[test]
    fn parse_rejects_decimals_and_junk() {
        for s in ["0.5", "1e3", "", "/", "1/", "/2", "1/-2", "1 /2", "a/b", "1/2/3"] {
            assert!(s.parse::<Rational>().is_err(), "{s:?} should not parse");
        }
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn fraction_string_always_has_slash() {
        assert_eq!(Rational::from_integer(4).to_fraction_string(), "4/1");
        assert_eq!(Rational::new(-1, 2688).to_fraction_string(), "-1/2688");
        assert_eq!(Rational::from_integer(4).to_string(), "4");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(1, 3).to_decimal_string(15), "0.333333333333333");
        assert_eq!(Rational::new(2, 3).to_decimal_string(15), "0.666666666666667");
        assert_eq!(
            Rational::new(1, 2688).to_decimal_string(15),
            "0.000372023809523810".trim_end_matches('0')
        );
        assert_eq!(Rational::from_integer(5).to_decimal_string(15), "5");
        assert_eq!(Rational::new(-11, 6).to_decimal_string(4), "-1.833");
        assert_eq!(Rational::new(999_999, 1_000_000).to_decimal_string(3), "1");
        assert_eq!(Rational::new(1, 10_000_000).to_decimal_string(15), "1e-7");
        assert_eq!(Rational::from_integer(10).pow(20).to_decimal_string(15), "1e20");
        assert_eq!(Rational::new(12345, 1).pow(5).to_decimal_string(3), "2.87e20");
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Rational::new(49, 2025).sqrt_exact(), Some(Rational::new(7, 45)));
        assert_eq!(Rational::new(2, 1).sqrt_exact(), None);
        assert_eq!(Rational::new(-4, 1).sqrt_exact(), None);
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn text_round_trips(r in small()) {
            prop_assert_eq!(r.to_fraction_string().parse::<Rational>().unwrap(), r.clone());
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }

        #[test]
        fn field_identities(x in small(), y in small()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            prop_assert!(r_denominator_positive(&(&x * &y)));
        }

        #[test]
        fn decimal_matches_f64(x in small()) {
            let parsed: f64 = x.to_decimal_string(15).parse().unwrap();
            let exact = x.to_f64();
            prop_assert!((parsed - exact).abs() <= 1e-14 * exact.abs().max(1e-300));
        }
    }

    fn r_denominator_positive(r: &Rational) -> bool {
        r.denom().sign() == Sign::Plus
    }
}
