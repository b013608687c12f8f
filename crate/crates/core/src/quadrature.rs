//! Boole's rule: the closed five-point Newton–Cotes formula
//!
//! ```text
//! ∫ₐᵇ f ≈ (2h/45)·(7f(a) + 32f((3a+b)/4) + 12f((a+b)/2) + 32f((a+3b)/4) + 7f(b)),   h = (b−a)/4
//! ```
//!
//! Every routine comes in a floating-point flavour for user integrands and
//! an exact flavour over [`Rational`] for verification. Nodes are always
//! evaluated left to right and accumulated in a single pass.

use crate::error::Error;
use crate::interval::Interval;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Node weights; the rule is `width/90 · Σ wᵢ f(xᵢ)`.
pub const BOOLE_WEIGHTS: [i64; 5] = [7, 32, 12, 32, 7];

/// `Σ BOOLE_WEIGHTS`.
pub const BOOLE_WEIGHT_SUM: i64 = 90;

/// Boole's rule over any [`Scalar`] with a fallible integrand.
///
/// The integrand's error type must absorb [`Error`] so that a non-finite
/// node value can be reported with its node index.
pub fn boole_with<T, E, F>(mut f: F, iv: &Interval<T>) -> Result<T, E>
where
    T: Scalar,
    E: From<Error>,
    F: FnMut(T) -> Result<T, E>,
{
    let mut acc = T::zero();
    for (node, (x, w)) in iv.nodes().into_iter().zip(BOOLE_WEIGHTS).enumerate() {
        let t = x.to_f64();
        let fx = f(x)?;
        if !fx.is_finite() {
            return Err(Error::NonFiniteValue {
                node,
                t,
                value: fx.to_f64(),
            }
            .into());
        }
        acc = acc + T::from_i64(w) * fx;
    }
    let h = iv.step();
    Ok(T::from_i64(2) * h / T::from_i64(45) * acc)
}

/// Boole's rule for a plain `f64` integrand.
pub fn boole<F: Fn(f64) -> f64>(f: F, iv: &Interval<f64>) -> Result<f64, Error> {
    boole_with(|t| Ok::<_, Error>(f(t)), iv)
}

/// Exact Boole sum of a polynomial.
pub fn boole_exact(p: &Polynomial, iv: &Interval<Rational>) -> Rational {
    boole_with(|t: Rational| Ok::<_, Error>(p.eval(&t)), iv).expect("rational evaluation is always finite")
}

/// Exact `∫ₐᵇ p(t) dt` by term-wise antiderivative.
pub fn integral_exact_poly(p: &Polynomial, iv: &Interval<Rational>) -> Rational {
    p.integrate_over(iv)
}

/// Sum of Boole's rule over `panels` equal cells. `panels == 1` is the
/// plain rule on the same interval, bit for bit.
pub fn composite_boole_with<T, E, F>(mut f: F, iv: &Interval<T>, panels: usize) -> Result<T, E>
where
    T: Scalar,
    E: From<Error>,
    F: FnMut(T) -> Result<T, E>,
{
    let cells = iv.subdivide(panels)?;
    let mut cells = cells.iter();
    let first = cells.next().expect("subdivide yields at least one cell");
    let mut total = boole_with(&mut f, first)?;
    for cell in cells {
        total = total + boole_with(&mut f, cell)?;
    }
    Ok(total)
}

pub fn composite_boole<F: Fn(f64) -> f64>(f: F, iv: &Interval<f64>, panels: usize) -> Result<f64, Error> {
    composite_boole_with(|t| Ok::<_, Error>(f(t)), iv, panels)
}

pub fn composite_boole_exact(
    p: &Polynomial,
    iv: &Interval<Rational>,
    panels: usize,
) -> Result<Rational, Error> {
    composite_boole_with(|t: Rational| Ok::<_, Error>(p.eval(&t)), iv, panels)
}

/// Classical estimate `8/945 · h⁷ · sup|f⁽⁶⁾|` with `h = (b−a)/4`.
pub fn classical_error_bound<T: Scalar>(sup_f6: T, iv: &Interval<T>) -> Result<T, Error> {
    if sup_f6 < T::zero() {
        return Err(Error::NegativeSup(format!("{sup_f6:?}")));
    }
    Ok(T::from_i64(8) / T::from_i64(945) * iv.step().powu(7) * sup_f6)
}

/// Largest `d` such that the rule integrates `1, t, …, t^d` exactly on `[0, 1]`.
pub fn degree_of_exactness() -> u32 {
    let unit = Interval::unit();
    // Newton–Cotes rules on five nodes cannot exceed degree 5; the cap only
    // guards against a broken weight table.
    (0..=16)
        .take_while(|&j| {
            let p = Polynomial::monomial(j);
            boole_exact(&p, &unit) == integral_exact_poly(&p, &unit)
        })
        .last()
        .map(|d| d as u32)
        .unwrap_or(0)
}
