//! Error bounds for Boole's rule built from first-, second- and third-order
//! derivative statistics, the classical sixth-derivative estimate, and the
//! monomial study comparing the two.
//!
//! For a derivative order `n`, with `g = f⁽ⁿ⁻¹⁾`:
//!
//! ```text
//! |∫f − Boole(f)| ≤ Cₙ · (I(g) − m(g′)) · (b−a)ⁿ⁺¹      (lower-bound variant, "m")
//! |∫f − Boole(f)| ≤ Cₙ · (M(g′) − I(g)) · (b−a)ⁿ⁺¹      (upper-bound variant, "M")
//! ```
//!
//! where `I(g) = (g(b) − g(a))/(b−a)`, `m`, `M` are essential bounds of `g′`,
//! and `Cₙ = sup|K|` of the order-`n` kernel on `[0, 1]`. The constants are
//! computed from the kernels at first use, never typed in.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::Error;
use crate::interval::Interval;
use crate::kernels::{kernel_sup_abs, solve_kernel_for_weights, KernelOrder};
use crate::quadrature::BOOLE_WEIGHTS;
use crate::rational::Rational;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EstimateId {
    T1m,
    T1M,
    T2m,
    T2M,
    T3m,
    T3M,
}

/// Which essential bound of `f⁽ⁿ⁾` an estimate uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

impl EstimateId {
    pub const ALL: [EstimateId; 6] = [
        EstimateId::T1m,
        EstimateId::T1M,
        EstimateId::T2m,
        EstimateId::T2M,
        EstimateId::T3m,
        EstimateId::T3M,
    ];

    pub fn order(self) -> KernelOrder {
        match self {
            EstimateId::T1m | EstimateId::T1M => KernelOrder::Linear,
            EstimateId::T2m | EstimateId::T2M => KernelOrder::Quadratic,
            EstimateId::T3m | EstimateId::T3M => KernelOrder::Cubic,
        }
    }

    pub fn side(self) -> Side {
        match self {
            EstimateId::T1m | EstimateId::T2m | EstimateId::T3m => Side::Lower,
            EstimateId::T1M | EstimateId::T2M | EstimateId::T3M => Side::Upper,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EstimateId::T1m => "t1m",
            EstimateId::T1M => "t1M",
            EstimateId::T2m => "t2m",
            EstimateId::T2M => "t2M",
            EstimateId::T3m => "t3m",
            EstimateId::T3M => "t3M",
        }
    }
}

impl fmt::Display for EstimateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimateId {
    type Err = Error;

    /// Case matters: `t1m` and `t1M` are different estimates.
    fn from_str(s: &str) -> Result<Self, Error> {
        EstimateId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownEstimate(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Closed-form or otherwise guaranteed essential bounds.
    Exact,
    /// Grid minimum/maximum; not a certificate.
    Sampled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Sampled => "sampled",
        })
    }
}

/// `I(f⁽ⁿ⁻¹⁾)`, `m(f⁽ⁿ⁾)` and `M(f⁽ⁿ⁾)` for one derivative order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeStats<T> {
    order: u32,
    i_value: T,
    m_value: T,
    big_m_value: T,
    provenance: Provenance,
}

impl<T: Scalar> DerivativeStats<T> {
    /// Exact statistics; enforces `m ≤ I ≤ M`.
    pub fn exact(order: u32, i_value: T, m_value: T, big_m_value: T) -> Result<Self, Error> {
        let stats = Self::unchecked(order, i_value, m_value, big_m_value, Provenance::Exact)?;
        if !stats.is_sandwiched() {
            return Err(Error::InvalidStats(format!(
                "need m <= I <= M, got m = {:?}, I = {:?}, M = {:?}",
                stats.m_value, stats.i_value, stats.big_m_value
            )));
        }
        Ok(stats)
    }

    /// Sampled statistics. Only `m ≤ M` is enforced: a grid can miss the
    /// true extrema, so `I` may fall outside `[m, M]`.
    pub fn sampled(order: u32, i_value: T, m_value: T, big_m_value: T) -> Result<Self, Error> {
        Self::unchecked(order, i_value, m_value, big_m_value, Provenance::Sampled)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn unchecked(
        order: u32,
        i_value: T,
        m_value: T,
        big_m_value: T,
        provenance: Provenance,
    ) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::InvalidStats("derivative order must be at least 1".into()));
        }
        if !(i_value.is_finite() && m_value.is_finite() && big_m_value.is_finite()) {
            return Err(Error::InvalidStats("statistics must be finite".into()));
        }
        if !(m_value <= big_m_value) {
            return Err(Error::InvalidStats(format!(
                "need m <= M, got m = {m_value:?}, M = {big_m_value:?}"
            )));
        }
        Ok(DerivativeStats {
            order,
            i_value,
            m_value,
            big_m_value,
            provenance,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn i_value(&self) -> &T {
        &self.i_value
    }

    pub fn m_value(&self) -> &T {
        &self.m_value
    }

    pub fn big_m_value(&self) -> &T {
        &self.big_m_value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_sandwiched(&self) -> bool {
        self.m_value <= self.i_value && self.i_value <= self.big_m_value
    }

    fn delta(&self, side: Side) -> T {
        match side {
            Side::Lower => self.i_value.clone() - self.m_value.clone(),
            Side::Upper => self.big_m_value.clone() - self.i_value.clone(),
        }
    }
}

/// `sup|K|` on `[0, 1]` for each kernel order.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundConstants([Rational; 3]);

impl BoundConstants {
    /// Derive the constants from the kernels of a five-point rule on the
    /// Boole nodes.
    pub fn from_kernels(weights: &[i64; 5]) -> Result<Self, Error> {
        let unit = Interval::unit();
        let mut out: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        for (slot, order) in out.iter_mut().zip(KernelOrder::ALL) {
            let kernel = solve_kernel_for_weights(order, &unit, weights)?;
            *slot = kernel_sup_abs(&kernel)?.overall;
        }
        Ok(BoundConstants(out))
    }

    /// The constants for Boole's rule, computed once.
    pub fn boole() -> &'static BoundConstants {
        static CONSTANTS: OnceLock<BoundConstants> = OnceLock::new();
        CONSTANTS.get_or_init(|| {
            BoundConstants::from_kernels(&BOOLE_WEIGHTS).expect("Boole kernels are consistent")
        })
    }

    pub fn get(&self, order: KernelOrder) -> &Rational {
        &self.0[order.get() as usize - 1]
    }
}

/// Bound value `Cₙ · Δ · (b−a)ⁿ⁺¹` with Boole's constants.
pub fn bound<T: Scalar>(id: EstimateId, stats: &DerivativeStats<T>, iv: &Interval<T>) -> Result<T, Error> {
    bound_with(BoundConstants::boole(), id, stats, iv)
}

pub fn bound_with<T: Scalar>(
    constants: &BoundConstants,
    id: EstimateId,
    stats: &DerivativeStats<T>,
    iv: &Interval<T>,
) -> Result<T, Error> {
    let order = id.order();
    if stats.order != order.get() {
        return Err(Error::OrderMismatch {
            estimate: id.to_string(),
            expected: order.get(),
            got: stats.order,
        });
    }
    let delta = stats.delta(id.side());
    if delta < T::zero() {
        return Err(Error::InvalidStats(format!(
            "{id}: negative spread {delta:?} (I outside [m, M])"
        )));
    }
    let c = T::from_rational(constants.get(order));
    Ok(c * delta * iv.width().powu(order.get() + 1))
}

/// Sum of per-panel bounds over a uniform partition of `iv`.
pub fn composite_bound<T: Scalar>(
    id: EstimateId,
    per_panel_stats: &[DerivativeStats<T>],
    iv: &Interval<T>,
    panels: usize,
) -> Result<T, Error> {
    if per_panel_stats.len() != panels {
        return Err(Error::PanelCount {
            expected: panels,
            got: per_panel_stats.len(),
        });
    }
    let cells = iv.subdivide(panels)?;
    let mut total = T::zero();
    for (stats, cell) in per_panel_stats.iter().zip(&cells) {
        total = total + bound(id, stats, cell)?;
    }
    Ok(total)
}

/// Composite bound from statistics of the whole interval.
///
/// Global `m`, `M` are valid on every panel, and the per-panel mean slopes
/// telescope: `Σⱼ (Iⱼ − m)·w = (I − m)·(b−a)`. The sum therefore collapses
/// to `Cₙ · Δ · (b−a) · wⁿ` with `w` the panel width.
pub fn composite_bound_uniform<T: Scalar>(
    id: EstimateId,
    stats: &DerivativeStats<T>,
    iv: &Interval<T>,
    panels: usize,
) -> Result<T, Error> {
    if panels == 0 {
        return Err(Error::ZeroPanels);
    }
    let whole = bound(id, stats, iv)?;
    let shrink = T::from_i64(panels as i64).powu(id.order().get());
    Ok(whole / shrink)
}

/// Exact statistics of `f(t) = t^k` on `[0, b]`.
///
/// With `g = f⁽ⁿ⁻¹⁾`: `I(g) = k!/(k−n+1)! · b^(k−n)`, `m(g′) = 0` and
/// `M(g′) = g′(b) = k!/(k−n)! · b^(k−n)`, since `g′` is non-negative and
/// non-decreasing on `[0, b]` when `k ≥ n`.
pub fn monomial_stats(k: u32, b: &Rational, order: KernelOrder) -> Result<DerivativeStats<Rational>, Error> {
    let n = order.get();
    if k < n {
        return Err(Error::MonomialDegree { k, order: n });
    }
    if !(b > &Rational::zero()) {
        return Err(Error::EmptyInterval {
            a: "0".into(),
            b: b.to_string(),
        });
    }
    let falling = |count: u32| -> Rational {
        (0..count)
            .map(|j| Rational::from_integer((k - j) as i64))
            .product()
    };
    let power = b.pow(k - n);
    let i_value = falling(n - 1) * &power;
    let big_m_value = falling(n) * &power;
    DerivativeStats::exact(n, i_value, Rational::zero(), big_m_value)
}

/// Which monomial bound expression to use in the study.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// The printed comparison table's expressions.
    Table,
    /// The bound formulas applied to [`monomial_stats`].
    Theorem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialBound {
    pub table_value: Rational,
    pub theorem_value: Rational,
}

impl MonomialBound {
    pub fn get(&self, reading: Reading) -> &Rational {
        match reading {
            Reading::Table => &self.table_value,
            Reading::Theorem => &self.theorem_value,
        }
    }
}

/// Printed table expression for `t^k` on `[0, b]`.
///
/// These are the published values, kept verbatim; the first-order rows carry
/// 11/6 where the bound formula gives 11/60.
pub fn table_expression(id: EstimateId, power: u32, b: &Rational) -> Rational {
    let k = Rational::from_integer(power as i64);
    let one = Rational::one();
    let r = Rational::new;
    let factor = match id {
        EstimateId::T1m => r(11, 6),
        EstimateId::T1M => r(11, 6) * (&k - &one),
        EstimateId::T2m => r(17, 1440) * &k,
        EstimateId::T2M => r(17, 1440) * &k * (&k - r(2, 1)),
        EstimateId::T3m => r(1, 1620) * &k * (&k - &one),
        EstimateId::T3M => r(1, 1620) * &k * (&k - &one) * (&k - r(3, 1)),
    };
    factor * b.pow(power + 1)
}

pub fn monomial_bound_value(id: EstimateId, k: u32, b: &Rational) -> Result<MonomialBound, Error> {
    let stats = monomial_stats(k, b, id.order())?;
    let iv = Interval::new(Rational::zero(), b.clone())?;
    Ok(MonomialBound {
        table_value: table_expression(id, k, b),
        theorem_value: bound(id, &stats, &iv)?,
    })
}

/// Classical estimate for `t^k` on `[0, b]`:
/// `b^(k+1) · k(k−1)(k−2)(k−3)(k−4)(k−5) / 1935360`, zero for `k ≤ 5`.
pub fn classical_monomial_bound(k: u32, b: &Rational) -> Rational {
    if k < 6 {
        return Rational::zero();
    }
    let falling: Rational = (0..6).map(|j| Rational::from_integer((k - j) as i64)).product();
    falling * b.pow(k + 1) / Rational::from_integer(1_935_360)
}

/// Scan limit for [`crossover_threshold`].
pub const CROSSOVER_SCAN_CAP: u32 = 200;

/// Smallest `k ≥ 6` from which the estimate beats the classical bound,
/// accepted once it wins for three consecutive powers.
pub fn crossover_threshold(id: EstimateId, b: &Rational, reading: Reading) -> Result<u32, Error> {
    let beats = |k: u32| -> Result<bool, Error> {
        let v = monomial_bound_value(id, k, b)?;
        Ok(v.get(reading) < &classical_monomial_bound(k, b))
    };
    let mut run_start = None;
    let mut run = 0;
    for k in 6..=CROSSOVER_SCAN_CAP {
        if beats(k)? {
            run_start.get_or_insert(k);
            run += 1;
            if run == 3 {
                return Ok(run_start.unwrap());
            }
        } else {
            run_start = None;
            run = 0;
        }
    }
    Err(Error::NoCrossover {
        estimate: id.to_string(),
        cap: CROSSOVER_SCAN_CAP,
    })
}

/// Heuristic statistics from a uniform grid.
///
/// `g` is `f⁽ⁿ⁾`; `lower_derivative_at_ends` are the caller-supplied values
/// of `f⁽ⁿ⁻¹⁾` at `a` and `b`, from which `I` is formed. The grid includes
/// both endpoints. The result is marked [`Provenance::Sampled`].
pub fn stats_from_samples<G: Fn(f64) -> f64>(
    order: u32,
    g: G,
    lower_derivative_at_ends: (f64, f64),
    iv: &Interval<f64>,
    grid_points: usize,
) -> Result<DerivativeStats<f64>, Error> {
    if grid_points < 2 {
        return Err(Error::GridTooSmall(grid_points));
    }
    let (a, b) = (*iv.a(), *iv.b());
    let last = grid_points - 1;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..grid_points {
        let t = if j == last {
            b
        } else {
            a + (b - a) * j as f64 / last as f64
        };
        let v = g(t);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { t, value: v });
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let (ga, gb) = lower_derivative_at_ends;
    DerivativeStats::sampled(order, (gb - ga) / (b - a), lo, hi)
}

/// Evaluated bounds for one integration run.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<T> {
    pub interval: Interval<T>,
    pub bounds: BTreeMap<EstimateId, T>,
    pub classical: Option<T>,
    pub true_error: Option<T>,
    /// `Sampled` if any statistics used were sampled.
    pub provenance: Provenance,
}

impl<T: Scalar> BoundReport<T> {
    /// Evaluate every requested estimate for which statistics of its order
    /// are available. Estimates without matching statistics are left out.
    pub fn evaluate(
        iv: &Interval<T>,
        stats: &[DerivativeStats<T>],
        estimates: &[EstimateId],
        panels: usize,
    ) -> Result<Self, Error> {
        let mut bounds = BTreeMap::new();
        let mut provenance = Provenance::Exact;
        for &id in estimates {
            if let Some(s) = stats.iter().find(|s| s.order() == id.order().get()) {
                bounds.insert(id, composite_bound_uniform(id, s, iv, panels)?);
                if s.provenance() == Provenance::Sampled {
                    provenance = Provenance::Sampled;
                }
            }
        }
        Ok(BoundReport {
            interval: iv.clone(),
            bounds,
            classical: None,
            true_error: None,
            provenance,
        })
    }

    pub fn is_certified(&self) -> bool {
        self.provenance == Provenance::Exact
    }

    /// Smallest present bound, if any.
    pub fn tightest(&self) -> Option<(EstimateId, &T)> {
        self.bounds
            .iter()
            .fold(None, |best: Option<(EstimateId, &T)>, (id, v)| match best {
                Some((_, b)) if b <= v => best,
                _ => Some((*id, v)),
            })
    }

    /// Estimates whose bound is below the recorded true error.
    pub fn violations(&self) -> Vec<EstimateId> {
        let Some(err) = &self.true_error else {
            return Vec::new();
        };
        self.bounds
            .iter()
            .filter(|(_, v)| *v < err)
            .map(|(id, _)| *id)
            .collect()
    }
}
