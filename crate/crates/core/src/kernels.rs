//! Piecewise-polynomial Peano kernels for Boole's rule.
//!
//! A kernel of order `n` is a function `K` on `[a, b]` made of four
//! polynomial pieces, one per node cell, each with leading term `tⁿ/n!`.
//! Boundary values and jumps of `K⁽ⁿ⁻¹⁾` carry the rule's weights,
//!
//! ```text
//! K⁽ⁿ⁻¹⁾(a) = −7/90·(b−a),  jumps K_i − K_{i+1} at the breakpoints = 32/90, 12/90, 32/90 ·(b−a),  K⁽ⁿ⁻¹⁾(b) = 7/90·(b−a)
//! ```
//!
//! while every lower derivative vanishes at `a`, `b` and is continuous at
//! the breakpoints. Integrating `∫K·f⁽ⁿ⁾` by parts then reproduces the rule's
//! error up to the sign `(−1)ⁿ⁺¹`, and `sup|K|` becomes the constant of the
//! corresponding error bound.
//!
//! Kernels are built two ways: [`solve_kernel_coefficients`] runs forward
//! substitution on the boundary/jump conditions, and [`closed_form_kernel`]
//! writes down the known closed-form coefficients. They must agree exactly.

use std::fmt;

use crate::error::Error;
use crate::interval::Interval;
use crate::polynomial::Polynomial;
use crate::quadrature::{boole_exact, integral_exact_poly, BOOLE_WEIGHTS};
use crate::rational::Rational;

/// Degree of the kernel pieces, which is also the derivative order of `f`
/// the kernel is paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KernelOrder {
    Linear = 1,
    Quadratic = 2,
    Cubic = 3,
}

impl KernelOrder {
    pub const ALL: [KernelOrder; 3] = [KernelOrder::Linear, KernelOrder::Quadratic, KernelOrder::Cubic];

    pub fn get(self) -> u32 {
        self as u32
    }

    /// `1/n!`: the leading coefficient of every piece.
    pub fn leading_coeff(self) -> Rational {
        match self {
            KernelOrder::Linear => Rational::one(),
            KernelOrder::Quadratic => Rational::new(1, 2),
            KernelOrder::Cubic => Rational::new(1, 6),
        }
    }

    /// Sign `s` in `∫K·f⁽ⁿ⁾ = s·(Boole(f) − ∫f)`, i.e. `(−1)ⁿ⁺¹`.
    pub fn identity_sign(self) -> i64 {
        if self.get() % 2 == 1 {
            1
        } else {
            -1
        }
    }
}

impl TryFrom<u32> for KernelOrder {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self, Error> {
        match n {
            1 => Ok(KernelOrder::Linear),
            2 => Ok(KernelOrder::Quadratic),
            3 => Ok(KernelOrder::Cubic),
            _ => Err(Error::KernelOrder(n)),
        }
    }
}

impl fmt::Display for KernelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// One polynomial piece together with the cell it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSegment {
    pub poly: Polynomial,
    pub support: Interval<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseKernel {
    order: KernelOrder,
    interval: Interval<Rational>,
    segments: [KernelSegment; 4],
}

impl PiecewiseKernel {
    fn from_polys(order: KernelOrder, interval: &Interval<Rational>, polys: [Polynomial; 4]) -> Self {
        let cells = cells(interval);
        let mut it = polys
            .into_iter()
            .zip(cells)
            .map(|(poly, support)| KernelSegment { poly, support });
        let segments = std::array::from_fn(|_| it.next().unwrap());
        PiecewiseKernel {
            order,
            interval: interval.clone(),
            segments,
        }
    }

    pub fn order(&self) -> KernelOrder {
        self.order
    }

    pub fn interval(&self) -> &Interval<Rational> {
        &self.interval
    }

    pub fn segments(&self) -> &[KernelSegment; 4] {
        &self.segments
    }

    /// Index of the piece owning `t`: the first cell is closed, the others
    /// are open on the left. `None` outside `[a, b]`.
    pub fn segment_index(&self, t: &Rational) -> Option<usize> {
        if !self.interval.contains(t) {
            return None;
        }
        Some(self.segments.iter().position(|s| t <= s.support.b()).unwrap_or(3))
    }

    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        self.segment_index(t).map(|i| self.segments[i].poly.eval(t))
    }

    /// `[K⁽ᵈ⁾(a), jump at x₁, jump at x₂, jump at x₃, K⁽ᵈ⁾(b)]` where the
    /// jump at `xᵢ` is left piece minus right piece.
    pub fn boundary_terms(&self, derivative: usize) -> [Rational; 5] {
        let d: Vec<Polynomial> = self
            .segments
            .iter()
            .map(|s| s.poly.nth_derivative(derivative))
            .collect();
        let x = self.interval.nodes();
        [
            d[0].eval(&x[0]),
            d[0].eval(&x[1]) - d[1].eval(&x[1]),
            d[1].eval(&x[2]) - d[2].eval(&x[2]),
            d[2].eval(&x[3]) - d[3].eval(&x[3]),
            d[3].eval(&x[4]),
        ]
    }

    /// The values [`boundary_terms`](Self::boundary_terms) must take for
    /// derivative `d`: weight-scaled for `d = n − 1`, zero below.
    pub fn expected_boundary_terms(&self, derivative: usize) -> [Rational; 5] {
        boundary_targets(
            &BOOLE_WEIGHTS,
            &self.interval,
            derivative + 1 == self.order.get() as usize,
        )
    }
}

fn cells(iv: &Interval<Rational>) -> [Interval<Rational>; 4] {
    let x = iv.nodes();
    std::array::from_fn(|i| Interval::new(x[i].clone(), x[i + 1].clone()).expect("nodes are increasing"))
}

fn boundary_targets(weights: &[i64; 5], iv: &Interval<Rational>, weighted: bool) -> [Rational; 5] {
    if !weighted {
        return std::array::from_fn(|_| Rational::zero());
    }
    let total: i64 = weights.iter().sum();
    let unit = iv.width() / Rational::from_integer(total);
    std::array::from_fn(|i| {
        let w = &unit * Rational::from_integer(weights[i]);
        if i == 0 {
            -w
        } else {
            w
        }
    })
}

/// Kernel of the given order for Boole's rule on `iv`, by forward
/// substitution.
pub fn solve_kernel_coefficients(
    order: KernelOrder,
    iv: &Interval<Rational>,
) -> Result<PiecewiseKernel, Error> {
    solve_kernel_for_weights(order, iv, &BOOLE_WEIGHTS)
}

/// Same construction for any five-point rule `width/Σw · Σ wᵢ f(xᵢ)` on
/// the Boole nodes.
///
/// The coefficients are found one derivative level at a time, from
/// `K⁽ⁿ⁻¹⁾` down to `K`. At each level the constant term of the first piece
/// follows from the condition at `a`, each further piece from the jump at
/// its left breakpoint, and the condition at `b` is left over as a residual
/// that must vanish exactly. A nonzero residual means the rule does not
/// integrate polynomials of degree `< n` exactly.
pub fn solve_kernel_for_weights(
    order: KernelOrder,
    iv: &Interval<Rational>,
    weights: &[i64; 5],
) -> Result<PiecewiseKernel, Error> {
    let n = order.get() as usize;
    let x = iv.nodes();
    // coefficient vectors, constant term first; only the leading one is known
    let mut coeffs: [Vec<Rational>; 4] = std::array::from_fn(|_| {
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = order.leading_coeff();
        c
    });

    for d in (0..n).rev() {
        let targets = boundary_targets(weights, iv, d + 1 == n);
        // the unknown coefficient c_d enters K⁽ᵈ⁾ as d!·c_d
        let d_fact = Rational::from_integer((1..=d as i64).product());
        let partial = |c: &[Rational], t: &Rational| Polynomial::new(c.to_vec()).nth_derivative(d).eval(t);

        coeffs[0][d] = (&targets[0] - partial(&coeffs[0], &x[0])) / &d_fact;
        for i in 1..4 {
            let left = partial(&coeffs[i - 1], &x[i]);
            let wanted = left - &targets[i];
            coeffs[i][d] = (&wanted - partial(&coeffs[i], &x[i])) / &d_fact;
        }
        let residual = partial(&coeffs[3], &x[4]) - &targets[4];
        if !residual.is_zero() {
            return Err(Error::InconsistentSystem {
                order: order.get(),
                derivative: d as u32,
                residual: residual.to_string(),
            });
        }
    }

    let polys = coeffs.map(Polynomial::new);
    Ok(PiecewiseKernel::from_polys(order, iv, polys))
}

/// Kernel assembled from the closed-form coefficient expressions in `a`, `b`.
pub fn closed_form_kernel(order: KernelOrder, iv: &Interval<Rational>) -> PiecewiseKernel {
    let (a, b) = (iv.a(), iv.b());
    let r = Rational::new;
    let lin = |p: i64, q: i64, d: i64| r(p, d) * a + r(q, d) * b;
    let a2 = a * a;
    let b2 = b * b;
    let ab = a * b;

    // linear coefficients, shared by orders 1 and 2 and halved for order 3
    let beta = [
        -lin(83, 7, 90),
        -lin(17, 13, 30),
        -lin(13, 17, 30),
        -lin(7, 83, 90),
    ];
    let gamma = [
        r(19, 45) * &a2 + r(7, 90) * &ab,
        r(7, 45) * &a2 + r(23, 90) * &ab + r(4, 45) * &b2,
        (a + r(2, 1) * b) * (r(8, 1) * a + r(7, 1) * b) / r(90, 1),
        b * (r(7, 1) * a + r(38, 1) * b) / r(90, 1),
    ];
    let a3 = &a2 * a;
    let b3 = &b2 * b;
    let delta = [
        -(&a2 * (r(23, 1) * a + r(7, 1) * b)) / r(180, 1),
        -(r(1, 36) * &a3 + r(13, 180) * &a2 * b + r(1, 18) * a * &b2 + r(1, 90) * &b3),
        -(r(1, 90) * &a3 + r(1, 18) * &a2 * b + r(13, 180) * a * &b2 + r(1, 36) * &b3),
        -(&b2 * (r(7, 1) * a + r(23, 1) * b)) / r(180, 1),
    ];

    let lead = order.leading_coeff();
    let polys: [Polynomial; 4] = std::array::from_fn(|i| match order {
        KernelOrder::Linear => Polynomial::new(vec![beta[i].clone(), lead.clone()]),
        KernelOrder::Quadratic => Polynomial::new(vec![gamma[i].clone(), beta[i].clone(), lead.clone()]),
        KernelOrder::Cubic => Polynomial::new(vec![
            delta[i].clone(),
            gamma[i].clone(),
            &beta[i] / r(2, 1),
            lead.clone(),
        ]),
    });
    PiecewiseKernel::from_polys(order, iv, polys)
}

/// Exact `∫ₐᵇ K(t) dt`.
pub fn kernel_integral(k: &PiecewiseKernel) -> Rational {
    k.segments.iter().map(|s| s.poly.integrate_over(&s.support)).sum()
}

/// Real roots of the piece's derivative that lie in its (closed) support,
/// sorted and deduplicated. Linear pieces have none.
pub fn critical_points(seg: &KernelSegment) -> Result<Vec<Rational>, Error> {
    let d = seg.poly.derivative();
    let roots = match d.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![-(d.coeff(0) / d.coeff(1))],
        Some(2) => {
            let (c, b, a) = (d.coeff(0), d.coeff(1), d.coeff(2));
            let disc = &b * &b - Rational::from_integer(4) * &a * &c;
            if disc.is_negative() {
                Vec::new()
            } else {
                let root = disc
                    .sqrt_exact()
                    .ok_or_else(|| Error::IrrationalCriticalPoint(disc.to_string()))?;
                let two_a = Rational::from_integer(2) * &a;
                vec![(-&b - &root) / &two_a, (-&b + &root) / &two_a]
            }
        }
        Some(deg) => unreachable!("kernel pieces have degree at most 3, derivative degree {deg}"),
    };
    let mut inside: Vec<Rational> = roots.into_iter().filter(|t| seg.support.contains(t)).collect();
    inside.sort();
    inside.dedup();
    Ok(inside)
}

/// `sup|K|` over `[a, b]` and over each piece.
#[derive(Clone, Debug, PartialEq)]
pub struct SupAbs {
    pub overall: Rational,
    pub per_segment: [Rational; 4],
}

/// Maximum of `|K|` over piece endpoints and in-support critical points.
///
/// Each piece is evaluated at both ends of its own cell, so both one-sided
/// limits at a breakpoint are covered even where `K` jumps.
pub fn kernel_sup_abs(k: &PiecewiseKernel) -> Result<SupAbs, Error> {
    let mut per_segment: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
    for (slot, seg) in per_segment.iter_mut().zip(&k.segments) {
        let mut candidates = vec![seg.support.a().clone(), seg.support.b().clone()];
        candidates.extend(critical_points(seg)?);
        *slot = candidates
            .iter()
            .map(|t| seg.poly.eval(t).abs())
            .max()
            .expect("at least two candidates");
    }
    let overall = per_segment.iter().max().cloned().expect("four segments");
    Ok(SupAbs { overall, per_segment })
}

/// Both sides of the kernel identity for one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    /// `∫ₐᵇ K(t)·p⁽ⁿ⁾(t) dt`
    pub lhs: Rational,
    /// `Boole(p) − ∫ₐᵇ p`
    pub rhs: Rational,
    /// `(−1)ⁿ⁺¹`
    pub sign: i64,
}

impl IdentityCheck {
    /// `lhs = sign·rhs`, the integration-by-parts identity.
    pub fn holds(&self) -> bool {
        self.lhs == Rational::from_integer(self.sign) * &self.rhs
    }
}

pub fn kernel_identity_check(k: &PiecewiseKernel, p: &Polynomial) -> IdentityCheck {
    let dp = p.nth_derivative(k.order.get() as usize);
    let lhs = k
        .segments
        .iter()
        .map(|s| (&s.poly * &dp).integrate_over(&s.support))
        .sum();
    let rhs = boole_exact(p, &k.interval) - integral_exact_poly(p, &k.interval);
    IdentityCheck {
        lhs,
        rhs,
        sign: k.order.identity_sign(),
    }
}
