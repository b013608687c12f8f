//! Boole's rule with certified error bounds.
//!
//! * [`quadrature`]: the rule itself in `f64` and exact rational arithmetic,
//!   the composite rule, and the classical sixth-derivative bound.
//! * [`kernels`]: Peano kernels of orders 1–3, built both by solving their
//!   defining conditions and from closed forms, with exact checks of
//!   `∫K = 0`, `sup|K|` and the kernel identity.
//! * [`bounds`]: error bounds from derivative statistics, monomial
//!   statistics, and the crossover study against the classical bound.
//!
//! Exact work runs on [`Rational`]; see [`Scalar`] for the shared interface.

pub mod bounds;
pub mod error;
pub mod interval;
pub mod kernels;
pub mod polynomial;
pub mod quadrature;
pub mod rational;
pub mod scalar;

pub use bounds::{
    bound, bound_with, classical_monomial_bound, composite_bound, composite_bound_uniform,
    crossover_threshold, monomial_bound_value, monomial_stats, stats_from_samples, table_expression,
    BoundConstants, BoundReport, DerivativeStats, EstimateId, MonomialBound, Provenance, Reading, Side,
};
pub use error::Error;
pub use interval::Interval;
pub use kernels::{
    closed_form_kernel, critical_points, kernel_identity_check, kernel_integral, kernel_sup_abs,
    solve_kernel_coefficients, solve_kernel_for_weights, IdentityCheck, KernelOrder, KernelSegment,
    PiecewiseKernel, SupAbs,
};
pub use polynomial::Polynomial;
pub use quadrature::{
    boole, boole_exact, boole_with, classical_error_bound, composite_boole, composite_boole_exact,
    composite_boole_with, degree_of_exactness, integral_exact_poly, BOOLE_WEIGHTS, BOOLE_WEIGHT_SUM,
};
pub use rational::Rational;
pub use scalar::Scalar;
