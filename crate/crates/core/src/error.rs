use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty interval: need a < b, got [{a}, {b}]")]
    EmptyInterval { a: String, b: String },

    #[error("integrand is not finite at node {node} (t = {t}): {value}")]
    NonFiniteValue { node: usize, t: f64, value: f64 },

    #[error("number of panels must be at least 1")]
    ZeroPanels,

    #[error("sup |f^(6)| must be non-negative, got {0}")]
    NegativeSup(String),

    #[error("invalid rational literal {0:?} (expected p/q or an integer)")]
    ParseRational(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("kernel order must be 1, 2 or 3, got {0}")]
    KernelOrder(u32),

    #[error("inconsistent kernel system at order {order}, derivative {derivative}: residual {residual}")]
    InconsistentSystem {
        order: u32,
        derivative: u32,
        residual: String,
    },

    #[error("critical points of a segment are irrational (discriminant {0})")]
    IrrationalCriticalPoint(String),

    #[error("estimate {estimate} needs statistics of order {expected}, got order {got}")]
    OrderMismatch {
        estimate: String,
        expected: u32,
        got: u32,
    },

    #[error("inconsistent derivative statistics: {0}")]
    InvalidStats(String),

    #[error("monomial t^{k} is too low-degree for derivative order {order}")]
    MonomialDegree { k: u32, order: u32 },

    #[error("{estimate} never beats the classical bound for k <= {cap}")]
    NoCrossover { estimate: String, cap: u32 },

    #[error("expected {expected} per-panel statistics, got {got}")]
    PanelCount { expected: usize, got: usize },

    #[error("grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),

    #[error("sample of g is not finite at t = {t}: {value}")]
    NonFiniteSample { t: f64, value: f64 },

    #[error("unknown estimate id {0:?} (expected one of t1m, t1M, t2m, t2M, t3m, t3M)")]
    UnknownEstimate(String),
}
