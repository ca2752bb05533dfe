use thiserror::Error;

use crate::numerics::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{function} is undefined for argument {argument}")]
    Domain {
        function: &'static str,
        argument: String,
    },

    #[error("precision of {requested} digits is below the supported minimum of {minimum}")]
    PrecisionTooLow { requested: u32, minimum: u32 },

    #[error("cannot parse {input:?} as a rational number")]
    Parse { input: String },

    #[error("polynomials share a root: gcd has degree {gcd_degree}")]
    SharedRoot { gcd_degree: usize },

    #[error("series truncated: {needed} coefficients needed, {available} available")]
    Truncated { needed: usize, available: usize },

    #[error("numerator degree {numerator} is not below denominator degree {denominator}")]
    ImproperFraction {
        numerator: usize,
        denominator: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown integrand {0:?}")]
    UnknownIntegrand(String),

    #[error("node {value} appears more than once")]
    DuplicateNode { value: String },

    #[error("a rule needs at least one node")]
    EmptyRule,

    #[error("integration width must be nonzero")]
    ZeroWidth,

    #[error("integrand failed at node {index}: {message}")]
    Integrand { index: usize, message: String },

    #[error("rule has no node polynomial; error series cannot be computed by division")]
    MissingNodePolynomial,

    #[error(
        "error coefficient k({order}) disagrees between routes: direct {direct}, series {series}"
    )]
    InconsistentErrorSeries {
        order: usize,
        direct: String,
        series: String,
    },

    #[error("polynomial does not satisfy root-finder preconditions: {reason}")]
    RootPrecondition { reason: String },

    #[error("root isolation failed: expected {expected} brackets, found {found}")]
    RootIsolation { expected: usize, found: usize },

    #[error("root refinement stalled in bracket [{lo}, {hi}]")]
    RootStalled { lo: String, hi: String },

    #[error("unsupported rule order n = {n} (maximum {max})")]
    UnsupportedOrder { n: usize, max: usize },
}

impl Error {
    pub(crate) fn duplicate(value: &Rational) -> Self {
        Error::DuplicateNode {
            value: value.to_string(),
        }
    }
}
