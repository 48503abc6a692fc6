use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument outside the range where the routine is accurate.
    #[error("{what}: argument {value} outside the accuracy window [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("{what}: log-magnitude {log_magnitude:.1} exceeds the representable range")]
    Overflow {
        what: &'static str,
        log_magnitude: f64,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("kernel evaluation failed at block ({i}, {j}), x = {x}, y = {y}: {source}")]
    Kernel {
        i: usize,
        j: usize,
        x: Complex64,
        y: Complex64,
        #[source]
        source: Box<Error>,
    },

    #[error(
        "no convergence: |{coarse} - {fine}| = {err:.3e} exceeds tol {tol:.1e} at {nodes} nodes"
    )]
    NonConvergence {
        coarse: Complex64,
        fine: Complex64,
        err: f64,
        tol: f64,
        nodes: usize,
    },

    #[error("linear system is singular to working precision (size {size})")]
    Singular { size: usize },

    /// The conditioning event has (numerically) zero probability.
    #[error("restriction to the conditioning set is singular: det(1 - K|_A) = {det:.3e}")]
    SingularRestriction { det: f64 },

    #[error("ratio denominator {denominator:.3e} too small for a stable division")]
    DivisionInstability { denominator: f64 },

    #[error("overlap sigma = {sigma} outside the stability window |sigma| <= {limit} (use force to override)")]
    StabilityWindow { sigma: f64, limit: f64 },

    #[error("matrix size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, lo: f64, hi: f64) -> Self {
        Error::Domain {
            what,
            value,
            lo,
            hi,
        }
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
