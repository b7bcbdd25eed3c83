use thiserror::Error;

/// Errors reported by constructors and solvers across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Wavenumbers must be finite and strictly positive.
    #[error("invalid wavenumber {0}: must be finite and > 0")]
    InvalidWavenumber(f64),

    /// A scalar or matrix input contained NaN or an infinity.
    #[error("non-finite {0}")]
    NonFiniteInput(&'static str),

    /// A connection matrix failed the unimodularity check det = 1.
    #[error("matrix is not unimodular: det = {det} (|det - 1| > {tol})")]
    NotUnimodular { det: f64, tol: f64 },

    /// Chain positions must be strictly increasing left to right.
    #[error("chain positions must be strictly increasing (violated at index {index})")]
    NonIncreasingPositions { index: usize },

    /// Spacings and half-spacings must be finite and strictly positive.
    #[error("invalid spacing {0}: must be finite and > 0")]
    InvalidSpacing(f64),

    /// A coupling that must be nonzero was zero.
    #[error("{role} strength must be nonzero")]
    ZeroStrength { role: &'static str },

    /// The finite-width window spans more than one free half-wavelength.
    #[error("window too wide: k*a = {k_times_a} must stay below pi")]
    WindowTooWide { k_times_a: f64 },

    /// A convergence study needs at least three half-spacings.
    #[error("need at least 3 half-spacings, got {got}")]
    TooFewSpacings { got: usize },

    /// Convergence half-spacings must be strictly decreasing.
    #[error("half-spacings must be strictly decreasing")]
    NonDecreasingSpacings,

    /// The two rows of the exchange system disagree: no common amplitude.
    #[error("exchange system is inconsistent: cross-row residual {residual}")]
    InconsistentExchangeSystem { residual: f64 },

    /// The exchange system vanished identically; the amplitude is undetermined.
    #[error("exchange system is degenerate: amplitude undetermined")]
    DegenerateExchangeSystem,

    /// The exchange duality requires coupling product v*u = 4.
    #[error("coupling product v*u = {product}: duality requires v*u = 4")]
    CouplingProductNotFour { product: f64 },

    /// A duality identity that holds in exact arithmetic was violated.
    #[error("duality violated: deviation {deviation} exceeds {tol}")]
    DualityViolated { deviation: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
