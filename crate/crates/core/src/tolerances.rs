//! Numerical tolerances shared across the crate, with the reasoning that set them.

/// Unimodularity slack for directly constructed connection matrices.
/// A primitive matrix is a handful of f64 operations away from exact algebra,
/// so its determinant sits within a few ulps of 1.
pub const DET_TOL_PRIMITIVE: f64 = 1e-12;

/// Unimodularity slack for composed products: chains and finite-width windows
/// accumulate rounding through large intermediate couplings (the central
/// coupling of a narrow window grows as 1/a^2). Measured drift stays below
/// 5e-11 for half-spacings down to 1e-5.
pub const DET_TOL_COMPOSED: f64 = 1e-10;

/// Off-diagonal magnitude below which a matrix is factored as diagonal.
/// Off-diagonal factorizations divide by the pivot entry, so pivots smaller
/// than this produce couplings too large to recompose stably.
pub const DECOMP_BRANCH_TOL: f64 = 1e-9;

/// Cross-row residual bound, relative to the row norm, accepted when solving
/// the homogeneous exchange system from its better-conditioned row.
pub const EXCHANGE_RESIDUAL_TOL: f64 = 1e-9;

/// Deviation allowed in the transmission and exchange duality identities,
/// which hold exactly in real arithmetic.
pub const DUALITY_TOL: f64 = 1e-12;

/// Slack on the coupling-product constraint v*u = 4 required by the exchange
/// duality.
pub const COUPLING_PRODUCT_TOL: f64 = 1e-12;
