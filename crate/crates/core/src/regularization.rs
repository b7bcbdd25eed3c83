//! Finite-width realization of the epsilon interaction out of three delta
//! interactions, and the measurement of its zero-range limit.
//!
//! Three deltas at -a, 0, +a with couplings tied to the target strength u —
//! central coupling u/a^2, outer couplings 2/u - 1/a — compose into a window
//! matrix that approaches [[1, 0], [u, 1]] linearly in a.

use crate::connections::{v_delta, v_epsilon};
use crate::error::{Error, Result};
use crate::transfer::{free_propagator, InteractionChain, Mat2, PointInteraction};

/// Symmetric three-delta window: outer deltas at +-a, a central delta at the
/// origin, couplings scaled for the target epsilon strength at the given
/// wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeDeltaConfig {
    strength: f64,
    half_spacing: f64,
    wavenumber: f64,
}

impl ThreeDeltaConfig {
    /// Requires a finite nonzero target strength, a finite half-spacing > 0,
    /// and a finite wavenumber > 0. Zero strength has no finite-width
    /// realization: the outer coupling 2/u - 1/a diverges.
    pub fn new(strength: f64, half_spacing: f64, wavenumber: f64) -> Result<Self> {
        if !strength.is_finite() {
            return Err(Error::NonFiniteInput("target strength"));
        }
        if strength == 0.0 {
            return Err(Error::ZeroStrength { role: "epsilon" });
        }
        if !half_spacing.is_finite() || half_spacing <= 0.0 {
            return Err(Error::InvalidSpacing(half_spacing));
        }
        if !wavenumber.is_finite() || wavenumber <= 0.0 {
            return Err(Error::InvalidWavenumber(wavenumber));
        }
        Ok(ThreeDeltaConfig {
            strength,
            half_spacing,
            wavenumber,
        })
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn half_spacing(&self) -> f64 {
        self.half_spacing
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    /// Central delta coupling u / a^2.
    pub fn central_coupling(&self) -> f64 {
        self.strength / (self.half_spacing * self.half_spacing)
    }

    /// Outer delta coupling 2/u - 1/a.
    pub fn outer_coupling(&self) -> f64 {
        2.0 / self.strength - 1.0 / self.half_spacing
    }

    /// The window as a physical chain: deltas at -a, 0, +a.
    pub fn chain(&self) -> InteractionChain {
        let a = self.half_spacing;
        let (v0, v1) = (self.central_coupling(), self.outer_coupling());
        InteractionChain::new(vec![
            PointInteraction::delta(v1, -a),
            PointInteraction::delta(v0, 0.0),
            PointInteraction::delta(v1, a),
        ])
        .expect("positions -a < 0 < a are strictly increasing")
    }
}

/// Exact window matrix V_d(v1) G(k; a) V_d(v0) G(k; a) V_d(v1).
///
/// Requires k*a < pi: a window wider than half a free wavelength leaves the
/// regime where the expansion around zero width is meaningful.
pub fn three_delta_exact(cfg: &ThreeDeltaConfig) -> Result<Mat2> {
    let (a, k) = (cfg.half_spacing, cfg.wavenumber);
    if k * a >= std::f64::consts::PI {
        return Err(Error::WindowTooWide { k_times_a: k * a });
    }
    let g = free_propagator(k, a)?;
    let outer = v_delta(cfg.outer_coupling());
    let central = v_delta(cfg.central_coupling());
    Ok(outer * g * central * g * outer)
}

/// First-order window entries as closed formulas in (v0, v1, a, k):
/// diag = 1 + (v0 + 2 v1 + v0 v1 a - k^2 a) a,
/// [1,2] = v0 + 2 v1 + 2 v1 a (v0 + v1 - k^2 a) + v0 v1^2 a^2 - 2 k^2 a,
/// [2,1] = 2 a + v0 a^2.
fn linearized_elements_raw(v0: f64, v1: f64, a: f64, k: f64) -> Mat2 {
    let k2 = k * k;
    let diag = 1.0 + (v0 + 2.0 * v1 + v0 * v1 * a - k2 * a) * a;
    let upper =
        v0 + 2.0 * v1 + 2.0 * v1 * a * (v0 + v1 - k2 * a) + v0 * v1 * v1 * a * a - 2.0 * k2 * a;
    let lower = 2.0 * a + v0 * a * a;
    Mat2::new(diag, upper, lower, diag)
}

/// Closed-form entries of the window assembled with linearized gap
/// propagators.
///
/// This is an algebraic identity with the explicit product
/// V_d(v1) G_lin(k; a) V_d(v0) G_lin(k; a) V_d(v1), not an approximation of
/// the exact window: the formulas and the product agree entrywise to
/// rounding. With the coupling scalings in place the diagonal collapses to
/// 1 + 4a/u - k^2 a^2.
pub fn three_delta_linearized_elements(cfg: &ThreeDeltaConfig) -> Mat2 {
    linearized_elements_raw(
        cfg.central_coupling(),
        cfg.outer_coupling(),
        cfg.half_spacing,
        cfg.wavenumber,
    )
}

/// One sampled half-spacing of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub half_spacing: f64,
    pub error: f64,
}

/// Error trend of the exact window against its zero-range target.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub strength: f64,
    pub wavenumber: f64,
    /// The zero-range matrix the window converges to: [[1, 0], [u, 1]].
    pub target: Mat2,
    /// One entry per half-spacing, in the given (descending) order.
    pub points: Vec<ConvergencePoint>,
    /// Slope of log(error) against log(a) by unweighted least squares;
    /// the window converges linearly, so this sits near 1.
    pub fitted_order: f64,
}

/// Measure the max-norm error of the exact window against [[1, 0], [u, 1]]
/// at each half-spacing and fit the convergence order.
///
/// Half-spacings must be strictly decreasing and at least three, so the
/// log-log fit is over-determined.
pub fn convergence_study(
    strength: f64,
    wavenumber: f64,
    half_spacings: &[f64],
) -> Result<ConvergenceReport> {
    if half_spacings.len() < 3 {
        return Err(Error::TooFewSpacings {
            got: half_spacings.len(),
        });
    }
    if half_spacings.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::NonDecreasingSpacings);
    }
    let target = v_epsilon(strength);
    let mut points = Vec::with_capacity(half_spacings.len());
    for &a in half_spacings {
        let cfg = ThreeDeltaConfig::new(strength, a, wavenumber)?;
        let window = three_delta_exact(&cfg)?;
        points.push(ConvergencePoint {
            half_spacing: a,
            error: window.max_abs_diff(&target),
        });
    }
    let fitted_order = log_log_slope(&points);
    Ok(ConvergenceReport {
        strength,
        wavenumber,
        target,
        points,
        fitted_order,
    })
}

fn log_log_slope(points: &[ConvergencePoint]) -> f64 {
    let n = points.len() as f64;
    let (mut mean_x, mut mean_y) = (0.0, 0.0);
    for p in points {
        mean_x += p.half_spacing.ln();
        mean_y += p.error.ln();
    }
    mean_x /= n;
    mean_y /= n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for p in points {
        let dx = p.half_spacing.ln() - mean_x;
        let dy = p.error.ln() - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
    }
    sxy / sxx
}
