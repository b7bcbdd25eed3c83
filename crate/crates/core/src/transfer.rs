//! Transfer-matrix propagation of boundary data across chains of contact
//! interactions.
//!
//! A stationary wave is carried by the vector (phi', phi). Every zero-width
//! interaction acts on it as a real unimodular connection matrix, and free
//! motion between interactions acts as a rotation-like propagator, so a whole
//! chain composes into a single 2x2 matrix.

use std::ops::Mul;

use num_complex::Complex64;

use crate::connections::{v_delta, v_epsilon};
use crate::error::{Error, Result};
use crate::tolerances::DET_TOL_PRIMITIVE;

/// Real 2x2 matrix acting on boundary vectors (phi', phi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Inverse through the adjugate. The caller guarantees det != 0; every
    /// path in this crate checks unimodularity first.
    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)
    }

    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.m11
            .abs()
            .max(self.m12.abs())
            .max(self.m21.abs())
            .max(self.m22.abs())
    }

    /// Largest entrywise difference from `other` (max-norm distance).
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (self.m11 - other.m11)
            .abs()
            .max((self.m12 - other.m12).abs())
            .max((self.m21 - other.m21).abs())
            .max((self.m22 - other.m22).abs())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * rhs.m11 + self.m12 * rhs.m21,
            self.m11 * rhs.m12 + self.m12 * rhs.m22,
            self.m21 * rhs.m11 + self.m22 * rhs.m21,
            self.m21 * rhs.m12 + self.m22 * rhs.m22,
        )
    }
}

impl Mul<WaveState> for Mat2 {
    type Output = WaveState;

    fn mul(self, rhs: WaveState) -> WaveState {
        WaveState::new(
            rhs.derivative * self.m11 + rhs.value * self.m12,
            rhs.derivative * self.m21 + rhs.value * self.m22,
        )
    }
}

/// Boundary data (phi'(x0), phi(x0)) of a stationary wave at one point.
/// The derivative comes first, matching the vector the matrices act on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveState {
    pub derivative: Complex64,
    pub value: Complex64,
}

impl WaveState {
    pub const fn new(derivative: Complex64, value: Complex64) -> Self {
        WaveState { derivative, value }
    }

    /// A physical state never has both components zero.
    pub fn is_nontrivial(&self) -> bool {
        self.derivative != Complex64::ZERO || self.value != Complex64::ZERO
    }
}

/// Connection matrix of free motion over a displacement `x` at wavenumber `k`:
/// [[cos kx, -k sin kx], [sin(kx)/k, cos kx]]. Unimodular for every (k, x).
pub fn free_propagator(k: f64, x: f64) -> Result<Mat2> {
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::InvalidWavenumber(k));
    }
    if !x.is_finite() {
        return Err(Error::NonFiniteInput("displacement"));
    }
    let (s, c) = (k * x).sin_cos();
    Ok(Mat2::new(c, -k * s, s / k, c))
}

/// First-order propagator [[1, -k^2 a], [a, 1]] over a short gap `a`.
///
/// Its determinant is 1 + k^2 a^2, not 1: the linearization trades exact
/// unimodularity for entries polynomial in `a`, which is what makes the
/// entrywise expansion of narrow windows an exact algebraic identity.
pub fn free_propagator_linearized(k: f64, a: f64) -> Mat2 {
    Mat2::new(1.0, -k * k * a, a, 1.0)
}

/// The kind of a zero-width interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InteractionKind {
    /// Jump in phi' proportional to phi: connection [[1, v], [0, 1]].
    Delta { strength: f64 },
    /// Jump in phi proportional to phi': connection [[1, 0], [u, 1]].
    Epsilon { strength: f64 },
    /// Arbitrary unimodular connection matrix.
    General { matrix: Mat2 },
}

/// A zero-width interaction placed on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointInteraction {
    pub kind: InteractionKind,
    pub position: f64,
}

impl PointInteraction {
    pub fn delta(strength: f64, position: f64) -> Self {
        PointInteraction {
            kind: InteractionKind::Delta { strength },
            position,
        }
    }

    pub fn epsilon(strength: f64, position: f64) -> Self {
        PointInteraction {
            kind: InteractionKind::Epsilon { strength },
            position,
        }
    }

    /// General interactions must carry a finite matrix with det = 1 within
    /// [`DET_TOL_PRIMITIVE`].
    pub fn general(matrix: Mat2, position: f64) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFiniteInput("connection matrix"));
        }
        let det = matrix.det();
        if (det - 1.0).abs() > DET_TOL_PRIMITIVE {
            return Err(Error::NotUnimodular {
                det,
                tol: DET_TOL_PRIMITIVE,
            });
        }
        Ok(PointInteraction {
            kind: InteractionKind::General { matrix },
            position,
        })
    }

    pub fn connection_matrix(&self) -> Mat2 {
        match self.kind {
            InteractionKind::Delta { strength } => v_delta(strength),
            InteractionKind::Epsilon { strength } => v_epsilon(strength),
            InteractionKind::General { matrix } => matrix,
        }
    }
}

/// Ordered contact interactions at strictly increasing positions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InteractionChain {
    interactions: Vec<PointInteraction>,
}

impl InteractionChain {
    /// Validates finiteness of every position, strength, and matrix, strict
    /// ordering of positions, and unimodularity of general matrices.
    pub fn new(interactions: Vec<PointInteraction>) -> Result<Self> {
        for (i, p) in interactions.iter().enumerate() {
            if !p.position.is_finite() {
                return Err(Error::NonFiniteInput("interaction position"));
            }
            match p.kind {
                InteractionKind::Delta { strength } | InteractionKind::Epsilon { strength } => {
                    if !strength.is_finite() {
                        return Err(Error::NonFiniteInput("interaction strength"));
                    }
                }
                InteractionKind::General { matrix } => {
                    if !matrix.is_finite() {
                        return Err(Error::NonFiniteInput("connection matrix"));
                    }
                    let det = matrix.det();
                    if (det - 1.0).abs() > DET_TOL_PRIMITIVE {
                        return Err(Error::NotUnimodular {
                            det,
                            tol: DET_TOL_PRIMITIVE,
                        });
                    }
                }
            }
            if i > 0 && interactions[i - 1].position >= p.position {
                return Err(Error::NonIncreasingPositions { index: i });
            }
        }
        Ok(InteractionChain { interactions })
    }

    pub fn empty() -> Self {
        InteractionChain::default()
    }

    pub fn interactions(&self) -> &[PointInteraction] {
        &self.interactions
    }

    pub fn len(&self) -> usize {
        self.interactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interactions.is_empty()
    }
}

/// Total connection matrix of the chain at wavenumber `k`.
///
/// Matrices compose right to left as positions increase: the leftmost
/// interaction is the rightmost factor. Only gaps between neighbours enter,
/// so the result is invariant under a common translation of all positions.
/// An empty chain connects trivially, whatever `k`.
pub fn chain_connection(chain: &InteractionChain, k: f64) -> Result<Mat2> {
    let pts = chain.interactions();
    let [first, rest @ ..] = pts else {
        return Ok(Mat2::IDENTITY);
    };
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::InvalidWavenumber(k));
    }
    let mut total = first.connection_matrix();
    let mut prev = first.position;
    for p in rest {
        total = p.connection_matrix() * (free_propagator(k, p.position - prev)? * total);
        prev = p.position;
    }
    Ok(total)
}
