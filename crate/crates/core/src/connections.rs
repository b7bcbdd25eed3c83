//! Connection matrices of the contact-interaction family and their exact
//! factorization into delta and epsilon primitives.
//!
//! The delta and epsilon matrices generate the whole unimodular group: any
//! matrix with an off-diagonal entry factors into three of them, and diagonal
//! matrices into six.

use crate::error::{Error, Result};
use crate::tolerances::{DECOMP_BRANCH_TOL, DET_TOL_COMPOSED, DET_TOL_PRIMITIVE};
use crate::transfer::{InteractionChain, Mat2, PointInteraction};

/// Connection matrix [[1, v], [0, 1]] of a delta interaction of strength `v`:
/// a jump of v*phi in the derivative.
pub fn v_delta(strength: f64) -> Mat2 {
    Mat2::new(1.0, strength, 0.0, 1.0)
}

/// Connection matrix [[1, 0], [u, 1]] of an epsilon interaction of strength
/// `u`: a jump of u*phi' in the value.
pub fn v_epsilon(strength: f64) -> Mat2 {
    Mat2::new(1.0, 0.0, strength, 1.0)
}

/// General connection matrix [[t, v], [u, s]] with ts - uv = 1, checked
/// within [`DET_TOL_PRIMITIVE`].
pub fn v_general(t: f64, v: f64, u: f64, s: f64) -> Result<Mat2> {
    let m = Mat2::new(t, v, u, s);
    if !m.is_finite() {
        return Err(Error::NonFiniteInput("matrix entries"));
    }
    let det = m.det();
    if (det - 1.0).abs() > DET_TOL_PRIMITIVE {
        return Err(Error::NotUnimodular {
            det,
            tol: DET_TOL_PRIMITIVE,
        });
    }
    Ok(m)
}

/// The primitive kind of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Delta,
    Epsilon,
}

/// One factor of a delta/epsilon factorization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionStep {
    pub kind: StepKind,
    pub strength: f64,
}

impl DecompositionStep {
    pub fn delta(strength: f64) -> Self {
        DecompositionStep {
            kind: StepKind::Delta,
            strength,
        }
    }

    pub fn epsilon(strength: f64) -> Self {
        DecompositionStep {
            kind: StepKind::Epsilon,
            strength,
        }
    }

    pub fn matrix(&self) -> Mat2 {
        match self.kind {
            StepKind::Delta => v_delta(self.strength),
            StepKind::Epsilon => v_epsilon(self.strength),
        }
    }
}

/// Factors listed in matrix-product order: `steps[0]` is the leftmost factor,
/// the one applied last, so spatially it sits at the right end.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Decomposition {
    pub steps: Vec<DecompositionStep>,
}

impl Decomposition {
    /// Product of the factors in the listed order.
    pub fn product(&self) -> Mat2 {
        self.steps
            .iter()
            .fold(Mat2::IDENTITY, |acc, step| acc * step.matrix())
    }

    /// Max-norm distance between the factor product and `target`.
    pub fn reconstruction_error(&self, target: &Mat2) -> f64 {
        self.product().max_abs_diff(target)
    }
}

/// Factor a unimodular connection matrix into delta/epsilon primitives.
///
/// Branches on the off-diagonal entries: a nonzero lower entry u gives
/// delta-epsilon-delta with strengths ((t-1)/u, u, (s-1)/u); failing that, a
/// nonzero upper entry v gives epsilon-delta-epsilon with ((s-1)/v, v,
/// (t-1)/v); a diagonal matrix takes six factors built from rho = sqrt|t|,
/// signs following the sign of t. Off-diagonals below [`DECOMP_BRANCH_TOL`]
/// count as zero, since the three-factor strengths divide by them.
pub fn decompose(matrix: &Mat2) -> Result<Decomposition> {
    if !matrix.is_finite() {
        return Err(Error::NonFiniteInput("matrix entries"));
    }
    let det = matrix.det();
    if (det - 1.0).abs() > DET_TOL_COMPOSED {
        return Err(Error::NotUnimodular {
            det,
            tol: DET_TOL_COMPOSED,
        });
    }
    let Mat2 {
        m11: t,
        m12: v,
        m21: u,
        m22: s,
    } = *matrix;
    let steps = if u.abs() > DECOMP_BRANCH_TOL {
        vec![
            DecompositionStep::delta((t - 1.0) / u),
            DecompositionStep::epsilon(u),
            DecompositionStep::delta((s - 1.0) / u),
        ]
    } else if v.abs() > DECOMP_BRANCH_TOL {
        vec![
            DecompositionStep::epsilon((s - 1.0) / v),
            DecompositionStep::delta(v),
            DecompositionStep::epsilon((t - 1.0) / v),
        ]
    } else {
        // Diagonal within tolerance; unimodularity keeps t away from 0.
        let rho = t.abs().sqrt();
        let sign = if t > 0.0 { 1.0 } else { -1.0 };
        vec![
            DecompositionStep::delta(rho),
            DecompositionStep::epsilon(-1.0 / rho),
            DecompositionStep::delta(rho),
            DecompositionStep::delta(-sign / rho),
            DecompositionStep::epsilon(sign * rho),
            DecompositionStep::delta(-sign / rho),
        ]
    };
    Ok(Decomposition { steps })
}

/// Realize a factorization as a physical chain with uniform spacing `b`.
///
/// `steps[0]` is the leftmost matrix factor, so it lands at the largest
/// position; the chain is centered on the origin. As b shrinks, the chain's
/// connection matrix approaches the factor product linearly in b.
pub fn decomposition_to_chain(
    decomposition: &Decomposition,
    spacing: f64,
) -> Result<InteractionChain> {
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(Error::InvalidSpacing(spacing));
    }
    let n = decomposition.steps.len();
    let mid = (n as f64 - 1.0) / 2.0;
    let interactions = decomposition
        .steps
        .iter()
        .rev()
        .enumerate()
        .map(|(i, step)| {
            let position = (i as f64 - mid) * spacing;
            match step.kind {
                StepKind::Delta => PointInteraction::delta(step.strength, position),
                StepKind::Epsilon => PointInteraction::epsilon(step.strength, position),
            }
        })
        .collect();
    InteractionChain::new(interactions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::chain_connection;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primitive_matrices_have_unit_determinant() {
        assert_eq!(v_delta(0.0), Mat2::IDENTITY);
        assert_eq!(v_delta(2.0), Mat2::new(1.0, 2.0, 0.0, 1.0));
        assert_eq!(v_delta(-3.0).det(), 1.0);
        assert_eq!(v_epsilon(0.0), Mat2::IDENTITY);
        assert_eq!(v_epsilon(1.0), Mat2::new(1.0, 0.0, 1.0, 1.0));
        // epsilon is the transpose of delta at equal strength
        let (d, e) = (v_delta(0.7), v_epsilon(0.7));
        assert_eq!((d.m11, d.m12, d.m21, d.m22), (e.m11, e.m21, e.m12, e.m22));
    }

    #[test]
    fn general_matrix_validates_determinant() {
        assert_eq!(v_general(1.0, 0.0, 0.0, 1.0).unwrap(), Mat2::IDENTITY);
        assert_eq!(
            v_general(2.0, 3.0, 1.0, 2.0).unwrap(),
            Mat2::new(2.0, 3.0, 1.0, 2.0)
        );
        assert!(matches!(
            v_general(1.0, 1.0, 1.0, 1.0),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(
            v_general(f64::NAN, 0.0, 0.0, 1.0),
            Err(Error::NonFiniteInput(_))
        ));
    }

    #[test]
    fn delta_epsilon_delta_sandwich() {
        let m = v_delta(1.0) * v_epsilon(1.0) * v_delta(1.0);
        assert_eq!(m, Mat2::new(2.0, 3.0, 1.0, 2.0));
    }

    #[test]
    fn decompose_prefers_lower_entry() {
        let m = Mat2::new(2.0, 3.0, 1.0, 2.0);
        let d = decompose(&m).unwrap();
        assert_eq!(
            d.steps,
            vec![
                DecompositionStep::delta(1.0),
                DecompositionStep::epsilon(1.0),
                DecompositionStep::delta(1.0),
            ]
        );
        assert!(d.reconstruction_error(&m) <= 1e-15);
    }

    #[test]
    fn decompose_upper_branch_when_lower_vanishes() {
        let m = v_delta(2.5);
        let d = decompose(&m).unwrap();
        assert_eq!(
            d.steps,
            vec![
                DecompositionStep::epsilon(0.0),
                DecompositionStep::delta(2.5),
                DecompositionStep::epsilon(0.0),
            ]
        );
        assert!(d.reconstruction_error(&m) <= 1e-15);

        let m = v_epsilon(-1.2);
        let d = decompose(&m).unwrap();
        assert_eq!(
            d.steps,
            vec![
                DecompositionStep::delta(0.0),
                DecompositionStep::epsilon(-1.2),
                DecompositionStep::delta(0.0),
            ]
        );
        assert!(d.reconstruction_error(&m) <= 1e-15);
    }

    #[test]
    fn decompose_identity_takes_diagonal_branch() {
        let d = decompose(&Mat2::IDENTITY).unwrap();
        assert_eq!(d.steps.len(), 6);
        assert!(d.reconstruction_error(&Mat2::IDENTITY) <= 1e-15);
    }

    #[test]
    fn decompose_positive_diagonal() {
        let m = Mat2::new(4.0, 0.0, 0.0, 0.25);
        let d = decompose(&m).unwrap();
        assert_eq!(d.steps.len(), 6);
        assert_eq!(d.steps[0], DecompositionStep::delta(2.0));
        assert!(d.reconstruction_error(&m) <= 1e-12);
    }

    #[test]
    fn decompose_negative_diagonal_uses_lower_signs() {
        let m = Mat2::new(-4.0, 0.0, 0.0, -0.25);
        let d = decompose(&m).unwrap();
        assert_eq!(d.steps.len(), 6);
        assert!(d.reconstruction_error(&m) <= 1e-12);
    }

    #[test]
    fn six_factor_products_hit_diagonal_family() {
        for rho in [0.5, 1.0, 2.0, 10.0] {
            for sign in [1.0, -1.0] {
                let m = Mat2::new(sign * rho * rho, 0.0, 0.0, sign / (rho * rho));
                let d = decompose(&m).unwrap();
                assert_eq!(d.steps.len(), 6);
                let err = d.reconstruction_error(&m);
                assert!(err <= 1e-12, "rho {rho} sign {sign}: err {err}");
            }
        }
    }

    #[test]
    fn decompose_rejects_bad_input() {
        assert!(matches!(
            decompose(&Mat2::new(1.0, 1.0, 1.0, 1.0)),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(
            decompose(&Mat2::new(f64::NAN, 0.0, 0.0, 1.0)),
            Err(Error::NonFiniteInput(_))
        ));
    }

    #[test]
    fn reconstruction_over_random_unimodular_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for _ in 0..2000 {
            let m = random_unimodular(&mut rng);
            let d = decompose(&m).unwrap();
            worst = worst.max(d.reconstruction_error(&m));
        }
        assert!(worst <= 1e-9, "worst reconstruction {worst}");
    }

    // Entries uniform in (-2, 2), then row one rescaled so det = 1; draws too
    // close to singular are rejected to keep the rescaling bounded.
    pub(crate) fn random_unimodular<R: Rng>(rng: &mut R) -> Mat2 {
        loop {
            let t: f64 = rng.gen_range(-2.0..2.0);
            let v: f64 = rng.gen_range(-2.0..2.0);
            let u: f64 = rng.gen_range(-2.0..2.0);
            let s: f64 = rng.gen_range(-2.0..2.0);
            let det = t * s - u * v;
            if det.abs() < 0.2 {
                continue;
            }
            return Mat2::new(t / det, v / det, u, s);
        }
    }

    #[test]
    fn chain_realization_approaches_the_product() {
        let d = Decomposition {
            steps: vec![
                DecompositionStep::delta(1.0),
                DecompositionStep::epsilon(1.0),
                DecompositionStep::delta(1.0),
            ],
        };
        let target = Mat2::new(2.0, 3.0, 1.0, 2.0);
        let k = 1.0;
        let mut prev = f64::INFINITY;
        for b in [1e-2, 1e-3, 1e-4] {
            let chain = decomposition_to_chain(&d, b).unwrap();
            let err = chain_connection(&chain, k).unwrap().max_abs_diff(&target);
            // linear in b: roughly 2.0 * b for this factorization
            assert!(err < 3.0 * b, "b {b}: err {err}");
            assert!(err > 1.0 * b, "b {b}: err {err}");
            assert!(err < prev);
            prev = err;
        }
    }

    #[test]
    fn chain_realization_layout() {
        // steps[0] is the leftmost factor, so it lands at the largest position.
        let d = Decomposition {
            steps: vec![
                DecompositionStep::delta(1.0),
                DecompositionStep::epsilon(2.0),
                DecompositionStep::delta(3.0),
            ],
        };
        let chain = decomposition_to_chain(&d, 0.5).unwrap();
        let pts = chain.interactions();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].position, -0.5);
        assert_eq!(pts[1].position, 0.0);
        assert_eq!(pts[2].position, 0.5);
        assert_eq!(pts[0], PointInteraction::delta(3.0, -0.5));
        assert_eq!(pts[2], PointInteraction::delta(1.0, 0.5));
    }

    #[test]
    fn chain_realization_edge_cases() {
        let empty = decomposition_to_chain(&Decomposition::default(), 0.1).unwrap();
        assert!(empty.is_empty());
        assert_eq!(chain_connection(&empty, 1.0).unwrap(), Mat2::IDENTITY);

        // single factor: no gaps, exact at any spacing
        let single = Decomposition {
            steps: vec![DecompositionStep::delta(2.0)],
        };
        let chain = decomposition_to_chain(&single, 5.0).unwrap();
        assert_eq!(chain_connection(&chain, 1.0).unwrap(), v_delta(2.0));

        assert!(matches!(
            decomposition_to_chain(&single, 0.0),
            Err(Error::InvalidSpacing(_))
        ));
        assert!(matches!(
            decomposition_to_chain(&single, -1.0),
            Err(Error::InvalidSpacing(_))
        ));
    }

    proptest! {
        // Each primitive family is a one-parameter subgroup.
        #[test]
        fn prop_primitives_compose_additively(a in -20.0f64..20.0, b in -20.0f64..20.0) {
            prop_assert!((v_delta(a) * v_delta(b)).max_abs_diff(&v_delta(a + b)) <= 1e-12);
            prop_assert!((v_epsilon(a) * v_epsilon(b)).max_abs_diff(&v_epsilon(a + b)) <= 1e-12);
        }

        // Factoring and recomposing is the identity on the sampled family.
        #[test]
        fn prop_decompose_roundtrip(
            t in -2.0f64..2.0, v in -2.0f64..2.0, u in -2.0f64..2.0, s in -2.0f64..2.0,
        ) {
            let det = t * s - u * v;
            prop_assume!(det.abs() >= 0.2);
            let m = Mat2::new(t / det, v / det, u, s);
            let d = decompose(&m).unwrap();
            prop_assert!(d.reconstruction_error(&m) <= 1e-10);
        }
    }
}
