//! Contact interactions in one-dimensional quantum mechanics.
//!
//! The time-reversal-symmetric zero-range interactions on a line form a
//! three-parameter family, represented here as real unimodular connection
//! matrices acting on the boundary data (phi', phi). This crate provides
//!
//! - exact 2x2 transfer algebra and composition of interaction chains
//!   ([`transfer`]),
//! - the delta/epsilon generators and the factorization of any connection
//!   matrix into them ([`connections`]),
//! - the three-delta finite-width realization of the epsilon interaction and
//!   its zero-range limit ([`regularization`]),
//! - transmission, reflection, and identical-particle exchange amplitudes,
//!   with the delta-epsilon duality maps ([`scattering`]).

pub mod connections;
mod error;
pub mod regularization;
pub mod scattering;
pub mod tolerances;
pub mod transfer;

pub use connections::{
    decompose, decomposition_to_chain, v_delta, v_epsilon, v_general, Decomposition,
    DecompositionStep, StepKind,
};
pub use error::{Error, Result};
pub use regularization::{
    convergence_study, three_delta_exact, three_delta_linearized_elements, ConvergencePoint,
    ConvergenceReport, ThreeDeltaConfig,
};
pub use scattering::{
    delta_transmission_closed, epsilon_transmission_closed, fermion_boson_duality_check, scatter,
    scatter_chain, scatter_identical, transmission_duality_check, ExchangeDualityReport,
    ExchangeResult, ScatteringResult, Statistics, TransmissionDualityReport,
};
pub use transfer::{
    chain_connection, free_propagator, free_propagator_linearized, InteractionChain,
    InteractionKind, Mat2, PointInteraction, WaveState,
};
