//! Gaussian continuous-variable toolkit for entanglement generated between two
//! remote systems over a lossy optical link.
//!
//! States are mean-free multimode Gaussian states represented by their
//! covariance matrix in the convention `gamma_ij = 2 Re<Δy_i Δy_j>`, so the
//! vacuum covariance is the identity and the quadrature ordering is (x, p) per
//! mode. Mean vectors are deliberately not tracked: homodyne conditional
//! covariances are measurement-outcome independent, which makes every
//! computation in this crate deterministic.
//!
//! The crate is split into:
//!
//! * [`state`] — covariance-matrix states and the primitive transformations
//!   (symplectic evolution, beam splitters, loss channels, mode attach/discard,
//!   conditional homodyne updates).
//! * [`entanglement`] — partial transpose, negativity and logarithmic
//!   negativity, EPR uncertainty of two-party reduced states.
//! * [`protocols`] — the stepped probing schemes (one-way asymmetric, two-way
//!   symmetric, EPR source under arm loss, M-site splitter-tree distribution)
//!   together with their closed-form cross-checks.
//! * [`teleport`] — teleportation fidelities for unknown coherent states,
//!   including the local-squeezing optimization and the cloning bound.
//! * [`optimize`] — the scalar golden-section minimizer used to verify the
//!   optimal-squeezing closed forms numerically.
//!
//! Two closed-form covariance families are provided for the asymmetric scheme
//! (see [`protocols::analytic`]): a *reference* family used by the asymptotic
//! negativity expressions and a *step-model* family that the stepped protocol
//! reproduces exactly. They agree in the whole p sector and in `v_x2` but
//! differ in `v_x1` and `c_x`; the companion CLI's verification suite
//! adjudicates the discrepancy numerically rather than hiding it.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod entanglement;
pub mod optimize;
pub mod protocols;
pub mod state;
pub mod teleport;

/// Numerical tolerances shared across the crate, with their justification.
pub mod tolerances {
    /// Constructed symplectic maps must satisfy `S σ Sᵀ = σ` to this accuracy
    /// per entry. The maps are built from exact rotations and nilpotent
    /// couplings, so anything beyond a few ulps indicates a construction bug.
    pub const SYMPLECTIC_TOL: f64 = 1e-12;

    /// Physicality slack: eigenvalue moduli of `i σ⁻¹ γ` must stay above
    /// `1 - PHYSICALITY_TOL`. Trajectories perform on the order of 1e6
    /// congruences and Schur updates, and the accumulated floating-point
    /// drift motivates a nonzero slack.
    pub const PHYSICALITY_TOL: f64 = 1e-9;

    /// The four eigenvalue moduli of `i σ⁻¹ γ^{T1}` must come in two
    /// degenerate pairs; a relative pairing violation beyond this is reported
    /// as an error instead of silently proceeding.
    pub const PAIRING_TOL: f64 = 1e-9;

    /// Relative cutoff for the Moore-Penrose pseudoinverse in the homodyne
    /// update: singular values below `PINV_RCOND` times the largest singular
    /// value are treated as zero.
    pub const PINV_RCOND: f64 = 1e-12;

    /// A two-party covariance counts as being in the symmetric
    /// (equal-diagonal, `c_x = -c_p`) form when the asymmetries are below
    /// this, relative to the matrix scale; only then is the shorthand
    /// `delta = n - k` well defined.
    pub const SYMMETRIC_FORM_TOL: f64 = 1e-9;
}

use thiserror::Error;

/// Error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A mode index does not exist in the state.
    #[error("mode index {index} out of range for a {n_modes}-mode state")]
    ModeOutOfRange { index: usize, n_modes: usize },

    /// A symplectic map and a state have incompatible dimensions.
    #[error("dimension mismatch: map acts on {map_dim} variables, state has {state_dim}")]
    DimensionMismatch { map_dim: usize, state_dim: usize },

    /// A matrix supplied as symplectic fails `S σ Sᵀ = σ`.
    #[error("matrix is not symplectic: max |SσSᵀ - σ| entry = {max_dev:e}")]
    NotSymplectic { max_dev: f64 },

    /// A covariance matrix violates the uncertainty principle beyond the
    /// allowed slack.
    #[error("covariance is not physical: min symplectic eigenvalue modulus = {min_modulus}")]
    NotPhysical { min_modulus: f64 },

    /// The partial-transpose eigenvalue moduli failed to pair up.
    #[error("eigenvalue moduli do not pair degenerately: relative deviation {deviation:e}")]
    PairingViolation { deviation: f64 },

    /// A scalar parameter is outside its valid domain.
    #[error("parameter {name} = {value} violates: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A count parameter is outside its valid domain.
    #[error("parameter {name} = {value} violates: {requirement}")]
    InvalidCount {
        name: &'static str,
        value: usize,
        requirement: &'static str,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
