//! The entanglement-distribution schemes: one-way (asymmetric) probing,
//! two-way (symmetric) probing, a lossy EPR source, and the M-site splitter
//! tree. Each stepped scheme advances an atomic covariance matrix by
//! attaching fresh light, letting it interact, routing part of it into a
//! loss port, and measuring the transmitted quadrature.

use alloc::vec::Vec;

use crate::entanglement::TwoModeSummary;
use crate::{Error, Result};

pub mod analytic;
pub mod asymmetric;
pub mod epr;
pub mod polygamy;
pub mod symmetric;

pub use asymmetric::{asymmetric_step_map, run_asymmetric};
pub use epr::{epr_source_delta, epr_summary, EprSourceDelta};
pub use polygamy::{run_polygamy, PolygamyParams, PolygamyRun};
pub use symmetric::{
    delta_closed_form, delta_steady_state, min_delta, optimal_r, riccati_coeffs, run_symmetric,
    RiccatiCoeffs,
};

/// Upper bound on the number of discrete steps a single run may take, so a
/// mistyped `t`/`tau` combination fails fast instead of spinning for hours.
pub const MAX_STEPS: usize = 20_000_000;

/// Parameters of one probing run over the lossy channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Intensity loss fraction of the line, in [0, 1).
    pub epsilon: f64,
    /// Input-light squeezing parameter (covariance diag(1/r, r)), > 0.
    pub r: f64,
    /// Continuous coupling rate κ² per unit time, > 0.
    pub kappa2: f64,
    /// Duration of one discrete step, > 0.
    pub tau: f64,
    /// Total probing time, ≥ 0.
    pub t_final: f64,
}

impl ChannelParams {
    pub fn new(epsilon: f64, r: f64, kappa2: f64, tau: f64, t_final: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
                requirement: "loss fraction must lie in [0, 1)",
            });
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                requirement: "squeezing parameter must be positive and finite",
            });
        }
        if !(kappa2 > 0.0) || !kappa2.is_finite() {
            return Err(Error::InvalidParameter {
                name: "kappa2",
                value: kappa2,
                requirement: "coupling rate must be positive and finite",
            });
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
                requirement: "step duration must be positive and finite",
            });
        }
        if !(t_final >= 0.0) || !t_final.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t_final,
                requirement: "total time must be nonnegative and finite",
            });
        }
        let params = Self {
            epsilon,
            r,
            kappa2,
            tau,
            t_final,
        };
        params.n_steps()?;
        Ok(params)
    }

    /// Per-step coupling amplitude κ_τ = √(κ²·τ).
    pub fn kappa_tau(&self) -> f64 {
        #[allow(unused_imports)]
        use num_traits::Float;
        (self.kappa2 * self.tau).sqrt()
    }

    /// Number of discrete steps covering `t_final` (rounded).
    pub fn n_steps(&self) -> Result<usize> {
        let steps = (self.t_final / self.tau + 0.5) as u64;
        if steps > MAX_STEPS as u64 {
            return Err(Error::InvalidParameter {
                name: "t",
                value: self.t_final,
                requirement: "t/tau exceeds the step budget; use a coarser tau or asymptotic mode",
            });
        }
        Ok(steps as usize)
    }
}

/// One sampled point of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    /// Probing time of the sample.
    pub t: f64,
    /// Two-party reduced state of the remote systems at that time.
    pub summary: TwoModeSummary,
}

/// Step indices at which to sample: `n_samples` points spread evenly over
/// `0..=n_steps`, always ending at the final step. With one sample only the
/// final state is reported.
pub(crate) fn sample_steps(n_steps: usize, n_samples: usize) -> Vec<usize> {
    if n_steps == 0 {
        return alloc::vec![0];
    }
    let k = n_samples.max(1);
    if k == 1 {
        return alloc::vec![n_steps];
    }
    let mut v: Vec<usize> = (0..k).map(|i| i * n_steps / (k - 1)).collect();
    v.dedup();
    v
}

/// Richardson extrapolation for a first-order-accurate quantity evaluated
/// at step sizes τ (`coarse`) and τ/2 (`fine`): the leading error term
/// cancels in `2·fine - coarse`.
pub fn richardson_extrapolate(coarse: f64, fine: f64) -> f64 {
    2.0 * fine - coarse
}
