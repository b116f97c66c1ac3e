//! EPR reference scheme: a two-mode squeezed source whose halves travel to
//! the two stations through lossy arms. Used as the benchmark the probing
//! schemes are compared against.

#[allow(unused_imports)]
use num_traits::Float;

use crate::entanglement::{symmetric_form, TwoModeSummary};
use crate::state::{GaussianState, ModeKind, ModeLabel};
use crate::{Error, Result};

fn check_args(epsilon: f64, r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            requirement: "loss fraction must lie in [0, 1]",
        });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            requirement: "squeezing parameter must be positive and finite",
        });
    }
    Ok(())
}

/// EPR uncertainty of the distributed source together with its
/// infinite-squeezing floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprSourceDelta {
    /// Δ = 1 + √(1-ε)·(1/r - 1).
    pub delta: f64,
    /// Infimum over squeezing, 1 - √(1-ε); every finite r stays above it.
    pub infinite_squeezing_bound: f64,
}

/// Closed-form Δ of a two-mode squeezed source with total intensity loss ε
/// shared evenly between the arms (amplitude transmission (1-ε)^(1/4) per
/// arm, so correlations carry √(1-ε)).
pub fn epr_source_delta(epsilon: f64, r: f64) -> Result<EprSourceDelta> {
    check_args(epsilon, r)?;
    let root = (1.0 - epsilon).sqrt();
    Ok(EprSourceDelta {
        delta: 1.0 + root * (1.0 / r - 1.0),
        infinite_squeezing_bound: 1.0 - root,
    })
}

/// The distributed source as a state: the symmetric two-mode squeezed
/// covariance with n = (r+1/r)/2, k = (r-1/r)/2, after per-arm loss
/// 1 - √(1-ε) on each side.
pub fn epr_lossy_state(epsilon: f64, r: f64) -> Result<GaussianState> {
    check_args(epsilon, r)?;
    let n = 0.5 * (r + 1.0 / r);
    let k = 0.5 * (r - 1.0 / r);
    let state = GaussianState::from_covariance(
        alloc::vec![
            ModeLabel::new(ModeKind::Atom1),
            ModeLabel::new(ModeKind::Atom2)
        ],
        symmetric_form(n, k),
    )?;
    let per_arm = 1.0 - (1.0 - epsilon).sqrt();
    state.loss_channel(0, per_arm)?.loss_channel(1, per_arm)
}

/// Two-party summary (entries, negativity, Δ) of the distributed source.
pub fn epr_summary(epsilon: f64, r: f64) -> Result<TwoModeSummary> {
    let state = epr_lossy_state(epsilon, r)?;
    TwoModeSummary::from_gamma(state.two_mode_submatrix(0, 1)?)
}
