//! Entanglement measures for two-party reduced Gaussian states: the partial
//! transpose spectrum, the negativity argument N with its logarithmic
//! negativity, and the EPR uncertainty Δ.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{tolerances, Error, Result};

fn check_four_by_four(gamma12: &DMatrix<f64>) -> Result<()> {
    if gamma12.nrows() != 4 || gamma12.ncols() != 4 {
        return Err(Error::DimensionMismatch {
            map_dim: gamma12.nrows(),
            state_dim: 4,
        });
    }
    Ok(())
}

/// Sorted ascending moduli of the eigenvalues of `σ⁻¹ γ` for `n_modes`
/// modes. For a physical covariance these are the symplectic eigenvalues,
/// each appearing twice. Valid for any symmetric positive semidefinite
/// input, including partial transposes (a ±1 diagonal congruence preserves
/// positivity).
fn eigen_moduli(gamma: &DMatrix<f64>, n_modes: usize) -> Vec<f64> {
    debug_assert_eq!(gamma.nrows(), 2 * n_modes);
    crate::state::symplectic_moduli(gamma)
}

/// Partial transpose with respect to party 1: `Λ γ Λ` with
/// `Λ = diag(1, -1, 1, 1)`, which negates every entry coupling `p₁` to the
/// other observables (in particular `c_p -> -c_p`).
pub fn partial_transpose(gamma12: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_four_by_four(gamma12)?;
    let mut out = gamma12.clone();
    for j in 0..4 {
        out[(1, j)] = -out[(1, j)];
    }
    for i in 0..4 {
        out[(i, 1)] = -out[(i, 1)];
    }
    Ok(out)
}

/// Output of [`negativity`]: the capped argument `n`, its logarithm, and the
/// two paired eigenvalue moduli of the partially transposed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// min(1, smaller paired modulus); below 1 signals entanglement.
    pub n: f64,
    /// `-log₂(n)` when `n < 1`, else exactly 0.
    pub log_negativity: f64,
    /// Smaller paired modulus, uncapped.
    pub nu_minus: f64,
    /// Larger paired modulus.
    pub nu_plus: f64,
}

/// Negativity of a two-mode covariance. The four eigenvalue moduli of
/// `i σ⁻¹ γ^{T₁}` come in two degenerate pairs; each pair is counted once
/// and only the smaller one can drop below unity. Rejects unphysical input
/// and inputs whose moduli fail to pair up.
pub fn negativity(gamma12: &DMatrix<f64>) -> Result<NegativityResult> {
    check_four_by_four(gamma12)?;
    let pre = eigen_moduli(gamma12, 2);
    if pre[0] < 1.0 - tolerances::PHYSICALITY_TOL {
        return Err(Error::NotPhysical {
            min_modulus: pre[0],
        });
    }
    let tilde = partial_transpose(gamma12)?;
    let m = eigen_moduli(&tilde, 2);
    let dev = (m[1] - m[0]).max(m[3] - m[2]);
    let scale = m[3].max(1.0);
    if dev > tolerances::PAIRING_TOL * scale {
        return Err(Error::PairingViolation { deviation: dev });
    }
    let nu_minus = 0.5 * (m[0] + m[1]);
    let nu_plus = 0.5 * (m[2] + m[3]);
    let n = nu_minus.min(1.0);
    let log_negativity = if n < 1.0 { -n.log2() } else { 0.0 };
    Ok(NegativityResult {
        n,
        log_negativity,
        nu_minus,
        nu_plus,
    })
}

/// EPR uncertainty of a two-mode state, with the joint-quadrature halves
/// reported separately. Normalized so two uncorrelated vacua give 1 and the
/// symmetric (n, k) form gives exactly `n - k` in every component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprUncertainty {
    /// Average of the two halves.
    pub delta: f64,
    /// Vacuum-normalized variance of `x₁ - x₂`.
    pub x_half: f64,
    /// Vacuum-normalized variance of `p₁ + p₂`.
    pub p_half: f64,
}

/// Computes Δ = [Var(x₁-x₂) + Var(p₁+p₂)] / 2 in vacuum units, i.e. each
/// half is `(v_a + v_b ∓ 2c)/2` in covariance-matrix entries.
pub fn epr_uncertainty(gamma12: &DMatrix<f64>) -> Result<EprUncertainty> {
    check_four_by_four(gamma12)?;
    let x_half = 0.5 * (gamma12[(0, 0)] + gamma12[(2, 2)] - 2.0 * gamma12[(0, 2)]);
    let p_half = 0.5 * (gamma12[(1, 1)] + gamma12[(3, 3)] + 2.0 * gamma12[(1, 3)]);
    Ok(EprUncertainty {
        delta: 0.5 * (x_half + p_half),
        x_half,
        p_half,
    })
}

/// Entrywise deviation of a 4×4 covariance from the symmetric two-mode form
/// with equal diagonals n and cross couplings (c_x, c_p) = (k, -k).
fn symmetric_form_deviation(gamma12: &DMatrix<f64>) -> f64 {
    let n_bar = 0.25 * (gamma12[(0, 0)] + gamma12[(1, 1)] + gamma12[(2, 2)] + gamma12[(3, 3)]);
    let k_bar = 0.25
        * (gamma12[(0, 2)] + gamma12[(2, 0)] - gamma12[(1, 3)] - gamma12[(3, 1)]);
    let mut model = DMatrix::identity(4, 4) * n_bar;
    model[(0, 2)] = k_bar;
    model[(2, 0)] = k_bar;
    model[(1, 3)] = -k_bar;
    model[(3, 1)] = -k_bar;
    (gamma12 - model)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Extracted two-party covariance with its standard-form entries and derived
/// entanglement quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeSummary {
    /// The 4×4 reduced covariance in (x₁, p₁, x₂, p₂) order.
    pub gamma12: DMatrix<f64>,
    pub v_x1: f64,
    pub v_p1: f64,
    pub v_x2: f64,
    pub v_p2: f64,
    pub c_x: f64,
    pub c_p: f64,
    /// Negativity argument in (0, 1].
    pub n: f64,
    pub log_negativity: f64,
    /// EPR uncertainty; populated only when the state has the symmetric
    /// (n, k) form, where it coincides with the negativity argument below 1.
    pub delta: Option<f64>,
}

impl TwoModeSummary {
    /// Builds the summary from a reduced two-mode covariance.
    pub fn from_gamma(gamma12: DMatrix<f64>) -> Result<Self> {
        check_four_by_four(&gamma12)?;
        let neg = negativity(&gamma12)?;
        let epr = epr_uncertainty(&gamma12)?;
        let scale = gamma12.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let delta = if symmetric_form_deviation(&gamma12) <= tolerances::SYMMETRIC_FORM_TOL * scale
        {
            Some(epr.delta)
        } else {
            None
        };
        Ok(Self {
            v_x1: gamma12[(0, 0)],
            v_p1: gamma12[(1, 1)],
            v_x2: gamma12[(2, 2)],
            v_p2: gamma12[(3, 3)],
            c_x: gamma12[(0, 2)],
            c_p: gamma12[(1, 3)],
            n: neg.n,
            log_negativity: neg.log_negativity,
            delta,
            gamma12,
        })
    }

    /// Full EPR uncertainty diagnostics, defined for any two-mode state.
    pub fn epr(&self) -> EprUncertainty {
        epr_uncertainty(&self.gamma12).expect("gamma12 is 4x4 by construction")
    }
}

/// The symmetric two-mode covariance with diagonal n and cross couplings
/// (k, -k); entangled when n - k < 1.
pub fn symmetric_form(n: f64, k: f64) -> DMatrix<f64> {
    let mut g = DMatrix::identity(4, 4) * n;
    g[(0, 2)] = k;
    g[(2, 0)] = k;
    g[(1, 3)] = -k;
    g[(3, 1)] = -k;
    g
}
