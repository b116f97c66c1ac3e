//! Two-way probing scheme: each time step sends four fresh pulses, two
//! probing the x-measured direction and two the p-measured direction with
//! the reciprocal squeezing, which symmetrizes the back-action between the
//! two systems. The EPR uncertainty Δ then obeys a Riccati equation
//! ∂ₜΔ = a - bΔ² whose closed form and steady state are provided here.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::entanglement::TwoModeSummary;
use crate::state::{
    beam_splitter_map, squeezed_light_state, GaussianState, ModeKind, ModeLabel, Quadrature,
    SymplecticMap,
};
use crate::{Error, Result};

use super::{sample_steps, ChannelParams, SamplePoint};

const LOSS_PORT: usize = 2;
const LIGHT: usize = 3;

/// The four sub-steps of one full cycle. Passes 1-2 couple through the p
/// quadratures and measure x' (x-squeezed input); passes 3-4 couple through
/// the x quadratures and measure p' (p-squeezed input). The sender
/// alternates between system 1 and system 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pass {
    P1,
    P2,
    P3,
    P4,
}

impl Pass {
    const ALL: [Pass; 4] = [Pass::P1, Pass::P2, Pass::P3, Pass::P4];

    fn measured_quadrature(self) -> Quadrature {
        match self {
            Pass::P1 | Pass::P2 => Quadrature::X,
            Pass::P3 | Pass::P4 => Quadrature::P,
        }
    }

    fn light_squeezing(self, r: f64) -> f64 {
        match self {
            Pass::P1 | Pass::P2 => r,
            Pass::P3 | Pass::P4 => 1.0 / r,
        }
    }
}

/// Exact one-pass interaction map, in the same 8-variable ordering as the
/// one-way scheme. Each pass couples one quadrature sector only, so the
/// maps are exact shears; all four are exactly symplectic. `flip_p4_vacuum`
/// negates the sign of the pass-4 vacuum-noise coupling; the observable Δ
/// is insensitive to it (asserted in tests).
fn pass_map(pass: Pass, params: &ChannelParams, flip_p4_vacuum: bool) -> Result<SymplecticMap> {
    let kt = params.kappa_tau();
    let c = kt * (1.0 - params.epsilon).sqrt();
    let s = kt * params.epsilon.sqrt();
    let mut m = DMatrix::identity(8, 8);
    match pass {
        Pass::P1 => {
            m[(0, 7)] += c;
            m[(0, 5)] -= s;
            m[(2, 7)] += c;
            m[(6, 1)] += c;
            m[(6, 3)] += c;
            m[(4, 1)] -= s;
        }
        Pass::P2 => {
            m[(2, 7)] += c;
            m[(2, 5)] -= s;
            m[(0, 7)] += c;
            m[(6, 1)] += c;
            m[(6, 3)] += c;
            m[(4, 3)] -= s;
        }
        Pass::P3 => {
            m[(1, 6)] -= c;
            m[(1, 4)] += s;
            m[(3, 6)] += c;
            m[(7, 0)] -= c;
            m[(7, 2)] += c;
            m[(5, 0)] += s;
        }
        Pass::P4 => {
            let sgn = if flip_p4_vacuum { -1.0 } else { 1.0 };
            m[(1, 6)] -= c;
            m[(3, 6)] += c;
            m[(3, 4)] -= sgn * s;
            m[(5, 2)] -= sgn * s;
            m[(7, 0)] -= c;
            m[(7, 2)] += c;
        }
    }
    SymplecticMap::new(m)
}

fn initial_pair() -> GaussianState {
    GaussianState::vacuum(alloc::vec![
        ModeLabel::new(ModeKind::Atom1),
        ModeLabel::new(ModeKind::Atom2),
    ])
}

/// Runs the stepped two-way scheme; each step applies the four passes in
/// order, each with fresh squeezed light and its own loss port and
/// measurement. Samples are taken at full-cycle boundaries.
pub fn run_symmetric(params: &ChannelParams, n_samples: usize) -> Result<Vec<SamplePoint>> {
    run_symmetric_variant(params, n_samples, false)
}

/// [`run_symmetric`] with an optional sign flip on the pass-4 vacuum-noise
/// coupling, for checking that Δ does not depend on that convention.
pub fn run_symmetric_variant(
    params: &ChannelParams,
    n_samples: usize,
    flip_p4_vacuum: bool,
) -> Result<Vec<SamplePoint>> {
    let n_steps = params.n_steps()?;
    let bs = beam_splitter_map(4, LIGHT, LOSS_PORT, params.epsilon)?;
    let port = GaussianState::vacuum(alloc::vec![ModeLabel::new(ModeKind::LightVacuum)]);
    let maps: Vec<(SymplecticMap, GaussianState, Quadrature)> = {
        let mut v = Vec::with_capacity(4);
        for pass in Pass::ALL {
            v.push((
                pass_map(pass, params, flip_p4_vacuum)?,
                squeezed_light_state(pass.light_squeezing(params.r))?,
                pass.measured_quadrature(),
            ));
        }
        v
    };

    let mut state = initial_pair();
    let schedule = sample_steps(n_steps, n_samples);
    let mut out = Vec::with_capacity(schedule.len());
    let mut next = 0usize;
    if schedule[next] == 0 {
        out.push(SamplePoint {
            t: 0.0,
            summary: TwoModeSummary::from_gamma(state.two_mode_submatrix(0, 1)?)?,
        });
        next += 1;
    }
    for k in 1..=n_steps {
        for (map, light, quad) in &maps {
            state = state
                .attach(&port)
                .attach(light)
                .apply_symplectic(&bs)?
                .apply_symplectic(map)?
                .discard(LOSS_PORT)?
                .homodyne_update(LOSS_PORT, *quad)?;
        }
        if next < schedule.len() && schedule[next] == k {
            out.push(SamplePoint {
                t: k as f64 * params.tau,
                summary: TwoModeSummary::from_gamma(state.two_mode_submatrix(0, 1)?)?,
            });
            next += 1;
        }
    }
    Ok(out)
}

/// Rates of the Riccati equation ∂ₜΔ = a - bΔ² governing the two-way
/// scheme's EPR uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiCoeffs {
    /// Noise growth rate a = κ²ε(1-ε+rε).
    pub a: f64,
    /// Entanglement drive rate b = 4κ²r(1-ε)/(1-ε+rε).
    pub b: f64,
}

/// Computes the Riccati rates for the given channel.
pub fn riccati_coeffs(epsilon: f64, r: f64, kappa2: f64) -> Result<RiccatiCoeffs> {
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
    let w = 1.0 - epsilon;
    let m = w + r * epsilon;
    Ok(RiccatiCoeffs {
        a: kappa2 * epsilon * m,
        b: 4.0 * kappa2 * r * w / m,
    })
}

/// Closed-form solution of ∂ₜΔ = a - bΔ² with Δ(0) = 1, written in a
/// tanh form that stays finite for arbitrarily large t:
/// Δ(t) = (1 + √(a/b)·tanh u)/(1 + √(b/a)·tanh u) with u = √(ab)·t,
/// degenerating to 1/(1+bt) when a = 0.
pub fn delta_closed_form(coeffs: &RiccatiCoeffs, t: f64) -> f64 {
    let RiccatiCoeffs { a, b } = *coeffs;
    if a == 0.0 {
        return 1.0 / (1.0 + b * t);
    }
    let u = (a * b).sqrt() * t;
    let th = u.tanh();
    (1.0 + (a / b).sqrt() * th) / (1.0 + (b / a).sqrt() * th)
}

/// Steady state of the two-way scheme,
/// Δ_ss = ((1-ε+rε)/2)·√(ε/(r(1-ε))) = √(a/b); the coupling rate drops
/// out. Zero at ε = 0; diverges as ε → 1 (hence the domain error there).
pub fn delta_steady_state(epsilon: f64, r: f64) -> Result<f64> {
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
    let w = 1.0 - epsilon;
    let m = w + r * epsilon;
    Ok(0.5 * m * (epsilon / (r * w)).sqrt())
}

fn check_open_unit(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            requirement: "loss fraction must lie strictly inside (0, 1)",
        });
    }
    Ok(())
}

/// Squeezing that minimizes the steady-state Δ: r_opt = (1-ε)/ε.
/// Antisqueezed input (r_opt < 1) becomes optimal beyond 50% loss.
pub fn optimal_r(epsilon: f64) -> Result<f64> {
    check_open_unit(epsilon)?;
    Ok((1.0 - epsilon) / epsilon)
}

/// Minimal steady-state Δ over the input squeezing: Δ_min = ε.
pub fn min_delta(epsilon: f64) -> Result<f64> {
    check_open_unit(epsilon)?;
    Ok(epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimize::golden_section_min;
    use approx::assert_abs_diff_eq;

    fn params(epsilon: f64, r: f64, tau: f64, t: f64) -> ChannelParams {
        ChannelParams::new(epsilon, r, 1.0, tau, t).unwrap()
    }

    fn delta_of(sample: &SamplePoint) -> f64 {
        sample.summary.epr().delta
    }

    #[test]
    fn pass_maps_are_symplectic() {
        let p = params(0.6, 3.0, 1e-2, 1.0);
        for pass in Pass::ALL {
            for flip in [false, true] {
                let m = pass_map(pass, &p, flip).unwrap();
                assert!(m.symplectic_error() <= 1e-14);
            }
        }
    }

    #[test]
    fn delta_starts_at_one() {
        let run = run_symmetric(&params(0.4, 3.0, 1e-3, 0.0), 3).unwrap();
        assert_eq!(run.len(), 1);
        assert_abs_diff_eq!(delta_of(&run[0]), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn short_trajectory_matches_riccati() {
        let p = params(0.4, 3.0, 1e-3, 0.5);
        let run = run_symmetric(&p, 6).unwrap();
        let coeffs = riccati_coeffs(0.4, 3.0, 1.0).unwrap();
        for point in &run[1..] {
            let cf = delta_closed_form(&coeffs, point.t);
            let rel = (delta_of(point) - cf).abs() / cf;
            assert!(rel <= 2e-3, "rel dev {rel} at t={}", point.t);
        }
    }

    #[test]
    fn coherent_light_at_boundary_loss_stays_uncorrelated() {
        // At r = 1, ε = 4/5 the rates balance (a = b) and Δ stays at 1.
        let coeffs = riccati_coeffs(0.8, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(coeffs.a, coeffs.b, epsilon = 1e-15);
        for t in [0.3, 1.0, 3.0] {
            assert_abs_diff_eq!(delta_closed_form(&coeffs, t), 1.0, epsilon = 1e-15);
        }
        let run = run_symmetric(&params(0.8, 1.0, 1e-3, 0.5), 2).unwrap();
        assert_abs_diff_eq!(delta_of(run.last().unwrap()), 1.0, epsilon = 2e-3);
    }

    #[test]
    fn pass4_vacuum_sign_does_not_move_delta() {
        let p = params(0.4, 3.0, 1e-2, 0.5);
        let a = run_symmetric_variant(&p, 1, false).unwrap();
        let b = run_symmetric_variant(&p, 1, true).unwrap();
        let da = delta_of(&a[0]);
        let db = delta_of(&b[0]);
        assert_abs_diff_eq!(da, db, epsilon = 1e-10);
        // The covariances themselves do differ; only Δ is insensitive.
        let diff = (&a[0].summary.gamma12 - &b[0].summary.gamma12)
            .iter()
            .fold(0.0f64, |mx, v| mx.max(v.abs()));
        assert!(diff > 1e-8);
    }

    #[test]
    fn riccati_rate_examples() {
        let c = riccati_coeffs(0.0, 2.0, 1.0).unwrap();
        assert_eq!(c.a, 0.0);
        assert_abs_diff_eq!(c.b, 8.0, epsilon = 1e-15);
        let c = riccati_coeffs(0.4, 3.0, 2.0).unwrap();
        assert_abs_diff_eq!(c.a, 2.0 * 0.4 * 1.8, epsilon = 1e-15);
        assert_abs_diff_eq!(c.b, 2.0 * 4.0 * 3.0 * 0.6 / 1.8, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_limits() {
        let c = riccati_coeffs(0.4, 3.0, 1.0).unwrap();
        assert_abs_diff_eq!(delta_closed_form(&c, 0.0), 1.0, epsilon = 1e-15);
        let dss = delta_steady_state(0.4, 3.0).unwrap();
        assert_abs_diff_eq!(delta_closed_form(&c, 1e6), dss, epsilon = 1e-12);
        assert_abs_diff_eq!(dss, (c.a / c.b).sqrt(), epsilon = 1e-15);
        // Lossless: algebraic decay to zero.
        let c0 = riccati_coeffs(0.0, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(delta_closed_form(&c0, 1.0), 1.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn steady_state_special_cases() {
        assert_abs_diff_eq!(
            delta_steady_state(0.36, 1.0).unwrap(),
            (0.36f64 / (4.0 * 0.64)).sqrt(),
            epsilon = 1e-15
        );
        for eps in [0.1, 0.3, 0.5, 0.8] {
            let r_opt = optimal_r(eps).unwrap();
            assert_abs_diff_eq!(delta_steady_state(eps, r_opt).unwrap(), eps, epsilon = 1e-14);
        }
        assert_eq!(delta_steady_state(0.0, 2.0).unwrap(), 0.0);
        assert!(delta_steady_state(1.0, 2.0).is_err());
    }

    #[test]
    fn optimum_confirmed_by_golden_section() {
        for eps in [0.1, 0.3, 0.5, 0.8] {
            let f = |ln_r: f64| delta_steady_state(eps, ln_r.exp()).unwrap();
            let (ln_r, d_min) = golden_section_min(f, -7.0, 7.0, 120);
            // Near the flat minimum the abscissa is only resolvable to
            // roughly sqrt(machine epsilon) in ln r, so compare r relatively.
            let r_opt = optimal_r(eps).unwrap();
            assert!((ln_r.exp() - r_opt).abs() <= 1e-6 * r_opt);
            assert_abs_diff_eq!(d_min, min_delta(eps).unwrap(), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(optimal_r(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert!(optimal_r(0.9).unwrap() < 1.0);
    }

    #[test]
    fn entanglement_threshold_for_coherent_light() {
        assert!(delta_steady_state(0.79, 1.0).unwrap() < 1.0);
        assert!(delta_steady_state(0.81, 1.0).unwrap() > 1.0);
    }
}
