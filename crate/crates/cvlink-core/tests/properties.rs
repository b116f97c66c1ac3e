//! Property tests for the Gaussian state machinery: invariants that must
//! hold for any parameter choice, checked over randomized inputs.

use cvlink_core::entanglement::{negativity, partial_transpose, symmetric_form};
use cvlink_core::state::{
    beam_splitter_map, vacuum_state, GaussianState, Quadrature, SymplecticMap,
};
use cvlink_core::tolerances;
use nalgebra::DMatrix;
use proptest::prelude::*;

/// One elementary Gaussian operation on an n-mode register.
#[derive(Debug, Clone)]
enum Op {
    Rotate { mode: usize, theta: f64 },
    Squeeze { mode: usize, r: f64 },
    Split { signal: usize, vacuum: usize, frac: f64 },
}

/// Embeds a single-mode map at `mode` of an `n`-mode register.
fn embed_single(n: usize, mode: usize, one: &SymplecticMap) -> SymplecticMap {
    let before = SymplecticMap::identity(mode);
    let after = SymplecticMap::identity(n - mode - 1);
    before.direct_sum(one).direct_sum(&after)
}

fn op_map(n: usize, op: &Op) -> SymplecticMap {
    match op {
        Op::Rotate { mode, theta } => {
            embed_single(n, *mode, &SymplecticMap::single_mode_rotation(*theta))
        }
        Op::Squeeze { mode, r } => embed_single(
            n,
            *mode,
            &SymplecticMap::single_mode_squeezer(*r).expect("positive r"),
        ),
        Op::Split {
            signal,
            vacuum,
            frac,
        } => beam_splitter_map(n, *signal, *vacuum, *frac).expect("distinct modes"),
    }
}

/// Strategy for a short random circuit on `n` modes.
fn ops_strategy(n: usize) -> impl Strategy<Value = Vec<Op>> {
    let one = prop_oneof![
        (0..n, -3.2f64..3.2).prop_map(|(mode, theta)| Op::Rotate { mode, theta }),
        (0..n, 0.25f64..4.0).prop_map(|(mode, r)| Op::Squeeze { mode, r }),
        (0..n, 0..n.max(2) - 1, 0.0f64..0.95).prop_map(move |(signal, other, frac)| {
            // Pick a distinct partner by skipping over the signal index.
            let vacuum = if other >= signal { other + 1 } else { other };
            Op::Split {
                signal,
                vacuum: vacuum % n.max(2),
                frac,
            }
        }),
    ];
    proptest::collection::vec(one, 1..6)
}

fn apply_ops(state: &GaussianState, ops: &[Op]) -> GaussianState {
    let n = state.n_modes();
    let mut out = state.clone();
    for op in ops {
        if let Op::Split { signal, vacuum, .. } = op {
            if signal == vacuum || *signal >= n || *vacuum >= n {
                continue;
            }
        }
        out = out.apply_symplectic(&op_map(n, op)).expect("dims match");
    }
    out
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

proptest! {
    #[test]
    fn composed_circuits_stay_symplectic(ops in ops_strategy(3)) {
        let mut total = SymplecticMap::identity(3);
        for op in &ops {
            if let Op::Split { signal, vacuum, .. } = op {
                if signal == vacuum {
                    continue;
                }
            }
            let step = op_map(3, op);
            total = SymplecticMap::new(step.matrix() * total.matrix()).expect("still symplectic");
        }
        prop_assert!(total.symplectic_error() <= tolerances::SYMPLECTIC_TOL);
    }

    #[test]
    fn evolution_preserves_physicality(ops in ops_strategy(3)) {
        let state = apply_ops(&vacuum_state(3).unwrap(), &ops);
        prop_assert!(state.is_physical());
    }

    #[test]
    fn attach_then_discard_restores_state(ops in ops_strategy(2)) {
        let state = apply_ops(&vacuum_state(2).unwrap(), &ops);
        let n = state.n_modes();
        let round = state.attach(&vacuum_state(1).unwrap()).discard(n).unwrap();
        let scale = max_abs(state.gamma()).max(1.0);
        prop_assert!(max_abs(&(round.gamma() - state.gamma())) <= 1e-12 * scale);
    }

    #[test]
    fn conditioning_never_increases_diagonal(ops in ops_strategy(3), measure_p in any::<bool>()) {
        let state = apply_ops(&vacuum_state(3).unwrap(), &ops);
        let quad = if measure_p { Quadrature::P } else { Quadrature::X };
        let after = state.homodyne_update(0, quad).unwrap();
        let scale = max_abs(state.gamma()).max(1.0);
        // Mode 0 is removed, so remaining index j maps to original j + 1.
        for j in 0..2 * after.n_modes() {
            prop_assert!(after.gamma()[(j, j)] <= state.gamma()[(j + 2, j + 2)] + 1e-10 * scale);
        }
        prop_assert!(after.is_physical());
    }

    #[test]
    fn partial_transpose_is_involution(ops in ops_strategy(2)) {
        let state = apply_ops(&vacuum_state(2).unwrap(), &ops);
        let g = state.gamma().clone();
        let twice = partial_transpose(&partial_transpose(&g).unwrap()).unwrap();
        prop_assert_eq!(twice, g);
    }

    #[test]
    fn negativity_invariant_under_local_operations(
        r_source in 1.2f64..3.0,
        theta_a in -3.2f64..3.2,
        theta_b in -3.2f64..3.2,
        r_a in 0.5f64..2.0,
        r_b in 0.5f64..2.0,
    ) {
        let n = 0.5 * (r_source + 1.0 / r_source);
        let k = 0.5 * (r_source - 1.0 / r_source);
        let base = GaussianState::from_covariance(
            vacuum_state(2).unwrap().modes().to_vec(),
            symmetric_form(n, k),
        )
        .unwrap();
        let before = negativity(base.gamma()).unwrap();

        let local_a = SymplecticMap::single_mode_rotation(theta_a)
            .direct_sum(&SymplecticMap::single_mode_squeezer(r_b).unwrap());
        let squeeze_a = SymplecticMap::single_mode_squeezer(r_a)
            .unwrap()
            .direct_sum(&SymplecticMap::single_mode_rotation(theta_b));
        let moved = base
            .apply_symplectic(&local_a)
            .unwrap()
            .apply_symplectic(&squeeze_a)
            .unwrap();
        let after = negativity(moved.gamma()).unwrap();
        prop_assert!((after.n - before.n).abs() <= 1e-9 * before.n.max(1e-6));
    }

    #[test]
    fn loss_channel_matches_splitter_dilation(
        ops in ops_strategy(2),
        mode in 0usize..2,
        frac in 0.0f64..0.999,
    ) {
        let state = apply_ops(&vacuum_state(2).unwrap(), &ops);
        let direct = state.loss_channel(mode, frac).unwrap();

        let n = state.n_modes();
        let dilated = state
            .attach(&vacuum_state(1).unwrap())
            .apply_symplectic(&beam_splitter_map(n + 1, mode, n, frac).unwrap())
            .unwrap()
            .discard(n)
            .unwrap();
        let scale = max_abs(state.gamma()).max(1.0);
        prop_assert!(max_abs(&(direct.gamma() - dilated.gamma())) <= 1e-12 * scale);
    }
}
