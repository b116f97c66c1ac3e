//! M-site distribution: one sender system probed by the full beam, which a
//! lossless splitter tree then divides evenly among M receiver systems.
//! Each receiver interacts with its fraction of the field and its port is
//! measured. Every (sender, receiver) pair reproduces the two-party lossy
//! channel with ε = 1 - 1/M, which is the sharing constraint that makes
//! pairwise entanglement and fidelity polygamous.

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

use super::ChannelParams;

/// Parameters of a splitter-tree run. There is no line-loss parameter: the
/// tree is lossless and the effective pairwise loss is fixed by the site
/// count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygamyParams {
    pub r: f64,
    pub kappa2: f64,
    pub tau: f64,
    pub t_final: f64,
}

impl PolygamyParams {
    pub fn new(r: f64, kappa2: f64, tau: f64, t_final: f64) -> Result<Self> {
        ChannelParams::new(0.0, r, kappa2, tau, t_final)?;
        Ok(Self {
            r,
            kappa2,
            tau,
            t_final,
        })
    }

    fn channel(&self) -> ChannelParams {
        ChannelParams {
            epsilon: 0.0,
            r: self.r,
            kappa2: self.kappa2,
            tau: self.tau,
            t_final: self.t_final,
        }
    }
}

/// Result of a splitter-tree run: the reduced (sender, receiver) covariance
/// summaries, one per receiver, plus the equivalent two-party loss.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygamyRun {
    /// 1 - 1/M, the line loss each pair is equivalent to.
    pub epsilon_equivalent: f64,
    /// Pair summaries in receiver order.
    pub pairs: Vec<TwoModeSummary>,
}

/// A p-p coupling between one system and one field mode, embedded as an
/// exact symplectic shear: x_sys += g·p_field, x_field += g·p_sys.
fn coupling_map(n_modes: usize, system: usize, field: usize, g: f64) -> Result<SymplecticMap> {
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(2 * system, 2 * field + 1)] += g;
    m[(2 * field, 2 * system + 1)] += g;
    SymplecticMap::new(m)
}

/// Joint receiver coupling: every receiver couples to its port with the
/// reduced strength g in one shear.
fn receiver_map(n_modes: usize, pairs: &[(usize, usize)], g: f64) -> Result<SymplecticMap> {
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for &(sys, port) in pairs {
        m[(2 * sys, 2 * port + 1)] += g;
        m[(2 * port, 2 * sys + 1)] += g;
    }
    SymplecticMap::new(m)
}

fn run_single_pair(m_sites: usize, params: &PolygamyParams, pair: usize) -> Result<TwoModeSummary> {
    let channel = params.channel();
    let n_steps = channel.n_steps()?;
    let kt = channel.kappa_tau();
    let n_systems = 1 + m_sites;
    let light_slot = n_systems;
    let amp = 1.0 / (m_sites as f64).sqrt();

    // The per-step map sequence is identical every step; build it once.
    // After attaching the pulse there are n_systems+1 modes; each tree
    // split attaches one more.
    let sender_coupling = coupling_map(n_systems + 1, 0, light_slot, kt)?;
    let mut splits = Vec::with_capacity(m_sites - 1);
    for j in 0..m_sites - 1 {
        let n_modes = n_systems + 2 + j;
        let new_port = n_modes - 1;
        let frac = 1.0 / (m_sites - j) as f64;
        splits.push(beam_splitter_map(n_modes, new_port, light_slot, frac)?);
    }
    let full = n_systems + 1 + (m_sites - 1);
    let ports: Vec<usize> = (0..m_sites - 1)
        .map(|j| n_systems + 1 + j)
        .chain(core::iter::once(light_slot))
        .collect();
    let receiver_pairs: Vec<(usize, usize)> = (0..m_sites).map(|i| (1 + i, ports[i])).collect();
    let receivers = receiver_map(full, &receiver_pairs, kt * amp)?;

    let light = squeezed_light_state(params.r)?;
    let port_vacuum = GaussianState::vacuum(alloc::vec![ModeLabel::new(ModeKind::LightVacuum)]);
    let mut labels = alloc::vec![ModeLabel::new(ModeKind::Atom1)];
    for i in 0..m_sites {
        labels.push(ModeLabel::new(ModeKind::AtomAux(i as u32)));
    }
    let mut state = GaussianState::vacuum(labels);

    for _ in 0..n_steps {
        state = state.attach(&light).apply_symplectic(&sender_coupling)?;
        for split in &splits {
            state = state.attach(&port_vacuum).apply_symplectic(split)?;
        }
        state = state.apply_symplectic(&receivers)?;
        state = state.homodyne_update(ports[pair], Quadrature::X)?;
        while state.n_modes() > n_systems {
            state = state.discard(n_systems)?;
        }
    }
    TwoModeSummary::from_gamma(state.two_mode_submatrix(0, 1 + pair)?)
}

/// Runs the M-site scheme once per receiver (measuring that receiver's port
/// and tracing out the others) and returns all pairwise summaries.
pub fn run_polygamy(m_sites: usize, params: &PolygamyParams) -> Result<PolygamyRun> {
    if m_sites < 2 {
        return Err(Error::InvalidCount {
            name: "m-sites",
            value: m_sites,
            requirement: "the splitter tree needs at least two receivers",
        });
    }
    let mut pairs = Vec::with_capacity(m_sites);
    for pair in 0..m_sites {
        pairs.push(run_single_pair(m_sites, params, pair)?);
    }
    Ok(PolygamyRun {
        epsilon_equivalent: 1.0 - 1.0 / m_sites as f64,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::run_asymmetric;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_single_site() {
        let p = PolygamyParams::new(2.0, 1.0, 1e-2, 0.1).unwrap();
        assert!(matches!(
            run_polygamy(1, &p),
            Err(Error::InvalidCount { .. })
        ));
    }

    #[test]
    fn two_sites_match_half_loss_channel() {
        let p = PolygamyParams::new(2.0, 1.0, 1e-2, 0.1).unwrap();
        let run = run_polygamy(2, &p).unwrap();
        assert_abs_diff_eq!(run.epsilon_equivalent, 0.5, epsilon = 1e-15);
        let two_gas = ChannelParams::new(0.5, 2.0, 1.0, 1e-2, 0.1).unwrap();
        let direct = &run_asymmetric(&two_gas, 1).unwrap()[0].summary;
        for pair in &run.pairs {
            let dev = (&pair.gamma12 - &direct.gamma12)
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(dev <= 1e-10, "entrywise dev {dev}");
        }
    }

    #[test]
    fn receivers_are_exchangeable() {
        let p = PolygamyParams::new(3.0, 1.0, 1e-2, 0.1).unwrap();
        let run = run_polygamy(3, &p).unwrap();
        assert_eq!(run.pairs.len(), 3);
        for pair in &run.pairs[1..] {
            let dev = (&pair.gamma12 - &run.pairs[0].gamma12)
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(dev <= 1e-10, "entrywise dev {dev}");
        }
    }
}
