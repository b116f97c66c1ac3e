//! Multimode Gaussian states as covariance matrices, and the primitive
//! transformations: symplectic evolution, beam splitters, loss channels,
//! mode attach/discard, and conditional homodyne measurement updates.
//!
//! Everything here is a pure function from state to state. The measured-
//! outcome dependence of homodyne detection lives entirely in the (untracked)
//! mean vector, so the covariance pipeline is deterministic.

use alloc::vec::Vec;

use nalgebra::{Cholesky, Complex, DMatrix};
#[allow(unused_imports)]
use num_traits::Float;

use crate::{tolerances, Error, Result};

/// What a mode represents. `AtomAux` supports constructions with extra
/// material systems, such as the M-site splitter-tree distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Atom1,
    Atom2,
    LightSignal,
    LightVacuum,
    AtomAux(u32),
}

/// Label attached to one (x, p) quadrature pair in the mode register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeLabel {
    pub kind: ModeKind,
}

impl ModeLabel {
    pub const fn new(kind: ModeKind) -> Self {
        Self { kind }
    }
}

/// Which quadrature of a mode participates in an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    P,
}

impl Quadrature {
    /// Offset of this quadrature within a mode's (x, p) pair.
    fn offset(self) -> usize {
        match self {
            Quadrature::X => 0,
            Quadrature::P => 1,
        }
    }
}

/// The commutator matrix σ for `n_modes` modes: block-diagonal with
/// per-mode blocks [[0, 1], [-1, 0]]. Satisfies σᵀ = -σ and σ² = -I.
pub fn commutator_matrix(n_modes: usize) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for m in 0..n_modes {
        s[(2 * m, 2 * m + 1)] = 1.0;
        s[(2 * m + 1, 2 * m)] = -1.0;
    }
    s
}

fn symmetrize(g: &mut DMatrix<f64>) {
    let gt = g.transpose();
    *g += gt;
    *g *= 0.5;
}

/// Sorted ascending moduli of the eigenvalues of `σ⁻¹ γ` for a symmetric
/// positive semidefinite `γ`; for a physical covariance these are the
/// symplectic eigenvalues, each appearing twice.
///
/// The general nonsymmetric eigensolver and the SVD are avoided
/// deliberately: both of their iterations lack a convergence guarantee in
/// nalgebra and can spin forever on unlucky inputs (observed in randomized
/// testing). Instead, factor `γ = W Wᵀ`; then `σ⁻¹ γ` shares its
/// characteristic polynomial with `S = Wᵀ σ⁻¹ W`, which is antisymmetric,
/// so `iS` is Hermitian with real eigenvalues `±ν` — and the Hermitian
/// eigensolver's shifted tridiagonal iteration converges unconditionally.
///
/// Long strongly squeezed evolutions grade `γ` over many decades, so two
/// accuracy measures matter: a per-mode symplectic diagonal balancing
/// `diag(d, 1/d)` (which leaves the moduli exactly invariant) equalizes the
/// x and p scales first, and the factor `W` comes from a Cholesky
/// decomposition, which respects the grading elementwise where a spectral
/// square root would smear absolute-sized errors into the small directions.
/// Singular-within-rounding input falls back to the spectral root with its
/// negative rounding clamped.
pub(crate) fn symplectic_moduli(gamma: &DMatrix<f64>) -> Vec<f64> {
    let dim = gamma.nrows();
    let n_modes = dim / 2;
    let mut bal = gamma.clone();
    symmetrize(&mut bal);
    for m in 0..n_modes {
        let xx = bal[(2 * m, 2 * m)];
        let pp = bal[(2 * m + 1, 2 * m + 1)];
        if xx > 0.0 && pp > 0.0 {
            let d = (pp / xx).powf(0.25);
            for j in 0..dim {
                bal[(2 * m, j)] *= d;
                bal[(2 * m + 1, j)] /= d;
            }
            for i in 0..dim {
                bal[(i, 2 * m)] *= d;
                bal[(i, 2 * m + 1)] /= d;
            }
        }
    }
    let sigma = commutator_matrix(n_modes);
    let s_mat = match Cholesky::new(bal.clone()) {
        Some(ch) => {
            let l = ch.l();
            l.transpose() * &sigma * &l
        }
        None => {
            let se = bal.symmetric_eigen();
            let mut scaled = se.eigenvectors.clone();
            for (j, lam) in se.eigenvalues.iter().enumerate() {
                let s = lam.max(0.0).sqrt();
                for i in 0..dim {
                    scaled[(i, j)] *= s;
                }
            }
            let root = &scaled * se.eigenvectors.transpose();
            &root * &sigma * &root
        }
    };
    let hermitian = DMatrix::from_fn(dim, dim, |i, j| Complex::new(0.0, s_mat[(i, j)]));
    let mut moduli: Vec<f64> = hermitian
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|nu| nu.abs())
        .collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).expect("moduli are finite"));
    moduli
}

/// Maximum entrywise deviation of `S σ Sᵀ` from σ.
fn symplectic_deviation(matrix: &DMatrix<f64>) -> f64 {
    let n_modes = matrix.nrows() / 2;
    let sigma = commutator_matrix(n_modes);
    let dev = matrix * &sigma * matrix.transpose() - &sigma;
    dev.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Linear evolution matrix acting on the ordered quadrature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMap {
    matrix: DMatrix<f64>,
}

impl SymplecticMap {
    /// Wraps a matrix, verifying the symplectic condition `S σ Sᵀ = σ`.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                map_dim: matrix.nrows(),
                state_dim: matrix.ncols(),
            });
        }
        let max_dev = symplectic_deviation(&matrix);
        if max_dev > tolerances::SYMPLECTIC_TOL {
            return Err(Error::NotSymplectic { max_dev });
        }
        Ok(Self { matrix })
    }

    /// Identity map on `n_modes` modes.
    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    /// Single-mode squeezer diag(1/√r, √r); maps the vacuum to diag(1/r, r).
    pub fn single_mode_squeezer(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r",
                value: r,
                requirement: "squeezing parameter must be positive and finite",
            });
        }
        let mut m = DMatrix::identity(2, 2);
        m[(0, 0)] = 1.0 / r.sqrt();
        m[(1, 1)] = r.sqrt();
        Self::new(m)
    }

    /// Single-mode phase-space rotation by `theta`.
    pub fn single_mode_rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let mut m = DMatrix::identity(2, 2);
        m[(0, 0)] = c;
        m[(0, 1)] = s;
        m[(1, 0)] = -s;
        m[(1, 1)] = c;
        Self { matrix: m }
    }

    /// Block-diagonal combination acting independently on two registers.
    pub fn direct_sum(&self, other: &SymplecticMap) -> SymplecticMap {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.matrix);
        m.view_mut((a, a), (b, b)).copy_from(&other.matrix);
        SymplecticMap { matrix: m }
    }

    /// Number of quadrature variables the map acts on.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Maximum entrywise deviation from the symplectic condition.
    pub fn symplectic_error(&self) -> f64 {
        symplectic_deviation(&self.matrix)
    }
}

/// Beam-splitter rotation coupling a signal mode to a vacuum port, embedded
/// in an `n_modes`-mode identity. With `c = √(1-ε)` and `s = √ε` the outputs
/// are `out_sig = c·in_sig + s·in_vac` and `out_vac = -s·in_sig + c·in_vac`,
/// applied identically to the x and p quadratures. The matrix is orthogonal,
/// hence symplectic.
pub fn beam_splitter_map(
    n_modes: usize,
    signal: usize,
    vacuum: usize,
    epsilon: f64,
) -> Result<SymplecticMap> {
    if signal >= n_modes {
        return Err(Error::ModeOutOfRange {
            index: signal,
            n_modes,
        });
    }
    if vacuum >= n_modes || vacuum == signal {
        return Err(Error::ModeOutOfRange {
            index: vacuum,
            n_modes,
        });
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            requirement: "loss fraction must lie in [0, 1)",
        });
    }
    let c = (1.0 - epsilon).sqrt();
    let s = epsilon.sqrt();
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for q in 0..2 {
        let a = 2 * signal + q;
        let b = 2 * vacuum + q;
        m[(a, a)] = c;
        m[(a, b)] = s;
        m[(b, a)] = -s;
        m[(b, b)] = c;
    }
    SymplecticMap::new(m)
}

/// Mean-free multimode Gaussian state: covariance matrix plus an ordered
/// mode register. Vacuum-normalized so `gamma_vacuum = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    modes: Vec<ModeLabel>,
    gamma: DMatrix<f64>,
}

/// Vacuum state of `n_modes` modes with generic auxiliary labels; use
/// [`GaussianState::vacuum`] to control the labels.
pub fn vacuum_state(n_modes: usize) -> Result<GaussianState> {
    if n_modes < 1 {
        return Err(Error::InvalidCount {
            name: "n_modes",
            value: n_modes,
            requirement: "a state needs at least one mode",
        });
    }
    let labels = (0..n_modes)
        .map(|i| ModeLabel::new(ModeKind::AtomAux(i as u32)))
        .collect();
    Ok(GaussianState::vacuum(labels))
}

/// Single light mode with covariance diag(1/r, r): `r > 1` is x-squeezed,
/// `r < 1` x-antisqueezed, `r = 1` coherent (vacuum statistics).
pub fn squeezed_light_state(r: f64) -> Result<GaussianState> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            requirement: "squeezing parameter must be positive and finite",
        });
    }
    let mut gamma = DMatrix::identity(2, 2);
    gamma[(0, 0)] = 1.0 / r;
    gamma[(1, 1)] = r;
    Ok(GaussianState {
        modes: alloc::vec![ModeLabel::new(ModeKind::LightSignal)],
        gamma,
    })
}

impl GaussianState {
    /// Vacuum state with an explicit mode register.
    pub fn vacuum(modes: Vec<ModeLabel>) -> Self {
        let n = modes.len();
        Self {
            modes,
            gamma: DMatrix::identity(2 * n, 2 * n),
        }
    }

    /// Builds a state from an explicit covariance matrix. The matrix is
    /// re-symmetrized; dimensions must match the register.
    pub fn from_covariance(modes: Vec<ModeLabel>, mut gamma: DMatrix<f64>) -> Result<Self> {
        if gamma.nrows() != 2 * modes.len() || gamma.ncols() != 2 * modes.len() {
            return Err(Error::DimensionMismatch {
                map_dim: gamma.nrows(),
                state_dim: 2 * modes.len(),
            });
        }
        symmetrize(&mut gamma);
        Ok(Self { modes, gamma })
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn gamma(&self) -> &DMatrix<f64> {
        &self.gamma
    }

    /// Applies `gamma -> S gamma Sᵀ`, re-symmetrizing to suppress drift.
    pub fn apply_symplectic(&self, map: &SymplecticMap) -> Result<GaussianState> {
        if map.dim() != self.gamma.nrows() {
            return Err(Error::DimensionMismatch {
                map_dim: map.dim(),
                state_dim: self.gamma.nrows(),
            });
        }
        let mut gamma = map.matrix() * &self.gamma * map.matrix().transpose();
        symmetrize(&mut gamma);
        Ok(GaussianState {
            modes: self.modes.clone(),
            gamma,
        })
    }

    /// Block-diagonal concatenation with another state (fresh, uncorrelated
    /// segment).
    pub fn attach(&self, other: &GaussianState) -> GaussianState {
        let (a, b) = (self.gamma.nrows(), other.gamma.nrows());
        let mut gamma = DMatrix::zeros(a + b, a + b);
        gamma.view_mut((0, 0), (a, a)).copy_from(&self.gamma);
        gamma.view_mut((a, a), (b, b)).copy_from(&other.gamma);
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        GaussianState { modes, gamma }
    }

    /// Removes one mode: deletes its rows and columns, leaving the reduced
    /// Gaussian state of the remaining modes.
    pub fn discard(&self, mode: usize) -> Result<GaussianState> {
        if mode >= self.n_modes() {
            return Err(Error::ModeOutOfRange {
                index: mode,
                n_modes: self.n_modes(),
            });
        }
        let keep: Vec<usize> = (0..self.gamma.nrows())
            .filter(|&i| i / 2 != mode)
            .collect();
        let gamma = DMatrix::from_fn(keep.len(), keep.len(), |i, j| self.gamma[(keep[i], keep[j])]);
        let modes = self
            .modes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != mode)
            .map(|(_, &l)| l)
            .collect();
        Ok(GaussianState { modes, gamma })
    }

    /// Intensity loss `eps_prime` on one mode: cross-correlations scale by
    /// `√(1-ε')` and the mode's own block becomes `(1-ε')·block + ε'·I`.
    /// Equivalent to a beam splitter against vacuum followed by discarding
    /// the vacuum port.
    pub fn loss_channel(&self, mode: usize, eps_prime: f64) -> Result<GaussianState> {
        if mode >= self.n_modes() {
            return Err(Error::ModeOutOfRange {
                index: mode,
                n_modes: self.n_modes(),
            });
        }
        if !(0.0..=1.0).contains(&eps_prime) {
            return Err(Error::InvalidParameter {
                name: "eps_prime",
                value: eps_prime,
                requirement: "loss fraction must lie in [0, 1]",
            });
        }
        let f = (1.0 - eps_prime).sqrt();
        let mut gamma = self.gamma.clone();
        let (i0, i1) = (2 * mode, 2 * mode + 1);
        for j in 0..gamma.ncols() {
            gamma[(i0, j)] *= f;
            gamma[(i1, j)] *= f;
        }
        for i in 0..gamma.nrows() {
            gamma[(i, i0)] *= f;
            gamma[(i, i1)] *= f;
        }
        gamma[(i0, i0)] += eps_prime;
        gamma[(i1, i1)] += eps_prime;
        symmetrize(&mut gamma);
        Ok(GaussianState {
            modes: self.modes.clone(),
            gamma,
        })
    }

    /// Conditional homodyne update: measuring quadrature `quad` of
    /// `measured_mode` replaces the covariance of the remaining modes by the
    /// Schur complement `A - C (π B π)⁻ Cᵀ` and removes the measured mode.
    /// `(·)⁻` is the Moore-Penrose pseudoinverse with a relative singular
    /// value cutoff, so a zero-variance direction makes the update a no-op
    /// in that direction rather than an error. The update is measurement-
    /// outcome independent.
    pub fn homodyne_update(&self, measured_mode: usize, quad: Quadrature) -> Result<GaussianState> {
        if measured_mode >= self.n_modes() {
            return Err(Error::ModeOutOfRange {
                index: measured_mode,
                n_modes: self.n_modes(),
            });
        }
        let dim = self.gamma.nrows();
        let m0 = 2 * measured_mode;
        let keep: Vec<usize> = (0..dim).filter(|&i| i / 2 != measured_mode).collect();

        let a = DMatrix::from_fn(keep.len(), keep.len(), |i, j| self.gamma[(keep[i], keep[j])]);
        let b = DMatrix::from_fn(2, 2, |i, j| self.gamma[(m0 + i, m0 + j)]);
        let c = DMatrix::from_fn(keep.len(), 2, |i, j| self.gamma[(keep[i], m0 + j)]);

        let mut pi = DMatrix::zeros(2, 2);
        pi[(quad.offset(), quad.offset())] = 1.0;
        let pbp = &pi * b * &pi;

        let svd = pbp.clone().svd(true, true);
        let cutoff = tolerances::PINV_RCOND * svd.singular_values.max();
        let pinv = svd
            .pseudo_inverse(cutoff)
            .unwrap_or_else(|_| DMatrix::zeros(2, 2));

        let mut gamma = a - &c * pinv * c.transpose();
        symmetrize(&mut gamma);
        let modes = self
            .modes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != measured_mode)
            .map(|(_, &l)| l)
            .collect();
        Ok(GaussianState { modes, gamma })
    }

    /// Smallest eigenvalue modulus of `i σ⁻¹ γ`; physical states have all
    /// moduli ≥ 1.
    pub fn symplectic_eigen_min(&self) -> f64 {
        symplectic_moduli(&self.gamma)
            .first()
            .copied()
            .unwrap_or(f64::INFINITY)
    }

    /// Whether the uncertainty principle holds within the crate's
    /// physicality slack.
    pub fn is_physical(&self) -> bool {
        self.symplectic_eigen_min() >= 1.0 - tolerances::PHYSICALITY_TOL
    }

    /// 4×4 reduced covariance of the ordered mode pair `(a, b)`, rows and
    /// columns ordered (x_a, p_a, x_b, p_b).
    pub fn two_mode_submatrix(&self, a: usize, b: usize) -> Result<DMatrix<f64>> {
        for &m in &[a, b] {
            if m >= self.n_modes() {
                return Err(Error::ModeOutOfRange {
                    index: m,
                    n_modes: self.n_modes(),
                });
            }
        }
        let idx = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
        Ok(DMatrix::from_fn(4, 4, |i, j| self.gamma[(idx[i], idx[j])]))
    }
}
