//! Equilibrium analysis on the payoff tensors.
//!
//! Covers spectra and global-equilibrium detection through common
//! eigenvectors, reduced payoff matrices and best responses (unconstrained
//! and on the unitary families), Nash verification of a candidate system
//! density, and grid scans over unitary and classical product profiles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{eig_hermitian, CMatrix, EigenDecomposition, C64, ZERO};
use crate::error::{Error, Result};
use crate::game::{
    embed_classical, product_density, GameDefinition, MixedClassicalStrategy, PayoffTensor,
    PdParams, Player, StrategyDensity, SystemStrategyState, STRATEGY_DIM,
};
use crate::strategy::{reconstruct, StrategyVector, UnitaryFamily, UnitaryParams, UNITARY_TOL};

/// Eigenvalues closer than this are grouped into one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Singular-value threshold when intersecting eigenspaces.
pub const SUBSPACE_TOL: f64 = 1e-8;
/// Largest payoff gain a deviating player may have at an equilibrium.
pub const NE_TOL: f64 = 1e-9;
/// Relative residual allowed when splitting a system state into factors.
pub const FACTOR_TOL: f64 = 1e-9;
/// Smallest per-angle grid accepted by best-response searches.
pub const MIN_GRID: usize = 8;

/// Grid values closer than this count as ties in an argmax.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Cluster {
    /// Mean of the grouped eigenvalues.
    pub eigenvalue: f64,
    pub indices: Vec<usize>,
    pub projector: CMatrix,
}

impl Cluster {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub player: Player,
    pub decomposition: EigenDecomposition,
    /// Descending by eigenvalue.
    pub clusters: Vec<Cluster>,
}

impl SpectrumReport {
    pub fn top(&self) -> &Cluster {
        &self.clusters[0]
    }

    /// The cluster containing `value`, if any.
    pub fn cluster_at(&self, value: f64, tol: f64) -> Option<&Cluster> {
        self.clusters
            .iter()
            .find(|c| (c.eigenvalue - value).abs() <= tol)
    }
}

/// Eigendecomposition of `H^i` with degenerate eigenvalues grouped.
pub fn spectrum(h: &PayoffTensor, cluster_tol: f64) -> Result<SpectrumReport> {
    if cluster_tol.is_nan() || cluster_tol <= 0.0 {
        return Err(Error::InvalidInput(
            "cluster tolerance must be positive".into(),
        ));
    }
    let decomposition = eig_hermitian(h.matrix())?;
    let clusters = cluster_eigenvalues(&decomposition, cluster_tol);
    Ok(SpectrumReport {
        player: h.player(),
        decomposition,
        clusters,
    })
}

fn cluster_eigenvalues(eig: &EigenDecomposition, tol: f64) -> Vec<Cluster> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[*g.last().unwrap()] - lambda).abs() <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    groups
        .into_iter()
        .map(|indices| {
            let eigenvalue =
                indices.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / indices.len() as f64;
            let projector = eig.projector(&indices);
            Cluster {
                eigenvalue,
                indices,
                projector,
            }
        })
        .collect()
}

/// Orthonormal basis of `range(Π₁) ∩ range(Π₂)` for orthogonal projectors,
/// read off as the eigenvalue-1 eigenspace of `Π₁Π₂Π₁`.
pub fn subspace_intersection(p1: &CMatrix, p2: &CMatrix, tol: f64) -> Result<Vec<Vec<C64>>> {
    let m = p1.matmul(p2)?.matmul(p1)?;
    let m = (&m + &m.dagger()).scale(C64::new(0.5, 0.0));
    let eig = eig_hermitian(&m)?;
    Ok(eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors)
        .filter(|(l, _)| **l >= 1.0 - tol)
        .map(|(_, v)| v)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    ClassicalNe,
    UnitaryNe,
    NonUnitaryCandidate,
    Ges,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategySet {
    Full,
    Unitary,
    Classical,
}

impl std::str::FromStr for StrategySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(StrategySet::Full),
            "unitary" => Ok(StrategySet::Unitary),
            "classical" => Ok(StrategySet::Classical),
            other => Err(Error::InvalidInput(format!(
                "strategy set must be full, unitary or classical, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportState {
    Vector(Vec<C64>),
    Density(CMatrix),
    Profile([UnitaryParams; 2]),
    ClassicalMixture { p_nc: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub kind: EquilibriumKind,
    pub strategy_set: Option<StrategySet>,
    pub state: Option<ReportState>,
    pub payoffs: [f64; 2],
    pub unitary_flags: [bool; 2],
    /// Largest payoff gain any single player can obtain by deviating;
    /// `≤ tol` at an equilibrium.
    pub deviation_margin: Option<f64>,
    /// Per-player gains behind `deviation_margin`.
    pub player_margins: Option<[f64; 2]>,
}

/// A state that is simultaneously an eigenvector of both payoff tensors.
#[derive(Debug, Clone, PartialEq)]
pub struct CommonEigenstate {
    /// `(λ¹, λ²)`: the payoffs both players get on the state.
    pub eigenvalues: [f64; 2],
    /// Dimension of the common eigenspace; `state` is one unit vector in it.
    pub dim: usize,
    pub state: Vec<C64>,
    /// Unit-norm single-player factors when the state is a product.
    pub factors: Option<[StrategyVector; 2]>,
    pub unitary_flags: [bool; 2],
    /// Both players read the same eigenvalue.
    pub shared: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GesReport {
    pub report: EquilibriumReport,
    /// Common eigenstates below the joint maximum, excluding the joint null space.
    pub common: Vec<CommonEigenstate>,
}

fn product_flags(state: &SystemStrategyState) -> (Option<[StrategyVector; 2]>, [bool; 2]) {
    match state.factorize(FACTOR_TOL) {
        Some((a, b)) => (
            Some([a, b]),
            [
                reconstruct(&a).is_unitary(UNITARY_TOL),
                reconstruct(&b).is_unitary(UNITARY_TOL),
            ],
        ),
        None => (None, [false, false]),
    }
}

/// Looks for a global equilibrium state: a common eigenvector at the top
/// eigenvalue of both tensors. Also lists every other common eigenstate
/// (except the shared null space).
pub fn ges_search(h1: &PayoffTensor, h2: &PayoffTensor, cluster_tol: f64) -> Result<GesReport> {
    let s1 = spectrum(h1, cluster_tol)?;
    let s2 = spectrum(h2, cluster_tol)?;

    let mut common = Vec::new();
    let mut ges = None;
    for (i, c1) in s1.clusters.iter().enumerate() {
        for (j, c2) in s2.clusters.iter().enumerate() {
            let both_null =
                c1.eigenvalue.abs() <= cluster_tol && c2.eigenvalue.abs() <= cluster_tol;
            if both_null && !(i == 0 && j == 0) {
                continue;
            }
            let basis = subspace_intersection(&c1.projector, &c2.projector, SUBSPACE_TOL)?;
            let Some(first) = basis.first() else { continue };
            let state = SystemStrategyState::new(first.clone())?;
            let (factors, unitary_flags) = product_flags(&state);
            let entry = CommonEigenstate {
                eigenvalues: [c1.eigenvalue, c2.eigenvalue],
                dim: basis.len(),
                state: state.vec,
                factors,
                unitary_flags,
                shared: (c1.eigenvalue - c2.eigenvalue).abs() <= cluster_tol,
            };
            if i == 0 && j == 0 {
                ges = Some(entry);
            } else {
                common.push(entry);
            }
        }
    }

    let report = match ges {
        Some(e) => EquilibriumReport {
            kind: EquilibriumKind::Ges,
            strategy_set: None,
            state: Some(ReportState::Vector(e.state)),
            payoffs: e.eigenvalues,
            unitary_flags: e.unitary_flags,
            deviation_margin: Some(0.0),
            player_margins: Some([0.0, 0.0]),
        },
        None => EquilibriumReport {
            kind: EquilibriumKind::None,
            strategy_set: None,
            state: None,
            payoffs: [s1.top().eigenvalue, s2.top().eigenvalue],
            unitary_flags: [false, false],
            deviation_margin: None,
            player_margins: None,
        },
    };
    Ok(GesReport { report, common })
}

/// `H^i` contracted against a fixed opponent density; a quadratic form on
/// the remaining player's strategy space.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPayoff {
    pub player: Player,
    pub matrix: CMatrix,
    pub opponent: StrategyDensity,
}

impl ReducedPayoff {
    /// `⟨v|H_R|v⟩` for a strategy vector in the reduced space.
    pub fn payoff(&self, v: &[C64]) -> f64 {
        self.matrix.sandwich(v, v).expect("matching dimension").re
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `Re(D†·H_R·D)` for the family's embedding `D`, so that the payoff of
    /// the family member with real coordinates `a` is `aᵀ·M·a`.
    pub fn family_form(&self, family: UnitaryFamily) -> Result<Vec<Vec<f64>>> {
        if self.dim() != STRATEGY_DIM {
            return Err(Error::DimensionMismatch(
                "unitary families live on the four-dimensional strategy space".into(),
            ));
        }
        let emb = family.embedding();
        Ok(emb
            .iter()
            .map(|&(i, pi)| {
                emb.iter()
                    .map(|&(j, pj)| (pi.conj() * self.matrix[(i, j)] * pj).re)
                    .collect()
            })
            .collect())
    }
}

/// Reduces `h` against `opponent`, keeping `player`'s strategy space:
/// `H_R = Tr_{−i}(ρ^{−i} H)`.
pub fn reduced_payoff(
    h: &PayoffTensor,
    opponent: &StrategyDensity,
    player: Player,
) -> Result<ReducedPayoff> {
    let d = h.local_dim();
    if opponent.dim() != d {
        return Err(Error::InvalidDensity(format!(
            "opponent density must be {d}x{d}, got {0}x{0}",
            opponent.dim()
        )));
    }
    let hm = h.matrix();
    let sigma = opponent.matrix();
    let mut out = CMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let mut acc = ZERO;
            for c in 0..d {
                for e in 0..d {
                    let w = sigma[(e, c)];
                    if w == ZERO {
                        continue;
                    }
                    acc += match player {
                        Player::One => hm[(a * d + c, b * d + e)] * w,
                        Player::Two => hm[(c * d + a, e * d + b)] * w,
                    };
                }
            }
            out[(a, b)] = acc;
        }
    }
    Ok(ReducedPayoff {
        player,
        matrix: out,
        opponent: opponent.clone(),
    })
}

/// Unconstrained best response: the top eigenvector of `H_R` (unit norm,
/// generally not a unitary operator) and its payoff. Reduced matrices of
/// the classical subgame are embedded back into `(N^c, F^c, 0, 0)`.
pub fn best_response_full(hr: &ReducedPayoff) -> Result<(StrategyVector, f64)> {
    let eig = eig_hermitian(&hr.matrix)?;
    let v = &eig.eigenvectors[0];
    let vector = if v.len() == STRATEGY_DIM {
        StrategyVector::from_slice(v)?
    } else {
        embed_classical(v)
    };
    Ok((vector, eig.eigenvalues[0]))
}

/// Exact best response on a unitary family: the top eigenpair of the real
/// quadratic form `Re(D†H_RD)`. Returns the real unit coordinates and payoff.
pub fn best_response_on_family(
    hr: &ReducedPayoff,
    family: UnitaryFamily,
) -> Result<(Vec<f64>, f64)> {
    let form = family_form_matrix(&hr.family_form(family)?);
    let eig = eig_hermitian(&form)?;
    let v = &eig.eigenvectors[0];
    let re: Vec<f64> = v.iter().map(|z| z.re).collect();
    let im: Vec<f64> = v.iter().map(|z| z.im).collect();
    let pick = if norm(&re) >= norm(&im) { re } else { im };
    let n = norm(&pick);
    Ok((pick.iter().map(|x| x / n).collect(), eig.eigenvalues[0]))
}

fn family_form_matrix(form: &[Vec<f64>]) -> CMatrix {
    let n = form.len();
    let data = form
        .iter()
        .flat_map(|row| row.iter().map(|&x| C64::new(x, 0.0)))
        .collect();
    CMatrix::from_vec(n, n, data).expect("finite form")
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn quad(form: &[Vec<f64>], a: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in form.iter().enumerate() {
        let mut r = 0.0;
        for (j, m) in row.iter().enumerate() {
            r += m * a[j];
        }
        acc += a[i] * r;
    }
    acc
}

/// Evenly spaced grid over a family: flip angle on `[0, π]` inclusive,
/// other angles on `[−π, π)`. Ordered by flip angle, then the remaining
/// angles by increasing magnitude (positive before negative), which
/// realizes the argmax tie-breaking order.
pub fn family_grid(family: UnitaryFamily, resolution: usize) -> Vec<UnitaryParams> {
    use std::f64::consts::{PI, TAU};
    let n = resolution.max(2);
    let flip: Vec<f64> = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
    let mut around: Vec<f64> = (0..n).map(|k| -PI + TAU * k as f64 / n as f64).collect();
    around.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(b.total_cmp(a)));
    let mut out = Vec::new();
    match family {
        UnitaryFamily::ThetaPhi => {
            for &theta in &flip {
                for &phi in &around {
                    out.push(UnitaryParams::theta_phi(theta, phi));
                }
            }
        }
        UnitaryFamily::Euler => {
            for &gamma in &flip {
                for &alpha in &around {
                    for &beta in &around {
                        out.push(UnitaryParams::euler(alpha, beta, gamma));
                    }
                }
            }
        }
    }
    out
}

/// Best unitary response to a unitary opponent, searched over the
/// opponent's family.
///
/// The exact optimum comes from [`best_response_on_family`]; the grid
/// supplies a canonical representative (smallest flip angle, then smallest
/// remaining angles) whenever a grid point attains the optimum within
/// [`NE_TOL`]. Otherwise the exact maximizer is returned.
pub fn best_response_unitary(
    game: &GameDefinition,
    opponent: &UnitaryParams,
    player: Player,
    grid: usize,
) -> Result<(UnitaryParams, f64)> {
    if grid < MIN_GRID {
        return Err(Error::InvalidInput(format!(
            "grid resolution must be at least {MIN_GRID}, got {grid}"
        )));
    }
    if !opponent.is_finite() {
        return Err(Error::InvalidInput("opponent angles must be finite".into()));
    }
    let h = game.build_payoff_tensor(player);
    let opp = StrategyDensity::pure_strategy(&opponent.vector())?;
    let hr = reduced_payoff(&h, &opp, player)?;
    let family = opponent.family();
    let (coords, exact) = best_response_on_family(&hr, family)?;

    let form = hr.family_form(family)?;
    let mut best: Option<(UnitaryParams, f64)> = None;
    for p in family_grid(family, grid) {
        let value = quad(&form, &p.coords());
        if best.is_none_or(|(_, b)| value > b + TIE_TOL) {
            best = Some((p, value));
        }
    }
    match best {
        Some((p, value)) if value >= exact - NE_TOL => Ok((p, value)),
        _ => Ok((family.params_from_coords(&coords), exact)),
    }
}

/// Closed-form payoff of player `i` on a unitary product profile of the
/// canonical dilemma:
/// `(t·cos²(θⱼ/2) + p·sin²(θⱼ/2))·sin²(θᵢ/2) + (r·cos²(θⱼ/2) + s·sin²(θⱼ/2))·cos²(θᵢ/2)`
/// with `θ` the flip angle (`γ` for the three-angle family) and `j` the opponent.
pub fn closed_form_payoff(
    params1: &UnitaryParams,
    params2: &UnitaryParams,
    pd: &PdParams,
    player: Player,
) -> f64 {
    let (own, other) = match player {
        Player::One => (params1.flip_angle(), params2.flip_angle()),
        Player::Two => (params2.flip_angle(), params1.flip_angle()),
    };
    let (so, co) = (own / 2.0).sin_cos();
    let (sj, cj) = (other / 2.0).sin_cos();
    (pd.t * cj * cj + pd.p * sj * sj) * so * so + (pd.r * cj * cj + pd.s * sj * sj) * co * co
}

/// Unitary flag for one player's marginal: pure marginals are checked as
/// operators; mixed marginals count as unitary when diagonal over the base
/// strategies or when every weighted eigenvector is unitary.
fn marginal_is_unitary(sigma: &StrategyDensity) -> Result<bool> {
    let m = sigma.matrix();
    let d = m.rows();
    let off: f64 = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| m[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt();
    if off <= UNITARY_TOL && d == STRATEGY_DIM {
        return Ok(true);
    }
    let eig = eig_hermitian(m)?;
    for (l, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *l <= UNITARY_TOL {
            continue;
        }
        let vec = if v.len() == STRATEGY_DIM {
            StrategyVector::from_slice(v)?
        } else {
            embed_classical(v)
        };
        if !reconstruct(&vec).is_unitary(1e-9) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks a system density for profitable unilateral deviations.
///
/// For each player the best achievable payoff against the opponent's
/// marginal is compared with the player's payoff at `rho`. Deviations range
/// over unit-norm strategy vectors (`Full`), the three-angle unitary family
/// (`Unitary`), or mixtures of `N^c` and `F^c` (`Classical`); each maximum
/// is computed exactly.
pub fn verify_ne(
    h1: &PayoffTensor,
    h2: &PayoffTensor,
    rho: &StrategyDensity,
    set: StrategySet,
    tol: f64,
) -> Result<EquilibriumReport> {
    if rho.dim() != h1.matrix().rows() || rho.dim() != h2.matrix().rows() {
        return Err(Error::InvalidDensity(format!(
            "candidate must be {0}x{0}, got {1}x{1}",
            h1.matrix().rows(),
            rho.dim()
        )));
    }
    let tensors = [h1, h2];
    let mut payoffs = [0.0; 2];
    let mut margins = [0.0; 2];
    let mut flags = [false; 2];
    for player in Player::BOTH {
        let i = player.index();
        let h = tensors[i];
        payoffs[i] = h.payoff_density_form(rho)?;
        let opponent = rho.marginal(player.other())?;
        let hr = reduced_payoff(h, &opponent, player)?;
        let best = match set {
            StrategySet::Full => best_response_full(&hr)?.1,
            StrategySet::Unitary => best_response_on_family(&hr, UnitaryFamily::Euler)?.1,
            StrategySet::Classical => hr.matrix[(0, 0)].re.max(hr.matrix[(1, 1)].re),
        };
        margins[i] = best - payoffs[i];
        flags[i] = marginal_is_unitary(&rho.marginal(player)?)?;
    }
    let margin = margins[0].max(margins[1]);
    let kind = if margin <= tol {
        match set {
            StrategySet::Classical => EquilibriumKind::ClassicalNe,
            StrategySet::Unitary => EquilibriumKind::UnitaryNe,
            StrategySet::Full if flags[0] && flags[1] => EquilibriumKind::UnitaryNe,
            StrategySet::Full => EquilibriumKind::NonUnitaryCandidate,
        }
    } else {
        EquilibriumKind::None
    };
    Ok(EquilibriumReport {
        kind,
        strategy_set: Some(set),
        state: Some(density_state(rho)),
        payoffs,
        unitary_flags: flags,
        deviation_margin: Some(margin),
        player_margins: Some(margins),
    })
}

/// Pure densities are reported as their (canonically phased) vector.
fn density_state(rho: &StrategyDensity) -> ReportState {
    if let Ok(eig) = eig_hermitian(rho.matrix()) {
        if (eig.eigenvalues[0] - 1.0).abs() <= 1e-10 {
            return ReportState::Vector(eig.eigenvectors[0].clone());
        }
    }
    ReportState::Density(rho.matrix().clone())
}

/// Per-grid-point data for one player's strategy in a unitary scan.
struct ScanPoint {
    params: UnitaryParams,
    coords: Vec<f64>,
    /// Quadratic form of the *other* player's payoff against this point.
    form_for_other: Vec<Vec<f64>>,
    /// The other player's best unitary payoff against this point.
    best_for_other: f64,
}

fn scan_points(
    h_other: &PayoffTensor,
    other: Player,
    grid: &[UnitaryParams],
) -> Result<Vec<ScanPoint>> {
    grid.par_iter()
        .map(|p| {
            let opp = StrategyDensity::pure_strategy(&p.vector())?;
            let hr = reduced_payoff(h_other, &opp, other)?;
            let form = hr.family_form(UnitaryFamily::Euler)?;
            let (_, best) = best_response_on_family(&hr, UnitaryFamily::Euler)?;
            Ok(ScanPoint {
                params: *p,
                coords: p.coords(),
                form_for_other: form,
                best_for_other: best,
            })
        })
        .collect()
}

/// Scans product profiles of three-angle unitaries on a `grid³ × grid³`
/// lattice and returns every profile at which neither player can gain more
/// than `tol` by switching to *any* unitary (not only grid points).
pub fn ne_family_scan(
    h1: &PayoffTensor,
    h2: &PayoffTensor,
    grid: usize,
    tol: f64,
) -> Result<Vec<EquilibriumReport>> {
    if grid < 2 {
        return Err(Error::InvalidInput(
            "grid resolution must be at least 2".into(),
        ));
    }
    let lattice = family_grid(UnitaryFamily::Euler, grid);
    // Player-1 points carry player 2's form and vice versa.
    let p1 = scan_points(h2, Player::Two, &lattice)?;
    let p2 = scan_points(h1, Player::One, &lattice)?;

    let found: Vec<Vec<EquilibriumReport>> = p1
        .par_iter()
        .map(|a| {
            let mut hits = Vec::new();
            for b in &p2 {
                let e1 = quad(&b.form_for_other, &a.coords);
                let gain1 = b.best_for_other - e1;
                if gain1 > tol {
                    continue;
                }
                let e2 = quad(&a.form_for_other, &b.coords);
                let gain2 = a.best_for_other - e2;
                if gain2 > tol {
                    continue;
                }
                hits.push(EquilibriumReport {
                    kind: EquilibriumKind::UnitaryNe,
                    strategy_set: Some(StrategySet::Unitary),
                    state: Some(ReportState::Profile([a.params, b.params])),
                    payoffs: [e1, e2],
                    unitary_flags: [true, true],
                    deviation_margin: Some(gain1.max(gain2)),
                    player_margins: Some([gain1, gain2]),
                });
            }
            hits
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Scans classical mixture profiles `(p¹_nc, p²_nc)` on a `grid × grid`
/// lattice over `[0, 1]` and returns the Nash equilibria of the classical
/// subgame among them.
pub fn classical_ne_scan(
    h1: &PayoffTensor,
    h2: &PayoffTensor,
    grid: usize,
    tol: f64,
) -> Result<Vec<EquilibriumReport>> {
    if grid < 2 {
        return Err(Error::InvalidInput(
            "grid resolution must be at least 2".into(),
        ));
    }
    let probs: Vec<f64> = (0..grid).map(|k| k as f64 / (grid - 1) as f64).collect();
    let mut out = Vec::new();
    for &q1 in &probs {
        for &q2 in &probs {
            let m1 = StrategyDensity::classical_mixture(MixedClassicalStrategy::new(q1, 1.0 - q1)?);
            let m2 = StrategyDensity::classical_mixture(MixedClassicalStrategy::new(q2, 1.0 - q2)?);
            let rho = product_density(&m1, &m2)?;
            let mut report = verify_ne(h1, h2, &rho, StrategySet::Classical, tol)?;
            if report.kind == EquilibriumKind::ClassicalNe {
                report.state = Some(ReportState::ClassicalMixture { p_nc: [q1, q2] });
                out.push(report);
            }
        }
    }
    Ok(out)
}
