//! Two-player quantum games and their Hilbert-space payoff tensors.
//!
//! A game is a shared two-particle object in state `ρ₀` (basis
//! `|UU⟩, |UD⟩, |DU⟩, |DD⟩`) plus one payoff scale matrix `P^i` per player.
//! Player `i`'s payoff for operators `(u¹, u²)` is
//! `Tr(P^i (u¹⊗u²) ρ₀ (u¹⊗u²)†)`, and the payoff tensor `H^i` on the
//! 16-dimensional system strategy space is defined element-wise by
//! `⟨α¹α²|H^i|β¹β²⟩ = Tr(P^i (β¹⊗β²) ρ₀ (α¹⊗α²)†)` over base operators.
//! System index of `|α¹α²⟩` is `4·idx(α¹) + idx(α²)`.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::cmatrix::{
    eig_hermitian, kron_vec, vec_norm, CMatrix, C64, EQ_TOL, HERMITIAN_TOL, ONE, ZERO,
};
use crate::error::{Error, Result};
use crate::strategy::{expand, BaseStrategy, StrategyOperator, StrategyVector, UnitaryParams};

/// Side of the single-player strategy space.
pub const STRATEGY_DIM: usize = 4;
/// Side of the two-player system strategy space.
pub const SYSTEM_DIM: usize = STRATEGY_DIM * STRATEGY_DIM;
/// Side of the quantum object's state space.
pub const OBJECT_DIM: usize = 4;

/// System indices of `|N^cN^c⟩, |N^cF^c⟩, |F^cN^c⟩, |F^cF^c⟩`.
pub const CLASSICAL_INDICES: [usize; 4] = [0, 1, 4, 5];

/// Tolerance for density validity checks (Hermiticity, positivity, trace).
pub const DENSITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn from_number(n: u8) -> Result<Player> {
        match n {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            other => Err(Error::InvalidInput(format!(
                "player must be 1 or 2, got {other}"
            ))),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// Reward, sucker, temptation, punishment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub p: f64,
}

impl PdParams {
    pub fn new(r: f64, s: f64, t: f64, p: f64) -> Self {
        PdParams { r, s, t, p }
    }

    /// `t > r > p > s`.
    pub fn is_dilemma(&self) -> bool {
        self.t > self.r && self.r > self.p && self.p > self.s
    }

    /// Exchanges `t` and `s`.
    pub fn swap_ts(&self) -> Self {
        PdParams {
            r: self.r,
            s: self.t,
            t: self.s,
            p: self.p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameDefinition {
    rho0: CMatrix,
    scales: [CMatrix; 2],
    params: Option<PdParams>,
}

impl GameDefinition {
    /// Validates `ρ₀` as a 4×4 density and both scale matrices as 4×4 Hermitian.
    pub fn new(rho0: CMatrix, p1: CMatrix, p2: CMatrix, params: Option<PdParams>) -> Result<Self> {
        for (name, m) in [("rho0", &rho0), ("P1", &p1), ("P2", &p2)] {
            if m.rows() != OBJECT_DIM || m.cols() != OBJECT_DIM {
                return Err(Error::InvalidGame(format!(
                    "{name} must be {OBJECT_DIM}x{OBJECT_DIM}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (name, m) in [("P1", &p1), ("P2", &p2)] {
            m.ensure_hermitian(HERMITIAN_TOL)
                .map_err(|e| Error::InvalidGame(format!("{name}: {e}")))?;
        }
        validate_density(&rho0).map_err(|e| Error::InvalidGame(format!("rho0: {e}")))?;
        if let Some(pd) = params {
            if ![pd.r, pd.s, pd.t, pd.p].iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidGame("r, s, t, p must be finite".into()));
            }
        }
        Ok(GameDefinition {
            rho0,
            scales: [p1, p2],
            params,
        })
    }

    /// `ρ₀ = |UU⟩⟨UU|`, `P¹ = diag(r,s,t,p)`, `P² = diag(r,t,s,p)`.
    pub fn canonical_pd(r: f64, s: f64, t: f64, p: f64) -> Result<Self> {
        let mut rho0 = CMatrix::zeros(OBJECT_DIM, OBJECT_DIM);
        rho0[(0, 0)] = ONE;
        GameDefinition::new(
            rho0,
            CMatrix::from_real_diagonal(&[r, s, t, p]),
            CMatrix::from_real_diagonal(&[r, t, s, p]),
            Some(PdParams::new(r, s, t, p)),
        )
    }

    pub fn rho0(&self) -> &CMatrix {
        &self.rho0
    }

    pub fn payoff_scale(&self, player: Player) -> &CMatrix {
        &self.scales[player.index()]
    }

    pub fn params(&self) -> Option<PdParams> {
        self.params
    }

    /// True when the game has the canonical dilemma layout for its `(r,s,t,p)`.
    pub fn is_canonical_pd(&self) -> bool {
        match self.params {
            Some(pd) => GameDefinition::canonical_pd(pd.r, pd.s, pd.t, pd.p)
                .map(|c| c.rho0 == self.rho0 && c.scales == self.scales)
                .unwrap_or(false),
            None => false,
        }
    }

    /// `Tr(P^i (u¹⊗u²) ρ₀ (u¹⊗u²)†)`. Operators need not be unitary.
    pub fn payoff_operator_form(
        &self,
        u1: &StrategyOperator,
        u2: &StrategyOperator,
        player: Player,
    ) -> Result<f64> {
        let joint = u1.matrix().kron(u2.matrix());
        let evolved = joint.matmul(&self.rho0)?.matmul(&joint.dagger())?;
        let value = self.payoff_scale(player).matmul(&evolved)?.trace()?;
        real_part(value)
    }

    /// Payoff tensor `H^i`.
    pub fn build_payoff_tensor(&self, player: Player) -> PayoffTensor {
        let basis: Vec<CMatrix> = BaseStrategy::ALL
            .iter()
            .map(|b| b.operator().into_matrix())
            .collect();
        let products: Vec<CMatrix> = (0..SYSTEM_DIM)
            .map(|k| basis[k / STRATEGY_DIM].kron(&basis[k % STRATEGY_DIM]))
            .collect();
        let scale = self.payoff_scale(player);
        // Column β: P (β¹⊗β²) ρ₀ is shared across rows.
        let left: Vec<CMatrix> = products
            .iter()
            .map(|b| {
                scale
                    .matmul(b)
                    .and_then(|m| m.matmul(&self.rho0))
                    .expect("4x4 products")
            })
            .collect();
        let mut h = CMatrix::zeros(SYSTEM_DIM, SYSTEM_DIM);
        for (row, alpha) in products.iter().enumerate() {
            let alpha_dag = alpha.dagger();
            for (col, l) in left.iter().enumerate() {
                h[(row, col)] = l.matmul(&alpha_dag).and_then(|m| m.trace()).expect("4x4");
            }
        }
        PayoffTensor {
            player,
            matrix: h,
            local_dim: STRATEGY_DIM,
        }
    }

    pub fn payoff_tensors(&self) -> [PayoffTensor; 2] {
        [
            self.build_payoff_tensor(Player::One),
            self.build_payoff_tensor(Player::Two),
        ]
    }

    /// Classical payoff table `G^{i,c}`: rows are player 1's choice and
    /// columns player 2's, each over `(N^c, F^c)`.
    pub fn classical_payoff_table(&self, player: Player) -> Result<[[f64; 2]; 2]> {
        let moves = [BaseStrategy::Nc.operator(), BaseStrategy::Fc.operator()];
        let mut table = [[0.0; 2]; 2];
        for (i, a) in moves.iter().enumerate() {
            for (j, b) in moves.iter().enumerate() {
                table[i][j] = self.payoff_operator_form(a, b, player)?;
            }
        }
        Ok(table)
    }

    /// Payoffs `(E¹, E²)` for a pair of operators.
    pub fn payoffs(&self, u1: &StrategyOperator, u2: &StrategyOperator) -> Result<[f64; 2]> {
        Ok([
            self.payoff_operator_form(u1, u2, Player::One)?,
            self.payoff_operator_form(u1, u2, Player::Two)?,
        ])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GameDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidGame(e.to_string()))?;
        doc.into_game()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("rho0".into(), matrix_to_json(&self.rho0));
        map.insert("P1".into(), matrix_to_json(&self.scales[0]));
        map.insert("P2".into(), matrix_to_json(&self.scales[1]));
        if let Some(pd) = self.params {
            for (k, v) in [("r", pd.r), ("s", pd.s), ("t", pd.t), ("p", pd.p)] {
                map.insert(k.into(), serde_json::json!(v));
            }
        }
        serde_json::Value::Object(map)
    }
}

fn real_part(value: C64) -> Result<f64> {
    if value.im.abs() > EQ_TOL * value.re.abs().max(1.0) {
        return Err(Error::ImaginaryPayoff { im: value.im });
    }
    Ok(value.re)
}

/// Game file schema: either `{"r","s","t","p"}` for the canonical dilemma,
/// or `{"rho0","P1","P2"}` (optionally with `r,s,t,p` as metadata).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDocument {
    r: Option<f64>,
    s: Option<f64>,
    t: Option<f64>,
    p: Option<f64>,
    rho0: Option<MatrixDoc>,
    #[serde(rename = "P1")]
    p1: Option<MatrixDoc>,
    #[serde(rename = "P2")]
    p2: Option<MatrixDoc>,
}

impl GameDocument {
    fn into_game(self) -> Result<GameDefinition> {
        let params = match (self.r, self.s, self.t, self.p) {
            (Some(r), Some(s), Some(t), Some(p)) => Some(PdParams::new(r, s, t, p)),
            (None, None, None, None) => None,
            _ => {
                return Err(Error::InvalidGame(
                    "r, s, t and p must be given together".into(),
                ))
            }
        };
        match (self.rho0, self.p1, self.p2) {
            (None, None, None) => {
                let pd = params.ok_or_else(|| {
                    Error::InvalidGame("need either r,s,t,p or rho0,P1,P2".into())
                })?;
                GameDefinition::canonical_pd(pd.r, pd.s, pd.t, pd.p)
            }
            (Some(rho0), Some(p1), Some(p2)) => GameDefinition::new(
                rho0.into_matrix("rho0")?,
                p1.into_matrix("P1")?,
                p2.into_matrix("P2")?,
                params,
            ),
            _ => Err(Error::InvalidGame(
                "rho0, P1 and P2 must be given together".into(),
            )),
        }
    }
}

/// A complex matrix as nested rows of `[re, im]` pairs, or a flat
/// row-major list of pairs for a square matrix.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub(crate) enum MatrixDoc {
    Nested(Vec<Vec<[f64; 2]>>),
    Flat(Vec<[f64; 2]>),
}

impl MatrixDoc {
    pub(crate) fn into_matrix(self, name: &str) -> Result<CMatrix> {
        let to_c = |[re, im]: [f64; 2]| C64::new(re, im);
        let m = match self {
            MatrixDoc::Nested(rows) => {
                let rows: Vec<Vec<C64>> = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(to_c).collect())
                    .collect();
                CMatrix::from_rows(&rows)
            }
            MatrixDoc::Flat(entries) => {
                let n = (entries.len() as f64).sqrt().round() as usize;
                if n * n != entries.len() {
                    return Err(Error::InvalidInput(format!(
                        "{name}: flat matrix with {} entries is not square",
                        entries.len()
                    )));
                }
                CMatrix::from_vec(n, n, entries.into_iter().map(to_c).collect())
            }
        };
        m.map_err(|e| Error::InvalidInput(format!("{name}: {e}")))
    }
}

pub(crate) fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| {
                serde_json::Value::Array(m.row(i).iter().map(|z| complex_to_json(*z)).collect())
            })
            .collect(),
    )
}

pub(crate) fn complex_to_json(z: C64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub(crate) fn vector_to_json(v: &[C64]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|z| complex_to_json(*z)).collect())
}

/// The payoff tensor `H^i` of one player on a `local_dim ⊗ local_dim`
/// system strategy space (4 for the full game, 2 for the classical subgame).
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTensor {
    player: Player,
    matrix: CMatrix,
    local_dim: usize,
}

impl PayoffTensor {
    pub fn new(player: Player, matrix: CMatrix, local_dim: usize) -> Result<Self> {
        if matrix.rows() != local_dim * local_dim || !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "payoff tensor for local dimension {local_dim} must be {0}x{0}",
                local_dim * local_dim
            )));
        }
        matrix.ensure_hermitian(HERMITIAN_TOL)?;
        Ok(PayoffTensor {
            player,
            matrix,
            local_dim,
        })
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// `⟨S|H|S⟩`.
    pub fn payoff_state_form(&self, state: &SystemStrategyState) -> Result<f64> {
        real_part(self.matrix.sandwich(&state.vec, &state.vec)?)
    }

    /// `Tr(ρ H)`.
    pub fn payoff_density_form(&self, rho: &StrategyDensity) -> Result<f64> {
        if rho.dim() != self.matrix.rows() {
            return Err(Error::InvalidDensity(format!(
                "expected a {0}x{0} system density, got {1}x{1}",
                self.matrix.rows(),
                rho.dim()
            )));
        }
        real_part(rho.matrix.matmul(&self.matrix)?.trace()?)
    }

    /// Restriction to `span{|N^cN^c⟩, |N^cF^c⟩, |F^cN^c⟩, |F^cF^c⟩}`.
    pub fn classical_submatrix(&self) -> CMatrix {
        assert_eq!(self.local_dim, STRATEGY_DIM, "already a classical tensor");
        self.matrix.submatrix(&CLASSICAL_INDICES)
    }

    /// The classical subgame tensor on `span{N^c, F^c}^{⊗2}`.
    pub fn classical(&self) -> PayoffTensor {
        PayoffTensor {
            player: self.player,
            matrix: self.classical_submatrix(),
            local_dim: 2,
        }
    }
}

/// A vector in the system strategy space over `|α¹α²⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemStrategyState {
    pub vec: Vec<C64>,
}

impl SystemStrategyState {
    pub fn new(vec: Vec<C64>) -> Result<Self> {
        if vec.len() != SYSTEM_DIM {
            return Err(Error::DimensionMismatch(format!(
                "system states have {SYSTEM_DIM} entries, got {}",
                vec.len()
            )));
        }
        if vec.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "system state has a non-finite entry".into(),
            ));
        }
        Ok(SystemStrategyState { vec })
    }

    /// `|s¹, s²⟩`.
    pub fn product(s1: &StrategyVector, s2: &StrategyVector) -> Self {
        SystemStrategyState {
            vec: kron_vec(&s1.coeffs, &s2.coeffs),
        }
    }

    pub fn basis(b1: BaseStrategy, b2: BaseStrategy) -> Self {
        SystemStrategyState::product(&StrategyVector::basis(b1), &StrategyVector::basis(b2))
    }

    pub fn from_operators(u1: &StrategyOperator, u2: &StrategyOperator) -> Self {
        SystemStrategyState::product(&expand(u1), &expand(u2))
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.vec)
    }

    /// Splits a product state into unit-norm factors, or `None` when the
    /// state is entangled beyond `tol` (relative to its norm).
    pub fn factorize(&self, tol: f64) -> Option<(StrategyVector, StrategyVector)> {
        let norm = self.norm();
        if norm == 0.0 {
            return None;
        }
        let d = STRATEGY_DIM;
        let at = |i: usize, j: usize| self.vec[i * d + j];
        let (mut bi, mut bj, mut best) = (0, 0, -1.0);
        for i in 0..d {
            for j in 0..d {
                if at(i, j).norm() > best {
                    best = at(i, j).norm();
                    bi = i;
                    bj = j;
                }
            }
        }
        let pivot = at(bi, bj);
        let left: Vec<C64> = (0..d).map(|i| at(i, bj)).collect();
        let right: Vec<C64> = (0..d).map(|j| at(bi, j) / pivot).collect();
        let rebuilt = kron_vec(&left, &right);
        let err = vec_norm(
            &rebuilt
                .iter()
                .zip(&self.vec)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        if err > tol * norm {
            return None;
        }
        let l = StrategyVector::from_slice(&left).ok()?.normalized();
        let r = StrategyVector::from_slice(&right).ok()?.normalized();
        Some((l, r))
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix on a strategy
/// space (4×4 for one player, 16×16 for the system, or the classical
/// 2×2 / 4×4 analogues).
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyDensity {
    matrix: CMatrix,
}

fn validate_density(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidDensity(format!(
            "density must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermitian_deviation();
    if dev > DENSITY_TOL * m.frobenius_norm().max(1.0) {
        return Err(Error::InvalidDensity(format!(
            "not Hermitian (deviation {dev:.3e})"
        )));
    }
    let tr = m.trace()?;
    if (tr - ONE).norm() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
    }
    let eig = eig_hermitian(m)?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -DENSITY_TOL {
        return Err(Error::InvalidDensity(format!(
            "not positive semidefinite (eigenvalue {min:.3e})"
        )));
    }
    Ok(())
}

impl StrategyDensity {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        validate_density(&matrix)?;
        Ok(StrategyDensity { matrix })
    }

    /// `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn pure(v: &[C64]) -> Result<Self> {
        let n = vec_norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidDensity(
                "pure state vector has zero norm".into(),
            ));
        }
        let unit: Vec<C64> = v.iter().map(|z| z / n).collect();
        Ok(StrategyDensity {
            matrix: CMatrix::outer(&unit, &unit),
        })
    }

    pub fn pure_strategy(v: &StrategyVector) -> Result<Self> {
        StrategyDensity::pure(&v.coeffs)
    }

    pub fn pure_system(s: &SystemStrategyState) -> Result<Self> {
        StrategyDensity::pure(&s.vec)
    }

    /// `p_nc·|N^c⟩⟨N^c| + p_fc·|F^c⟩⟨F^c|` on the 4-dimensional strategy space.
    pub fn classical_mixture(mix: MixedClassicalStrategy) -> Self {
        StrategyDensity {
            matrix: CMatrix::from_real_diagonal(&[mix.p_nc(), mix.p_fc(), 0.0, 0.0]),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduced density of `player` on a bipartite density with equal factors.
    pub fn marginal(&self, player: Player) -> Result<StrategyDensity> {
        let d = (self.dim() as f64).sqrt().round() as usize;
        if d * d != self.dim() {
            return Err(Error::InvalidDensity(format!(
                "{0}x{0} density is not bipartite with equal factors",
                self.dim()
            )));
        }
        let traced = match player {
            Player::One => 1,
            Player::Two => 0,
        };
        Ok(StrategyDensity {
            matrix: self.matrix.partial_trace((d, d), traced)?,
        })
    }

    /// Restriction of a 4×4 single-player density to `span{N^c, F^c}`.
    pub fn classical_part(&self) -> Result<StrategyDensity> {
        if self.dim() != STRATEGY_DIM {
            return Err(Error::InvalidDensity(
                "expected a 4x4 single-player density".into(),
            ));
        }
        StrategyDensity::new(self.matrix.submatrix(&[0, 1]))
    }
}

/// `ρ¹ ⊗ ρ²`.
pub fn product_density(rho1: &StrategyDensity, rho2: &StrategyDensity) -> Result<StrategyDensity> {
    validate_density(&rho1.matrix)?;
    validate_density(&rho2.matrix)?;
    Ok(StrategyDensity {
        matrix: rho1.matrix.kron(&rho2.matrix),
    })
}

/// A classical mixture over `N^c` and `F^c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedClassicalStrategy {
    p_nc: f64,
}

impl MixedClassicalStrategy {
    pub fn new(p_nc: f64, p_fc: f64) -> Result<Self> {
        let ok = (0.0..=1.0).contains(&p_nc)
            && (0.0..=1.0).contains(&p_fc)
            && (p_nc + p_fc - 1.0).abs() <= DENSITY_TOL;
        if !ok {
            return Err(Error::InvalidInput(format!(
                "mixture ({p_nc}, {p_fc}) is not a probability distribution"
            )));
        }
        Ok(MixedClassicalStrategy { p_nc })
    }

    pub fn p_nc(&self) -> f64 {
        self.p_nc
    }

    pub fn p_fc(&self) -> f64 {
        1.0 - self.p_nc
    }
}

/// Which operators the random-sample Theorem check draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorSampling {
    /// Independent uniform entries in `[−1, 1] + i[−1, 1]`.
    Arbitrary,
    /// Uniform three-angle unitaries times a random global phase.
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub samples: usize,
    pub sampling: OperatorSampling,
    pub seed: u64,
    pub max_abs_discrepancy: f64,
    /// `|a − b| / max(|a|, |b|, 1)`.
    pub max_rel_discrepancy: f64,
}

impl TheoremReport {
    pub fn passes(&self, rel_tol: f64) -> bool {
        self.max_rel_discrepancy <= rel_tol
    }
}

pub fn random_operator(rng: &mut StdRng, sampling: OperatorSampling) -> StrategyOperator {
    use std::f64::consts::PI;
    match sampling {
        OperatorSampling::Arbitrary => {
            let entries: Vec<C64> = (0..4)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            StrategyOperator::new(CMatrix::from_vec(2, 2, entries).expect("finite")).expect("2x2")
        }
        OperatorSampling::Unitary => {
            let params = UnitaryParams::euler(
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
                rng.gen_range(0.0..PI),
            );
            let phase = C64::from_polar(1.0, rng.gen_range(-PI..PI));
            StrategyOperator::new(params.operator().matrix().scale(phase)).expect("2x2")
        }
    }
}

/// Compares the operator-form payoff with `⟨S|H^i|S⟩` on random operator
/// pairs for both players.
pub fn verify_theorem(
    game: &GameDefinition,
    samples: usize,
    sampling: OperatorSampling,
    seed: u64,
) -> Result<TheoremReport> {
    let tensors = game.payoff_tensors();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for _ in 0..samples {
        let u1 = random_operator(&mut rng, sampling);
        let u2 = random_operator(&mut rng, sampling);
        let state = SystemStrategyState::from_operators(&u1, &u2);
        for (player, h) in Player::BOTH.iter().zip(&tensors) {
            let direct = game.payoff_operator_form(&u1, &u2, *player)?;
            let via_tensor = h.payoff_state_form(&state)?;
            let diff = (direct - via_tensor).abs();
            max_abs = max_abs.max(diff);
            max_rel = max_rel.max(diff / direct.abs().max(via_tensor.abs()).max(1.0));
        }
    }
    Ok(TheoremReport {
        samples,
        sampling,
        seed,
        max_abs_discrepancy: max_abs,
        max_rel_discrepancy: max_rel,
    })
}

/// Embeds a vector on the classical basis `(N^c, F^c)` into the full
/// four-dimensional strategy space.
pub fn embed_classical(v: &[C64]) -> StrategyVector {
    let mut coeffs = [ZERO; 4];
    coeffs[..v.len().min(2)].copy_from_slice(&v[..v.len().min(2)]);
    StrategyVector::new(coeffs)
}
