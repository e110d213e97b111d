//! Single-player strategy space.
//!
//! A strategy is a 2×2 complex operator acting on the player's particle.
//! The four base operators `N^c = I`, `F^c = X`, `N^q = Z`, `F^q = Y` are
//! orthonormal under `(s, s') = Tr(s†s') / Tr(I)`, so every operator has a
//! unique coefficient vector over them. Coefficients are always stored in
//! the order `(N^c, F^c, N^q, F^q)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cmatrix::{vec_norm, CMatrix, C64, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Default tolerance for flagging a user-supplied operator as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseStrategy {
    Nc,
    Fc,
    Nq,
    Fq,
}

impl BaseStrategy {
    /// Canonical basis order.
    pub const ALL: [BaseStrategy; 4] = [
        BaseStrategy::Nc,
        BaseStrategy::Fc,
        BaseStrategy::Nq,
        BaseStrategy::Fq,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn operator(self) -> StrategyOperator {
        let m = match self {
            BaseStrategy::Nc => [[ONE, ZERO], [ZERO, ONE]],
            BaseStrategy::Fc => [[ZERO, ONE], [ONE, ZERO]],
            BaseStrategy::Nq => [[ONE, ZERO], [ZERO, -ONE]],
            BaseStrategy::Fq => [[ZERO, -I], [I, ZERO]],
        };
        StrategyOperator {
            matrix: CMatrix::from_rows(&m).expect("static 2x2"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseStrategy::Nc => "Nc",
            BaseStrategy::Fc => "Fc",
            BaseStrategy::Nq => "Nq",
            BaseStrategy::Fq => "Fq",
        }
    }
}

impl FromStr for BaseStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Nc" | "NC" | "nc" => Ok(BaseStrategy::Nc),
            "Fc" | "FC" | "fc" => Ok(BaseStrategy::Fc),
            "Nq" | "NQ" | "nq" => Ok(BaseStrategy::Nq),
            "Fq" | "FQ" | "fq" => Ok(BaseStrategy::Fq),
            other => Err(Error::UnknownBase(other.to_string())),
        }
    }
}

impl fmt::Display for BaseStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up a base operator by name (`Nc`, `Fc`, `Nq`, `Fq`).
pub fn base_operator(name: &str) -> Result<StrategyOperator> {
    Ok(name.parse::<BaseStrategy>()?.operator())
}

/// A 2×2 operator one player applies to their particle.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyOperator {
    matrix: CMatrix,
}

impl StrategyOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "strategy operators are 2x2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(StrategyOperator { matrix })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary(self, tol)
    }

    pub fn expand(&self) -> StrategyVector {
        expand(self)
    }
}

/// `(s, t) = Tr(s†t) / Tr(I)`.
pub fn inner_product(s: &StrategyOperator, t: &StrategyOperator) -> C64 {
    let prod = s.matrix.dagger().matmul(&t.matrix).expect("2x2");
    prod.trace().expect("square") / 2.0
}

/// `‖s†s − I‖_F ≤ tol`.
pub fn is_unitary(s: &StrategyOperator, tol: f64) -> bool {
    let gram = s.matrix.dagger().matmul(&s.matrix).expect("2x2");
    (&gram - &CMatrix::identity(2)).frobenius_norm() <= tol
}

/// Coefficients of a strategy over `(N^c, F^c, N^q, F^q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyVector {
    pub coeffs: [C64; 4],
}

impl StrategyVector {
    pub fn new(coeffs: [C64; 4]) -> Self {
        StrategyVector { coeffs }
    }

    pub fn basis(b: BaseStrategy) -> Self {
        let mut coeffs = [ZERO; 4];
        coeffs[b.index()] = ONE;
        StrategyVector { coeffs }
    }

    pub fn from_slice(v: &[C64]) -> Result<Self> {
        let coeffs: [C64; 4] = v.try_into().map_err(|_| {
            Error::DimensionMismatch(format!("strategy vectors have 4 entries, got {}", v.len()))
        })?;
        Ok(StrategyVector { coeffs })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.coeffs)
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return *self;
        }
        StrategyVector {
            coeffs: self.coeffs.map(|z| z / n),
        }
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn reconstruct(&self) -> StrategyOperator {
        reconstruct(self)
    }
}

/// Coefficients `coeffs[k] = (b_k, s)` over the canonical basis.
pub fn expand(s: &StrategyOperator) -> StrategyVector {
    let coeffs = BaseStrategy::ALL.map(|b| inner_product(&b.operator(), s));
    StrategyVector { coeffs }
}

/// `Σ_k coeffs[k]·b_k`.
pub fn reconstruct(v: &StrategyVector) -> StrategyOperator {
    let mut m = CMatrix::zeros(2, 2);
    for (b, &c) in BaseStrategy::ALL.iter().zip(&v.coeffs) {
        m = &m + &b.operator().matrix.scale(c);
    }
    StrategyOperator { matrix: m }
}

/// `U(θ, φ) = [[e^{iφ}cos(θ/2), sin(θ/2)], [−sin(θ/2), e^{−iφ}cos(θ/2)]]`.
pub fn unitary_theta_phi(theta: f64, phi: f64) -> StrategyOperator {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = C64::from_polar(1.0, phi);
    let m = [[e * c, C64::new(s, 0.0)], [C64::new(-s, 0.0), e.conj() * c]];
    StrategyOperator {
        matrix: CMatrix::from_rows(&m).expect("finite angles"),
    }
}

/// Three-angle parametrization of SU(2):
/// `cos(γ/2)cos((α+β)/2)·N^c − i·sin(γ/2)sin((α−β)/2)·F^c
///  − i·sin(γ/2)cos((α−β)/2)·F^q − i·cos(γ/2)sin((α+β)/2)·N^q`.
pub fn unitary_general(alpha: f64, beta: f64, gamma: f64) -> StrategyOperator {
    let (sg, cg) = (gamma / 2.0).sin_cos();
    let (ss, cs) = ((alpha + beta) / 2.0).sin_cos();
    let (sd, cd) = ((alpha - beta) / 2.0).sin_cos();
    let v = StrategyVector::new([
        C64::new(cg * cs, 0.0),
        -I * (sg * sd),
        -I * (cg * ss),
        -I * (sg * cd),
    ]);
    reconstruct(&v)
}

/// Angles for one of the two unitary families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitaryParams {
    ThetaPhi { theta: f64, phi: f64 },
    Euler { alpha: f64, beta: f64, gamma: f64 },
}

impl UnitaryParams {
    pub fn theta_phi(theta: f64, phi: f64) -> Self {
        UnitaryParams::ThetaPhi { theta, phi }
    }

    pub fn euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        UnitaryParams::Euler { alpha, beta, gamma }
    }

    pub fn operator(&self) -> StrategyOperator {
        match *self {
            UnitaryParams::ThetaPhi { theta, phi } => unitary_theta_phi(theta, phi),
            UnitaryParams::Euler { alpha, beta, gamma } => unitary_general(alpha, beta, gamma),
        }
    }

    pub fn vector(&self) -> StrategyVector {
        self.family().embed(&self.coords())
    }

    /// The angle that controls the flip amplitude: θ, or γ for the Euler family.
    pub fn flip_angle(&self) -> f64 {
        match *self {
            UnitaryParams::ThetaPhi { theta, .. } => theta,
            UnitaryParams::Euler { gamma, .. } => gamma,
        }
    }

    pub fn family(&self) -> UnitaryFamily {
        match self {
            UnitaryParams::ThetaPhi { .. } => UnitaryFamily::ThetaPhi,
            UnitaryParams::Euler { .. } => UnitaryFamily::Euler,
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            UnitaryParams::ThetaPhi { theta, phi } => theta.is_finite() && phi.is_finite(),
            UnitaryParams::Euler { alpha, beta, gamma } => {
                alpha.is_finite() && beta.is_finite() && gamma.is_finite()
            }
        }
    }

    /// Real unit coordinates `a` such that `vector() = family().embed(a)`.
    pub fn coords(&self) -> Vec<f64> {
        match *self {
            UnitaryParams::ThetaPhi { theta, phi } => {
                let (s, c) = (theta / 2.0).sin_cos();
                vec![c * phi.cos(), c * phi.sin(), s]
            }
            UnitaryParams::Euler { alpha, beta, gamma } => {
                let (sg, cg) = (gamma / 2.0).sin_cos();
                let (ss, cs) = ((alpha + beta) / 2.0).sin_cos();
                let (sd, cd) = ((alpha - beta) / 2.0).sin_cos();
                vec![cg * cs, sg * sd, cg * ss, sg * cd]
            }
        }
    }
}

impl fmt::Display for UnitaryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitaryParams::ThetaPhi { theta, phi } => write!(f, "theta={theta},phi={phi}"),
            UnitaryParams::Euler { alpha, beta, gamma } => {
                write!(f, "alpha={alpha},beta={beta},gamma={gamma}")
            }
        }
    }
}

impl FromStr for UnitaryParams {
    type Err = Error;

    /// Parses `theta=..,phi=..` or `alpha=..,beta=..,gamma=..` (radians).
    fn from_str(s: &str) -> Result<Self> {
        let mut theta = None;
        let mut phi = None;
        let mut alpha = None;
        let mut beta = None;
        let mut gamma = None;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got `{part}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad angle `{value}` for `{key}`")))?;
            if !value.is_finite() {
                return Err(Error::InvalidInput(format!("angle `{key}` is not finite")));
            }
            let slot = match key.trim() {
                "theta" => &mut theta,
                "phi" => &mut phi,
                "alpha" => &mut alpha,
                "beta" => &mut beta,
                "gamma" => &mut gamma,
                other => {
                    return Err(Error::InvalidInput(format!("unknown angle `{other}`")));
                }
            };
            *slot = Some(value);
        }
        match (theta, phi, alpha, beta, gamma) {
            (Some(theta), phi, None, None, None) => Ok(UnitaryParams::ThetaPhi {
                theta,
                phi: phi.unwrap_or(0.0),
            }),
            (None, None, alpha, beta, Some(gamma)) => Ok(UnitaryParams::Euler {
                alpha: alpha.unwrap_or(0.0),
                beta: beta.unwrap_or(0.0),
                gamma,
            }),
            _ => Err(Error::InvalidInput(format!(
                "`{s}` is neither theta=..,phi=.. nor alpha=..,beta=..,gamma=.."
            ))),
        }
    }
}

/// A unitary family written as real unit vectors `a` mapped into strategy
/// coordinates by fixed phases: `coeff[idx_k] = phase_k · a_k`.
///
/// Because the embedding is real-linear with fixed phases, the payoff
/// `⟨u|M|u⟩` against a fixed reduced matrix `M` is the real quadratic form
/// `aᵀ·Re(D†MD)·a`, which makes best responses on the family exact
/// eigenproblems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitaryFamily {
    ThetaPhi,
    Euler,
}

impl UnitaryFamily {
    pub fn embedding(self) -> &'static [(usize, C64)] {
        const NEG_I: C64 = C64 { re: 0.0, im: -1.0 };
        match self {
            UnitaryFamily::ThetaPhi => &[(0, ONE), (2, I), (3, I)],
            UnitaryFamily::Euler => &[(0, ONE), (1, NEG_I), (2, NEG_I), (3, NEG_I)],
        }
    }

    pub fn dim(self) -> usize {
        self.embedding().len()
    }

    pub fn embed(self, a: &[f64]) -> StrategyVector {
        let mut coeffs = [ZERO; 4];
        for (&(idx, ph), &x) in self.embedding().iter().zip(a) {
            coeffs[idx] = ph * x;
        }
        StrategyVector { coeffs }
    }

    /// Angles for a real unit vector on this family, with the flip angle in
    /// `[0, π]` and the remaining angles in `(−π, π]`. The overall sign of
    /// `a` is a global phase and is dropped.
    pub fn params_from_coords(self, a: &[f64]) -> UnitaryParams {
        match self {
            UnitaryFamily::ThetaPhi => {
                let (mut a0, mut a1, mut a2) = (a[0], a[1], a[2]);
                if a2 < 0.0 {
                    a0 = -a0;
                    a1 = -a1;
                    a2 = -a2;
                }
                let theta = 2.0 * a2.atan2(a0.hypot(a1));
                let phi = a1.atan2(a0);
                UnitaryParams::ThetaPhi { theta, phi }
            }
            UnitaryFamily::Euler => {
                let gamma = 2.0 * a[1].hypot(a[3]).atan2(a[0].hypot(a[2]));
                let sigma = a[2].atan2(a[0]);
                let delta = a[1].atan2(a[3]);
                UnitaryParams::Euler {
                    alpha: wrap_angle(sigma + delta),
                    beta: wrap_angle(sigma - delta),
                    gamma,
                }
            }
        }
    }
}

/// Wraps to `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    y
}
