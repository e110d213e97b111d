//! Hilbert-space representation of two-player quantum games.
//!
//! Strategies are 2×2 operators expanded over the orthonormal basis
//! `(N^c, F^c, N^q, F^q)`; each player's payoff becomes a Hermitian
//! quadratic form `H^i` on the 16-dimensional system strategy space.
//! The crate builds those tensors, evaluates payoffs in operator, state and
//! density form, and analyzes equilibria of the resulting games.

pub mod cmatrix;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod report;
pub mod strategy;

pub use cmatrix::{eig_hermitian, CMatrix, EigenDecomposition, C64};
pub use error::{Error, Result};
pub use game::{
    product_density, GameDefinition, MixedClassicalStrategy, PayoffTensor, PdParams, Player,
    StrategyDensity, SystemStrategyState,
};
pub use strategy::{
    base_operator, expand, inner_product, is_unitary, reconstruct, unitary_general,
    unitary_theta_phi, BaseStrategy, StrategyOperator, StrategyVector, UnitaryFamily,
    UnitaryParams,
};
