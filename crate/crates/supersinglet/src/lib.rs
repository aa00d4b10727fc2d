//! Simulation library for distilling supersinglet states of N qubits.
//!
//! The crate provides:
//! - coupled angular-momentum bases and collective spin operators
//!   ([`spin_algebra`]),
//! - factories for supersinglets, Dicke states, singlet chains, and their
//!   noisy mixtures ([`state_factory`]),
//! - the twirling channel in closed form plus a Monte-Carlo cross-check, and
//!   permutation symmetrizers ([`channels`]),
//! - the three-copy postselected distillation step in the full 2^(3N) space
//!   and in the spin-zero truncated space, with the protocol driver
//!   ([`engine`], [`protocol`]).

pub mod channels;
pub mod density;
pub mod engine;
pub mod error;
pub mod half;
pub mod linalg;
pub mod protocol;
pub mod random;
pub mod spin_algebra;
pub mod state;
pub mod state_factory;

pub use density::{DensityMatrix, MixtureComponent, MixtureRecipe};
pub use error::{Error, Result};
pub use half::HalfInteger;
pub use state::StateVector;
