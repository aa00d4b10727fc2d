//! Angular momentum coupling: Clebsch–Gordan coefficients, collective spin
//! operators, and coupled total-spin bases for up to ten qubits.

mod cg;
mod coupled;
mod operators;

pub use cg::{clebsch_gordan, multiplicity};
pub use coupled::{build_coupled_basis, CoupledBasisTable, CoupledEntry, MAX_COUPLED_QUBITS};
pub use operators::{
    apply_collective_spin, apply_pauli, apply_s_squared, group_spin_operators,
    total_spin_operators, Axis, SpinOperatorSet,
};
