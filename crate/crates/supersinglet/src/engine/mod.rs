//! The three-copy postselected distillation step, in the full 2^(3N) space
//! and in the spin-zero truncated representation.

mod full;
mod layout;
mod povm;
mod truncated;

pub use full::{
    apply_kron3, build_postselection_operator, FullEngine, GlobalLayout, PostselectionOperator,
    FULL_ENGINE_MAX_QUBITS, VANISHING_PROBABILITY,
};
pub use layout::copy_index_for_site_major;
pub use povm::{
    effective_local_kets, effective_postselect_local, local_coupled_states, local_povm,
    schur_position, schur_unitary, LocalBasisState, LocalPovmElement, LOCAL_SECTORS,
};
pub use truncated::{
    build_omega_tensor, build_omega_tensor_for, OmegaTensor, SpinZeroSector, SpinZeroState,
    TruncatedEngine, SECTOR_LEAK_TOL, TRUNCATED_ENGINE_MAX_QUBITS,
};

use crate::density::DensityMatrix;
use crate::error::Result;
use crate::state_factory::supersinglet;

/// Per-step telemetry shared by both engines.
#[derive(Clone, Copy, Debug)]
pub struct StepStats {
    pub success_probability: f64,
    /// Magnitude of the Hermiticity/trace repair applied after the raw update.
    pub trace_residual: f64,
}

/// ⟨S_N|ρ|S_N⟩ for a full-space density matrix.
pub fn fidelity(rho: &DensityMatrix) -> Result<f64> {
    let target = supersinglet(rho.n_qubits())?;
    Ok(rho.expectation_with(&target))
}
