//! Seeded random states and unitaries for validation and tests.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::engine::{SpinZeroSector, SpinZeroState};
use crate::error::Result;
use crate::linalg::{c, CMat, CVec};
use crate::state::StateVector;

pub fn random_complex_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVec {
    CVec::from_fn(dim, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_state_vector<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> StateVector {
    let v = random_complex_vector(rng, 1 << n_qubits);
    StateVector::new(n_qubits, v).unwrap().normalized()
}

/// A full-rank random density matrix: G G† / Tr(G G†) with Gaussian G.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> DensityMatrix {
    let dim = 1usize << n_qubits;
    let g = CMat::from_fn(dim, dim, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut m = &g * g.adjoint();
    let tr = crate::linalg::trace(&m).re;
    m *= crate::linalg::cr(1.0 / tr);
    DensityMatrix::new(n_qubits, m).unwrap()
}

/// A random density matrix supported entirely on the spin-zero sector.
pub fn random_spin_zero_density<R: Rng + ?Sized>(
    rng: &mut R,
    sector: &std::sync::Arc<SpinZeroSector>,
) -> Result<SpinZeroState> {
    let a = sector.dim();
    let g = CMat::from_fn(a, a, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut block = &g * g.adjoint();
    let tr = crate::linalg::trace(&block).re;
    block *= crate::linalg::cr(1.0 / tr);
    // Expand through the sector basis, then project back to obtain a
    // SpinZeroState tied to this sector.
    let dim = 1usize << sector.n_qubits();
    let mut full = CMat::zeros(dim, dim);
    for (i, vi) in sector.vectors().iter().enumerate() {
        for (j, vj) in sector.vectors().iter().enumerate() {
            full += vi * vj.adjoint() * block[(i, j)];
        }
    }
    sector.project(&DensityMatrix::new(sector.n_qubits(), full)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let rho = random_density(&mut rng, 3);
        rho.validate().unwrap();
    }

    #[test]
    fn random_spin_zero_state_has_unit_trace() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let sector = SpinZeroSector::build(4).unwrap();
        let state = random_spin_zero_density(&mut rng, &sector).unwrap();
        assert!((state.trace() - 1.0).abs() < 1e-12);
    }
}
