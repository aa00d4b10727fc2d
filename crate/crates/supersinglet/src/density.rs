//! Density matrices and convex mixtures.

use crate::error::{Error, Result};
use crate::linalg::{cr, max_abs_diff, min_eigenvalue, trace, CMat};
use crate::state::StateVector;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = -1e-10;

#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: CMat,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: CMat) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn from_pure(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let matrix = amps * amps.adjoint();
        Self {
            n_qubits: state.n_qubits(),
            matrix,
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let matrix = CMat::identity(dim, dim) * cr(1.0 / dim as f64);
        Self { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        trace(&self.matrix).re
    }

    /// ⟨ψ|ρ|ψ⟩ for a pure reference state.
    pub fn expectation_with(&self, state: &StateVector) -> f64 {
        let amps = state.amplitudes();
        (amps.adjoint() * &self.matrix * amps)[(0, 0)].re
    }

    /// Hermiticity, unit trace, and positive semidefiniteness checks.
    pub fn validate(&self) -> Result<()> {
        let herm = max_abs_diff(&self.matrix, &self.matrix.adjoint());
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix is not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = trace(&self.matrix);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        let min = min_eigenvalue(&self.matrix);
        if min < POSITIVITY_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

/// A convex combination of pure or mixed states.
pub enum MixtureComponent {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

pub struct MixtureRecipe {
    components: Vec<(f64, MixtureComponent)>,
}

impl MixtureRecipe {
    pub fn new(components: Vec<(f64, MixtureComponent)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("empty mixture".into()));
        }
        let mut total = 0.0;
        for (w, _) in &components {
            if *w < 0.0 {
                return Err(Error::InvalidParameter(format!("negative weight {w}")));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { components })
    }

    pub fn build(&self) -> DensityMatrix {
        let n_qubits = match &self.components[0].1 {
            MixtureComponent::Pure(s) => s.n_qubits(),
            MixtureComponent::Mixed(r) => r.n_qubits(),
        };
        let dim = 1usize << n_qubits;
        let mut matrix = CMat::zeros(dim, dim);
        for (w, comp) in &self.components {
            let term = match comp {
                MixtureComponent::Pure(s) => DensityMatrix::from_pure(s).into_matrix(),
                MixtureComponent::Mixed(r) => r.matrix().clone(),
            };
            matrix += term * cr(*w);
        }
        DensityMatrix { n_qubits, matrix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cr;

    #[test]
    fn pure_state_density_is_valid() {
        let v = StateVector::basis_state(2, 3);
        let rho = DensityMatrix::from_pure(&v);
        rho.validate().unwrap();
        assert!((rho.expectation_with(&v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mixture_weights_must_sum_to_one() {
        let v = StateVector::basis_state(1, 0);
        let err = MixtureRecipe::new(vec![(0.5, MixtureComponent::Pure(v))]);
        assert!(err.is_err());
    }

    #[test]
    fn maximally_mixed_trace() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        assert_eq!(rho.matrix()[(0, 0)], cr(1.0 / 8.0));
    }
}
