//! Pure states of an n-qubit register.
//!
//! Basis convention: the computational state |k₁k₂…k_N⟩ maps to the integer
//! index with k₁ as the most significant bit, so |10…0⟩ ↦ 2^(N−1).

use crate::error::{Error, Result};
use crate::linalg::{cr, kron_vec, CVec, C64};

pub const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: CVec,
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: CVec) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// The computational basis state with the given index.
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim);
        let mut amplitudes = CVec::zeros(dim);
        amplitudes[index] = cr(1.0);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn from_amplitude_pairs(n_qubits: usize, pairs: &[(usize, C64)]) -> Self {
        let mut amplitudes = CVec::zeros(1usize << n_qubits);
        for &(index, amp) in pairs {
            amplitudes[index] = amp;
        }
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.map(|a| a / n),
        }
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < NORM_TOL
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// |⟨self|other⟩|².
    pub fn overlap_sq(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// self ⊗ other, with self's qubits the more significant ones.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// Bit of `index` for 1-based `qubit` under the MSB-first convention.
    pub fn bit(index: usize, n_qubits: usize, qubit: usize) -> usize {
        debug_assert!(qubit >= 1 && qubit <= n_qubits);
        (index >> (n_qubits - qubit)) & 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_index_convention() {
        // |01⟩ has qubit 1 = 0 (MSB), qubit 2 = 1 → index 1.
        let v = StateVector::basis_state(2, 1);
        assert_eq!(StateVector::bit(1, 2, 1), 0);
        assert_eq!(StateVector::bit(1, 2, 2), 1);
        assert_eq!(v.amplitude(1), cr(1.0));
    }

    #[test]
    fn tensor_puts_left_factor_most_significant() {
        let one = StateVector::basis_state(1, 1); // |1⟩
        let zero = StateVector::basis_state(1, 0); // |0⟩
        let v = one.tensor(&zero); // |10⟩ → index 2
        assert_eq!(v.amplitude(2), cr(1.0));
    }

    #[test]
    fn dimension_check() {
        assert!(StateVector::new(2, CVec::zeros(3)).is_err());
    }
}
