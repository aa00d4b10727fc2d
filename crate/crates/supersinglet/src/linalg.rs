//! Small dense complex linear algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Kronecker product a ⊗ b (a's indices are the more significant ones).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    let mut out = CVec::zeros(a.len() * b.len());
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i * b.len() + j] = ai * bj;
        }
    }
    out
}

pub fn trace(m: &CMat) -> C64 {
    let mut t = C64::default();
    for i in 0..m.nrows().min(m.ncols()) {
        t += m[(i, i)];
    }
    t
}

/// Largest elementwise modulus of a - b.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Replace m by its Hermitian part (m + m†)/2, returning the largest
/// elementwise modulus that the repair removed.
pub fn hermitize(m: &mut CMat) -> f64 {
    let adj = m.adjoint();
    let mut repair = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let avg = (m[(i, j)] + adj[(i, j)]) * 0.5;
            repair = repair.max((m[(i, j)] - avg).norm());
            m[(i, j)] = avg;
        }
    }
    repair
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigenvalues(m)
        .first()
        .copied()
        .unwrap_or(f64::NAN)
}

/// Trace distance (1/2)‖a − b‖₁ between Hermitian matrices.
pub fn trace_distance(a: &CMat, b: &CMat) -> f64 {
    let diff = a - b;
    0.5 * hermitian_eigenvalues(&diff)
        .iter()
        .map(|v| v.abs())
        .sum::<f64>()
}

/// Apply a 2x2 unitary to one qubit of an n-qubit state vector.
/// Qubits are numbered 1..=n with qubit 1 as the most significant bit.
pub fn apply_single_qubit(v: &CVec, n_qubits: usize, qubit: usize, u: &CMat) -> CVec {
    assert!(qubit >= 1 && qubit <= n_qubits);
    assert_eq!(u.shape(), (2, 2));
    let dim = 1usize << n_qubits;
    assert_eq!(v.len(), dim);
    let bit = 1usize << (n_qubits - qubit);
    let mut out = CVec::zeros(dim);
    for i in 0..dim {
        if i & bit == 0 {
            let a = v[i];
            let b = v[i | bit];
            out[i] += u[(0, 0)] * a + u[(0, 1)] * b;
            out[i | bit] += u[(1, 0)] * a + u[(1, 1)] * b;
        }
    }
    out
}

/// Apply u ⊗ u ⊗ … ⊗ u (one factor per qubit) to a state vector.
pub fn apply_uniform_unitary(v: &CVec, n_qubits: usize, u: &CMat) -> CVec {
    let mut out = v.clone();
    for q in 1..=n_qubits {
        out = apply_single_qubit(&out, n_qubits, q, u);
    }
    out
}

/// Conjugate a density matrix by u ⊗ … ⊗ u.
pub fn conjugate_uniform_unitary(rho: &CMat, n_qubits: usize, u: &CMat) -> CMat {
    let dim = 1usize << n_qubits;
    assert_eq!(rho.shape(), (dim, dim));
    let mut big = CMat::identity(1, 1);
    for _ in 0..n_qubits {
        big = kron(&big, u);
    }
    &big * rho * big.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_vec_ordering() {
        let a = CVec::from_vec(vec![cr(1.0), cr(2.0)]);
        let b = CVec::from_vec(vec![cr(3.0), cr(4.0)]);
        let k = kron_vec(&a, &b);
        assert_eq!(k.as_slice(), &[cr(3.0), cr(4.0), cr(6.0), cr(8.0)]);
    }

    #[test]
    fn hermitize_reports_repair() {
        let mut m = CMat::from_row_slice(2, 2, &[cr(1.0), c(0.0, 0.2), c(0.0, 0.0), cr(1.0)]);
        let repair = hermitize(&mut m);
        assert!(repair > 0.0);
        assert!(max_abs_diff(&m, &m.adjoint()) < 1e-15);
    }

    #[test]
    fn single_qubit_application_targets_msb_convention() {
        // X on qubit 1 of |00> must give |10> (index 2).
        let x = CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
        let mut v = CVec::zeros(4);
        v[0] = cr(1.0);
        let out = apply_single_qubit(&v, 2, 1, &x);
        assert_eq!(out[2], cr(1.0));
    }
}
