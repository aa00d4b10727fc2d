//! Collective spin operators over a contiguous group of qubits.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::{c, CMat, CVec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Apply the Pauli operator on one qubit. Convention: |0⟩ is spin up
/// (σz|0⟩ = +|0⟩), qubit 1 is the most significant bit.
pub fn apply_pauli(axis: Axis, n_qubits: usize, qubit: usize, v: &CVec) -> CVec {
    debug_assert!(qubit >= 1 && qubit <= n_qubits);
    let dim = 1usize << n_qubits;
    debug_assert_eq!(v.len(), dim);
    let bit = 1usize << (n_qubits - qubit);
    let mut out = CVec::zeros(dim);
    match axis {
        Axis::X => {
            for i in 0..dim {
                out[i ^ bit] += v[i];
            }
        }
        Axis::Y => {
            for i in 0..dim {
                // σy|0⟩ = i|1⟩, σy|1⟩ = −i|0⟩
                let phase = if i & bit == 0 {
                    c(0.0, 1.0)
                } else {
                    c(0.0, -1.0)
                };
                out[i ^ bit] += phase * v[i];
            }
        }
        Axis::Z => {
            for i in 0..dim {
                let sign = if i & bit == 0 { 1.0 } else { -1.0 };
                out[i] += c(sign, 0.0) * v[i];
            }
        }
    }
    out
}

/// S_a = (1/2) Σ_{q ∈ sites} σ_a(q) applied to a state vector.
pub fn apply_collective_spin(
    axis: Axis,
    n_qubits: usize,
    sites: RangeInclusive<usize>,
    v: &CVec,
) -> CVec {
    let mut out = CVec::zeros(v.len());
    for q in sites {
        out += apply_pauli(axis, n_qubits, q, v);
    }
    out * c(0.5, 0.0)
}

/// Collective spin components and S² for a group of qubits, as dense matrices.
pub struct SpinOperatorSet {
    pub n_qubits: usize,
    pub sites: RangeInclusive<usize>,
    pub sx: CMat,
    pub sy: CMat,
    pub sz: CMat,
    pub s_squared: CMat,
}

impl SpinOperatorSet {
    pub fn apply_s_squared(&self, v: &CVec) -> CVec {
        apply_s_squared(self.n_qubits, self.sites.clone(), v)
    }
}

pub fn apply_s_squared(n_qubits: usize, sites: RangeInclusive<usize>, v: &CVec) -> CVec {
    let mut out = CVec::zeros(v.len());
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let once = apply_collective_spin(axis, n_qubits, sites.clone(), v);
        out += apply_collective_spin(axis, n_qubits, sites.clone(), &once);
    }
    out
}

/// Collective spin operators restricted to `sites` (identity elsewhere).
pub fn group_spin_operators(
    n_qubits: usize,
    sites: RangeInclusive<usize>,
) -> Result<SpinOperatorSet> {
    if sites.is_empty() {
        return Err(Error::InvalidParameter("empty site range".into()));
    }
    if *sites.start() < 1 || *sites.end() > n_qubits {
        return Err(Error::InvalidParameter(format!(
            "site range {}..={} outside 1..={n_qubits}",
            sites.start(),
            sites.end()
        )));
    }
    let dim = 1usize << n_qubits;
    let mut mats = [
        CMat::zeros(dim, dim),
        CMat::zeros(dim, dim),
        CMat::zeros(dim, dim),
    ];
    let mut s2 = CMat::zeros(dim, dim);
    for col in 0..dim {
        let mut e = CVec::zeros(dim);
        e[col] = c(1.0, 0.0);
        for (k, axis) in [Axis::X, Axis::Y, Axis::Z].into_iter().enumerate() {
            let w = apply_collective_spin(axis, n_qubits, sites.clone(), &e);
            mats[k].set_column(col, &w);
        }
        s2.set_column(col, &apply_s_squared(n_qubits, sites.clone(), &e));
    }
    let [sx, sy, sz] = mats;
    Ok(SpinOperatorSet {
        n_qubits,
        sites,
        sx,
        sy,
        sz,
        s_squared: s2,
    })
}

/// Collective spin over all qubits.
pub fn total_spin_operators(n_qubits: usize) -> Result<SpinOperatorSet> {
    group_spin_operators(n_qubits, 1..=n_qubits)
}
