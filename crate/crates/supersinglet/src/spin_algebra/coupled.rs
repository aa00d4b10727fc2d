//! Total-angular-momentum eigenbases built by sequential coupling.
//!
//! Qubits are attached one at a time, left to right. Each coupling history
//! (the sequence of intermediate total spins) labels one irreducible
//! multiplet; histories with the same final spin s are numbered α = 1, 2, …
//! in order of descending intermediate spin at every step. For three qubits
//! this puts the branch through the two-qubit triplet before the branch
//! through the two-qubit singlet.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::half::HalfInteger;
use crate::linalg::{cr, CMat, CVec};
use crate::spin_algebra::cg::clebsch_gordan;
use crate::state::StateVector;

pub const MAX_COUPLED_QUBITS: usize = 10;

#[derive(Clone, Debug)]
pub struct CoupledEntry {
    pub s: HalfInteger,
    pub alpha: usize,
    pub m: HalfInteger,
    pub vector: StateVector,
    /// Intermediate total spins after attaching qubit 1, 2, …, N.
    pub coupling_history: Vec<HalfInteger>,
}

pub struct CoupledBasisTable {
    n_qubits: usize,
    entries: Vec<CoupledEntry>,
    index: HashMap<(i32, usize, i32), usize>,
}

struct Branch {
    j: HalfInteger,
    history: Vec<HalfInteger>,
    /// Multiplet vectors ordered by m descending (m = j, j−1, …, −j).
    multiplet: Vec<CVec>,
}

/// Couple an existing multiplet with one more qubit to total spin `big_j`.
fn couple_with_qubit(branch: &Branch, big_j: HalfInteger) -> Vec<CVec> {
    let j = branch.j;
    let half = HalfInteger::HALF;
    let old_dim = branch.multiplet[0].len();
    let new_dim = 2 * old_dim;
    let mut out = Vec::new();
    for big_m in big_j.projections() {
        let mut v = CVec::zeros(new_dim);
        // New qubit in |0⟩ (m₂ = +1/2) or |1⟩ (m₂ = −1/2), appended as the
        // least significant bit.
        for (bit, m2) in [(0usize, half), (1usize, -half)] {
            let m1 = big_m - m2;
            if !m1.is_projection_of(j) {
                continue;
            }
            let coeff = clebsch_gordan(j, m1, half, m2, big_j, big_m);
            if coeff == 0.0 {
                continue;
            }
            let slot = ((j.twice_value() - m1.twice_value()) / 2) as usize;
            let old = &branch.multiplet[slot];
            for i in 0..old_dim {
                v[2 * i + bit] += old[i] * cr(coeff);
            }
        }
        out.push(v);
    }
    out
}

/// Build the complete coupled basis for `n_qubits` ∈ 1..=10.
pub fn build_coupled_basis(n_qubits: usize) -> Result<CoupledBasisTable> {
    if !(1..=MAX_COUPLED_QUBITS).contains(&n_qubits) {
        return Err(Error::QubitCountOutOfRange {
            n: n_qubits,
            min: 1,
            max: MAX_COUPLED_QUBITS,
        });
    }

    let half = HalfInteger::HALF;
    let mut branches = vec![Branch {
        j: half,
        history: vec![half],
        multiplet: vec![
            CVec::from_vec(vec![cr(1.0), cr(0.0)]), // |0⟩, m = +1/2
            CVec::from_vec(vec![cr(0.0), cr(1.0)]), // |1⟩, m = −1/2
        ],
    }];

    for _ in 2..=n_qubits {
        let mut next = Vec::with_capacity(branches.len() * 2);
        for branch in &branches {
            // Descending order of the new intermediate spin fixes the α labels.
            for delta in [1i32, -1i32] {
                let tj = branch.j.twice_value() + delta;
                if tj < 0 {
                    continue;
                }
                let big_j = HalfInteger::from_twice(tj);
                let mut history = branch.history.clone();
                history.push(big_j);
                next.push(Branch {
                    j: big_j,
                    history,
                    multiplet: couple_with_qubit(branch, big_j),
                });
            }
        }
        branches = next;
    }

    let mut entries = Vec::with_capacity(1 << n_qubits);
    let mut index = HashMap::new();
    let mut alpha_counter: HashMap<i32, usize> = HashMap::new();
    for branch in &branches {
        let s = branch.j;
        let alpha = {
            let slot = alpha_counter.entry(s.twice_value()).or_insert(0);
            *slot += 1;
            *slot
        };
        for (slot, m) in s.projections().enumerate() {
            let vector = StateVector::new(n_qubits, branch.multiplet[slot].clone())?;
            index.insert((s.twice_value(), alpha, m.twice_value()), entries.len());
            entries.push(CoupledEntry {
                s,
                alpha,
                m,
                vector,
                coupling_history: branch.history.clone(),
            });
        }
    }

    Ok(CoupledBasisTable {
        n_qubits,
        entries,
        index,
    })
}

impl CoupledBasisTable {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[CoupledEntry] {
        &self.entries
    }

    pub fn entry(&self, s: HalfInteger, alpha: usize, m: HalfInteger) -> Option<&CoupledEntry> {
        self.index
            .get(&(s.twice_value(), alpha, m.twice_value()))
            .map(|&i| &self.entries[i])
    }

    /// Distinct total spins present, descending.
    pub fn spins(&self) -> Vec<HalfInteger> {
        let mut ts: Vec<i32> = self.entries.iter().map(|e| e.s.twice_value()).collect();
        ts.sort_unstable();
        ts.dedup();
        ts.reverse();
        ts.into_iter().map(HalfInteger::from_twice).collect()
    }

    /// Number of α branches for spin s.
    pub fn branch_count(&self, s: HalfInteger) -> usize {
        self.entries.iter().filter(|e| e.s == s && e.m == s).count()
    }

    /// Unitary whose columns are the coupled basis vectors in table order.
    pub fn basis_matrix(&self) -> CMat {
        let dim = self.dim();
        let mut b = CMat::zeros(dim, dim);
        for (col, entry) in self.entries.iter().enumerate() {
            b.set_column(col, entry.vector.amplitudes());
        }
        b
    }

    /// Projector onto the full spin-s sector.
    pub fn sector_projector(&self, s: HalfInteger) -> CMat {
        let dim = self.dim();
        let mut p = CMat::zeros(dim, dim);
        for entry in self.entries.iter().filter(|e| e.s == s) {
            let v = entry.vector.amplitudes();
            p += v * v.adjoint();
        }
        p
    }

    /// Projector onto one (s, α) multiplet.
    pub fn branch_projector(&self, s: HalfInteger, alpha: usize) -> CMat {
        let dim = self.dim();
        let mut p = CMat::zeros(dim, dim);
        for entry in self.entries.iter().filter(|e| e.s == s && e.alpha == alpha) {
            let v = entry.vector.amplitudes();
            p += v * v.adjoint();
        }
        p
    }

    /// The spin-zero states |0, α, 0⟩ in α order.
    pub fn spin_zero_states(&self) -> Vec<&StateVector> {
        let zero = HalfInteger::ZERO;
        let mut with_alpha: Vec<(usize, &StateVector)> = self
            .entries
            .iter()
            .filter(|e| e.s == zero)
            .map(|e| (e.alpha, &e.vector))
            .collect();
        with_alpha.sort_by_key(|(alpha, _)| *alpha);
        with_alpha.into_iter().map(|(_, v)| v).collect()
    }
}
