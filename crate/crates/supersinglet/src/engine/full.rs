//! The distillation step evaluated in the full 2^(3N)-dimensional space.

use crate::density::DensityMatrix;
use crate::engine::layout::copy_index_for_site_major;
use crate::engine::povm::effective_local_kets;
use crate::engine::StepStats;
use crate::error::{Error, Result};
use crate::linalg::{kron_vec, trace, CMat, CVec};
use crate::state::StateVector;
use crate::state_factory::supersinglet;

/// Largest N for which the dense full-space operator is built.
pub const FULL_ENGINE_MAX_QUBITS: usize = 4;

/// Below this success probability a postselection branch is treated as
/// genuinely vanishing and the run aborts.
pub const VANISHING_PROBABILITY: f64 = 1e-14;

/// Qubit-index convention of the 3N-qubit space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlobalLayout {
    /// Global qubit q = (d−1)·N + n; site grouping handled by an internal
    /// index permutation.
    CopyMajor,
}

/// The 2^N × 2^(3N) operator that postselects every site on the successful
/// (j = 1/2, α = 1) outcome: Σ_k |k⟩ ⟨k₁⁽³⁾| ⊗ … ⊗ ⟨k_N⁽³⁾|.
pub struct PostselectionOperator {
    pub n_sites: usize,
    pub layout: GlobalLayout,
    /// rows[k] holds the copy-major embedding of |k⁽³⁾⟩; the operator entry
    /// is its conjugate.
    rows: Vec<CVec>,
}

pub fn build_postselection_operator(n_qubits: usize) -> Result<PostselectionOperator> {
    if !n_qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount { n: n_qubits });
    }
    if n_qubits > FULL_ENGINE_MAX_QUBITS {
        return Err(Error::FullEngineMemoryGate {
            n: n_qubits,
            max: FULL_ENGINE_MAX_QUBITS,
        });
    }
    let (zero_ket, one_ket) = effective_local_kets();
    let map = copy_index_for_site_major(n_qubits);
    let dim = 1usize << n_qubits;
    let mut rows = Vec::with_capacity(dim);
    for k in 0..dim {
        // Site-major product ⊗_n |k_n⁽³⁾⟩ …
        let mut site_vec = CVec::from_vec(vec![crate::linalg::cr(1.0)]);
        for n in 1..=n_qubits {
            let bit = StateVector::bit(k, n_qubits, n);
            let ket = if bit == 0 { &zero_ket } else { &one_ket };
            site_vec = kron_vec(&site_vec, ket);
        }
        // … regrouped into the copy-major layout.
        let mut copy_vec = CVec::zeros(site_vec.len());
        for (i_site, &i_copy) in map.iter().enumerate() {
            copy_vec[i_copy] = site_vec[i_site];
        }
        rows.push(copy_vec);
    }
    Ok(PostselectionOperator {
        n_sites: n_qubits,
        layout: GlobalLayout::CopyMajor,
        rows,
    })
}

impl PostselectionOperator {
    pub fn output_dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn input_dim(&self) -> usize {
        1 << (3 * self.n_sites)
    }

    /// The copy-major embedding of |k⁽³⁾⟩ (the conjugate of row k).
    pub fn row_ket(&self, k: usize) -> &CVec {
        &self.rows[k]
    }

    /// Dense materialization, rows indexed by |k⟩.
    pub fn matrix(&self) -> CMat {
        let mut m = CMat::zeros(self.output_dim(), self.input_dim());
        for (k, row) in self.rows.iter().enumerate() {
            for (y, amp) in row.iter().enumerate() {
                m[(k, y)] = amp.conj();
            }
        }
        m
    }

    /// Apply to a copy-major 3N-qubit vector.
    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        if v.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: v.len(),
            });
        }
        let mut out = CVec::zeros(self.output_dim());
        for (k, row) in self.rows.iter().enumerate() {
            out[k] = row.dotc(v);
        }
        Ok(out)
    }
}

/// Apply (m ⊗ m ⊗ m) to a copy-major vector without materializing the
/// Kronecker product.
pub fn apply_kron3(m: &CMat, v: &CVec) -> CVec {
    let d = m.nrows();
    assert_eq!(v.len(), d * d * d);
    let mut cur = v.clone();
    for factor in 0..3usize {
        let left = d.pow(factor as u32);
        let right = d.pow(2 - factor as u32);
        let mut next = CVec::zeros(cur.len());
        for l in 0..left {
            for r in 0..right {
                for i in 0..d {
                    let mut acc = crate::linalg::c(0.0, 0.0);
                    for j in 0..d {
                        acc += m[(i, j)] * cur[(l * d + j) * right + r];
                    }
                    next[(l * d + i) * right + r] = acc;
                }
            }
        }
        cur = next;
    }
    cur
}

/// Distillation engine contracting the postselection operator against
/// ρ ⊗ ρ ⊗ ρ factor by factor.
pub struct FullEngine {
    n_qubits: usize,
    op: PostselectionOperator,
    target: StateVector,
}

impl FullEngine {
    pub fn new(n_qubits: usize) -> Result<Self> {
        let op = build_postselection_operator(n_qubits)?;
        let target = supersinglet(n_qubits)?;
        Ok(Self {
            n_qubits,
            op,
            target,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn postselection(&self) -> &PostselectionOperator {
        &self.op
    }

    pub fn target(&self) -> &StateVector {
        &self.target
    }

    /// One round: ρ′ = M ρ^{⊗3} M† / p_suc with p_suc = Tr(M ρ^{⊗3} M†).
    pub fn step(&self, rho: &DensityMatrix) -> Result<(DensityMatrix, StepStats)> {
        if rho.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n_qubits,
                got: rho.dim(),
            });
        }
        let dim = rho.dim();
        let mut raw = CMat::zeros(dim, dim);
        for b in 0..dim {
            let z = apply_kron3(rho.matrix(), self.op.row_ket(b));
            for a in 0..dim {
                raw[(a, b)] = self.op.row_ket(a).dotc(&z);
            }
        }
        finish_step(rho.n_qubits(), raw)
    }

    /// ⟨S_N|ρ|S_N⟩.
    pub fn fidelity(&self, rho: &DensityMatrix) -> f64 {
        rho.expectation_with(&self.target)
    }
}

/// Shared tail of both engines: extract p_suc, repair Hermiticity, normalize.
pub(crate) fn finish_step(n_qubits: usize, mut raw: CMat) -> Result<(DensityMatrix, StepStats)> {
    let tr = trace(&raw);
    let p = tr.re;
    if p < VANISHING_PROBABILITY {
        return Err(Error::VanishingSuccessProbability { p });
    }
    let repair = crate::linalg::hermitize(&mut raw);
    let trace_residual = repair.max(tr.im.abs());
    raw *= crate::linalg::cr(1.0 / p);
    let out = DensityMatrix::new(n_qubits, raw)?;
    Ok((
        out,
        StepStats {
            success_probability: p,
            trace_residual,
        },
    ))
}
