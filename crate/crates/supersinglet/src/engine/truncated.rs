//! The distillation step restricted to the spin-zero multiplicity sector.
//!
//! When the input state lives entirely in the s = 0 sector, the update stays
//! there, so an A(N,0)-dimensional representation suffices. The Ω tensor
//! contracts the postselection bras against triples of sector basis states
//! once; each step is then a handful of small matrix products instead of a
//! 2^(3N)-dimensional contraction.

use std::sync::Arc;

use crate::density::DensityMatrix;
use crate::engine::layout::copy_index_for_site_major;
use crate::engine::povm::effective_postselect_local;
use crate::engine::StepStats;
use crate::error::{Error, Result};
use crate::linalg::{c, cr, kron, kron_vec, CMat, CVec, C64};
use crate::spin_algebra::build_coupled_basis;
use crate::state_factory::supersinglet;

pub const TRUNCATED_ENGINE_MAX_QUBITS: usize = 8;

/// Population outside s = 0 above this threshold disqualifies a state from
/// the truncated representation.
pub const SECTOR_LEAK_TOL: f64 = 1e-10;

/// The spin-zero basis |0, α, 0⟩, α = 1..A(N,0), of an N-qubit register.
#[derive(Debug)]
pub struct SpinZeroSector {
    n_qubits: usize,
    vectors: Vec<CVec>,
}

impl SpinZeroSector {
    pub fn build(n_qubits: usize) -> Result<Arc<Self>> {
        if !n_qubits.is_multiple_of(2) {
            return Err(Error::OddQubitCount { n: n_qubits });
        }
        let table = build_coupled_basis(n_qubits)?;
        let vectors = table
            .spin_zero_states()
            .into_iter()
            .map(|s| s.amplitudes().clone())
            .collect();
        Ok(Arc::new(Self { n_qubits, vectors }))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// A(N, 0).
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CVec] {
        &self.vectors
    }

    /// Tr(Π₀ ρ): the in-sector population.
    pub fn sector_population(&self, rho: &DensityMatrix) -> f64 {
        self.vectors
            .iter()
            .map(|v| (v.adjoint() * rho.matrix() * v)[(0, 0)].re)
            .sum()
    }

    /// Compress ρ to its A×A sector block, rejecting states that leak out of
    /// the sector; the block is renormalized to unit trace.
    pub fn project(self: &Arc<Self>, rho: &DensityMatrix) -> Result<SpinZeroState> {
        if rho.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n_qubits,
                got: rho.dim(),
            });
        }
        let a = self.dim();
        let mut block = CMat::zeros(a, a);
        for (i, vi) in self.vectors.iter().enumerate() {
            for (j, vj) in self.vectors.iter().enumerate() {
                block[(i, j)] = (vi.adjoint() * rho.matrix() * vj)[(0, 0)];
            }
        }
        let in_sector = crate::linalg::trace(&block).re;
        let leak = rho.trace() - in_sector;
        if leak > SECTOR_LEAK_TOL {
            return Err(Error::SectorLeakage { population: leak });
        }
        block *= cr(1.0 / in_sector);
        Ok(SpinZeroState {
            n_qubits: self.n_qubits,
            matrix: block,
            basis: Arc::clone(self),
        })
    }

    /// Expand an A×A sector block back to the full 2^N representation.
    pub fn expand(&self, state: &SpinZeroState) -> DensityMatrix {
        let dim = 1usize << self.n_qubits;
        let mut out = CMat::zeros(dim, dim);
        for (i, vi) in self.vectors.iter().enumerate() {
            for (j, vj) in self.vectors.iter().enumerate() {
                out += vi * vj.adjoint() * state.matrix[(i, j)];
            }
        }
        DensityMatrix::new(self.n_qubits, out).expect("sector expansion has full dimension")
    }
}

/// A density matrix truncated to the spin-zero sector.
#[derive(Clone, Debug)]
pub struct SpinZeroState {
    n_qubits: usize,
    matrix: CMat,
    basis: Arc<SpinZeroSector>,
}

impl SpinZeroState {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn basis(&self) -> &Arc<SpinZeroSector> {
        &self.basis
    }

    pub fn trace(&self) -> f64 {
        crate::linalg::trace(&self.matrix).re
    }
}

/// Ω_k^{α₁α₂α₃} = (⟨k₁⁽³⁾| ⊗ … ⊗ ⟨k_N⁽³⁾|) |α₁, α₂, α₃⟩.
pub struct OmegaTensor {
    n_qubits: usize,
    sector_dim: usize,
    /// Indexed [k][α₁][α₂][α₃], k fastest-varying omitted: row-major with k
    /// outermost.
    values: Vec<C64>,
}

impl OmegaTensor {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// A(N, 0).
    pub fn sector_dim(&self) -> usize {
        self.sector_dim
    }

    /// Matrix shape (2^N, A(N,0)³) with triple-index columns.
    pub fn shape(&self) -> (usize, usize) {
        (1 << self.n_qubits, self.sector_dim.pow(3))
    }

    pub fn value(&self, k: usize, a1: usize, a2: usize, a3: usize) -> C64 {
        let a = self.sector_dim;
        self.values[((k * a + a1) * a + a2) * a + a3]
    }

    /// The 2^N × A³ matrix with columns indexed by (α₁, α₂, α₃), α₁ major.
    pub fn as_matrix(&self) -> CMat {
        let rows = 1usize << self.n_qubits;
        let cols = self.sector_dim.pow(3);
        let mut m = CMat::zeros(rows, cols);
        for k in 0..rows {
            for t in 0..cols {
                m[(k, t)] = self.values[k * cols + t];
            }
        }
        m
    }
}

/// Contract triples of spin-zero basis states against the postselection bras.
pub fn build_omega_tensor(n_qubits: usize) -> Result<OmegaTensor> {
    let sector = SpinZeroSector::build(n_qubits)?;
    build_omega_tensor_for(&sector)
}

pub fn build_omega_tensor_for(sector: &SpinZeroSector) -> Result<OmegaTensor> {
    let n = sector.n_qubits();
    if n > TRUNCATED_ENGINE_MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            n,
            min: 2,
            max: TRUNCATED_ENGINE_MAX_QUBITS,
        });
    }
    let a = sector.dim();
    let out_dim = 1usize << n;
    let map = copy_index_for_site_major(n);
    let m_eff = effective_postselect_local();
    let mut values = vec![c(0.0, 0.0); out_dim * a * a * a];

    for a1 in 0..a {
        for a2 in 0..a {
            let pair = kron_vec(&sector.vectors[a1], &sector.vectors[a2]);
            for a3 in 0..a {
                let copy_vec = kron_vec(&pair, &sector.vectors[a3]);
                // Regroup to site-major, then eat one site at a time.
                let mut cur = CVec::zeros(copy_vec.len());
                for (i_site, &i_copy) in map.iter().enumerate() {
                    cur[i_site] = copy_vec[i_copy];
                }
                let mut cur: Vec<C64> = cur.iter().copied().collect();
                for site in 1..=n {
                    let left = 1usize << (site - 1);
                    let right = 1usize << (3 * (n - site));
                    let mut next = vec![c(0.0, 0.0); left * 2 * right];
                    for l in 0..left {
                        for b in 0..8usize {
                            for knew in 0..2usize {
                                let w = m_eff[(knew, b)];
                                if w == c(0.0, 0.0) {
                                    continue;
                                }
                                let src = (l * 8 + b) * right;
                                let dst = (l * 2 + knew) * right;
                                for r in 0..right {
                                    next[dst + r] += w * cur[src + r];
                                }
                            }
                        }
                    }
                    cur = next;
                }
                debug_assert_eq!(cur.len(), out_dim);
                for (k, amp) in cur.into_iter().enumerate() {
                    values[((k * a + a1) * a + a2) * a + a3] = amp;
                }
            }
        }
    }
    Ok(OmegaTensor {
        n_qubits: n,
        sector_dim: a,
        values,
    })
}

/// Distillation engine operating on A(N,0)-dimensional sector blocks.
pub struct TruncatedEngine {
    sector: Arc<SpinZeroSector>,
    /// (C·W): the Ω matrix with its k index contracted against the sector
    /// bras, shape A × A³.
    contracted: CMat,
    /// o_α = ⟨0, α, 0 | S_N⟩.
    target_overlap: CVec,
}

impl TruncatedEngine {
    pub fn new(n_qubits: usize) -> Result<Self> {
        let sector = SpinZeroSector::build(n_qubits)?;
        let omega = build_omega_tensor_for(&sector)?;
        Self::from_parts(sector, &omega)
    }

    pub fn from_parts(sector: Arc<SpinZeroSector>, omega: &OmegaTensor) -> Result<Self> {
        let n = sector.n_qubits();
        if omega.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: omega.n_qubits(),
            });
        }
        let a = sector.dim();
        let w = omega.as_matrix();
        // C[α, k] = ⟨0,α,0|k⟩
        let mut bras = CMat::zeros(a, 1 << n);
        for (row, v) in sector.vectors().iter().enumerate() {
            for k in 0..v.len() {
                bras[(row, k)] = v[k].conj();
            }
        }
        let contracted = &bras * &w;
        let target = supersinglet(n)?;
        let mut target_overlap = CVec::zeros(a);
        for (row, v) in sector.vectors().iter().enumerate() {
            target_overlap[row] = v.dotc(target.amplitudes());
        }
        Ok(Self {
            sector,
            contracted,
            target_overlap,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.sector.n_qubits()
    }

    pub fn sector(&self) -> &Arc<SpinZeroSector> {
        &self.sector
    }

    pub fn project(&self, rho: &DensityMatrix) -> Result<SpinZeroState> {
        self.sector.project(rho)
    }

    pub fn expand(&self, state: &SpinZeroState) -> DensityMatrix {
        self.sector.expand(state)
    }

    /// One round in the sector representation: contract the three ρ factors
    /// into the cached Ω columns and renormalize. ρ^{⊗3} is only ever formed
    /// in the A³-dimensional sector space.
    pub fn step(&self, state: &SpinZeroState) -> Result<(SpinZeroState, StepStats)> {
        let a = self.sector.dim();
        if state.matrix.nrows() != a || state.n_qubits != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: a,
                got: state.matrix.nrows(),
            });
        }
        let rho3 = kron(&kron(&state.matrix, &state.matrix), &state.matrix);
        let raw = &self.contracted * rho3 * self.contracted.adjoint();
        let (normalized, stats) = finish_step_sector(raw)?;
        Ok((
            SpinZeroState {
                n_qubits: state.n_qubits,
                matrix: normalized,
                basis: Arc::clone(&self.sector),
            },
            stats,
        ))
    }

    /// ⟨S_N|ρ|S_N⟩ evaluated through the sector overlap vector.
    pub fn fidelity(&self, state: &SpinZeroState) -> f64 {
        (self.target_overlap.adjoint() * &state.matrix * &self.target_overlap)[(0, 0)].re
    }

    pub fn target_overlap(&self) -> &CVec {
        &self.target_overlap
    }
}

fn finish_step_sector(raw: CMat) -> Result<(CMat, StepStats)> {
    // Same bookkeeping as the full engine, minus the DensityMatrix wrapper.
    let tr = crate::linalg::trace(&raw);
    let p = tr.re;
    if p < crate::engine::full::VANISHING_PROBABILITY {
        return Err(Error::VanishingSuccessProbability { p });
    }
    let mut m = raw;
    let repair = crate::linalg::hermitize(&mut m);
    m *= cr(1.0 / p);
    Ok((
        m,
        StepStats {
            success_probability: p,
            trace_residual: repair.max(tr.im.abs()),
        },
    ))
}
