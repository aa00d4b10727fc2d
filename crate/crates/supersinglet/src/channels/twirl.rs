//! The twirling channel ρ → ∫ dU U^{⊗N} ρ U†^{⊗N}, both in closed form over
//! spin sectors and as a seeded Monte-Carlo Haar average.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::half::HalfInteger;
use crate::linalg::{c, conjugate_uniform_unitary, cr, CMat};
use crate::spin_algebra::{build_coupled_basis, CoupledBasisTable};

/// Γ_{s l l'} = Σ_m |s, l, m⟩⟨s, l', m| for one pair of multiplicity branches.
pub struct SectorTransferOperator {
    pub s: HalfInteger,
    pub l: usize,
    pub l_prime: usize,
    pub matrix: CMat,
}

struct SectorBlock {
    width: usize,
    /// Table column of the m = +s entry for each branch, α ascending.
    branch_starts: Vec<usize>,
}

/// Closed-form twirl over a cached coupled basis.
pub struct Twirler {
    table: CoupledBasisTable,
    basis: CMat,
    blocks: Vec<SectorBlock>,
}

impl Twirler {
    pub fn new(table: CoupledBasisTable) -> Self {
        let basis = table.basis_matrix();
        let mut blocks: Vec<SectorBlock> = Vec::new();
        for s in table.spins() {
            let width = s.twice_value() as usize + 1;
            let mut branch_starts = Vec::new();
            for alpha in 1..=table.branch_count(s) {
                let col = table
                    .entries()
                    .iter()
                    .position(|e| e.s == s && e.alpha == alpha && e.m == s)
                    .expect("branch start present");
                branch_starts.push(col);
            }
            blocks.push(SectorBlock {
                width,
                branch_starts,
            });
        }
        Self {
            table,
            basis,
            blocks,
        }
    }

    pub fn for_qubits(n_qubits: usize) -> Result<Self> {
        Ok(Self::new(build_coupled_basis(n_qubits)?))
    }

    pub fn table(&self) -> &CoupledBasisTable {
        &self.table
    }

    /// T(ρ) = Σ_s (2s+1)⁻¹ Σ_{l,l'} Tr(ρ Γ†_{s l l'}) Γ_{s l l'}.
    ///
    /// Evaluated in the coupled basis, where each (s, l, l') term is one
    /// trace contraction along the m diagonal of a sector block.
    pub fn twirl(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.table.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.table.dim(),
                got: rho.dim(),
            });
        }
        let coupled = self.basis.adjoint() * rho.matrix() * &self.basis;
        let dim = rho.dim();
        let mut out = CMat::zeros(dim, dim);
        for block in &self.blocks {
            let w = block.width;
            for &start_l in &block.branch_starts {
                for &start_lp in &block.branch_starts {
                    let mut tr = c(0.0, 0.0);
                    for t in 0..w {
                        tr += coupled[(start_l + t, start_lp + t)];
                    }
                    let avg = tr / w as f64;
                    for t in 0..w {
                        out[(start_l + t, start_lp + t)] = avg;
                    }
                }
            }
        }
        DensityMatrix::new(rho.n_qubits(), &self.basis * out * self.basis.adjoint())
    }

    pub fn sector_transfer(
        &self,
        s: HalfInteger,
        l: usize,
        l_prime: usize,
    ) -> Result<SectorTransferOperator> {
        let dim = self.table.dim();
        let mut matrix = CMat::zeros(dim, dim);
        for m in s.projections() {
            let ket = self
                .table
                .entry(s, l, m)
                .ok_or_else(|| Error::InvalidParameter(format!("no entry ({s}, {l}, {m})")))?;
            let bra = self.table.entry(s, l_prime, m).ok_or_else(|| {
                Error::InvalidParameter(format!("no entry ({s}, {l_prime}, {m})"))
            })?;
            matrix += ket.vector.amplitudes() * bra.vector.amplitudes().adjoint();
        }
        Ok(SectorTransferOperator {
            s,
            l,
            l_prime,
            matrix,
        })
    }
}

/// An SU(2) element from a (not necessarily normalized) quaternion.
pub fn su2_from_quaternion(w: f64, x: f64, y: f64, z: f64) -> CMat {
    let norm = (w * w + x * x + y * y + z * z).sqrt();
    assert!(norm > 0.0);
    let (w, x, y, z) = (w / norm, x / norm, y / norm, z / norm);
    CMat::from_row_slice(2, 2, &[c(w, -z), c(-y, -x), c(y, -x), c(w, z)])
}

/// Haar-uniform SU(2) sample: four normal deviates normalized to the unit
/// quaternion sphere.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let norm2 = w * w + x * x + y * y + z * z;
        if norm2 > 1e-12 {
            return su2_from_quaternion(w, x, y, z);
        }
    }
}

/// (1/samples) Σ_i U_i^{⊗N} ρ U_i†^{⊗N} with U_i Haar-uniform.
///
/// Sample i draws from its own generator seeded with seed + i, so runs are
/// reproducible and samples could be evaluated independently.
pub fn twirl_monte_carlo(rho: &DensityMatrix, samples: usize, seed: u64) -> Result<DensityMatrix> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be ≥ 1".into()));
    }
    let n = rho.n_qubits();
    let dim = rho.dim();
    let mut acc = CMat::zeros(dim, dim);
    for i in 0..samples {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let u = haar_su2(&mut rng);
        acc += conjugate_uniform_unitary(rho.matrix(), n, &u);
    }
    DensityMatrix::new(n, acc * cr(1.0 / samples as f64))
}
