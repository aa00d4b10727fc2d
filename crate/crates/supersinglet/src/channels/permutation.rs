//! Qubit permutation operators and the permutation symmetrizer.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{cr, CMat};
use crate::state::StateVector;

/// A permutation of qubit labels in one-line notation σ(1)…σ(N).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PermutationSpec {
    mapping: Vec<usize>,
}

impl PermutationSpec {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &t in &mapping {
            if t < 1 || t > n || seen[t - 1] {
                return Err(Error::InvalidPermutation(mapping.clone()));
            }
            seen[t - 1] = true;
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// σ(n) for 1-based n.
    pub fn target(&self, n: usize) -> usize {
        self.mapping[n - 1]
    }

    /// Basis-state action: P_σ|k₁…k_N⟩ = |k_σ(1)…k_σ(N)⟩. Returns the index
    /// of the permuted basis state.
    pub fn permute_index(&self, index: usize) -> usize {
        let n = self.n();
        let mut out = 0usize;
        for pos in 1..=n {
            let bit = (index >> (n - self.target(pos))) & 1;
            out |= bit << (n - pos);
        }
        out
    }

    /// The permutation whose operator is P_self · P_other.
    pub fn then_after(&self, other: &PermutationSpec) -> PermutationSpec {
        assert_eq!(self.n(), other.n());
        let mapping = (1..=self.n())
            .map(|pos| other.target(self.target(pos)))
            .collect();
        PermutationSpec { mapping }
    }
}

/// Dense unitary for P_σ in the computational basis (a 0/1 permutation matrix).
pub fn permutation_operator(sigma: &PermutationSpec, n_qubits: usize) -> Result<CMat> {
    if sigma.n() != n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            got: sigma.n(),
        });
    }
    let dim = 1usize << n_qubits;
    let mut p = CMat::zeros(dim, dim);
    for k in 0..dim {
        p[(sigma.permute_index(k), k)] = cr(1.0);
    }
    Ok(p)
}

/// P_σ |ψ⟩ as an index shuffle.
pub fn permute_state(sigma: &PermutationSpec, state: &StateVector) -> Result<StateVector> {
    if sigma.n() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits(),
            got: sigma.n(),
        });
    }
    let mut out = state.amplitudes().clone();
    for k in 0..state.dim() {
        out[sigma.permute_index(k)] = state.amplitude(k);
    }
    StateVector::new(state.n_qubits(), out)
}

/// P_σ ρ P_σ† as an index shuffle.
pub fn permute_density(sigma: &PermutationSpec, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if sigma.n() != rho.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: rho.n_qubits(),
            got: sigma.n(),
        });
    }
    let dim = rho.dim();
    let targets: Vec<usize> = (0..dim).map(|k| sigma.permute_index(k)).collect();
    let mut out = CMat::zeros(dim, dim);
    let m = rho.matrix();
    for i in 0..dim {
        for j in 0..dim {
            out[(targets[i], targets[j])] = m[(i, j)];
        }
    }
    DensityMatrix::new(rho.n_qubits(), out)
}

fn all_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in all_permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Permutations that fix group I = [1, N/2] pointwise and permute
/// group II = [N/2+1, N] arbitrarily.
pub fn group_two_permutations(n_qubits: usize) -> Result<Vec<PermutationSpec>> {
    if !n_qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount { n: n_qubits });
    }
    let half = n_qubits / 2;
    let group_two: Vec<usize> = (half + 1..=n_qubits).collect();
    Ok(all_permutations(&group_two)
        .into_iter()
        .map(|tail| {
            let mut mapping: Vec<usize> = (1..=half).collect();
            mapping.extend(tail);
            PermutationSpec { mapping }
        })
        .collect())
}

/// The permutation that swaps groups I and II: σ(n) = ((n−1+N/2) mod N) + 1.
pub fn group_swap(n_qubits: usize) -> Result<PermutationSpec> {
    if !n_qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount { n: n_qubits });
    }
    let mapping = (1..=n_qubits)
        .map(|n| ((n - 1 + n_qubits / 2) % n_qubits) + 1)
        .collect();
    Ok(PermutationSpec { mapping })
}

/// The symmetry group of the supersinglet: permutations within each group,
/// with or without the group swap. Size 2·((N/2)!)².
pub fn supersinglet_symmetry_group(n_qubits: usize) -> Result<Vec<PermutationSpec>> {
    if !n_qubits.is_multiple_of(2) {
        return Err(Error::OddQubitCount { n: n_qubits });
    }
    let half = n_qubits / 2;
    let group_one: Vec<usize> = (1..=half).collect();
    let group_two: Vec<usize> = (half + 1..=n_qubits).collect();
    let swap = group_swap(n_qubits)?;

    let mut out = Vec::new();
    for head in all_permutations(&group_one) {
        for tail in all_permutations(&group_two) {
            let mut mapping = head.clone();
            mapping.extend(tail.iter().copied());
            let within = PermutationSpec { mapping };
            out.push(swap.then_after(&within));
            out.push(within);
        }
    }
    // Keep the within-group elements first, matching the usual listing.
    out.sort_by_key(|p| p.mapping.clone());
    Ok(out)
}

/// (1/|Q|) Σ_σ P_σ ρ P_σ†.
pub fn symmetrize(rho: &DensityMatrix, group: &[PermutationSpec]) -> Result<DensityMatrix> {
    if group.is_empty() {
        return Err(Error::InvalidParameter("empty permutation group".into()));
    }
    let dim = rho.dim();
    let mut acc = CMat::zeros(dim, dim);
    for sigma in group {
        acc += permute_density(sigma, rho)?.into_matrix();
    }
    DensityMatrix::new(rho.n_qubits(), acc * cr(1.0 / group.len() as f64))
}
