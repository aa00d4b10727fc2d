//! Factories for every named state used by the protocol: Dicke states,
//! supersinglets, singlet chains and their symmetrized mixtures, the
//! bit-flipped GHZ state, Werner mixtures, and spin-zero sector mixtures.

use crate::channels::{group_two_permutations, permute_state};
use crate::density::{DensityMatrix, MixtureComponent, MixtureRecipe};
use crate::error::{Error, Result};
use crate::half::HalfInteger;
use crate::linalg::{cr, min_eigenvalue, CMat, CVec};
use crate::spin_algebra::{build_coupled_basis, multiplicity};
use crate::state::StateVector;

fn require_even(n_qubits: usize) -> Result<()> {
    if !n_qubits.is_multiple_of(2) || n_qubits == 0 {
        return Err(Error::OddQubitCount { n: n_qubits });
    }
    Ok(())
}

/// The symmetric state of `half_n` qubits with exactly k excitations.
pub fn dicke_state(half_n: usize, k: usize) -> Result<StateVector> {
    if half_n == 0 {
        return Err(Error::InvalidParameter(
            "dicke_state needs ≥ 1 qubit".into(),
        ));
    }
    if k > half_n {
        return Err(Error::InvalidParameter(format!(
            "excitation count {k} exceeds qubit count {half_n}"
        )));
    }
    let dim = 1usize << half_n;
    let count: usize = (0..dim).filter(|i| i.count_ones() as usize == k).count();
    let amp = cr(1.0 / (count as f64).sqrt());
    let mut amplitudes = CVec::zeros(dim);
    for i in (0..dim).filter(|i| i.count_ones() as usize == k) {
        amplitudes[i] = amp;
    }
    StateVector::new(half_n, amplitudes)
}

/// The N-qubit supersinglet: each half couples to maximal spin N/4, and the
/// two halves couple antisymmetrically to total spin zero.
///
/// The global phase is fixed so that the |0…01…1⟩ amplitude is negative,
/// matching the explicitly tabulated N = 4 and N = 6 wavefunctions.
pub fn supersinglet(n_qubits: usize) -> Result<StateVector> {
    require_even(n_qubits)?;
    let half = n_qubits / 2;
    let norm = cr(1.0 / ((half + 1) as f64).sqrt());
    let mut acc = CVec::zeros(1 << n_qubits);
    for k in 0..=half {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let left = dicke_state(half, k)?;
        let right = dicke_state(half, half - k)?;
        let term = left.tensor(&right);
        acc += term.amplitudes() * (norm * cr(sign));
    }
    StateVector::new(n_qubits, acc)
}

/// Product of singlets on the pairs (n, n + N/2): all entanglement is between
/// groups I and II.
pub fn singlet_chain(n_qubits: usize) -> Result<StateVector> {
    require_even(n_qubits)?;
    let half = n_qubits / 2;
    let amp = (1.0 / 2f64.sqrt()).powi(half as i32);
    let mut amplitudes = CVec::zeros(1 << n_qubits);
    // Each singlet contributes |0⟩|1⟩ with + and |1⟩|0⟩ with −.
    for pattern in 0..(1usize << half) {
        let mut index = 0usize;
        let mut sign = 1.0;
        for pair in 0..half {
            let flipped = (pattern >> pair) & 1 == 1;
            if flipped {
                sign = -sign;
            }
            let (first, second) = if flipped { (1, 0) } else { (0, 1) };
            // qubit pair+1 carries `first`, qubit pair+1+half carries `second`
            index |= first << (n_qubits - (pair + 1));
            index |= second << (n_qubits - (pair + 1 + half));
        }
        amplitudes[index] = cr(sign * amp);
    }
    StateVector::new(n_qubits, amplitudes)
}

/// Uniform mixture of the singlet chain over all permutations of group II,
/// which enforces the supersinglet permutation symmetry during initialization.
pub fn symmetrized_singlet_init(n_qubits: usize) -> Result<DensityMatrix> {
    require_even(n_qubits)?;
    let chain = singlet_chain(n_qubits)?;
    let perms = group_two_permutations(n_qubits)?;
    let weight = 1.0 / perms.len() as f64;
    let components = perms
        .iter()
        .map(|sigma| permute_state(sigma, &chain).map(|s| (weight, MixtureComponent::Pure(s))))
        .collect::<Result<Vec<_>>>()?;
    Ok(MixtureRecipe::new(components)?.build())
}

/// GHZ state with every group-I qubit bit-flipped:
/// (⊗_{n=1}^{N/2} X_n)(|0⟩^N + (−1)^{N/2}|1⟩^N)/√2.
pub fn modified_ghz(n_qubits: usize) -> Result<StateVector> {
    require_even(n_qubits)?;
    let half = n_qubits / 2;
    let dim = 1usize << n_qubits;
    let sign = if half.is_multiple_of(2) { 1.0 } else { -1.0 };
    let r = cr(1.0 / 2f64.sqrt());
    // Flipping group I maps |0…0⟩ and |1…1⟩ onto each other's complements
    // on the high N/2 bits.
    let mask = ((1usize << half) - 1) << half;
    let mut amplitudes = CVec::zeros(dim);
    amplitudes[mask] = r;
    amplitudes[(dim - 1) ^ mask] = r * cr(sign);
    StateVector::new(n_qubits, amplitudes)
}

/// (1−ε) ρ + ε I/2^N.
pub fn werner_mix(rho: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} outside [0, 1]"
        )));
    }
    let mixed = DensityMatrix::maximally_mixed(rho.n_qubits());
    let matrix = rho.matrix() * cr(1.0 - epsilon) + mixed.matrix() * cr(epsilon);
    DensityMatrix::new(rho.n_qubits(), matrix)
}

/// (1−δ) Π₀/A(N,0) + δ |S_N⟩⟨S_N| within the spin-zero sector.
///
/// Negative δ is applied verbatim; the result is rejected if it fails
/// positive semidefiniteness.
pub fn s0_mixture(n_qubits: usize, delta: f64) -> Result<DensityMatrix> {
    require_even(n_qubits)?;
    if !(-1.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "delta {delta} outside [-1, 1]"
        )));
    }
    let table = build_coupled_basis(n_qubits)?;
    let a0 = multiplicity(n_qubits, HalfInteger::ZERO)?;
    let projector = table.sector_projector(HalfInteger::ZERO);
    let target = supersinglet(n_qubits)?;
    let target_matrix = DensityMatrix::from_pure(&target).into_matrix();
    let matrix: CMat = projector * cr((1.0 - delta) / a0 as f64) + target_matrix * cr(delta);
    let min = min_eigenvalue(&matrix);
    if min < -1e-10 {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: min,
        });
    }
    DensityMatrix::new(n_qubits, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::spin_algebra::{apply_s_squared, group_spin_operators};

    #[test]
    fn dicke_trivial_cases() {
        let d = dicke_state(2, 0).unwrap();
        assert_eq!(d.amplitude(0), cr(1.0)); // |00⟩

        let d = dicke_state(2, 1).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((d.amplitude(1) - cr(r)).norm() < 1e-15);
        assert!((d.amplitude(2) - cr(r)).norm() < 1e-15);

        let d = dicke_state(3, 2).unwrap();
        let r = 1.0 / 3f64.sqrt();
        for idx in [0b011, 0b101, 0b110] {
            assert!((d.amplitude(idx) - cr(r)).norm() < 1e-15);
        }
        assert!(dicke_state(2, 3).is_err());
    }

    #[test]
    fn supersinglet_two_qubits_is_the_singlet_up_to_phase() {
        let s = supersinglet(2).unwrap();
        let singlet = StateVector::from_amplitude_pairs(
            2,
            &[(1, cr(1.0 / 2f64.sqrt())), (2, cr(-1.0 / 2f64.sqrt()))],
        );
        assert!((s.overlap_sq(&singlet) - 1.0).abs() < 1e-12);
        assert!(supersinglet(3).is_err());
    }

    #[test]
    fn supersinglet_is_spin_zero() {
        for n in [2usize, 4, 6] {
            let s = supersinglet(n).unwrap();
            let s2 = apply_s_squared(n, 1..=n, s.amplitudes());
            assert!(s2.norm() < 1e-12, "S² residual for n = {n}");
        }
    }

    #[test]
    fn group_spins_are_maximal_on_supersinglet() {
        // S_I² and S_II² eigenvalue (N/4)(N/4+1).
        for (n, expected) in [(4usize, 2.0), (6usize, 15.0 / 4.0)] {
            let s = supersinglet(n).unwrap();
            let ops_one = group_spin_operators(n, 1..=n / 2).unwrap();
            let ops_two = group_spin_operators(n, n / 2 + 1..=n).unwrap();
            for ops in [ops_one, ops_two] {
                let out = ops.apply_s_squared(s.amplitudes());
                let residual = (&out - s.amplitudes() * cr(expected)).norm();
                assert!(residual < 1e-12, "n = {n}");
            }
        }
    }

    #[test]
    fn singlet_chain_matches_singlet_for_two_qubits() {
        let chain = singlet_chain(2).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((chain.amplitude(1) - cr(r)).norm() < 1e-15);
        assert!((chain.amplitude(2) + cr(r)).norm() < 1e-15);
    }

    #[test]
    fn singlet_chain_is_spin_zero() {
        let chain = singlet_chain(4).unwrap();
        let s2 = apply_s_squared(4, 1..=4, chain.amplitudes());
        assert!(s2.norm() < 1e-12);
    }

    #[test]
    fn chain_overlap_with_supersinglet() {
        // |⟨S₄|ψ₁⟩|² = 3/4 for the four-qubit chain.
        let s = supersinglet(4).unwrap();
        let chain = singlet_chain(4).unwrap();
        assert!((s.overlap_sq(&chain) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn symmetrized_init_small_cases() {
        // N = 2: a single permutation, so the pure chain is returned.
        let rho = symmetrized_singlet_init(2).unwrap();
        let chain = singlet_chain(2).unwrap();
        assert!(max_abs_diff(rho.matrix(), DensityMatrix::from_pure(&chain).matrix()) < 1e-15);

        // N = 4: equal mixture of the (13)(24) and (14)(23) pairings.
        let rho = symmetrized_singlet_init(4).unwrap();
        rho.validate().unwrap();
        let chain = singlet_chain(4).unwrap();
        let swapped = permute_state(
            &crate::channels::PermutationSpec::new(vec![1, 2, 4, 3]).unwrap(),
            &chain,
        )
        .unwrap();
        let expected = (DensityMatrix::from_pure(&chain).into_matrix()
            + DensityMatrix::from_pure(&swapped).into_matrix())
            * cr(0.5);
        assert!(max_abs_diff(rho.matrix(), &expected) < 1e-14);
    }

    #[test]
    fn symmetrized_init_six_qubits_has_spin_zero() {
        let rho = symmetrized_singlet_init(6).unwrap();
        rho.validate().unwrap();
        // Tr(ρ S²) via S² applied column by column of ρ.
        let mut tr = 0.0;
        for col in 0..rho.dim() {
            let column = CVec::from_column_slice(rho.matrix().column(col).as_slice());
            let s2col = apply_s_squared(6, 1..=6, &column);
            tr += s2col[col].re;
        }
        assert!(tr.abs() < 1e-12);
    }

    #[test]
    fn modified_ghz_four_qubits() {
        let psi = modified_ghz(4).unwrap();
        let r = cr(1.0 / 2f64.sqrt());
        assert!((psi.amplitude(0b1100) - r).norm() < 1e-15);
        assert!((psi.amplitude(0b0011) - r).norm() < 1e-15);
        // |⟨S₄|ψ⟩|² = 2/3.
        let s = supersinglet(4).unwrap();
        assert!((s.overlap_sq(&psi) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn modified_ghz_two_qubits_is_the_singlet_up_to_phase() {
        // One flip on group I = qubit 1: X₁(|00⟩ − |11⟩)/√2 = (|10⟩ − |01⟩)/√2.
        let psi = modified_ghz(2).unwrap();
        let s = supersinglet(2).unwrap();
        assert!((s.overlap_sq(&psi) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn modified_ghz_has_no_odd_spin_amplitude() {
        use crate::spin_algebra::build_coupled_basis;
        for n in [4usize, 6] {
            let psi = modified_ghz(n).unwrap();
            let rho = DensityMatrix::from_pure(&psi);
            let table = build_coupled_basis(n).unwrap();
            let mut ts = 2; // odd sectors: s = 1, 3, …
            while ts <= n as i32 {
                let projector = table.sector_projector(crate::half::HalfInteger::from_twice(ts));
                let population = crate::linalg::trace(&(&projector * rho.matrix())).re;
                assert!(population.abs() < 1e-12, "n = {n}, 2s = {ts}");
                ts += 4;
            }
            // The symmetries hold: invariance under within-group permutations
            // and the (−1)^{N/2} sign under the group swap.
            let swap = crate::channels::group_swap(n).unwrap();
            let swapped = crate::channels::permute_state(&swap, &psi).unwrap();
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((swapped.amplitudes() - psi.amplitudes() * cr(sign)).norm() < 1e-12);
        }
    }

    #[test]
    fn werner_endpoints() {
        let rho = symmetrized_singlet_init(4).unwrap();
        let same = werner_mix(&rho, 0.0).unwrap();
        assert!(max_abs_diff(same.matrix(), rho.matrix()) < 1e-15);
        let mixed = werner_mix(&rho, 1.0).unwrap();
        assert!(max_abs_diff(mixed.matrix(), DensityMatrix::maximally_mixed(4).matrix()) < 1e-15);
        assert!(werner_mix(&rho, 1.5).is_err());
    }

    #[test]
    fn werner_fidelity_is_linear() {
        let rho3 = symmetrized_singlet_init(4).unwrap();
        let s = supersinglet(4).unwrap();
        let f0 = rho3.expectation_with(&s);
        let mixed = werner_mix(&rho3, 0.1).unwrap();
        let expected = 0.9 * f0 + 0.1 / 16.0;
        assert!((mixed.expectation_with(&s) - expected).abs() < 1e-12);
    }

    #[test]
    fn s0_mixture_fidelities() {
        let s = supersinglet(4).unwrap();
        let pure = s0_mixture(4, 1.0).unwrap();
        assert!((pure.expectation_with(&s) - 1.0).abs() < 1e-12);

        let flat = s0_mixture(4, 0.0).unwrap();
        assert!((flat.expectation_with(&s) - 0.5).abs() < 1e-12);

        let tilted = s0_mixture(4, 0.2).unwrap();
        assert!((tilted.expectation_with(&s) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn s0_mixture_rejects_unphysical_delta() {
        // The supersinglet weight (1 + (A−1)δ)/A goes negative below δ = −1/(A−1):
        // boundary for N = 4 (A = 2) is δ = −1, for N = 6 (A = 5) it is −1/4.
        assert!(s0_mixture(4, -1.0).is_ok());
        assert!(s0_mixture(4, -0.5).is_ok());
        assert!(s0_mixture(6, -0.5).is_err());
        assert!(s0_mixture(6, -0.2).is_ok());
    }
}
