//! Independent oracles for the pinned regression constants.
//!
//! Every constant asserted here is computed by a brute-force route that does
//! not share code with the implementation path it checks: eigenprojections
//! from a hand-built spin matrix, dense tensor contractions over explicitly
//! materialized triple products, and the ratio form of the fixed-point
//! amplitude. The frozen decimal values double as regression pins.

use nalgebra::DMatrix;
use num_complex::Complex64;
use supersinglet::density::DensityMatrix;
use supersinglet::engine::{FullEngine, TruncatedEngine};
use supersinglet::half::HalfInteger;
use supersinglet::linalg::{cr, kron, max_abs_diff, CMat};
use supersinglet::spin_algebra::{clebsch_gordan, multiplicity, total_spin_operators};
use supersinglet::state::StateVector;
use supersinglet::state_factory::{singlet_chain, supersinglet};

fn h(t: i32) -> HalfInteger {
    HalfInteger::from_twice(t)
}

/// ⟨1,0;1/2,1/2|1/2,1/2⟩ from an eigenprojection of the hand-built S² block
/// on the M = +1/2 subspace of three qubits, with the Condon–Shortley sign
/// fixed by the stretched-m₁ component.
#[test]
fn clebsch_gordan_against_eigenprojection_oracle() {
    // Basis {|001⟩, |010⟩, |100⟩}; S² restricted to this subspace is
    // (3/4)·I + J with J the all-ones matrix (diagonal 9/4 − 1/2, off-diag 1).
    let ones = DMatrix::<f64>::from_element(3, 3, 1.0);
    let s2 = DMatrix::<f64>::identity(3, 3) * 0.75 + ones;
    let eig = s2.symmetric_eigen();
    // Project |001⟩ = e₀ onto the doubly degenerate 3/4 eigenspace.
    let mut proj = nalgebra::DVector::<f64>::zeros(3);
    for col in 0..3 {
        if (eig.eigenvalues[col] - 0.75).abs() < 1e-12 {
            let v = eig.eigenvectors.column(col);
            proj += v * v[0];
        }
    }
    // Condon–Shortley: ⟨1,1;1/2,−1/2|1/2,1/2⟩ > 0, so orient the projection
    // positively along |001⟩ before reading off the next coefficient.
    let norm = proj.norm();
    assert!((norm - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    let v1 = &proj / (norm * proj[0].signum());
    // |1,0⟩₁₂ ⊗ |0⟩₃ = (|010⟩ + |100⟩)/√2.
    let oracle = (v1[1] + v1[2]) / 2f64.sqrt();

    let frozen = -1.0 / 3f64.sqrt();
    assert!((oracle - frozen).abs() < 1e-12);
    let implemented = clebsch_gordan(h(2), h(0), h(1), h(1), h(1), h(1));
    assert!((implemented - frozen).abs() < 1e-12);
}

/// A(4,0) and A(6,0) against a zero-eigenvalue count of the dense S².
#[test]
fn multiplicity_against_eigenvalue_count_oracle() {
    for (n, expected) in [(4usize, 2usize), (6usize, 5usize)] {
        let ops = total_spin_operators(n).unwrap();
        let eig = ops.s_squared.clone().symmetric_eigen();
        let zeros = eig.eigenvalues.iter().filter(|v| v.abs() < 1e-9).count();
        assert_eq!(zeros, expected, "zero-eigenvector count for n = {n}");
        assert_eq!(multiplicity(n, h(0)).unwrap(), expected);
    }
}

/// The postselection kets restated from the doublet definition, independent
/// of the engine's constants module.
fn oracle_local_kets() -> [Vec<Complex64>; 2] {
    let s6 = 1.0 / 6f64.sqrt();
    let mut zero = vec![Complex64::default(); 8];
    zero[0b001] = cr(2.0 * s6);
    zero[0b010] = cr(-s6);
    zero[0b100] = cr(-s6);
    let mut one = vec![Complex64::default(); 8];
    one[0b110] = cr(-2.0 * s6);
    one[0b101] = cr(s6);
    one[0b011] = cr(s6);
    [zero, one]
}

/// Dense postselection matrix built by direct index arithmetic over the
/// copy-major layout (no Kronecker products, no permutation maps).
fn oracle_postselection_matrix(n: usize) -> CMat {
    let kets = oracle_local_kets();
    let out_dim = 1usize << n;
    let in_dim = 1usize << (3 * n);
    let mut m = CMat::zeros(out_dim, in_dim);
    for k in 0..out_dim {
        for y in 0..in_dim {
            let mut amp = cr(1.0);
            for site in 1..=n {
                let k_bit = (k >> (n - site)) & 1;
                let mut local = 0usize;
                for d in 1..=3usize {
                    let q = (d - 1) * n + site; // copy-major position
                    let bit = (y >> (3 * n - q)) & 1;
                    local |= bit << (3 - d);
                }
                amp *= kets[k_bit][local].conj();
                if amp.norm_sqr() == 0.0 {
                    break;
                }
            }
            m[(k, y)] = amp;
        }
    }
    m
}

/// ρ′ and p_suc by materializing ρ^{⊗3} and multiplying dense matrices.
fn oracle_dense_step(rho: &DensityMatrix) -> (CMat, f64) {
    let n = rho.n_qubits();
    let m = oracle_postselection_matrix(n);
    let rho3 = kron(&kron(rho.matrix(), rho.matrix()), rho.matrix());
    let raw = &m * rho3 * m.adjoint();
    let p = supersinglet::linalg::trace(&raw).re;
    (raw / cr(p), p)
}

#[test]
fn dense_oracle_matches_engine_on_maximally_mixed_two_qubits() {
    let rho = DensityMatrix::maximally_mixed(2);
    let (oracle_out, oracle_p) = oracle_dense_step(&rho);
    assert!((oracle_p - 1.0 / 16.0).abs() < 1e-13);
    assert!(max_abs_diff(&oracle_out, rho.matrix()) < 1e-13);

    let engine = FullEngine::new(2).unwrap();
    let (out, stats) = engine.step(&rho).unwrap();
    assert!((stats.success_probability - oracle_p).abs() < 1e-13);
    assert!(max_abs_diff(out.matrix(), &oracle_out) < 1e-13);
}

#[test]
fn dense_oracle_confirms_two_qubit_fixed_point_probability() {
    let singlet = singlet_chain(2).unwrap();
    let rho = DensityMatrix::from_pure(&singlet);
    let (oracle_out, oracle_p) = oracle_dense_step(&rho);
    assert!((oracle_p - 0.25).abs() < 1e-13);
    assert!(max_abs_diff(&oracle_out, rho.matrix()) < 1e-12);
}

/// Fixed-point amplitude by the ratio form: c = ⟨k⁽³⁾|S⟩^{⊗3} / ⟨k|S⟩ must be
/// independent of k, and p_suc = |c|².
fn oracle_fixed_point_probability(n: usize) -> f64 {
    let target = supersinglet(n).unwrap();
    let kets = oracle_local_kets();
    let dim = 1usize << n;
    let mut ratio: Option<f64> = None;
    for k in 0..dim {
        let denom = target.amplitude(k);
        // ⟨k⁽³⁾| (|S⟩⊗|S⟩⊗|S⟩) summed over the three copies' indices.
        let mut numer = Complex64::default();
        for x1 in 0..dim {
            if target.amplitude(x1).norm_sqr() == 0.0 {
                continue;
            }
            for x2 in 0..dim {
                if target.amplitude(x2).norm_sqr() == 0.0 {
                    continue;
                }
                for x3 in 0..dim {
                    let amp3 = target.amplitude(x3);
                    if amp3.norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut w = cr(1.0);
                    for site in 1..=n {
                        let k_bit = (k >> (n - site)) & 1;
                        let local = (StateVector::bit(x1, n, site) << 2)
                            | (StateVector::bit(x2, n, site) << 1)
                            | StateVector::bit(x3, n, site);
                        w *= kets[k_bit][local].conj();
                        if w.norm_sqr() == 0.0 {
                            break;
                        }
                    }
                    numer += w * target.amplitude(x1) * target.amplitude(x2) * amp3;
                }
            }
        }
        if denom.norm() < 1e-14 {
            assert!(
                numer.norm() < 1e-12,
                "numerator must vanish when ⟨k|S⟩ does"
            );
        } else {
            let c = (numer / denom).norm_sqr();
            if let Some(prev) = ratio {
                assert!((c - prev).abs() < 1e-11, "ratio must not depend on k");
            }
            ratio = Some(c);
        }
    }
    ratio.expect("supersinglet has nonzero amplitudes")
}

const FIXED_POINT_P_N2: f64 = 0.25;
const FIXED_POINT_P_N4: f64 = 0.0625;

#[test]
fn ratio_oracle_pins_fixed_point_probabilities() {
    assert!((oracle_fixed_point_probability(2) - FIXED_POINT_P_N2).abs() < 1e-12);
    assert!((oracle_fixed_point_probability(4) - FIXED_POINT_P_N4).abs() < 1e-12);

    for (n, pin) in [(2usize, FIXED_POINT_P_N2), (4usize, FIXED_POINT_P_N4)] {
        let engine = FullEngine::new(n).unwrap();
        let rho = DensityMatrix::from_pure(&supersinglet(n).unwrap());
        let (_, stats) = engine.step(&rho).unwrap();
        assert!((stats.success_probability - pin).abs() < 1e-12);

        let truncated = TruncatedEngine::new(n).unwrap();
        let state = truncated.project(&rho).unwrap();
        let (_, stats) = truncated.step(&state).unwrap();
        assert!((stats.success_probability - pin).abs() < 1e-12);
    }
}

/// First distillation round from the symmetrized four-qubit chain, dense.
#[test]
fn dense_oracle_pins_first_iteration_from_symmetrized_chain() {
    const F0_PIN: f64 = 0.75;
    const F1_PIN: f64 = 0.858_108_108_108_108_1; // 127/148
    const P1_PIN: f64 = 0.032_118_055_555_555_56; // 37/1152

    let rho3 = supersinglet::state_factory::symmetrized_singlet_init(4).unwrap();
    let target = supersinglet(4).unwrap();
    assert!((rho3.expectation_with(&target) - F0_PIN).abs() < 1e-12);

    let (oracle_out, oracle_p) = oracle_dense_step(&rho3);
    let oracle_f = (target.amplitudes().adjoint() * &oracle_out * target.amplitudes())[(0, 0)].re;
    assert!((oracle_p - P1_PIN).abs() < 1e-12);
    assert!((oracle_f - F1_PIN).abs() < 1e-12);
    assert!((F1_PIN - 127.0 / 148.0).abs() < 1e-12);
    assert!((P1_PIN - 37.0 / 1152.0).abs() < 1e-12);

    let engine = FullEngine::new(4).unwrap();
    let (out, stats) = engine.step(&rho3).unwrap();
    assert!((stats.success_probability - P1_PIN).abs() < 1e-12);
    assert!((engine.fidelity(&out) - F1_PIN).abs() < 1e-12);
    assert!(max_abs_diff(out.matrix(), &oracle_out) < 1e-12);
}

/// The dense oracle also validates the engine on a handful of random states.
#[test]
fn dense_oracle_matches_engine_on_random_states() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(21);
    for _ in 0..3 {
        let rho = supersinglet::random::random_density(&mut rng, 2);
        let (oracle_out, oracle_p) = oracle_dense_step(&rho);
        let engine = FullEngine::new(2).unwrap();
        let (out, stats) = engine.step(&rho).unwrap();
        assert!((stats.success_probability - oracle_p).abs() < 1e-12);
        assert!(max_abs_diff(out.matrix(), &oracle_out) < 1e-12);
    }
}

/// Chain and GHZ overlaps against hand-expanded amplitudes.
#[test]
fn overlap_constants_from_explicit_amplitudes() {
    // ψ₁ = Ψ⁻₁₃ ⊗ Ψ⁻₂₄ expanded by hand.
    let half = 0.5;
    let psi1 = StateVector::from_amplitude_pairs(
        4,
        &[
            (0b0011, cr(half)),
            (0b0110, cr(-half)),
            (0b1001, cr(-half)),
            (0b1100, cr(half)),
        ],
    );
    // Appendix-listed supersinglet amplitudes.
    let r = 1.0 / (2.0 * 3f64.sqrt());
    let s4 = StateVector::from_amplitude_pairs(
        4,
        &[
            (0b0011, cr(-2.0 * r)),
            (0b0101, cr(r)),
            (0b0110, cr(r)),
            (0b1001, cr(r)),
            (0b1010, cr(r)),
            (0b1100, cr(-2.0 * r)),
        ],
    );
    assert!((s4.overlap_sq(&psi1) - 0.75).abs() < 1e-12);
    assert!((s4.overlap_sq(&singlet_chain(4).unwrap()) - 0.75).abs() < 1e-12);

    let ghz = supersinglet::state_factory::modified_ghz(4).unwrap();
    assert!((s4.overlap_sq(&ghz) - 2.0 / 3.0).abs() < 1e-12);
}

/// Sanity for the oracle matrix itself: matches the engine's operator.
#[test]
fn oracle_postselection_matrix_equals_engine_matrix() {
    for n in [2usize, 4] {
        let oracle = oracle_postselection_matrix(n);
        let engine = supersinglet::engine::build_postselection_operator(n).unwrap();
        assert!(max_abs_diff(&oracle, &engine.matrix()) < 1e-13, "n = {n}");
    }
}

/// Bit plumbing used by the oracles stays consistent with StateVector.
#[test]
fn bit_helper_is_msb_first() {
    assert_eq!(StateVector::bit(0b10, 2, 1), 1);
    assert_eq!(StateVector::bit(0b10, 2, 2), 0);
}
