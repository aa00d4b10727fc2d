//! The site-local measurement: projectors onto the three total-spin sectors
//! of 3 qubits, composed with the rotation into the computational basis.

use crate::error::{Error, Result};
use crate::half::HalfInteger;
use crate::linalg::{cr, CMat, CVec};
use crate::state::StateVector;

/// One total-spin eigenstate of the 3-qubit local space.
pub struct LocalBasisState {
    pub j: HalfInteger,
    pub alpha: usize,
    pub m: HalfInteger,
    pub vector: StateVector,
}

fn state(j: i32, alpha: usize, m: i32, amps: &[(usize, f64)]) -> LocalBasisState {
    let pairs: Vec<(usize, _)> = amps.iter().map(|&(i, a)| (i, cr(a))).collect();
    LocalBasisState {
        j: HalfInteger::from_twice(j),
        alpha,
        m: HalfInteger::from_twice(m),
        vector: StateVector::from_amplitude_pairs(3, &pairs),
    }
}

/// The eight 3-qubit eigenstates, with multiplet phases fixed by the standard
/// lowering convention S⁻|j, α, m⟩ ∝ +|j, α, m−1⟩. That convention is what
/// makes the retained (1/2, 1) doublet transform exactly like a physical
/// qubit, so the postselection map commutes with site rotations. Each
/// multiplet spans the same subspace as the usual tabulated forms; only the
/// overall sign of the (1/2, 1), m = +1/2 ket differs.
pub fn local_coupled_states() -> Vec<LocalBasisState> {
    let s3 = 1.0 / 3f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    let s2 = 1.0 / 2f64.sqrt();
    vec![
        state(3, 1, 3, &[(0b000, 1.0)]),
        state(3, 1, 1, &[(0b001, s3), (0b010, s3), (0b100, s3)]),
        state(3, 1, -1, &[(0b011, s3), (0b101, s3), (0b110, s3)]),
        state(3, 1, -3, &[(0b111, 1.0)]),
        state(1, 1, 1, &[(0b001, 2.0 * s6), (0b010, -s6), (0b100, -s6)]),
        state(1, 1, -1, &[(0b110, -2.0 * s6), (0b101, s6), (0b011, s6)]),
        state(1, 2, 1, &[(0b010, s2), (0b100, -s2)]),
        state(1, 2, -1, &[(0b011, s2), (0b101, -s2)]),
    ]
}

/// Position of |j, α, m⟩ in the rotated computational ordering:
/// v(j, α, m) = 5j + 2α − m − 4.
pub fn schur_position(j: HalfInteger, alpha: usize, m: HalfInteger) -> usize {
    let v = 5 * j.twice_value() + 4 * alpha as i32 - m.twice_value() - 8;
    debug_assert!(v >= 0 && v % 2 == 0);
    (v / 2) as usize
}

/// One POVM element M_{jα} = Σ_m |v(j,α,m)⟩⟨j,α,m| on the 8-dim local space.
pub struct LocalPovmElement {
    pub j: HalfInteger,
    pub alpha: usize,
    pub matrix: CMat,
}

pub const LOCAL_SECTORS: [(i32, usize); 3] = [(3, 1), (1, 1), (1, 2)];

pub fn local_povm(j: HalfInteger, alpha: usize) -> Result<LocalPovmElement> {
    if !LOCAL_SECTORS.contains(&(j.twice_value(), alpha)) {
        return Err(Error::InvalidParameter(format!(
            "no local sector (j = {j}, α = {alpha})"
        )));
    }
    let mut matrix = CMat::zeros(8, 8);
    for st in local_coupled_states() {
        if st.j == j && st.alpha == alpha {
            let row = schur_position(st.j, st.alpha, st.m);
            for col in 0..8 {
                matrix[(row, col)] = st.vector.amplitude(col).conj();
            }
        }
    }
    Ok(LocalPovmElement { j, alpha, matrix })
}

/// The rotation from the coupled basis to the computational ordering,
/// Σ_{jαm} |v(j,α,m)⟩⟨j,α,m|.
pub fn schur_unitary() -> CMat {
    let mut u = CMat::zeros(8, 8);
    for st in local_coupled_states() {
        let row = schur_position(st.j, st.alpha, st.m);
        for col in 0..8 {
            u[(row, col)] += st.vector.amplitude(col).conj();
        }
    }
    u
}

/// The effective successful-outcome map after discarding the two |0⟩ qubits:
/// the 2×8 operator |0⟩⟨0⁽³⁾| + |1⟩⟨1⁽³⁾| with the doublet kets of
/// [`local_coupled_states`].
pub fn effective_postselect_local() -> CMat {
    let mut m = CMat::zeros(2, 8);
    for st in local_coupled_states() {
        if st.j == HalfInteger::HALF && st.alpha == 1 {
            let row = if st.m == HalfInteger::HALF { 0 } else { 1 };
            for col in 0..8 {
                m[(row, col)] = st.vector.amplitude(col).conj();
            }
        }
    }
    m
}

/// The kets |0⁽³⁾⟩ and |1⁽³⁾⟩ as 8-dim vectors.
pub fn effective_local_kets() -> (CVec, CVec) {
    let states = local_coupled_states();
    let zero = states
        .iter()
        .find(|s| s.j == HalfInteger::HALF && s.alpha == 1 && s.m == HalfInteger::HALF)
        .unwrap();
    let one = states
        .iter()
        .find(|s| s.j == HalfInteger::HALF && s.alpha == 1 && s.m == -HalfInteger::HALF)
        .unwrap();
    (
        zero.vector.amplitudes().clone(),
        one.vector.amplitudes().clone(),
    )
}
