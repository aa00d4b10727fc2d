//! Index maps between the two layouts of the 3N-qubit space.
//!
//! The global register is stored copy-major: qubit (site n, copy d) sits at
//! global position q = (d−1)·N + n, so three copies of a state are a plain
//! triple Kronecker product. The postselection operator groups the three
//! qubits of each site together (site-major: position p = (n−1)·3 + d); the
//! regrouping is a pure index shuffle.

/// For each site-major basis index, the corresponding copy-major index.
///
/// With `map` the result, a site-major amplitude vector is obtained from a
/// copy-major one by `v_site[i] = v_copy[map[i]]`.
pub fn copy_index_for_site_major(n_sites: usize) -> Vec<usize> {
    let total = 3 * n_sites;
    let dim = 1usize << total;
    let mut map = vec![0usize; dim];
    // Positions are 1-based with position 1 the most significant bit.
    for (i_site, slot) in map.iter_mut().enumerate() {
        let mut i_copy = 0usize;
        for site in 1..=n_sites {
            for d in 1..=3usize {
                let p = (site - 1) * 3 + d;
                let bit = (i_site >> (total - p)) & 1;
                let q = (d - 1) * n_sites + site;
                i_copy |= bit << (total - q);
            }
        }
        *slot = i_copy;
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_is_a_bijection() {
        let map = copy_index_for_site_major(2);
        let mut seen = vec![false; map.len()];
        for &i in &map {
            assert!(!seen[i]);
            seen[i] = true;
        }
    }

    #[test]
    fn two_site_map_moves_the_expected_bits() {
        // N = 2: copy-major order is (1,1)(2,1)(1,2)(2,2)(1,3)(2,3);
        // site-major order is (1,1)(1,2)(1,3)(2,1)(2,2)(2,3).
        let map = copy_index_for_site_major(2);
        // Site-major index with only the (site 2, copy 3) bit set: position 6
        // → bit 0 (LSB). Copy-major position for (n=2, d=3) is q = 6 → LSB too.
        assert_eq!(map[0b000001], 0b000001);
        // Site-major (site 1, copy 2): p = 2 → value 1 << 4. Copy-major
        // q = (2−1)·2 + 1 = 3 → 1 << 3.
        assert_eq!(map[0b010000], 0b001000);
        // Site-major (site 2, copy 1): p = 4 → 1 << 2. Copy-major q = 2 → 1 << 4.
        assert_eq!(map[0b000100], 0b010000);
    }
}
