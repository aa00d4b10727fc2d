//! Clebsch–Gordan coefficients (Condon–Shortley convention) and spin-sector
//! multiplicities.

use crate::error::{Error, Result};
use crate::half::HalfInteger;

fn factorial(n: i32) -> f64 {
    debug_assert!(n >= 0);
    (1..=n as i64).map(|k| k as f64).product()
}

/// ⟨j1 m1; j2 m2 | J M⟩ in the Condon–Shortley convention.
///
/// Out-of-domain inputs (M ≠ m1+m2, triangle violation, |m| > j, or a
/// half-integer parity mismatch) return 0 rather than erroring.
pub fn clebsch_gordan(
    j1: HalfInteger,
    m1: HalfInteger,
    j2: HalfInteger,
    m2: HalfInteger,
    big_j: HalfInteger,
    big_m: HalfInteger,
) -> f64 {
    let (tj1, tm1) = (j1.twice_value(), m1.twice_value());
    let (tj2, tm2) = (j2.twice_value(), m2.twice_value());
    let (tj, tm) = (big_j.twice_value(), big_m.twice_value());

    if tj1 < 0 || tj2 < 0 || tj < 0 {
        return 0.0;
    }
    if !m1.is_projection_of(j1) || !m2.is_projection_of(j2) || !big_m.is_projection_of(big_j) {
        return 0.0;
    }
    if tm1 + tm2 != tm {
        return 0.0;
    }
    // Triangle rule, including the requirement that j1 + j2 + J is an integer.
    if tj > tj1 + tj2 || tj < (tj1 - tj2).abs() || (tj1 + tj2 + tj) % 2 != 0 {
        return 0.0;
    }

    // All of the following are integers (twice-values are even by the checks above).
    let half = |t: i32| -> i32 {
        debug_assert!(t % 2 == 0);
        t / 2
    };
    let a = half(tj1 + tj2 - tj);
    let b = half(tj1 - tj2 + tj);
    let c_ = half(-tj1 + tj2 + tj);
    let d = half(tj1 + tj2 + tj) + 1;

    let delta = factorial(a) * factorial(b) * factorial(c_) / factorial(d);

    let pre = ((tj + 1) as f64
        * factorial(half(tj1 + tm1))
        * factorial(half(tj1 - tm1))
        * factorial(half(tj2 + tm2))
        * factorial(half(tj2 - tm2))
        * factorial(half(tj + tm))
        * factorial(half(tj - tm)))
    .sqrt()
        * delta.sqrt();

    let k_min = 0.max(half(tj2 - tj - tm1)).max(half(tj1 - tj + tm2));
    let k_max = a.min(half(tj1 - tm1)).min(half(tj2 + tm2));

    let mut sum = 0.0;
    for k in k_min..=k_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let denom = factorial(k)
            * factorial(a - k)
            * factorial(half(tj1 - tm1) - k)
            * factorial(half(tj2 + tm2) - k)
            * factorial(half(tj - tj2 + tm1) + k)
            * factorial(half(tj - tj1 - tm2) + k);
        sum += sign / denom;
    }

    pre * sum
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of distinct spin-s irreducible blocks in the decomposition of
/// n coupled qubits: A(N, s) = C(N, N/2−s) − C(N, N/2−s−1).
pub fn multiplicity(n_qubits: usize, s: HalfInteger) -> Result<usize> {
    let n = n_qubits as i32;
    let ts = s.twice_value();
    if ts < 0 || ts > n || (n - ts) % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "spin {s} is not a valid sector of {n_qubits} qubits"
        )));
    }
    let k = ((n - ts) / 2) as i64;
    let a = binomial(n_qubits as i64, k) - binomial(n_qubits as i64, k - 1);
    Ok(a as usize)
}
