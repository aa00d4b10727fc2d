//! Exact half-integer quantum numbers stored as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A spin quantum number j ∈ {0, 1/2, 1, 3/2, …} or projection m, held as 2j
/// so that sector bookkeeping stays exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfInteger {
    twice_value: i32,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice_value: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice_value: 1 };
    pub const ONE: HalfInteger = HalfInteger { twice_value: 2 };

    pub fn from_twice(twice_value: i32) -> Self {
        Self { twice_value }
    }

    pub fn from_int(value: i32) -> Self {
        Self {
            twice_value: 2 * value,
        }
    }

    pub fn twice_value(self) -> i32 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice_value % 2 == 0
    }

    /// j(j+1), exact in f64 for the magnitudes used here.
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// True when m is a valid projection of spin j: |m| ≤ j and m ≡ j (mod 1).
    pub fn is_projection_of(self, j: HalfInteger) -> bool {
        self.twice_value.abs() <= j.twice_value && (self.twice_value - j.twice_value) % 2 == 0
    }

    /// The projections m = j, j−1, …, −j in descending order.
    pub fn projections(self) -> impl Iterator<Item = HalfInteger> {
        let tj = self.twice_value;
        (0..=(2 * tj).max(0))
            .step_by(2)
            .map(move |k| HalfInteger::from_twice(tj - k))
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice_value + rhs.twice_value)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice_value - rhs.twice_value)
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger::from_twice(-self.twice_value)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}
