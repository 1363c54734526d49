//! Fixed inputs shared by the benchmarks.

use bstar_core::IntegerSet;

/// A spread-out set of `n` elements: `i^2 + 3i` for `i = 1..=n`.
pub fn quadratic_set(n: i64) -> IntegerSet {
    IntegerSet::from_values((1..=n).map(|i| i * i + 3 * i))
}
