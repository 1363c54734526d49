use crate::error::{Error, Result};

/// Budgets that stop enumerations from running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of tuples or subsets a single enumeration may visit.
    pub max_tuples: u128,
    /// Largest set for which all `2^|A|` bipartitions are enumerated.
    pub split_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tuples: 100_000_000,
            split_cap: 14,
        }
    }
}

impl Limits {
    pub fn with_max_tuples(mut self, max_tuples: u128) -> Self {
        self.max_tuples = max_tuples;
        self
    }

    pub fn with_split_cap(mut self, split_cap: usize) -> Self {
        self.split_cap = split_cap;
        self
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_tuples {
            Err(Error::ResourceGuard {
                what,
                needed,
                budget: self.max_tuples,
            })
        } else {
            Ok(())
        }
    }
}

/// `n^k`, saturating at `u128::MAX`.
pub(crate) fn pow_saturating(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(n as u128);
    }
    acc
}

/// Binomial coefficient `C(n, k)`, saturating at `u128::MAX`.
pub(crate) fn binomial_saturating(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}
