//! Sparse integer series `n -> count` with exact convolution.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely supported map from sums to non-negative counts, stored sorted
/// by key with zero entries removed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseSeries {
    terms: Vec<(i64, u128)>,
}

impl SparseSeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a series from arbitrary `(key, count)` pairs, merging keys.
    pub fn from_pairs<I: IntoIterator<Item = (i64, u128)>>(pairs: I) -> Result<Self> {
        let mut terms: Vec<(i64, u128)> = pairs.into_iter().filter(|t| t.1 != 0).collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(i64, u128)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == k => {
                    last.1 = last
                        .1
                        .checked_add(c)
                        .ok_or(Error::Overflow("series merge"))?;
                }
                _ => merged.push((k, c)),
            }
        }
        Ok(SparseSeries { terms: merged })
    }

    /// Indicator series of a set of distinct keys.
    pub fn indicator(keys: &[i64]) -> Self {
        let mut terms: Vec<(i64, u128)> = keys.iter().map(|&k| (k, 1)).collect();
        terms.sort_unstable_by_key(|t| t.0);
        terms.dedup_by_key(|t| t.0);
        SparseSeries { terms }
    }

    /// The series `{0: 1}`, the unit of convolution.
    pub fn one() -> Self {
        SparseSeries {
            terms: vec![(0, 1)],
        }
    }

    pub fn terms(&self) -> &[(i64, u128)] {
        &self.terms
    }

    pub fn get(&self, key: i64) -> u128 {
        self.terms
            .binary_search_by_key(&key, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Number of keys with a non-zero count.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.terms.iter().map(|t| BigUint::from(t.1)).sum()
    }

    pub fn sum_of_squares(&self) -> BigUint {
        self.terms
            .iter()
            .map(|t| {
                let c = BigUint::from(t.1);
                &c * &c
            })
            .sum()
    }

    /// Exact convolution. Uses a dense buffer when the key range is small
    /// relative to the work, a hash map otherwise.
    pub fn convolve(&self, other: &SparseSeries) -> Result<SparseSeries> {
        if self.is_empty() || other.is_empty() {
            return Ok(SparseSeries::new());
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms[self.terms.len() - 1].0 + other.terms[other.terms.len() - 1].0;
        let range = (hi - lo) as u128 + 1;
        let work = self.terms.len() as u128 * other.terms.len() as u128;
        if range <= work.saturating_mul(4).max(1 << 16) && range <= 1 << 28 {
            let mut dense = vec![0u128; range as usize];
            for &(a, ca) in &self.terms {
                for &(b, cb) in &other.terms {
                    let slot = &mut dense[(a + b - lo) as usize];
                    let prod = ca.checked_mul(cb).ok_or(Error::Overflow("convolution"))?;
                    *slot = slot
                        .checked_add(prod)
                        .ok_or(Error::Overflow("convolution"))?;
                }
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|t| t.1 != 0)
                .map(|(i, c)| (lo + i as i64, c))
                .collect();
            Ok(SparseSeries { terms })
        } else {
            let mut acc: HashMap<i64, u128> = HashMap::with_capacity(work.min(1 << 24) as usize);
            for &(a, ca) in &self.terms {
                for &(b, cb) in &other.terms {
                    let prod = ca.checked_mul(cb).ok_or(Error::Overflow("convolution"))?;
                    let slot = acc.entry(a + b).or_insert(0);
                    *slot = slot
                        .checked_add(prod)
                        .ok_or(Error::Overflow("convolution"))?;
                }
            }
            let mut terms: Vec<(i64, u128)> = acc.into_iter().collect();
            terms.sort_unstable_by_key(|t| t.0);
            Ok(SparseSeries { terms })
        }
    }

    /// `self^k` under convolution, by repeated multiplication.
    pub fn power(&self, k: usize) -> Result<SparseSeries> {
        let mut acc = SparseSeries::one();
        for _ in 0..k {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }

    /// Pointwise `self - other`, requiring `other <= self` everywhere.
    pub fn checked_sub(&self, other: &SparseSeries) -> Option<SparseSeries> {
        let mut out = Vec::with_capacity(self.terms.len());
        let mut j = 0;
        for &(k, c) in &self.terms {
            if j < other.terms.len() && other.terms[j].0 < k {
                // key present only in `other`
                return None;
            }
            let sub = if j < other.terms.len() && other.terms[j].0 == k {
                j += 1;
                other.terms[j - 1].1
            } else {
                0
            };
            let d = c.checked_sub(sub)?;
            if d != 0 {
                out.push((k, d));
            }
        }
        if j < other.terms.len() {
            return None;
        }
        Some(SparseSeries { terms: out })
    }

    /// True when `self(n) <= other(n)` for every `n`.
    pub fn dominated_by(&self, other: &SparseSeries) -> bool {
        self.terms.iter().all(|&(k, c)| c <= other.get(k))
    }
}

impl Serialize for SparseSeries {
    /// Serializes as an array of `[key, "count"]` pairs; counts are decimal
    /// strings so they survive JSON number limits.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&(k, c.to_string()))?;
        }
        seq.end()
    }
}

/// A series with signed coefficients; used by the Newton recurrence, whose
/// intermediate terms alternate in sign.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct SignedSeries {
    terms: HashMap<i64, i128>,
}

impl SignedSeries {
    pub(crate) fn one() -> Self {
        let mut terms = HashMap::new();
        terms.insert(0, 1);
        SignedSeries { terms }
    }

    /// `{j * a : 1}` for each `a` in `keys` (the j-th power sum).
    pub(crate) fn dilated_indicator(keys: &[i64], j: i64) -> Self {
        SignedSeries {
            terms: keys.iter().map(|&a| (j * a, 1)).collect(),
        }
    }

    /// `self += sign * (a * b)`.
    pub(crate) fn add_product(
        &mut self,
        a: &SignedSeries,
        b: &SignedSeries,
        sign: i128,
    ) -> Result<()> {
        for (&ka, &ca) in &a.terms {
            for (&kb, &cb) in &b.terms {
                let prod = ca
                    .checked_mul(cb)
                    .and_then(|p| p.checked_mul(sign))
                    .ok_or(Error::Overflow("newton recurrence"))?;
                let slot = self.terms.entry(ka + kb).or_insert(0);
                *slot = slot
                    .checked_add(prod)
                    .ok_or(Error::Overflow("newton recurrence"))?;
            }
        }
        self.terms.retain(|_, c| *c != 0);
        Ok(())
    }

    /// Exact division of every coefficient; fails if any is not divisible.
    pub(crate) fn div_exact(&mut self, d: i128) -> Result<()> {
        for c in self.terms.values_mut() {
            if *c % d != 0 {
                return Err(Error::InvalidParameter(format!(
                    "coefficient {c} not divisible by {d} in newton recurrence"
                )));
            }
            *c /= d;
        }
        Ok(())
    }

    /// Scales by a non-negative factor and converts to an unsigned series.
    pub(crate) fn into_unsigned_scaled(self, factor: u128) -> Result<SparseSeries> {
        let mut pairs = Vec::with_capacity(self.terms.len());
        for (k, c) in self.terms {
            let c = u128::try_from(c).map_err(|_| {
                Error::InvalidParameter("negative count in newton recurrence".into())
            })?;
            pairs.push((
                k,
                c.checked_mul(factor).ok_or(Error::Overflow("k! scaling"))?,
            ));
        }
        SparseSeries::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_one_plus_x() {
        let s = SparseSeries::indicator(&[0, 1]).power(2).unwrap();
        assert_eq!(s.terms(), &[(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn sparse_path_matches_dense_path() {
        // keys far apart force the hash-map path
        let far = SparseSeries::indicator(&[0, 1 << 40, 3 << 40]);
        let sq = far.convolve(&far).unwrap();
        assert_eq!(sq.get(1 << 41), 1);
        assert_eq!(sq.get(1 << 40), 2);
        assert_eq!(sq.total(), BigUint::from(9u32));
    }

    #[test]
    fn subtraction_requires_domination() {
        let a = SparseSeries::from_pairs([(0, 1), (1, 2), (2, 1)]).unwrap();
        let b = SparseSeries::from_pairs([(1, 2)]).unwrap();
        assert_eq!(a.checked_sub(&b).unwrap().terms(), &[(0, 1), (2, 1)]);
        assert!(b.checked_sub(&a).is_none());
        assert!(b.dominated_by(&a));
        let c = SparseSeries::from_pairs([(5, 1)]).unwrap();
        assert!(a.checked_sub(&c).is_none());
    }

    #[test]
    fn serializes_counts_as_strings() {
        let s = SparseSeries::from_pairs([(3, 7)]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"[[3,"7"]]"#);
    }
}
