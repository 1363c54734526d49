//! Representation functions and their second moments, computed exactly.
//!
//! For a finite set `A` and `k >= 1`:
//! * `sigma_k(n)` counts ordered `k`-tuples from `A` summing to `n`;
//! * `s_k(n)` counts those with pairwise distinct coordinates;
//! * `M_k = sum sigma_k(n)^2`, `S_k = sum s_k(n)^2`;
//! * `S*_k` counts ordered `2k`-tuples, all entries distinct, with equal
//!   left and right sums.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{certify_root_le_sum, Certified};
use crate::limits::{binomial_saturating, pow_saturating, Limits};
use crate::report::{biguint_as_string, CheckReport, Exact};
use crate::series::{SignedSeries, SparseSeries};
use crate::sets::{is_b_star_k, IntegerSet};
use crate::subsets::{for_each_combination, SumIndex};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// Falling factorial `m (m - 1) ... (m - j + 1)`, zero when `0 <= m < j`
/// and, by convention, when `m < 0 < j`.
pub fn falling_factorial(m: i64, j: usize) -> BigUint {
    if j == 0 {
        return BigUint::one();
    }
    if m < j as i64 {
        return BigUint::zero();
    }
    (0..j as i64).fold(BigUint::one(), |acc, i| acc * BigUint::from((m - i) as u64))
}

fn big<T: Into<BigUint>>(v: T) -> BigUint {
    v.into()
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `sigma_k` by iterated exact convolution of the indicator of `A`.
/// `k = 0` gives `{0: 1}`.
pub fn sigma_k(set: &IntegerSet, k: usize) -> Result<SparseSeries> {
    SparseSeries::indicator(set.elements()).power(k)
}

/// `s_k` by direct enumeration of ordered tuples with distinct positions.
/// This is the reference implementation for [`s_k_fast`].
pub fn s_k_bruteforce(set: &IntegerSet, k: usize, limits: &Limits) -> Result<SparseSeries> {
    check_k(k)?;
    let n = set.len();
    limits.check("ordered k-tuples for s_k", pow_saturating(n, k))?;
    let values = set.elements();
    let mut counts: HashMap<i64, u128> = HashMap::new();
    let mut used = vec![false; n];

    fn rec(
        values: &[i64],
        used: &mut [bool],
        depth: usize,
        sum: i64,
        counts: &mut HashMap<i64, u128>,
    ) {
        if depth == 0 {
            *counts.entry(sum).or_insert(0) += 1;
            return;
        }
        for i in 0..values.len() {
            if !used[i] {
                used[i] = true;
                rec(values, used, depth - 1, sum + values[i], counts);
                used[i] = false;
            }
        }
    }

    rec(values, &mut used, k, 0, &mut counts);
    SparseSeries::from_pairs(counts)
}

/// Elementary symmetric series `e_j` for `j = 0..=k`: `e_j(n)` is the number
/// of `j`-element subsets of `A` with sum `n`. Computed with Newton's
/// identities `j e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} p_i`, where `p_i` is
/// the `i`-fold dilation of the indicator of `A`.
fn elementary_series(set: &IntegerSet, k: usize) -> Result<Vec<SignedSeries>> {
    let keys = set.elements();
    let powers: Vec<SignedSeries> = (1..=k as i64)
        .map(|i| SignedSeries::dilated_indicator(keys, i))
        .collect();
    let mut e = vec![SignedSeries::one()];
    for j in 1..=k {
        let mut next = SignedSeries::default();
        for i in 1..=j {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            next.add_product(&e[j - i], &powers[i - 1], sign)?;
        }
        next.div_exact(j as i128)?;
        e.push(next);
    }
    Ok(e)
}

/// `e_k`: number of `k`-subsets of `A` with each sum.
pub fn elementary_symmetric(set: &IntegerSet, k: usize) -> Result<SparseSeries> {
    elementary_series(set, k)?
        .pop()
        .expect("e_0 is always present")
        .into_unsigned_scaled(1)
}

/// `s_k = k! e_k`, via Newton's identities on sparse series.
pub fn s_k_fast(set: &IntegerSet, k: usize) -> Result<SparseSeries> {
    check_k(k)?;
    if k > set.len() {
        return Ok(SparseSeries::new());
    }
    let fact: u128 = (1..=k as u128)
        .try_fold(1u128, |a, i| a.checked_mul(i))
        .ok_or(Error::Overflow("k!"))?;
    elementary_series(set, k)?
        .pop()
        .expect("e_0 is always present")
        .into_unsigned_scaled(fact)
}

/// `M_k = sum_n sigma_k(n)^2`.
pub fn m_k(set: &IntegerSet, k: usize) -> Result<BigUint> {
    Ok(sigma_k(set, k)?.sum_of_squares())
}

/// `S_k = sum_n s_k(n)^2`.
pub fn s_k_total(set: &IntegerSet, k: usize) -> Result<BigUint> {
    Ok(s_k_fast(set, k)?.sum_of_squares())
}

/// Algorithm used for `S*_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMethod {
    /// Enumerate `2k`-subsets and count their balanced bipartitions.
    Subsets,
    /// Group `k`-subsets by sum and count disjoint ordered pairs.
    SumGroups,
    /// `Subsets` when it fits the budget, else `SumGroups`.
    Auto,
}

fn star_by_subsets(set: &IntegerSet, k: usize, limits: &Limits) -> Result<BigUint> {
    let n = set.len();
    limits.check("2k-subsets for S*_k", binomial_saturating(n, 2 * k))?;
    let values = set.elements();
    let mut halves: Vec<Vec<usize>> = Vec::new();
    for_each_combination(2 * k, k, |c| {
        halves.push(c.to_vec());
        true
    });
    let mut balanced: u128 = 0;
    let mut z_vals = vec![0i64; 2 * k];
    for_each_combination(n, 2 * k, |z| {
        for (slot, &p) in z_vals.iter_mut().zip(z) {
            *slot = values[p];
        }
        let total: i64 = z_vals.iter().sum();
        if total % 2 == 0 {
            let half = total / 2;
            for h in &halves {
                if h.iter().map(|&i| z_vals[i]).sum::<i64>() == half {
                    balanced += 1;
                }
            }
        }
        true
    });
    Ok(big(balanced) * factorial(k).pow(2u32))
}

fn star_by_sum_groups(set: &IntegerSet, k: usize, limits: &Limits) -> Result<BigUint> {
    limits.check("k-subsets for S*_k", binomial_saturating(set.len(), k))?;
    let index = SumIndex::subsets(set.elements(), k)?;
    Ok(big(index.count_disjoint_ordered_pairs()) * factorial(k).pow(2u32))
}

/// `S*_k(A)` with an explicit algorithm choice.
pub fn s_star_k_with(
    set: &IntegerSet,
    k: usize,
    method: StarMethod,
    limits: &Limits,
) -> Result<BigUint> {
    check_k(k)?;
    if set.len() < 2 * k {
        return Ok(BigUint::zero());
    }
    match method {
        StarMethod::Subsets => star_by_subsets(set, k, limits),
        StarMethod::SumGroups => star_by_sum_groups(set, k, limits),
        StarMethod::Auto => {
            if binomial_saturating(set.len(), 2 * k) <= limits.max_tuples {
                star_by_subsets(set, k, limits)
            } else {
                star_by_sum_groups(set, k, limits)
            }
        }
    }
}

/// Exact `S*_k(A)`.
pub fn s_star_k_exact(set: &IntegerSet, k: usize, limits: &Limits) -> Result<BigUint> {
    s_star_k_with(set, k, StarMethod::Auto, limits)
}

/// Bipartite `S*_k(A1, A2)`: left tuple from `A1`, right tuple from `A2`,
/// all `2k` entries pairwise distinct.
pub fn s_star_k_bipartite(
    left: &IntegerSet,
    right: &IntegerSet,
    k: usize,
    limits: &Limits,
) -> Result<BigUint> {
    check_k(k)?;
    if left.len() < k || right.len() < k {
        return Ok(BigUint::zero());
    }
    let scale = factorial(k).pow(2u32);
    let overlap = left.iter().any(|v| right.contains(v));
    if !overlap {
        // disjoint sides: every pair of k-subsets with equal sums counts
        let el = elementary_symmetric(left, k)?;
        let er = elementary_symmetric(right, k)?;
        let pairs: BigUint = el
            .terms()
            .iter()
            .map(|&(n, c)| big(c) * big(er.get(n)))
            .sum();
        return Ok(pairs * scale);
    }
    limits.check(
        "k-subset pairs for bipartite S*_k",
        binomial_saturating(left.len(), k).saturating_add(binomial_saturating(right.len(), k)),
    )?;
    let rvals = right.elements();
    let index = SumIndex::subsets(rvals, k)?;
    let lvals = left.elements();
    let mut pairs: u128 = 0;
    for_each_combination(left.len(), k, |x| {
        let sum: i64 = x.iter().map(|&i| lvals[i]).sum();
        for &(_, id) in index.with_sum(sum) {
            let y = index.positions(id);
            if y.iter()
                .all(|&p| x.iter().all(|&i| lvals[i] != rvals[p as usize]))
            {
                pairs += 1;
            }
        }
        true
    });
    Ok(big(pairs) * scale)
}

/// Every exact moment quantity of `(A, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentProfile {
    pub k: usize,
    pub set_size: usize,
    pub sigma: SparseSeries,
    pub s_distinct: SparseSeries,
    #[serde(serialize_with = "biguint_as_string")]
    pub m_k: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub s_k_total: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub s_star_k: BigUint,
    /// `|kA|`, the number of sums with `sigma_k(n) > 0`.
    pub support_size_ka: usize,
}

impl MomentProfile {
    /// Re-checks the mass identities and orderings of the profile.
    pub fn check_invariants(&self) -> CheckReport {
        let mut r = CheckReport::new("moment_profile_invariants");
        let n = self.set_size;
        r.equal(
            "sum sigma_k = |A|^k",
            self.sigma.total(),
            big(n).pow(self.k as u32),
        );
        r.equal(
            "sum s_k = FF(|A|, k)",
            self.s_distinct.total(),
            falling_factorial(n as i64, self.k),
        );
        r.equal(
            "M_k = sum sigma_k^2",
            self.m_k.clone(),
            self.sigma.sum_of_squares(),
        );
        r.equal(
            "S_k = sum s_k^2",
            self.s_k_total.clone(),
            self.s_distinct.sum_of_squares(),
        );
        r.property(
            "s_k <= sigma_k pointwise",
            self.s_distinct.dominated_by(&self.sigma),
            true,
        );
        r.le(
            "S*_k <= S_k",
            self.s_star_k.clone(),
            self.s_k_total.clone(),
            true,
        );
        r.le("S_k <= M_k", self.s_k_total.clone(), self.m_k.clone(), true);
        r
    }
}

pub fn moment_profile(set: &IntegerSet, k: usize, limits: &Limits) -> Result<MomentProfile> {
    check_k(k)?;
    let sigma = sigma_k(set, k)?;
    let s_distinct = s_k_fast(set, k)?;
    Ok(MomentProfile {
        k,
        set_size: set.len(),
        m_k: sigma.sum_of_squares(),
        s_k_total: s_distinct.sum_of_squares(),
        s_star_k: s_star_k_exact(set, k, limits)?,
        support_size_ka: sigma.support_len(),
        sigma,
        s_distinct,
    })
}

/// `2^-k k! |A|^k <= S_k <= M_k <= 2 S_k`, asserted when `|A| >= 16 k^4`.
pub fn check_ruzsa_sandwich(set: &IntegerSet, k: usize) -> Result<CheckReport> {
    check_k(k)?;
    let n = set.len();
    let mk = m_k(set, k)?;
    let sk = s_k_total(set, k)?;
    let hypothesis = n >= 16 * k.pow(4);
    let lower = Exact(BigRational::new(
        BigInt::from(factorial(k) * big(n).pow(k as u32)),
        BigInt::from(big(2u32).pow(k as u32)),
    ));
    let mut r = CheckReport::new("ruzsa_sandwich");
    r.hypothesis_met = hypothesis;
    r.quantity("|A|", Exact::int(n))
        .quantity("k", Exact::int(k))
        .quantity("lower", lower.clone())
        .quantity("S_k", sk.clone())
        .quantity("M_k", mk.clone());
    // k = 1 reads |A|/2 <= |A| <= |A| <= 2|A| for every A
    let asserted = hypothesis || k == 1;
    r.le("2^-k k! |A|^k <= S_k", lower, sk.clone(), asserted);
    r.le(
        "k! FF(|A|, k) <= S_k",
        factorial(k) * falling_factorial(n as i64, k),
        sk.clone(),
        true,
    );
    r.le("S_k <= M_k", sk.clone(), mk.clone(), true);
    r.le("M_k <= 2 S_k", mk, sk * 2u32, asserted);
    if !asserted {
        r.note(format!(
            "|A| = {n} < 16 k^4 = {}; outer inequalities informational",
            16 * k.pow(4)
        ));
    }
    Ok(r)
}

/// `sum_n (sigma_k(n) - s_k(n))^2 <= k^4 M_{k-1}`.
pub fn check_ruzsa_58(set: &IntegerSet, k: usize) -> Result<CheckReport> {
    if k < 2 {
        return Err(Error::InvalidParameter("inequality needs k >= 2".into()));
    }
    let sigma = sigma_k(set, k)?;
    let s = s_k_fast(set, k)?;
    let diff = sigma
        .checked_sub(&s)
        .ok_or_else(|| Error::InvalidParameter("s_k exceeds sigma_k".into()))?;
    let lhs = diff.sum_of_squares();
    let m_prev = m_k(set, k - 1)?;
    let rhs = big(k).pow(4u32) * &m_prev;
    let mut r = CheckReport::new("ruzsa_5_8");
    r.quantity("sum (sigma_k - s_k)^2", lhs.clone())
        .quantity("M_{k-1}", m_prev)
        .quantity("k^4 M_{k-1}", rhs.clone());
    r.le("sum (sigma_k - s_k)^2 <= k^4 M_{k-1}", lhs, rhs, true);
    Ok(r)
}

/// `S_k <= (sqrt 2 k)^(2(k-l)) |A|^(k-l) S_l` for weak `B_k` sets with
/// `|A| >= 16 k^4`, together with the step `S_k <= k^2 |A| S_{k-1}`.
pub fn check_sk_sl_comparison(
    set: &IntegerSet,
    k: usize,
    l: usize,
    limits: &Limits,
) -> Result<CheckReport> {
    if l == 0 || l >= k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= l < k, got l={l}, k={k}"
        )));
    }
    let n = set.len();
    let is_star = is_b_star_k(set, k, limits)?.holds;
    let large = n >= 16 * k.pow(4);
    let sk = s_k_total(set, k)?;
    let sl = s_k_total(set, l)?;
    let s_prev = s_k_total(set, k - 1)?;
    let m_prev = m_k(set, k - 1)?;
    let d = (k - l) as u32;
    // (sqrt(2) k)^(2d) = 2^d k^(2d)
    let bound = big(2u32).pow(d) * big(k).pow(2 * d) * big(n).pow(d) * &sl;
    let step = big(k * k) * big(n) * &s_prev;
    let step_m = big(k * k) * big(n) * &m_prev;
    let mut r = CheckReport::new("sk_sl_comparison");
    r.hypothesis_met = is_star && large;
    r.quantity("S_k", sk.clone())
        .quantity("S_l", sl)
        .quantity("S_{k-1}", s_prev)
        .quantity("M_{k-1}", m_prev)
        .quantity("bound", bound.clone())
        .quantity("k^2 |A| S_{k-1}", step.clone());
    r.property("A is weak B_k", is_star, false);
    r.le("S_k <= k^2 |A| S_{k-1}", sk.clone(), step, is_star);
    r.le("S_k <= k^2 |A| M_{k-1}", sk.clone(), step_m, is_star);
    r.le(
        "S_k <= (sqrt2 k)^(2(k-l)) |A|^(k-l) S_l",
        sk,
        bound,
        is_star && large,
    );
    Ok(r)
}

/// Splits every side-distinct solution of order `t` by its cancelled part:
///
/// `S_t = sum_{l=2..t} C(t,l)^2 (t-l)! FF(|B|-2l, t-l) S*_l + t! FF(|B|, t)`
///
/// holds exactly. The variant with `|B|^(t-l)` and `t! |B|^t` in place of
/// the falling factorials is checked as an upper bound.
pub fn decomposition_identity(set: &IntegerSet, t: usize, limits: &Limits) -> Result<CheckReport> {
    check_k(t)?;
    let n = set.len();
    let st = s_k_total(set, t)?;
    let mut exact = factorial(t) * falling_factorial(n as i64, t);
    let mut loose = factorial(t) * big(n).pow(t as u32);
    let mut r = CheckReport::new("decomposition_identity");
    for l in 2..=t {
        let star = s_star_k_exact(set, l, limits)?;
        let c2 = binomial(t, l).pow(2u32) * factorial(t - l);
        exact += &c2 * falling_factorial(n as i64 - 2 * l as i64, t - l) * &star;
        loose += &c2 * big(n).pow((t - l) as u32) * &star;
        r.quantity(&format!("S*_{l}"), star);
    }
    r.quantity("S_t", st.clone())
        .quantity("falling_factorial_form", exact.clone())
        .quantity("power_form", loose.clone());
    r.equal("S_t = falling factorial form", st.clone(), exact);
    r.le("S_t <= power form", st, loose, true);
    Ok(r)
}

/// `|A|^(2k) <= |kA| M_k`.
pub fn check_cauchy_schwarz_chain(set: &IntegerSet, k: usize) -> Result<CheckReport> {
    check_k(k)?;
    let sigma = sigma_k(set, k)?;
    let mk = sigma.sum_of_squares();
    let support = sigma.support_len();
    let lhs = big(set.len()).pow(2 * k as u32);
    let mut r = CheckReport::new("cauchy_schwarz_chain");
    r.quantity("|A|^2k", lhs.clone())
        .quantity("|kA|", Exact::int(support))
        .quantity("M_k", mk.clone());
    r.le("|A|^2k <= |kA| M_k", lhs, big(support) * mk, true);
    Ok(r)
}

/// `M_k^2 <= M_{k-1} M_{k+1}` (with `M_0 = 1`).
pub fn check_log_convexity(set: &IntegerSet, k: usize) -> Result<CheckReport> {
    check_k(k)?;
    let prev = m_k(set, k - 1)?;
    let cur = m_k(set, k)?;
    let next = m_k(set, k + 1)?;
    let mut r = CheckReport::new("moment_log_convexity");
    r.quantity("M_{k-1}", prev.clone())
        .quantity("M_k", cur.clone())
        .quantity("M_{k+1}", next.clone());
    r.le("M_k^2 <= M_{k-1} M_{k+1}", cur.pow(2u32), prev * next, true);
    Ok(r)
}

/// `M_k(A)^(1/2k) <= M_k(B)^(1/2k) + M_k(A \ B)^(1/2k)` for `B ⊆ A`,
/// decided by certified root enclosures.
pub fn check_minkowski(
    set: &IntegerSet,
    part: &IntegerSet,
    k: usize,
    max_digits: u32,
) -> Result<CheckReport> {
    check_k(k)?;
    if !part.is_subset_of(set) {
        return Err(Error::InvalidParameter(
            "partition part is not a subset".into(),
        ));
    }
    let rest = set.difference(part);
    let whole = m_k(set, k)?;
    let mb = m_k(part, k)?;
    let mc = m_k(&rest, k)?;
    let (verdict, digits) = certify_root_le_sum(&whole, &mb, &mc, 2 * k as u32, max_digits);
    let mut r = CheckReport::new("moment_minkowski");
    r.quantity("M_k(A)", whole)
        .quantity("M_k(B)", mb)
        .quantity("M_k(A\\B)", mc)
        .quantity("digits", Exact::int(digits));
    r.property(
        "M_k(A)^(1/2k) <= M_k(B)^(1/2k) + M_k(A\\B)^(1/2k)",
        verdict == Certified::Holds,
        true,
    );
    if verdict == Certified::Undecided {
        r.note(format!("comparison not certified at {digits} digits"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntegerSet {
        IntegerSet::from_values(v.iter().copied())
    }

    fn series(pairs: &[(i64, u128)]) -> SparseSeries {
        SparseSeries::from_pairs(pairs.iter().copied()).unwrap()
    }

    /// Coefficients of `(1 + x + x^2)^3`, expanded by repeated polynomial
    /// multiplication on plain vectors.
    fn trinomial_cubed() -> Vec<u128> {
        let base = [1u128, 1, 1];
        let mut acc = vec![1u128];
        for _ in 0..3 {
            let mut next = vec![0u128; acc.len() + base.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in base.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(
            sigma_k(&set(&[0, 1]), 2).unwrap(),
            series(&[(0, 1), (1, 2), (2, 1)])
        );
        let expected = trinomial_cubed();
        assert_eq!(expected, vec![1, 3, 6, 7, 6, 3, 1]);
        let got = sigma_k(&set(&[0, 1, 2]), 3).unwrap();
        let got: Vec<u128> = got.terms().iter().map(|t| t.1).collect();
        assert_eq!(got, expected);
        let a = set(&[-3, 4, 9]);
        assert_eq!(
            sigma_k(&a, 1).unwrap(),
            SparseSeries::indicator(a.elements())
        );
    }

    #[test]
    fn s_k_examples() {
        let lim = Limits::default();
        assert_eq!(
            s_k_bruteforce(&set(&[0, 1]), 2, &lim).unwrap(),
            series(&[(1, 2)])
        );
        assert_eq!(
            s_k_bruteforce(&set(&[0, 1, 2]), 3, &lim).unwrap(),
            series(&[(3, 6)])
        );
        let expected = series(&[(1, 2), (3, 2), (4, 2)]);
        assert_eq!(s_k_bruteforce(&set(&[0, 1, 3]), 2, &lim).unwrap(), expected);
        assert_eq!(s_k_fast(&set(&[0, 1, 3]), 2).unwrap(), expected);
        assert_eq!(s_k_fast(&set(&[0, 1]), 2).unwrap(), series(&[(1, 2)]));
        assert!(s_k_fast(&set(&[0, 1]), 3).unwrap().is_empty());
    }

    #[test]
    fn elementary_symmetric_counts_subsets() {
        // 2-subsets of {1,2,3,4}: sums 3,4,5,5,6,7
        let e = elementary_symmetric(&set(&[1, 2, 3, 4]), 2).unwrap();
        assert_eq!(e, series(&[(3, 1), (4, 1), (5, 2), (6, 1), (7, 1)]));
    }

    #[test]
    fn profile_examples() {
        let lim = Limits::default();
        let p = moment_profile(&set(&[0, 1]), 2, &lim).unwrap();
        assert_eq!(p.m_k, big(6u32));
        assert_eq!(p.s_k_total, big(4u32));
        assert_eq!(p.support_size_ka, 3);
        assert!(p.check_invariants().passed());
        let p = moment_profile(&set(&[0, 1, 3]), 2, &lim).unwrap();
        assert_eq!(p.s_k_total, big(12u32));
        for k in 1..4 {
            let p = moment_profile(&set(&[7]), k, &lim).unwrap();
            assert_eq!(p.m_k, big(1u32));
            assert_eq!(p.s_k_total, big(u32::from(k == 1)));
        }
    }

    #[test]
    fn s_star_examples() {
        let lim = Limits::default();
        for method in [StarMethod::Subsets, StarMethod::SumGroups] {
            assert_eq!(
                s_star_k_with(&set(&[1, 2, 3, 4]), 2, method, &lim).unwrap(),
                big(8u32)
            );
            assert_eq!(
                s_star_k_with(&set(&[1, 2, 3, 5]), 2, method, &lim).unwrap(),
                big(0u32)
            );
            assert_eq!(
                s_star_k_with(&set(&[1, 2, 3]), 2, method, &lim).unwrap(),
                big(0u32)
            );
        }
    }

    #[test]
    fn bipartite_examples() {
        let lim = Limits::default();
        let got = s_star_k_bipartite(&set(&[1, 4]), &set(&[2, 3]), 2, &lim).unwrap();
        assert_eq!(got, big(4u32));
        assert!(
            s_star_k_bipartite(&IntegerSet::empty(), &set(&[2, 3]), 2, &lim)
                .unwrap()
                .is_zero()
        );
        let a = set(&[1, 2, 3, 4, 5, 7, 8]);
        assert_eq!(
            s_star_k_bipartite(&a, &a, 2, &lim).unwrap(),
            s_star_k_exact(&a, 2, &lim).unwrap()
        );
    }

    #[test]
    fn sandwich_examples() {
        let r = check_ruzsa_sandwich(&set(&[0, 1]), 2).unwrap();
        assert!(!r.hypothesis_met);
        assert!(r.inequality("S_k <= M_k").unwrap().holds);
        assert_eq!(r.get("S_k"), Some(&Exact::int(4)));
        assert_eq!(r.get("M_k"), Some(&Exact::int(6)));
        assert!(r.passed());
        let a = set(&[2, 9, 40]);
        let r = check_ruzsa_sandwich(&a, 1).unwrap();
        assert_eq!(r.get("S_k"), Some(&Exact::int(3)));
        assert_eq!(r.get("M_k"), Some(&Exact::int(3)));
        assert_eq!(r.get("lower"), Some(&Exact::ratio(3, 2)));
        assert!(r.inequalities.iter().all(|i| i.asserted && i.holds));
        assert!(r.passed());
    }

    #[test]
    fn ruzsa_58_examples() {
        let r = check_ruzsa_58(&set(&[0, 1]), 2).unwrap();
        assert_eq!(r.get("sum (sigma_k - s_k)^2"), Some(&Exact::int(2)));
        assert_eq!(r.get("k^4 M_{k-1}"), Some(&Exact::int(32)));
        assert!(r.passed());
        assert!(check_ruzsa_58(&set(&[1, 2, 5, 11]), 2).unwrap().passed());
        for k in 2..5 {
            let r = check_ruzsa_58(&set(&[5]), k).unwrap();
            assert_eq!(r.get("sum (sigma_k - s_k)^2"), Some(&Exact::int(1)));
            assert_eq!(r.get("k^4 M_{k-1}"), Some(&Exact::int(k.pow(4))));
        }
        assert!(check_ruzsa_58(&set(&[5]), 1).is_err());
    }

    #[test]
    fn sk_sl_examples() {
        let lim = Limits::default();
        let r = check_sk_sl_comparison(&set(&[1, 2, 3, 5]), 2, 1, &lim).unwrap();
        // S_2({1,2,3,5}) = 6 sums with two ordered pairs each = 24
        assert_eq!(r.get("S_k"), Some(&Exact::int(24)));
        assert_eq!(r.get("bound"), Some(&Exact::int(128)));
        assert_eq!(r.get("k^2 |A| S_{k-1}"), Some(&Exact::int(64)));
        assert!(!r.hypothesis_met);
        assert!(r.inequality("S_k <= k^2 |A| S_{k-1}").unwrap().asserted);
        assert!(r.passed());
        let r = check_sk_sl_comparison(&set(&[1, 2, 3, 4]), 2, 1, &lim).unwrap();
        assert!(!r.hypothesis_met);
        assert!(!r.inequality("S_k <= k^2 |A| S_{k-1}").unwrap().asserted);
        assert!(check_sk_sl_comparison(&set(&[1, 2]), 2, 2, &lim).is_err());
    }

    #[test]
    fn decomposition_identity_examples() {
        let lim = Limits::default();
        let r = decomposition_identity(&set(&[1, 2, 3, 4]), 2, &lim).unwrap();
        assert_eq!(r.get("S_t"), Some(&Exact::int(32)));
        assert_eq!(r.get("falling_factorial_form"), Some(&Exact::int(32)));
        assert!(r.passed());
        let r = decomposition_identity(&set(&[1, 2, 3]), 2, &lim).unwrap();
        assert_eq!(r.get("S_t"), Some(&Exact::int(2 * 6)));
        assert!(r.passed());
        let r = decomposition_identity(&set(&[4, 8, 15]), 1, &lim).unwrap();
        assert_eq!(r.get("S_t"), Some(&Exact::int(3)));
        assert!(r.passed());
    }

    #[test]
    fn cauchy_schwarz_examples() {
        let r = check_cauchy_schwarz_chain(&set(&[0, 1]), 2).unwrap();
        assert_eq!(
            r.inequality("|A|^2k <= |kA| M_k").unwrap().rhs,
            Exact::int(18)
        );
        assert!(r.passed());
        let r = check_cauchy_schwarz_chain(&IntegerSet::interval(10), 2).unwrap();
        assert_eq!(r.get("|kA|"), Some(&Exact::int(19)));
        assert!(r.passed());
        let r = check_cauchy_schwarz_chain(&set(&[3]), 4).unwrap();
        assert_eq!(
            r.inequality("|A|^2k <= |kA| M_k").unwrap().rhs,
            Exact::int(1)
        );
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 2), big(20u32));
        assert_eq!(falling_factorial(0, 0), big(1u32));
        assert_eq!(falling_factorial(2, 3), big(0u32));
        assert_eq!(falling_factorial(-1, 1), big(0u32));
        assert_eq!(binomial(10, 3), big(120u32));
    }

    #[test]
    fn minkowski_and_log_convexity_small() {
        let a = set(&[1, 2, 4, 8, 13]);
        assert!(check_log_convexity(&a, 2).unwrap().passed());
        let part = set(&[2, 8]);
        assert!(check_minkowski(&a, &part, 2, 256).unwrap().passed());
        assert!(check_minkowski(&a, &IntegerSet::empty(), 3, 256)
            .unwrap()
            .passed());
    }
}
