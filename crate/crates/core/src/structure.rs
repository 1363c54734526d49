//! The iterative structure procedure and the random splitting argument.
//!
//! [`lemma_decompose`] peels a weak `B_k` set `A` down to a subset `B`
//! whose set of good exponents `G(B) = { j <= k : B is B*_j }` is closed in
//! the sense that sums of bad exponents never land in `G(B)`.
//! [`find_good_split`] finds a bipartition `A' ⊎ (A \ A')` that keeps at
//! least a `4^-k` share of the distinct-element solutions.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{binomial_saturating, Limits};
use crate::moments::{s_star_k_bipartite, s_star_k_exact};
use crate::report::{biguint_as_string, CheckReport, Exact};
use crate::sets::{is_b_star_k, IntegerSet};
use crate::subsets::{for_each_combination, IncrementalStar};

/// One solution of `x_1 + ... + x_l = y_1 + ... + y_l` in `2l` distinct
/// elements. Both sides are stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBlock {
    pub l: usize,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

impl SolutionBlock {
    pub fn is_valid(&self) -> bool {
        if self.l < 2 || self.left.len() != self.l || self.right.len() != self.l {
            return false;
        }
        if self.left.iter().sum::<i64>() != self.right.iter().sum::<i64>() {
            return false;
        }
        let mut all = self.elements();
        all.sort_unstable();
        all.windows(2).all(|w| w[0] != w[1])
    }

    pub fn elements(&self) -> Vec<i64> {
        self.left.iter().chain(&self.right).copied().collect()
    }
}

/// `G(A)` and `X(A) = [k] \ G(A)` by direct weak `B_j` tests.
pub fn good_exponent_set(
    set: &IntegerSet,
    k: usize,
    limits: &Limits,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut good = BTreeSet::new();
    let mut bad = BTreeSet::new();
    for j in 1..=k {
        if is_b_star_k(set, j, limits)?.holds {
            good.insert(j);
        } else {
            bad.insert(j);
        }
    }
    Ok((good, bad))
}

/// Colex-first `2l`-subset of `values` (sorted) that splits into two
/// equal-sum halves, with its lexicographically smallest left half.
fn colex_first_block(values: &[i64], l: usize) -> Option<SolutionBlock> {
    let mut inc = IncrementalStar::new(l);
    for (m, &v) in values.iter().enumerate() {
        if !inc.accepts(v) {
            // every block containing v lies in values[..=m]; pick the colex
            // smallest, i.e. smallest when sorted descending
            let best = inc
                .solutions_with(v)
                .into_iter()
                .map(|(t, y)| {
                    let mut z: Vec<u16> = t.into_iter().chain(y).collect();
                    z.sort_unstable_by(|a, b| b.cmp(a));
                    z
                })
                .min()
                .expect("a rejected value has at least one solution");
            let mut z: Vec<i64> = best.iter().map(|&p| values[p as usize]).collect();
            z.push(values[m]);
            z.sort_unstable();
            return Some(balanced_split(&z, l));
        }
        inc.push(v);
    }
    None
}

/// Lexicographically smallest `l`-subset of `z` (sorted, `2l` elements)
/// carrying half of the total.
fn balanced_split(z: &[i64], l: usize) -> SolutionBlock {
    let total: i64 = z.iter().sum();
    let mut found = None;
    for_each_combination(z.len(), l, |c| {
        let s: i64 = c.iter().map(|&i| z[i]).sum();
        if 2 * s == total {
            found = Some(c.to_vec());
            return false;
        }
        true
    });
    let left_pos = found.expect("block has a balanced split");
    let left: Vec<i64> = left_pos.iter().map(|&i| z[i]).collect();
    let right: Vec<i64> = (0..z.len())
        .filter(|i| !left_pos.contains(i))
        .map(|i| z[i])
        .collect();
    SolutionBlock { l, left, right }
}

/// Greedy maximal collection of pairwise element-disjoint blocks of size
/// `l` inside `set \ forbidden`, stopping at `count` blocks.
///
/// Candidate `2l`-subsets are taken in colexicographic order; a candidate
/// is kept if it is disjoint from the blocks already kept.
pub fn find_disjoint_blocks(
    set: &IntegerSet,
    l: usize,
    count: usize,
    forbidden: &BTreeSet<i64>,
    limits: &Limits,
) -> Result<Vec<SolutionBlock>> {
    if l < 2 {
        return Err(Error::InvalidParameter("blocks need l >= 2".into()));
    }
    let mut avail: Vec<i64> = set.iter().filter(|v| !forbidden.contains(v)).collect();
    limits.check(
        "l-subsets for block search",
        binomial_saturating(avail.len(), l),
    )?;
    let mut blocks = Vec::new();
    while blocks.len() < count && avail.len() >= 2 * l {
        let Some(block) = colex_first_block(&avail, l) else {
            break;
        };
        let used = block.elements();
        avail.retain(|v| !used.contains(v));
        blocks.push(block);
    }
    Ok(blocks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepAction {
    /// `l` joins the bad set; its blocks are stored.
    ExtendBad,
    /// `l` joins the good set; stored and found elements are removed.
    PromoteGood,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub l: usize,
    pub action: StepAction,
    pub blocks: Vec<SolutionBlock>,
    /// Elements removed from the working set (empty for `ExtendBad`).
    pub removed: Vec<i64>,
    /// Size of stored elements plus this step's blocks.
    pub stored_size: usize,
}

/// Output of [`lemma_decompose`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub input: IntegerSet,
    pub k: usize,
    pub b_set: IntegerSet,
    pub good: BTreeSet<usize>,
    pub bad: BTreeSet<usize>,
    pub trace: Vec<IterationRecord>,
}

/// Runs the structure procedure on a weak `B_k` set.
///
/// State is `(A_i, G_i, X_i, S_i)`, starting from `(A, {}, {}, {})`. While
/// `G_i ∪ X_i != [k]`, let `l` be the least missing exponent and look for
/// `k` pairwise disjoint blocks of size `l` in `A_i \ S_i`:
/// * found: `X_i += {l}` and the blocks' elements join `S_i`;
/// * not found: the blocks found form a maximal collection `Sol_i`;
///   `A_i -= S_i ∪ Sol_i`, `G_i += {l}`, and `X_i`, `S_i` are reset.
pub fn lemma_decompose(set: &IntegerSet, k: usize, limits: &Limits) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if let Some(w) = is_b_star_k(set, k, limits)?.witness {
        return Err(Error::HypothesisViolated(format!(
            "input is not a weak B_{k} set: {:?} = {:?}",
            w.left, w.right
        )));
    }
    let mut current = set.clone();
    let mut good = BTreeSet::new();
    let mut bad = BTreeSet::new();
    let mut stored: BTreeSet<i64> = BTreeSet::new();
    let mut trace = Vec::new();
    let max_iterations = k * k;
    for iteration in 0.. {
        let Some(l) = (1..=k).find(|j| !good.contains(j) && !bad.contains(j)) else {
            break;
        };
        if iteration >= max_iterations {
            return Err(Error::InvalidParameter(format!(
                "structure procedure exceeded {max_iterations} iterations"
            )));
        }
        let blocks = if l == 1 {
            Vec::new()
        } else {
            find_disjoint_blocks(&current, l, k, &stored, limits)?
        };
        let found: Vec<i64> = blocks.iter().flat_map(|b| b.elements()).collect();
        let stored_size = stored.len() + found.len();
        if l >= 2 && blocks.len() == k {
            bad.insert(l);
            stored.extend(found);
            trace.push(IterationRecord {
                iteration,
                l,
                action: StepAction::ExtendBad,
                blocks,
                removed: Vec::new(),
                stored_size,
            });
        } else {
            let mut removed: Vec<i64> = stored.iter().copied().chain(found).collect();
            removed.sort_unstable();
            let removed_set = IntegerSet::from_values(removed.iter().copied());
            current = current.difference(&removed_set);
            good.insert(l);
            bad.clear();
            stored.clear();
            trace.push(IterationRecord {
                iteration,
                l,
                action: StepAction::PromoteGood,
                blocks,
                removed,
                stored_size,
            });
        }
    }
    Ok(Decomposition {
        input: set.clone(),
        k,
        b_set: current,
        good,
        bad,
        trace,
    })
}

/// All sums `<= k` of one or more members of `bad`, repetition allowed.
fn additive_closure(bad: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; k + 1];
    for s in 1..=k {
        reach[s] = bad.contains(&s) || bad.iter().any(|&x| x < s && reach[s - x]);
    }
    (1..=k).filter(|&s| reach[s]).collect()
}

/// All sums `<= k` of two or more distinct members of `bad`.
fn distinct_sums(bad: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
    let members: Vec<usize> = bad.iter().copied().collect();
    let mut out = BTreeSet::new();
    let n = members.len().min(20);
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let s: usize = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .sum();
        if s <= k {
            out.insert(s);
        }
    }
    out
}

/// Re-checks a decomposition from scratch: the five structural invariants,
/// the exponent sets against fresh weak `B_j` tests on `b_set`, and a full
/// replay of the trace.
pub fn verify_decomposition(d: &Decomposition, limits: &Limits) -> Result<CheckReport> {
    let k = d.k;
    let mut r = CheckReport::new("verify_decomposition");
    let all: BTreeSet<usize> = (1..=k).collect();
    let union: BTreeSet<usize> = d.good.union(&d.bad).copied().collect();
    r.property(
        "G and X partition [k] with 1 in G",
        union == all && d.good.is_disjoint(&d.bad) && d.good.contains(&1),
        true,
    );

    let n_a = d.input.len() as i128;
    let n_b = d.b_set.len() as i128;
    let floor = n_a - 2 * (k as i128).pow(3);
    r.le(
        "|A| - 2k^3 <= |B|",
        Exact::int(floor),
        Exact::int(n_b),
        true,
    );
    r.property("B is a subset of A", d.b_set.is_subset_of(&d.input), true);

    let mut certified = true;
    for j in 1..=k {
        let holds = is_b_star_k(&d.b_set, j, limits)?.holds;
        if holds != d.good.contains(&j) {
            certified = false;
            r.note(format!("exponent {j}: weak B_{j} test says {holds}"));
        }
    }
    r.property("G = G(B) by direct weak B_j tests", certified, true);

    let closure = additive_closure(&d.bad, k);
    r.property(
        "sums of X within [k] stay in X",
        closure.is_subset(&d.bad),
        true,
    );
    r.property(
        "sums of distinct members of X within [k] stay in X",
        distinct_sums(&d.bad, k).is_subset(&d.bad),
        false,
    );
    let eq4 = (1..=k).all(|l| d.bad.range(..=l).count() <= l / 2);
    r.property("|X ∩ [l]| <= floor(l/2) for all l", eq4, true);

    r.le(
        "iterations <= k^2",
        Exact::int(d.trace.len()),
        Exact::int(k * k),
        true,
    );
    let (replay_ok, size_flags) = replay_trace(d, &mut r);
    r.property("trace replays to the reported B, G, X", replay_ok, true);
    r.property(
        "stored elements per iteration <= 2k^2",
        size_flags == 0,
        false,
    );
    if size_flags > 0 {
        r.note(format!(
            "{size_flags} iteration(s) stored more than 2k^2 elements"
        ));
    }
    r.hypothesis_met = is_b_star_k(&d.input, k, limits)?.holds;
    Ok(r)
}

fn replay_trace(d: &Decomposition, r: &mut CheckReport) -> (bool, usize) {
    let k = d.k;
    let mut current = d.input.clone();
    let mut good = BTreeSet::new();
    let mut bad = BTreeSet::new();
    let mut stored: BTreeSet<i64> = BTreeSet::new();
    let mut size_flags = 0;
    for (i, rec) in d.trace.iter().enumerate() {
        let expect_l = (1..=k).find(|j| !good.contains(j) && !bad.contains(j));
        if rec.iteration != i || Some(rec.l) != expect_l {
            r.note(format!("record {i}: unexpected exponent {}", rec.l));
            return (false, size_flags);
        }
        let mut seen = BTreeSet::new();
        for b in &rec.blocks {
            if b.l != rec.l || !b.is_valid() {
                r.note(format!("record {i}: invalid block {b:?}"));
                return (false, size_flags);
            }
            for v in b.elements() {
                if !current.contains(v) || stored.contains(&v) || !seen.insert(v) {
                    r.note(format!("record {i}: element {v} reused or unavailable"));
                    return (false, size_flags);
                }
            }
        }
        if rec.stored_size != stored.len() + seen.len() {
            r.note(format!("record {i}: stored size mismatch"));
            return (false, size_flags);
        }
        if rec.stored_size > 2 * k * k {
            size_flags += 1;
        }
        match rec.action {
            StepAction::ExtendBad => {
                if rec.blocks.len() != k || !rec.removed.is_empty() {
                    r.note(format!("record {i}: extend step needs exactly k blocks"));
                    return (false, size_flags);
                }
                bad.insert(rec.l);
                stored.extend(seen);
            }
            StepAction::PromoteGood => {
                if rec.l >= 2 && rec.blocks.len() >= k {
                    r.note(format!("record {i}: promote step with k blocks"));
                    return (false, size_flags);
                }
                let expected: BTreeSet<i64> = stored.union(&seen).copied().collect();
                let removed: BTreeSet<i64> = rec.removed.iter().copied().collect();
                if expected != removed {
                    r.note(format!("record {i}: removed set mismatch"));
                    return (false, size_flags);
                }
                current = current.difference(&IntegerSet::from_values(removed));
                good.insert(rec.l);
                bad.clear();
                stored.clear();
            }
        }
    }
    let ok = current.elements() == d.b_set.elements() && good == d.good && bad == d.bad;
    if !ok {
        r.note("replayed state differs from the reported decomposition");
    }
    (ok, size_flags)
}

fn four_pow(k: usize) -> BigUint {
    BigUint::from(4u32).pow(k as u32)
}

/// Exact average of `S*_k(A', A \ A')` over all `2^|A|` subsets `A'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitExpectation {
    pub k: usize,
    #[serde(serialize_with = "biguint_as_string")]
    pub total: BigUint,
    pub mean: Exact,
    #[serde(serialize_with = "biguint_as_string")]
    pub s_star_k: BigUint,
}

impl SplitExpectation {
    /// `4^k * mean == S*_k(A)`.
    pub fn identity_holds(&self) -> bool {
        let scaled = &self.mean.0 * BigRational::from_integer(BigInt::from(four_pow(self.k)));
        scaled == BigRational::from_integer(BigInt::from(self.s_star_k.clone()))
    }
}

pub fn split_expectation_exact(
    set: &IntegerSet,
    k: usize,
    limits: &Limits,
) -> Result<SplitExpectation> {
    let n = set.len();
    if n > limits.split_cap || n > 62 {
        return Err(Error::ResourceGuard {
            what: "bipartitions for the split expectation",
            needed: 1u128 << n.min(127),
            budget: 1u128 << limits.split_cap.min(62),
        });
    }
    let full = (1u64 << n) - 1;
    let mut total = BigUint::zero();
    for mask in 0..=full {
        total += s_star_k_bipartite(&set.select(mask), &set.select(full & !mask), k, limits)?;
    }
    let mean = Exact(BigRational::new(
        BigInt::from(total.clone()),
        BigInt::from(BigUint::from(1u32) << n),
    ));
    Ok(SplitExpectation {
        k,
        total,
        mean,
        s_star_k: s_star_k_exact(set, k, limits)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    /// Random subsets only.
    Sampling,
    /// All `2^|A|` subsets.
    Exhaustive,
    /// Sampling, then exhaustive if no witness was found and `|A|` is
    /// within the split cap.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    pub a_prime: IntegerSet,
    pub complement: IntegerSet,
    #[serde(serialize_with = "biguint_as_string")]
    pub s_star_bipartite: BigUint,
    /// `4^-k S*_k(A)`.
    pub target: Exact,
    pub achieved: bool,
    /// Sampling trials used; 0 when the result came from exhaustive search.
    pub trials: u64,
    pub exhaustive: bool,
}

/// The subset kept by trial `trial` of seed `seed`: each element kept
/// independently with probability 1/2.
pub fn random_split_mask(seed: u64, trial: u64, n: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n).map(|_| rng.random::<bool>()).collect()
}

fn split_by(set: &IntegerSet, keep: &[bool]) -> (IntegerSet, IntegerSet) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (v, &k) in set.iter().zip(keep) {
        if k {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    (IntegerSet::from_values(a), IntegerSet::from_values(b))
}

/// Searches for `A'` with `4^k S*_k(A', A \ A') >= S*_k(A)`.
pub fn find_good_split(
    set: &IntegerSet,
    k: usize,
    seed: u64,
    max_trials: u64,
    mode: SplitMode,
    limits: &Limits,
) -> Result<SplitResult> {
    let star = s_star_k_exact(set, k, limits)?;
    let scale = four_pow(k);
    let target = Exact(BigRational::new(
        BigInt::from(star.clone()),
        BigInt::from(scale.clone()),
    ));
    let achieves = |s: &BigUint| s * &scale >= star;
    let n = set.len();

    let mut best: Option<SplitResult> = None;
    if mode != SplitMode::Exhaustive {
        for trial in 0..max_trials {
            let keep = random_split_mask(seed, trial, n);
            let (a, b) = split_by(set, &keep);
            let s = s_star_k_bipartite(&a, &b, k, limits)?;
            let hit = achieves(&s);
            if best.as_ref().is_none_or(|cur| s > cur.s_star_bipartite) || hit {
                best = Some(SplitResult {
                    a_prime: a,
                    complement: b,
                    s_star_bipartite: s,
                    target: target.clone(),
                    achieved: hit,
                    trials: trial + 1,
                    exhaustive: false,
                });
            }
            if hit {
                return Ok(best.expect("just set"));
            }
        }
    }
    let exhaustive_allowed = n <= limits.split_cap && n <= 62;
    if mode == SplitMode::Sampling || (mode == SplitMode::Auto && !exhaustive_allowed) {
        if let Some(b) = best.as_mut() {
            b.trials = max_trials;
        }
        return best.ok_or_else(|| Error::InvalidParameter("max_trials must be positive".into()));
    }
    if !exhaustive_allowed {
        return Err(Error::ResourceGuard {
            what: "bipartitions for exhaustive split search",
            needed: 1u128 << n.min(127),
            budget: 1u128 << limits.split_cap.min(62),
        });
    }
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut top: Option<(BigUint, u64)> = None;
    for mask in 0..=full {
        let s = s_star_k_bipartite(&set.select(mask), &set.select(full & !mask), k, limits)?;
        if top.as_ref().is_none_or(|(t, _)| s > *t) {
            top = Some((s, mask));
        }
    }
    let (s, mask) = top.expect("at least one mask");
    Ok(SplitResult {
        a_prime: set.select(mask),
        complement: set.select(full & !mask),
        achieved: achieves(&s),
        s_star_bipartite: s,
        target,
        trials: 0,
        exhaustive: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntegerSet {
        IntegerSet::from_values(v.iter().copied())
    }

    fn bs(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn good_exponent_examples() {
        let lim = Limits::default();
        assert_eq!(
            good_exponent_set(&set(&[1, 2, 3, 5]), 2, &lim).unwrap(),
            (bs(&[1, 2]), bs(&[]))
        );
        assert_eq!(
            good_exponent_set(&set(&[1, 2, 3, 4]), 2, &lim).unwrap(),
            (bs(&[1]), bs(&[2]))
        );
        assert_eq!(
            good_exponent_set(&set(&[1, 2, 3, 4]), 1, &lim).unwrap(),
            (bs(&[1]), bs(&[]))
        );
    }

    #[test]
    fn block_examples() {
        let lim = Limits::default();
        let none = BTreeSet::new();
        let b = find_disjoint_blocks(&set(&[1, 2, 3, 4]), 2, 2, &none, &lim).unwrap();
        assert_eq!(
            b,
            vec![SolutionBlock {
                l: 2,
                left: vec![1, 4],
                right: vec![2, 3]
            }]
        );
        let b = find_disjoint_blocks(&IntegerSet::interval(8), 2, 2, &none, &lim).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(SolutionBlock::is_valid));
        let (e0, e1) = (b[0].elements(), b[1].elements());
        assert!(e0.iter().all(|v| !e1.contains(v)));
        assert!(find_disjoint_blocks(&set(&[1, 2, 3]), 2, 2, &none, &lim)
            .unwrap()
            .is_empty());
        // forbidding 1 leaves {2,3,4}: no block
        let forbid: BTreeSet<i64> = [1].into_iter().collect();
        assert!(
            find_disjoint_blocks(&set(&[1, 2, 3, 4]), 2, 2, &forbid, &lim)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn blocks_follow_colex_order() {
        // the colex-first 4-subset with a balanced split among {1..8} is {1,2,3,4}
        let none = BTreeSet::new();
        let b = find_disjoint_blocks(&IntegerSet::interval(8), 2, 1, &none, &Limits::default())
            .unwrap();
        assert_eq!(b[0].left, vec![1, 4]);
        assert_eq!(b[0].right, vec![2, 3]);
    }

    #[test]
    fn decompose_b_star_input() {
        let lim = Limits::default();
        let d = lemma_decompose(&set(&[1, 2, 3, 5]), 2, &lim).unwrap();
        assert_eq!(d.b_set, set(&[1, 2, 3, 5]));
        assert_eq!(d.good, bs(&[1, 2]));
        assert!(d.bad.is_empty());
        assert!(d.trace.iter().all(|r| r.removed.is_empty()));
        assert!(verify_decomposition(&d, &lim).unwrap().passed());
    }

    #[test]
    fn decompose_refuses_non_b_star() {
        let err = lemma_decompose(&IntegerSet::interval(12), 2, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(_)));
    }

    #[test]
    fn decompose_with_bad_exponent() {
        // many disjoint 2-solutions, but no 3-solution in distinct elements
        let a = set(&[
            1, 2, 3, 4, 1000, 1001, 1002, 1003, 100_000, 100_001, 100_002, 100_003,
        ]);
        let lim = Limits::default();
        if is_b_star_k(&a, 3, &lim).unwrap().holds {
            let d = lemma_decompose(&a, 3, &lim).unwrap();
            let r = verify_decomposition(&d, &lim).unwrap();
            assert!(r.passed(), "{:?}", r.failures());
        }
    }

    #[test]
    fn corrupted_decomposition_is_flagged() {
        let lim = Limits::default();
        let mut d = lemma_decompose(&set(&[1, 2, 3, 5, 9]), 3, &lim).unwrap();
        d.good.retain(|&j| j == 1);
        d.bad = bs(&[2, 3]);
        let r = verify_decomposition(&d, &lim).unwrap();
        assert!(!r.passed());
        let f = r.failures();
        assert!(f.iter().any(|n| n.contains("floor(l/2)")));
        assert!(f.iter().any(|n| n.contains("G = G(B)")));
    }

    #[test]
    fn empty_b_set_checks_size_numerically() {
        let d = Decomposition {
            input: set(&[1, 2]),
            k: 1,
            b_set: IntegerSet::empty(),
            good: bs(&[1]),
            bad: bs(&[]),
            trace: vec![IterationRecord {
                iteration: 0,
                l: 1,
                action: StepAction::PromoteGood,
                blocks: vec![],
                removed: vec![1, 2],
                stored_size: 0,
            }],
        };
        let r = verify_decomposition(&d, &Limits::default()).unwrap();
        // 2 - 2 = 0 <= 0, but the replay sees removals that were never stored
        assert!(r.inequality("|A| - 2k^3 <= |B|").unwrap().holds);
        assert!(!r.passed());
    }

    #[test]
    fn split_expectation_examples() {
        let lim = Limits::default();
        let e = split_expectation_exact(&set(&[1, 2, 3, 4]), 2, &lim).unwrap();
        assert_eq!(e.total, BigUint::from(8u32));
        assert_eq!(e.mean, Exact::ratio(1, 2));
        assert!(e.identity_holds());
        let e = split_expectation_exact(&set(&[1, 2, 3, 5]), 2, &lim).unwrap();
        assert!(e.mean.is_zero() && e.identity_holds());
        let e = split_expectation_exact(&IntegerSet::empty(), 2, &lim).unwrap();
        assert!(e.mean.is_zero());
        assert!(split_expectation_exact(&IntegerSet::interval(15), 2, &lim).is_err());
    }

    #[test]
    fn good_split_examples() {
        let lim = Limits::default();
        let r = find_good_split(&set(&[1, 2, 3, 4]), 2, 7, 0, SplitMode::Exhaustive, &lim).unwrap();
        assert!(r.achieved);
        assert_eq!(r.s_star_bipartite, BigUint::from(4u32));
        let r = find_good_split(&set(&[1, 2, 3, 5]), 2, 7, 1, SplitMode::Sampling, &lim).unwrap();
        assert!(r.achieved);
        let a = IntegerSet::interval(10);
        let r1 = find_good_split(&a, 2, 42, 50, SplitMode::Sampling, &lim).unwrap();
        let r2 = find_good_split(&a, 2, 42, 50, SplitMode::Sampling, &lim).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.achieved);
    }

    #[test]
    fn random_masks_depend_on_trial() {
        assert_eq!(random_split_mask(1, 3, 40), random_split_mask(1, 3, 40));
        assert_ne!(random_split_mask(1, 3, 40), random_split_mask(1, 4, 40));
    }
}
