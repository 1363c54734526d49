//! The verification battery: ten seeded, parameterized checks that cover
//! the counting core, the moment inequalities, the structure procedure,
//! the set-system bounds and the extremal search.
//!
//! Every check is deterministic for a given seed. Wall-clock times are
//! collected separately in [`SuiteReport::timing`].

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::verify_theorem_chain;
use crate::error::Result;
use crate::limits::Limits;
use crate::moments::{
    binomial, check_log_convexity, check_minkowski, check_ruzsa_58, check_ruzsa_sandwich,
    decomposition_identity, s_k_bruteforce, s_k_fast, s_star_k_with, StarMethod,
};
use crate::oracle::{max_bstar_by_subsets, max_subset_by_predicate, s_star_by_tuples};
use crate::report::{CheckReport, Exact};
use crate::search::{
    greedy_weak_sidon, max_bstar_exact, max_bstar_greedy, max_sidon_exact, DEFAULT_BUDGET,
};
use crate::setfamily::{
    check_al_is_l_system, check_def_bound, def_bound, def_threshold, SetFamily,
};
use crate::sets::{is_b_k, is_b_star_k, IntegerSet};
use crate::structure::{
    find_good_split, good_exponent_set, lemma_decompose, split_expectation_exact,
    verify_decomposition, SplitMode,
};
use crate::subsets::IncrementalStar;

/// Outcome of one numbered check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub instances: usize,
    /// Asserted relations that failed, one line each.
    pub failures: Vec<String>,
    /// Relations that are stated without their asymptotic error term and
    /// fail at this scale; they make the criterion fail but are listed
    /// apart from genuine failures.
    pub asymptotic_gaps: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: u32, title: &'static str) -> Self {
        CriterionOutcome {
            id,
            title,
            passed: true,
            instances: 0,
            failures: Vec::new(),
            asymptotic_gaps: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.failures.push(msg.into());
    }

    fn gap(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.asymptotic_gaps.push(msg.into());
    }

    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn report(&mut self, r: &CheckReport, what: impl FnOnce() -> String) {
        if !r.passed() {
            self.fail(format!("{}: {}", what(), r.failures().join("; ")));
        }
    }

    /// Passed, or failed only through asymptotic gaps.
    pub fn passed_up_to_asymptotics(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionTiming {
    pub id: u32,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
    pub timing: Vec<CriterionTiming>,
}

/// Number of checks in the battery.
pub const CRITERIA: u32 = 10;

fn rng_for(seed: u64, id: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// Uniform random set of `size` distinct values from `1..=max`.
pub fn random_set<R: Rng>(rng: &mut R, size: usize, max: u64) -> IntegerSet {
    let picks = sample(rng, max as usize, size.min(max as usize));
    IntegerSet::from_values(picks.into_iter().map(|i| i as i64 + 1))
}

/// Weak `B_k` set grown by inserting a random permutation of `1..=max`
/// while the set stays weak `B_k`, stopping at `size` elements.
pub fn random_bstar_set<R: Rng>(rng: &mut R, k: usize, size: usize, max: u64) -> IntegerSet {
    let mut order: Vec<i64> = (1..=max as i64).collect();
    order.shuffle(rng);
    let mut state = IncrementalStar::new(k);
    for v in order {
        if state.values().len() >= size {
            break;
        }
        if state.accepts(v) {
            state.push(v);
        }
    }
    IntegerSet::from_values(state.values().iter().copied())
}

/// Random set rich in small solutions: blocks `x_1 + ... + x_l = y_1 + ...
/// + y_l` with `l` drawn from `orders`, each shifted by a random offset, are
/// inserted element by element while the set stays weak `B_k`.
pub fn random_planted_set<R: Rng>(
    rng: &mut R,
    k: usize,
    size: usize,
    orders: std::ops::RangeInclusive<usize>,
) -> IntegerSet {
    let mut state = IncrementalStar::new(k);
    let mut present = BTreeSet::new();
    let mut rounds = 0;
    while state.values().len() < size && rounds < 20 * size {
        rounds += 1;
        let l = rng.random_range(orders.clone());
        let offset: i64 = rng.random_range(0..1 << 40);
        for v in planted_block(rng, l, 10_000) {
            let v = v + offset;
            if state.values().len() < size && !present.contains(&v) && state.accepts(v) {
                state.push(v);
                present.insert(v);
            }
        }
    }
    IntegerSet::from_values(state.values().iter().copied())
}

/// `2l` distinct values in `1..=spread` whose first and second halves
/// have equal sums.
fn planted_block<R: Rng>(rng: &mut R, l: usize, spread: i64) -> Vec<i64> {
    loop {
        let mut v: Vec<i64> = sample(rng, spread as usize, 2 * l - 1)
            .into_iter()
            .map(|i| i as i64 + 1)
            .collect();
        let last = v[..l].iter().sum::<i64>() - v[l..].iter().sum::<i64>();
        if last >= 1 && !v.contains(&last) {
            v.push(last);
            return v;
        }
    }
}

/// Random maximal `(n, k, L)`-system: `attempts` random `k`-subsets of
/// `[n]`, each kept when its intersections with the kept ones lie in `L`.
pub fn random_l_system<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    allowed: &BTreeSet<usize>,
    attempts: usize,
) -> Result<SetFamily> {
    let mut members: Vec<Vec<i64>> = Vec::new();
    let mut seen = BTreeSet::new();
    for _ in 0..attempts {
        let mut m: Vec<i64> = sample(rng, n, k)
            .into_iter()
            .map(|i| i as i64 + 1)
            .collect();
        m.sort_unstable();
        if seen.contains(&m) {
            continue;
        }
        let ok = members.iter().all(|o| {
            let common = m.iter().filter(|v| o.binary_search(v).is_ok()).count();
            allowed.contains(&common)
        });
        if ok {
            seen.insert(m.clone());
            members.push(m);
        }
    }
    let ground: Vec<i64> = (1..=n as i64).collect();
    SetFamily::new(&ground, k, members)
}

/// Counting core against brute force: `s_k` by Newton's identities versus
/// tuple enumeration, and `S*_k` by balanced `2k`-subsets versus walking
/// all injective `2k`-sequences.
pub fn criterion_1(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(1, "oracle equivalence of the counting core");
    let mut rng = rng_for(seed, 1);
    for _ in 0..200 {
        let size = rng.random_range(1..=8);
        let k = rng.random_range(1..=4);
        let a = random_set(&mut rng, size, 50);
        let fast = s_k_fast(&a, k)?;
        let brute = s_k_bruteforce(&a, k, limits)?;
        out.expect(fast == brute, || format!("s_{k} differs on {a}"));
        let star = s_star_k_with(&a, k, StarMethod::Subsets, limits)?;
        let tuples = BigUint::from(s_star_by_tuples(&a, k));
        out.expect(star == tuples, || {
            format!("S*_{k} on {a}: {star} vs {tuples}")
        });
        out.instances += 1;
    }
    Ok(out)
}

pub fn criterion_2(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(2, "decomposition of S_t into S*_l terms");
    let mut rng = rng_for(seed, 2);
    for _ in 0..50 {
        let size = rng.random_range(1..=10);
        let t = rng.random_range(1..=4);
        let a = random_set(&mut rng, size, 40);
        let r = decomposition_identity(&a, t, limits)?;
        out.report(&r, || format!("t={t}, A={a}"));
        out.instances += 1;
    }
    Ok(out)
}

pub fn criterion_3(_seed: u64, _limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(3, "moment sandwich on {1..256}, k = 2");
    let a = IntegerSet::interval(256);
    let r = check_ruzsa_sandwich(&a, 2)?;
    out.expect(r.hypothesis_met, || {
        "hypothesis |A| >= 16k^4 not met".into()
    });
    out.expect(r.inequalities.iter().all(|i| i.asserted), || {
        "some sandwich inequality was not asserted".into()
    });
    out.report(&r, || "sandwich".into());
    let r = check_ruzsa_58(&a, 2)?;
    out.report(&r, || "sum (sigma_2 - s_2)^2 <= 16 M_1".into());
    out.instances = 1;
    Ok(out)
}

pub fn criterion_4(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(4, "exact expectation of the random split");
    let mut rng = rng_for(seed, 4);
    for i in 0..30 {
        let size = rng.random_range(4..=12);
        let k = rng.random_range(2..=3);
        let a = random_set(&mut rng, size, 40);
        let e = split_expectation_exact(&a, k, limits)?;
        out.expect(e.identity_holds(), || {
            format!("4^{k} * {} != {} on {a}", e.mean, e.s_star_k)
        });
        let s = find_good_split(&a, k, seed ^ i, 0, SplitMode::Exhaustive, limits)?;
        out.expect(s.achieved, || format!("no good split for k={k}, A={a}"));
        out.instances += 1;
    }
    Ok(out)
}

/// Largest input size per `k` for the structure battery, keeping the
/// `k`-subset indexes small.
fn structure_size_cap(k: usize) -> usize {
    match k {
        2 => 60,
        3 => 45,
        4 => 32,
        _ => 26,
    }
}

pub fn criterion_5(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(5, "structure procedure certification");
    let mut rng = rng_for(seed, 5);
    let mut nonempty_bad = 0;
    for _ in 0..100 {
        let k = rng.random_range(2..=5);
        let cap = structure_size_cap(k);
        let size = rng.random_range((cap / 2).max(2 * k)..=cap);
        let a = if rng.random_bool(0.8) {
            random_planted_set(&mut rng, k, size, 2..=(k - 1).max(2))
        } else {
            random_bstar_set(&mut rng, k, size, 200)
        };
        let d = lemma_decompose(&a, k, limits)?;
        out.expect(d.trace.len() <= k * k, || {
            format!("{} iterations for k={k}", d.trace.len())
        });
        let r = verify_decomposition(&d, limits)?;
        out.report(&r, || format!("k={k}, A={a}"));
        if !d.bad.is_empty() {
            nonempty_bad += 1;
        }
        out.instances += 1;
    }
    out.notes.push(format!(
        "{nonempty_bad} of 100 decompositions have a nonempty bad set"
    ));
    Ok(out)
}

pub fn criterion_6(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(6, "product bound for L-systems and the solution family");
    let mut rng = rng_for(seed, 6);
    for n in 1..=20 {
        for k in 1..=n {
            let full: BTreeSet<usize> = (0..k).collect();
            let b = def_bound(n, k, &full)?;
            out.expect(b == Exact::from(binomial(n, k)), || {
                format!("bound({n},{k}) = {b}")
            });
        }
    }
    for n in 1..=10 {
        for k in 1..=n {
            let f = SetFamily::all_subsets(n, k);
            let full: BTreeSet<usize> = (0..k).collect();
            let r = check_def_bound(&f, &full)?;
            let tight = r
                .inequality("|family| <= prod (n-l)/(k-l)")
                .is_some_and(|i| i.lhs == i.rhs);
            out.expect(r.passed() && tight, || {
                format!("all {k}-subsets of [{n}] not tight")
            });
        }
    }
    // L-systems in the range where the product bound is a theorem
    for i in 0..50 {
        let k = if i % 5 == 4 { 3 } else { 2 };
        let threshold: usize = def_threshold(k).try_into().unwrap_or(usize::MAX);
        let n = rng.random_range(threshold..=threshold + 16);
        let mut allowed = BTreeSet::new();
        while allowed.is_empty() {
            allowed = (0..k).filter(|_| rng.random_bool(0.5)).collect();
        }
        let f = random_l_system(&mut rng, n, k, &allowed, 2000)?;
        let r = check_def_bound(&f, &allowed)?;
        out.expect(r.hypothesis_met, || {
            format!("n={n} below threshold for k={k}")
        });
        out.report(&r, || {
            format!("({n},{k},{allowed:?})-system of size {}", f.len())
        });
        out.instances += 1;
    }
    // solution families of weak B_3 sets that are not weak B_2: for k = 4
    // the bad exponents then satisfy |X ∩ [j]| <= j/2 for every j <= k
    let k = 4;
    let mut nonempty = 0;
    for _ in 0..50 {
        let size = rng.random_range(6..=12);
        let b = random_planted_set(&mut rng, 3, size, 2..=2);
        let (_, bad) = good_exponent_set(&b, k, limits)?;
        let eq4 = (1..=k).all(|j| bad.range(..=j).count() <= j / 2);
        out.expect(eq4, || {
            format!("B={b}: X={bad:?} has too many small exponents")
        });
        let mut mask: u64 = rng.random::<u64>() & ((1u64 << b.len()) - 1);
        // put one solution across the split so the family is not empty
        if let Some(w) = is_b_star_k(&b, 2, limits)?.witness {
            for (i, v) in b.iter().enumerate() {
                if w.left.contains(&v) {
                    mask |= 1 << i;
                } else if w.right.contains(&v) {
                    mask &= !(1 << i);
                }
            }
        }
        let b_prime = b.select(mask);
        let r = check_al_is_l_system(&b, &b_prime, 2, &bad, k, limits)?;
        out.expect(r.hypothesis_met, || "2l > k".into());
        out.report(&r, || format!("B={b}, B'={b_prime}, X={bad:?}"));
        if r.get("|A_l|").is_some_and(|v| !v.is_zero()) {
            nonempty += 1;
        }
        out.instances += 1;
    }
    out.notes
        .push(format!("{nonempty} of 50 solution families are nonempty"));
    Ok(out)
}

pub fn criterion_7(_seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(7, "extremal search soundness");
    for k in [2usize, 3] {
        let oracle = max_bstar_by_subsets(18, k);
        for n in 1..=18u64 {
            let r = max_bstar_exact(n, k, DEFAULT_BUDGET, limits)?;
            out.expect(r.exact, || format!("N={n}, k={k} not exact"));
            out.expect(r.best_size == oracle[n as usize - 1], || {
                format!(
                    "N={n}, k={k}: search {} vs oracle {}",
                    r.best_size,
                    oracle[n as usize - 1]
                )
            });
            let g = max_bstar_greedy(n, k, limits)?;
            out.expect(g.best_size <= r.best_size, || {
                format!("greedy beats exact at N={n}")
            });
            out.instances += 1;
        }
    }
    let mut previous = 0;
    let mut timmons_misses = Vec::new();
    for n in 20..=40u64 {
        let r = max_bstar_exact(n, 2, DEFAULT_BUDGET, limits)?;
        out.expect(r.exact, || format!("N={n} not exact"));
        out.expect(r.best_size >= previous, || format!("size drops at N={n}"));
        previous = r.best_size;
        let b = &r.bounds;
        out.expect(b.main_bound.admits(r.best_size), || {
            format!("main bound at N={n}")
        });
        out.expect(BigUint::from(r.best_size) <= b.ruzsa_bound.floor(), || {
            format!("ruzsa bound at N={n}")
        });
        if BigUint::from(r.best_size) > b.timmons_upper.floor() {
            timmons_misses.push(format!("{n}:{}>{}", r.best_size, b.timmons_upper.floor()));
        }
        out.instances += 1;
    }
    if !timmons_misses.is_empty() {
        out.gap(format!(
            "best_size exceeds floor((k^2/4) N^(1/k)) at N:size>floor {}; the bound omits its (1+o(1))(1+eps_k) factor",
            timmons_misses.join(" ")
        ));
    }
    // B_2 is the stronger property
    for n in 1..=24u64 {
        let s = max_sidon_exact(n, DEFAULT_BUDGET, limits)?;
        let w = max_bstar_exact(n, 2, DEFAULT_BUDGET, limits)?;
        out.expect(s.best_size <= w.best_size, || {
            format!("Sidon beats weak at N={n}")
        });
        if n <= 14 {
            let brute = max_subset_by_predicate(n as usize, |a| {
                is_b_k(a, 2, limits).map(|m| m.holds).unwrap_or(false)
            });
            out.expect(brute == s.best_size, || {
                format!("Sidon N={n}: {} vs {brute}", s.best_size)
            });
        }
    }
    Ok(out)
}

/// Size at which the moment bound's hypothesis `|A| >= 20 k^6` holds for
/// `k = 2`.
pub const CHAIN_SIZE: usize = 1280;

pub fn criterion_8(_seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(8, "moment bound at hypothesis scale, k = 2");
    let values = greedy_weak_sidon(1 << 26, CHAIN_SIZE);
    out.expect(values.len() == CHAIN_SIZE, || {
        format!("greedy stopped at {}", values.len())
    });
    let n = values.last().copied().unwrap_or(1) as u64;
    let a = IntegerSet::from_values(values);
    let r = verify_theorem_chain(&a, 2, Some(n), limits)?;
    out.expect(r.hypothesis_met, || "hypothesis |A| >= 1280 not met".into());
    out.expect(
        r.inequality("M_k^2 <= (2k 8^k k^(3k/2) |A|^k)^2")
            .is_some_and(|i| i.asserted),
        || "moment bound not asserted".into(),
    );
    out.report(&r, || format!("greedy set in [{n}]"));
    if let Some(m) = r.get("M_k") {
        out.notes.push(format!("N={n}, M_2={m}"));
    }
    out.instances = 1;
    Ok(out)
}

pub fn criterion_9(seed: u64, _limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(9, "log-convexity and Minkowski for moments");
    let mut rng = rng_for(seed, 9);
    for _ in 0..100 {
        let size = rng.random_range(1..=12);
        let k = rng.random_range(1..=4);
        let a = random_set(&mut rng, size, 60);
        let part = a.select(rng.random::<u64>() & ((1u64 << a.len()) - 1));
        let r = check_log_convexity(&a, k)?;
        out.report(&r, || format!("k={k}, A={a}"));
        let r = check_minkowski(&a, &part, k, 256)?;
        out.report(&r, || format!("k={k}, A={a}, B={part}"));
        out.instances += 1;
    }
    Ok(out)
}

/// Criterion 10 (byte-identical reruns) is a property of the whole
/// report; inside the battery it re-runs a cheap check and compares.
pub fn criterion_10(seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    let mut out = CriterionOutcome::new(10, "reproducibility under a fixed seed");
    let first = serde_json::to_string(&criterion_4(seed, limits)?).map_err(json_err)?;
    let second = serde_json::to_string(&criterion_4(seed, limits)?).map_err(json_err)?;
    out.expect(first == second, || {
        "criterion 4 output differs between runs".into()
    });
    out.instances = 1;
    Ok(out)
}

fn json_err(e: serde_json::Error) -> crate::error::Error {
    crate::error::Error::Parse(e.to_string())
}

pub fn run_criterion(id: u32, seed: u64, limits: &Limits) -> Result<CriterionOutcome> {
    match id {
        1 => criterion_1(seed, limits),
        2 => criterion_2(seed, limits),
        3 => criterion_3(seed, limits),
        4 => criterion_4(seed, limits),
        5 => criterion_5(seed, limits),
        6 => criterion_6(seed, limits),
        7 => criterion_7(seed, limits),
        8 => criterion_8(seed, limits),
        9 => criterion_9(seed, limits),
        10 => criterion_10(seed, limits),
        _ => Err(crate::error::Error::InvalidParameter(format!(
            "no criterion {id}"
        ))),
    }
}

/// Runs the selected checks (all when `ids` is empty) in order.
pub fn run_suite(seed: u64, ids: &[u32], limits: &Limits) -> Result<SuiteReport> {
    let ids: Vec<u32> = if ids.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        ids.to_vec()
    };
    let mut criteria = Vec::new();
    let mut timing = Vec::new();
    for id in ids {
        let start = Instant::now();
        criteria.push(run_criterion(id, seed, limits)?);
        timing.push(CriterionTiming {
            id,
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        });
    }
    Ok(SuiteReport {
        seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
        timing,
    })
}
