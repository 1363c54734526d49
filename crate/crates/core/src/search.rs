//! Largest weak `B_k` subsets of `{1, ..., N}`: exact branch and bound,
//! the greedy scan, and a `B_2` (Sidon) comparison search.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::bounds::BoundRow;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::report::{CheckReport, Exact};
use crate::sets::{is_b_k, is_b_star_k, IntegerSet};
use crate::subsets::IncrementalStar;

/// Node budget used when the caller has no preference.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Digits used for the bound columns attached to search reports.
const BOUND_DIGITS: u32 = 6;

/// Wall-clock data, kept apart so reports can be compared without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timing {
    pub elapsed: Duration,
}

impl Serialize for Timing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Timing", 1)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1000.0))?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// No solution in `2k` distinct elements.
    WeakBk,
    /// `B_2`: all pairwise sums (with repetition) distinct.
    Sidon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: usize,
    pub property: Property,
    pub method: &'static str,
    pub best_size: usize,
    pub witness: IntegerSet,
    pub exact: bool,
    pub nodes_explored: u64,
    /// Certified maxima for `1..=N` in order, as far as the search got.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub prefix_sizes: Vec<usize>,
    pub bounds: BoundRow,
    pub timing: Timing,
}

impl SearchReport {
    /// One CSV line in the column order of [`crate::bounds::CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.k,
            self.best_size,
            self.exact,
            self.bounds.csv_cells().join(",")
        )
    }

    /// Compares the size with the floors of the three upper bounds.
    ///
    /// The main bound is asserted always; Ruzsa's and Timmons' forms carry
    /// a `1 + o(1)` factor and are asserted only for the main bound's
    /// hypothesis range.
    pub fn check_bounds(&self) -> CheckReport {
        let mut r = CheckReport::new("search_bounds");
        r.hypothesis_met = self.bounds.hypothesis_met;
        let size = Exact::int(self.best_size);
        r.quantity("best_size", size.clone());
        let rows = [
            (
                "best_size <= floor(main_bound)",
                &self.bounds.main_bound,
                true,
            ),
            (
                "best_size <= floor(ruzsa_bound)",
                &self.bounds.ruzsa_bound,
                self.bounds.hypothesis_met,
            ),
            (
                "best_size <= floor(timmons_upper)",
                &self.bounds.timmons_upper,
                self.bounds.hypothesis_met,
            ),
        ];
        for (name, bound, asserted) in rows {
            r.le(name, size.clone(), Exact::from(bound.floor()), asserted);
        }
        r
    }
}

/// Stack-ordered feasibility state for appending elements.
trait Extension {
    fn accepts(&self, value: i64) -> bool;
    fn push(&mut self, value: i64);
    fn pop(&mut self);
    fn values(&self) -> &[i64];
}

impl Extension for IncrementalStar {
    fn accepts(&self, value: i64) -> bool {
        IncrementalStar::accepts(self, value)
    }
    fn push(&mut self, value: i64) {
        IncrementalStar::push(self, value)
    }
    fn pop(&mut self) {
        IncrementalStar::pop(self);
    }
    fn values(&self) -> &[i64] {
        IncrementalStar::values(self)
    }
}

/// Sidon state: a set is `B_2` iff its positive differences are distinct.
#[derive(Default)]
struct Differences {
    values: Vec<i64>,
    seen: HashSet<i64>,
}

impl Extension for Differences {
    fn accepts(&self, value: i64) -> bool {
        let mut fresh = HashSet::with_capacity(self.values.len());
        self.values.iter().all(|&s| {
            let d = (value - s).abs();
            !self.seen.contains(&d) && fresh.insert(d)
        })
    }
    fn push(&mut self, value: i64) {
        for &s in &self.values {
            self.seen.insert((value - s).abs());
        }
        self.values.push(value);
    }
    fn pop(&mut self) {
        if let Some(v) = self.values.pop() {
            for &s in &self.values {
                self.seen.remove(&(v - s).abs());
            }
        }
    }
    fn values(&self) -> &[i64] {
        &self.values
    }
}

struct Searcher<E, F: Fn() -> E> {
    make: F,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<E: Extension, F: Fn() -> E> Searcher<E, F> {
    /// Lexicographically first feasible `target`-subset of `[n]` containing
    /// 1, given certified maxima `best[m]` for every `m < n`.
    fn first_with_size(&mut self, n: i64, target: usize, best: &[usize]) -> Option<Vec<i64>> {
        if target == 0 {
            return Some(Vec::new());
        }
        let mut state = (self.make)();
        state.push(1);
        self.nodes += 1;
        if self.extend(&mut state, 2, n, target, best) {
            Some(state.values().to_vec())
        } else {
            None
        }
    }

    fn extend(&mut self, state: &mut E, start: i64, n: i64, target: usize, best: &[usize]) -> bool {
        let size = state.values().len();
        if size == target {
            return true;
        }
        for a in start..=n {
            // the rest lies in (a, n], a translate of [n - a]
            if size + 1 + best[(n - a) as usize] < target {
                break;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            if !state.accepts(a) {
                continue;
            }
            self.nodes += 1;
            state.push(a);
            if self.extend(state, a + 1, n, target, best) {
                return true;
            }
            state.pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

struct ExactOutcome {
    prefix: Vec<usize>,
    witness: Vec<i64>,
    exact: bool,
    nodes: u64,
}

/// Computes the maximum for `[1], [2], ..., [n]` in turn. Each step asks
/// only whether the previous maximum plus one is attainable, which is
/// enough since adding one element to the interval raises it by at most
/// one. Translation invariance lets every candidate contain 1; the
/// lexicographically smallest extremal set always does.
fn exact_search<E: Extension, F: Fn() -> E>(n: u64, budget: u64, make: F) -> ExactOutcome {
    let mut s = Searcher {
        make,
        nodes: 0,
        budget,
        exhausted: false,
    };
    let mut best = vec![0usize];
    let mut witness: Vec<i64> = Vec::new();
    for m in 1..=n as i64 {
        let target = best[best.len() - 1] + 1;
        match s.first_with_size(m, target, &best) {
            Some(w) => {
                best.push(target);
                witness = w;
            }
            None if s.exhausted => {
                return ExactOutcome {
                    prefix: best[1..].to_vec(),
                    witness,
                    exact: false,
                    nodes: s.nodes,
                };
            }
            None => {
                let keep = best[best.len() - 1];
                best.push(keep);
                if m == n as i64 {
                    // lexicographically smallest extremal set of [n] itself
                    if let Some(w) = s.first_with_size(m, keep, &best[..m as usize]) {
                        witness = w;
                    }
                }
            }
        }
    }
    ExactOutcome {
        prefix: best[1..].to_vec(),
        witness,
        exact: true,
        nodes: s.nodes,
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    if n > 1 << 40 {
        return Err(Error::ValueTooLarge(n as i64));
    }
    Ok(())
}

fn verified(
    witness: IntegerSet,
    k: usize,
    property: Property,
    limits: &Limits,
) -> Result<IntegerSet> {
    let ok = match property {
        Property::WeakBk => is_b_star_k(&witness, k, limits)?.holds,
        Property::Sidon => is_b_k(&witness, 2, limits)?.holds,
    };
    if ok {
        Ok(witness)
    } else {
        Err(Error::HypothesisViolated(format!(
            "search produced {witness}, which fails the final check"
        )))
    }
}

/// Exact maximum size of a weak `B_k` subset of `[N]` by depth-first branch
/// and bound, candidates in increasing order. When `budget` nodes run out
/// the best set found so far (or the greedy set, if larger) is returned
/// with `exact = false`.
pub fn max_bstar_exact(n: u64, k: usize, budget: u64, limits: &Limits) -> Result<SearchReport> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let start = Instant::now();
    if k == 1 || 2 * k as u64 > n {
        // no 2k distinct elements to clash, or every set qualifies
        let witness = verified(IntegerSet::interval(n), k, Property::WeakBk, limits)?;
        return Ok(SearchReport {
            n,
            k,
            property: Property::WeakBk,
            method: "exact",
            best_size: n as usize,
            witness,
            exact: true,
            nodes_explored: 0,
            prefix_sizes: (1..=n as usize).collect(),
            bounds: BoundRow::new(n, k, BOUND_DIGITS)?,
            timing: Timing {
                elapsed: start.elapsed(),
            },
        });
    }
    let out = exact_search(n, budget, || IncrementalStar::new(k));
    finish(n, k, Property::WeakBk, out, start, limits)
}

/// Exact maximum size of a `B_2` (Sidon) subset of `[N]`, same search with
/// the Sidon test in place of the weak one.
pub fn max_sidon_exact(n: u64, budget: u64, limits: &Limits) -> Result<SearchReport> {
    check_n(n)?;
    let start = Instant::now();
    let out = exact_search(n, budget, Differences::default);
    finish(n, 2, Property::Sidon, out, start, limits)
}

fn finish(
    n: u64,
    k: usize,
    property: Property,
    out: ExactOutcome,
    start: Instant,
    limits: &Limits,
) -> Result<SearchReport> {
    let mut witness = out.witness;
    let mut method = "exact";
    if !out.exact && property == Property::WeakBk {
        let greedy = greedy_values(n, k);
        if greedy.len() > witness.len() {
            witness = greedy;
            method = "exact+greedy";
        }
    }
    let witness = verified(IntegerSet::from_values(witness), k, property, limits)?;
    Ok(SearchReport {
        n,
        k,
        property,
        method,
        best_size: witness.len(),
        witness,
        exact: out.exact,
        nodes_explored: out.nodes,
        prefix_sizes: out.prefix,
        bounds: BoundRow::new(n, k, BOUND_DIGITS)?,
        timing: Timing {
            elapsed: start.elapsed(),
        },
    })
}

fn greedy_values(n: u64, k: usize) -> Vec<i64> {
    if k == 2 {
        return greedy_weak_sidon(n, usize::MAX);
    }
    let mut state = IncrementalStar::new(k);
    for v in 1..=n as i64 {
        if state.accepts(v) {
            state.push(v);
        }
    }
    state.values().to_vec()
}

/// Scans `1..=N` and keeps every element that leaves the set weak `B_k`.
pub fn max_bstar_greedy(n: u64, k: usize, limits: &Limits) -> Result<SearchReport> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let start = Instant::now();
    let witness = verified(
        IntegerSet::from_values(greedy_values(n, k)),
        k,
        Property::WeakBk,
        limits,
    )?;
    Ok(SearchReport {
        n,
        k,
        property: Property::WeakBk,
        method: "greedy",
        best_size: witness.len(),
        witness,
        exact: false,
        nodes_explored: n,
        prefix_sizes: Vec::new(),
        bounds: BoundRow::new(n, k, BOUND_DIGITS)?,
        timing: Timing {
            elapsed: start.elapsed(),
        },
    })
}

/// Greedy weak Sidon set: scans `1..=limit`, stopping early once `target`
/// elements are kept.
///
/// A new maximum `w` clashes exactly when `w = b + c - a` for distinct
/// kept `a, b, c`, so the forbidden values above the current maximum are
/// kept in a bitset and extended by `w + c - a` (`c > a`) on each append.
pub fn greedy_weak_sidon(limit: u64, target: usize) -> Vec<i64> {
    let limit = limit as usize;
    let mut forbidden = vec![0u64; limit / 64 + 1];
    let mut kept: Vec<usize> = Vec::new();
    for w in 1..=limit {
        if kept.len() >= target {
            break;
        }
        if forbidden[w / 64] >> (w % 64) & 1 == 1 {
            continue;
        }
        for (i, &a) in kept.iter().enumerate() {
            for &c in &kept[i + 1..] {
                let f = w + c - a;
                if f <= limit {
                    forbidden[f / 64] |= 1 << (f % 64);
                }
            }
        }
        kept.push(w);
    }
    kept.into_iter().map(|v| v as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn small_cases() {
        let r = max_bstar_exact(4, 2, DEFAULT_BUDGET, &lim()).unwrap();
        assert_eq!((r.best_size, r.exact), (3, true));
        assert_eq!(r.witness.elements(), &[1, 2, 3]);
        let r = max_bstar_exact(1, 3, DEFAULT_BUDGET, &lim()).unwrap();
        assert_eq!(r.best_size, 1);
        let r = max_bstar_exact(5, 3, DEFAULT_BUDGET, &lim()).unwrap();
        assert_eq!(r.best_size, 5);
        let r = max_bstar_exact(9, 1, DEFAULT_BUDGET, &lim()).unwrap();
        assert_eq!(r.best_size, 9);
    }

    #[test]
    fn greedy_examples() {
        let r = max_bstar_greedy(4, 2, &lim()).unwrap();
        assert_eq!(r.witness.elements(), &[1, 2, 3]);
        let e = max_bstar_exact(10, 2, DEFAULT_BUDGET, &lim()).unwrap();
        let g = max_bstar_greedy(10, 2, &lim()).unwrap();
        assert!(g.best_size <= e.best_size);
    }

    #[test]
    fn fast_greedy_matches_generic() {
        let mut state = IncrementalStar::new(2);
        for v in 1..=400 {
            if state.accepts(v) {
                state.push(v);
            }
        }
        assert_eq!(greedy_weak_sidon(400, usize::MAX), state.values());
        assert_eq!(greedy_weak_sidon(400, 5), &state.values()[..5]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = max_bstar_exact(30, 2, 50, &lim()).unwrap();
        assert!(!r.exact);
        assert!(is_b_star_k(&r.witness, 2, &lim()).unwrap().holds);
    }

    #[test]
    fn sidon_never_exceeds_weak() {
        for n in [5u64, 12, 20] {
            let s = max_sidon_exact(n, DEFAULT_BUDGET, &lim()).unwrap();
            let w = max_bstar_exact(n, 2, DEFAULT_BUDGET, &lim()).unwrap();
            assert!(s.exact && w.exact);
            assert!(s.best_size <= w.best_size);
        }
        // Golomb rulers: 4 marks need length 6, 5 marks length 11
        assert_eq!(
            max_sidon_exact(7, DEFAULT_BUDGET, &lim())
                .unwrap()
                .best_size,
            4
        );
        assert_eq!(
            max_sidon_exact(12, DEFAULT_BUDGET, &lim())
                .unwrap()
                .best_size,
            5
        );
        assert_eq!(
            max_sidon_exact(11, DEFAULT_BUDGET, &lim())
                .unwrap()
                .best_size,
            4
        );
    }

    #[test]
    fn csv_row_shape() {
        let r = max_bstar_exact(4, 2, DEFAULT_BUDGET, &lim()).unwrap();
        assert!(r.csv_row().starts_with("4,2,3,true,"));
        assert_eq!(r.csv_row().split(',').count(), 9);
    }
}
