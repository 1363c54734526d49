//! Enumeration of fixed-size subsets and multisets, grouped by element sum.
//!
//! Everything here works on positions into a sorted slice of values. A
//! subset is the strictly increasing list of its positions, a multiset the
//! non-decreasing list. Enumeration order is lexicographic in positions.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Calls `f` with every strictly increasing `k`-tuple of positions in `0..n`,
/// in lexicographic order. Stops early when `f` returns `false`.
pub fn for_each_combination<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // rightmost position that can still move right
        let Some(i) = (0..k).rev().find(|&i| idx[i] < i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` with every non-decreasing `k`-tuple of positions in `0..n`,
/// in lexicographic order. Stops early when `f` returns `false`.
pub fn for_each_multiset<F>(n: usize, k: usize, mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if n == 0 && k > 0 {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] + 1 < n) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[i];
        }
    }
}

/// True when two sorted position lists share no entry.
pub fn disjoint_sorted(a: &[u16], b: &[u16]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return false,
        }
    }
    true
}

/// All `k`-subsets (or `k`-multisets) of a sorted value slice, sorted by sum
/// and, within one sum, lexicographically by positions.
pub struct SumIndex {
    k: usize,
    /// `(sum, id)`; `id` is the lexicographic rank, so sorting by the pair
    /// keeps lexicographic order within a sum.
    entries: Vec<(i64, u32)>,
    members: Vec<u16>,
}

impl SumIndex {
    fn build(values: &[i64], k: usize, multiset: bool) -> Result<Self> {
        if values.len() > u16::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "subset index supports at most {} elements",
                u16::MAX
            )));
        }
        let mut entries = Vec::new();
        let mut members = Vec::new();
        let mut push = |idx: &[usize]| {
            let id = entries.len() as u32;
            let sum: i64 = idx.iter().map(|&i| values[i]).sum();
            entries.push((sum, id));
            members.extend(idx.iter().map(|&i| i as u16));
            true
        };
        if multiset {
            for_each_multiset(values.len(), k, &mut push);
        } else {
            for_each_combination(values.len(), k, &mut push);
        }
        entries.sort_unstable();
        Ok(SumIndex {
            k,
            entries,
            members,
        })
    }

    /// Index of all `k`-subsets of `values`.
    pub fn subsets(values: &[i64], k: usize) -> Result<Self> {
        Self::build(values, k, false)
    }

    /// Index of all `k`-multisets of `values`.
    pub fn multisets(values: &[i64], k: usize) -> Result<Self> {
        Self::build(values, k, true)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn positions(&self, id: u32) -> &[u16] {
        let start = id as usize * self.k;
        &self.members[start..start + self.k]
    }

    /// Iterates over maximal runs of entries sharing one sum.
    pub fn groups(&self) -> impl Iterator<Item = (i64, &[(i64, u32)])> {
        self.entries
            .chunk_by(|a, b| a.0 == b.0)
            .map(|g| (g[0].0, g))
    }

    /// Ids of all entries with the given sum, in lexicographic order.
    pub fn with_sum(&self, sum: i64) -> &[(i64, u32)] {
        let lo = self.entries.partition_point(|e| e.0 < sum);
        let hi = self.entries.partition_point(|e| e.0 <= sum);
        &self.entries[lo..hi]
    }

    /// Lexicographically first pair `(X, Y)`, `X < Y`, of position-disjoint
    /// entries with equal sums.
    pub fn first_disjoint_pair(&self) -> Option<(Vec<u16>, Vec<u16>)> {
        let mut best: Option<(Vec<u16>, Vec<u16>)> = None;
        for (_, group) in self.groups() {
            if group.len() < 2 {
                continue;
            }
            'outer: for (i, &(_, xi)) in group.iter().enumerate() {
                let x = self.positions(xi);
                if let Some((bx, _)) = &best {
                    if x >= bx.as_slice() {
                        break;
                    }
                }
                for &(_, yj) in &group[i + 1..] {
                    let y = self.positions(yj);
                    if disjoint_sorted(x, y) {
                        best = Some((x.to_vec(), y.to_vec()));
                        break 'outer;
                    }
                }
            }
        }
        best
    }

    /// Lexicographically first pair of distinct entries with equal sums.
    pub fn first_equal_pair(&self) -> Option<(Vec<u16>, Vec<u16>)> {
        self.groups()
            .filter(|(_, g)| g.len() >= 2)
            .map(|(_, g)| (self.positions(g[0].1), self.positions(g[1].1)))
            .min()
            .map(|(x, y)| (x.to_vec(), y.to_vec()))
    }

    /// Number of ordered pairs `(X, Y)` of position-disjoint entries with
    /// equal sums.
    pub fn count_disjoint_ordered_pairs(&self) -> u128 {
        let mut total: u128 = 0;
        for (_, group) in self.groups() {
            for (i, &(_, xi)) in group.iter().enumerate() {
                let x = self.positions(xi);
                for &(_, yj) in &group[i + 1..] {
                    if disjoint_sorted(x, self.positions(yj)) {
                        total += 2;
                    }
                }
            }
        }
        total
    }
}

/// Incrementally maintained index of the `k`-subsets of a growing set,
/// used to decide whether appending one element creates a solution of
/// `x_1 + ... + x_k = y_1 + ... + y_k` in `2k` distinct elements.
///
/// Elements are appended and removed in stack order.
#[derive(Debug, Clone)]
pub struct IncrementalStar {
    k: usize,
    values: Vec<i64>,
    by_sum: HashMap<i64, Vec<u32>>,
    members: Vec<u16>,
    /// Number of subsets alive before each append, for undo.
    marks: Vec<usize>,
    live: usize,
}

impl IncrementalStar {
    pub fn new(k: usize) -> Self {
        IncrementalStar {
            k,
            values: Vec::new(),
            by_sum: HashMap::new(),
            members: Vec::new(),
            marks: Vec::new(),
            live: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    fn positions(&self, id: u32) -> &[u16] {
        let start = id as usize * self.k;
        &self.members[start..start + self.k]
    }

    /// True when `value` can be appended without creating a solution in
    /// distinct elements. `value` must not already be present.
    pub fn accepts(&self, value: i64) -> bool {
        let k = self.k;
        let n = self.values.len();
        if k == 0 || n + 1 < 2 * k {
            return true;
        }
        let mut ok = true;
        // subsets T of size k-1 of the current set; the new subset is T + value
        for_each_combination(n, k - 1, |t| {
            let sum = value + t.iter().map(|&i| self.values[i]).sum::<i64>();
            if let Some(ids) = self.by_sum.get(&sum) {
                for &id in ids {
                    let other = self.positions(id);
                    if disjoint_usize(t, other) {
                        ok = false;
                        return false;
                    }
                }
            }
            true
        });
        ok
    }

    /// Every way of completing `value` to a solution with the current
    /// elements: pairs `(T, Y)` of position lists with `T` of size `k - 1`,
    /// `Y` of size `k`, disjoint, and `value + sum(T) = sum(Y)`.
    pub fn solutions_with(&self, value: i64) -> Vec<(Vec<u16>, Vec<u16>)> {
        let k = self.k;
        let mut out = Vec::new();
        if k == 0 {
            return out;
        }
        for_each_combination(self.values.len(), k - 1, |t| {
            let sum = value + t.iter().map(|&i| self.values[i]).sum::<i64>();
            if let Some(ids) = self.by_sum.get(&sum) {
                for &id in ids {
                    let other = self.positions(id);
                    if disjoint_usize(t, other) {
                        out.push((t.iter().map(|&i| i as u16).collect(), other.to_vec()));
                    }
                }
            }
            true
        });
        out
    }

    /// Appends `value`, indexing every new `k`-subset it belongs to.
    pub fn push(&mut self, value: i64) {
        let k = self.k;
        let n = self.values.len();
        self.marks.push(self.live);
        self.values.push(value);
        if k == 0 {
            return;
        }
        let mut new_entries: Vec<(i64, Vec<u16>)> = Vec::new();
        for_each_combination(n, k - 1, |t| {
            let sum = value + t.iter().map(|&i| self.values[i]).sum::<i64>();
            let mut pos: Vec<u16> = t.iter().map(|&i| i as u16).collect();
            pos.push(n as u16);
            new_entries.push((sum, pos));
            true
        });
        for (sum, pos) in new_entries {
            let id = self.live as u32;
            self.live += 1;
            self.members.extend_from_slice(&pos);
            self.by_sum.entry(sum).or_default().push(id);
        }
    }

    /// Removes the most recently appended element.
    pub fn pop(&mut self) -> Option<i64> {
        let mark = self.marks.pop()?;
        let value = self.values.pop()?;
        let k = self.k;
        for id in mark..self.live {
            let start = id * k;
            let sum: i64 = self.members[start..start + k]
                .iter()
                .map(|&i| {
                    if i as usize == self.values.len() {
                        value
                    } else {
                        self.values[i as usize]
                    }
                })
                .sum();
            if let Some(v) = self.by_sum.get_mut(&sum) {
                if v.last() == Some(&(id as u32)) {
                    v.pop();
                } else {
                    v.retain(|&x| x != id as u32);
                }
                if v.is_empty() {
                    self.by_sum.remove(&sum);
                }
            }
        }
        self.live = mark;
        self.members.truncate(mark * k);
        Some(value)
    }
}

fn disjoint_usize(a: &[usize], b: &[u16]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&(b[j] as usize)) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let mut seen = Vec::new();
        for_each_combination(5, 3, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn combination_edge_cases() {
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
        for_each_combination(2, 3, |_| panic!("no 3-subsets of a 2-set"));
        let mut count = 0;
        for_each_combination(4, 4, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn multisets_count_matches_stars_and_bars() {
        let mut seen = Vec::new();
        for_each_multiset(4, 3, |c| {
            seen.push(c.to_vec());
            true
        });
        // C(4 + 3 - 1, 3)
        assert_eq!(seen.len(), 20);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert!(seen.iter().all(|m| m.windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn incremental_star_push_pop_round_trip() {
        let mut inc = IncrementalStar::new(2);
        for v in [1, 2, 3] {
            assert!(inc.accepts(v));
            inc.push(v);
        }
        // 1 + 4 = 2 + 3
        assert!(!inc.accepts(4));
        assert!(inc.accepts(5));
        inc.push(5);
        assert_eq!(inc.pop(), Some(5));
        assert_eq!(inc.pop(), Some(3));
        // {1, 2} + 4 has no 4 distinct elements
        assert!(inc.accepts(4));
    }
}
