//! Slow reference implementations, kept deliberately naive. They share no
//! code with the fast paths they are compared against.

use crate::sets::IntegerSet;

/// `S*_k` by walking every injective sequence of `2k` positions and
/// comparing the sums of its two halves.
pub fn s_star_by_tuples(set: &IntegerSet, k: usize) -> u128 {
    fn walk(v: &[i64], used: &mut [bool], seq: &mut Vec<i64>, k: usize, count: &mut u128) {
        if seq.len() == 2 * k {
            let left: i64 = seq[..k].iter().sum();
            let right: i64 = seq[k..].iter().sum();
            if left == right {
                *count += 1;
            }
            return;
        }
        for i in 0..v.len() {
            if !used[i] {
                used[i] = true;
                seq.push(v[i]);
                walk(v, used, seq, k, count);
                seq.pop();
                used[i] = false;
            }
        }
    }
    let v = set.elements();
    if v.len() < 2 * k {
        return 0;
    }
    let mut count = 0;
    walk(v, &mut vec![false; v.len()], &mut Vec::new(), k, &mut count);
    count
}

/// Whether the bits of `mask` (as elements `1..`) can be split into two
/// halves of equal size and equal sum.
fn balanced(mask: u32) -> bool {
    let elems: Vec<i64> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b as i64 + 1)
        .collect();
    let total: i64 = elems.iter().sum();
    let half = elems.len() / 2;
    if total % 2 != 0 {
        return false;
    }
    (0u32..1 << elems.len()).any(|side| {
        side.count_ones() as usize == half
            && elems
                .iter()
                .enumerate()
                .filter(|(i, _)| side >> i & 1 == 1)
                .map(|(_, v)| v)
                .sum::<i64>()
                * 2
                == total
    })
}

/// Largest weak `B_k` subset of `[m]` for each `m = 1..=n`, over all
/// `2^n` subsets. A subset qualifies when it contains no `2k`-set that
/// splits into equal-size, equal-sum halves. `n <= 24`.
pub fn max_bstar_by_subsets(n: usize, k: usize) -> Vec<usize> {
    assert!(n <= 24, "oracle is exponential in n");
    // violating 2k-sets, grouped by their largest element
    let mut bad: Vec<Vec<u32>> = vec![Vec::new(); n];
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == 2 * k && balanced(mask) {
            bad[31 - mask.leading_zeros() as usize].push(mask);
        }
    }
    let mut good = vec![false; 1 << n];
    let mut best = vec![0usize; n + 1];
    good[0] = true;
    for mask in 1u32..1 << n {
        let top = 31 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        if !good[rest as usize] {
            continue;
        }
        if bad[top].iter().any(|&b| b & !mask == 0) {
            continue;
        }
        good[mask as usize] = true;
        let size = mask.count_ones() as usize;
        if size > best[top + 1] {
            best[top + 1] = size;
        }
    }
    for m in 1..=n {
        best[m] = best[m].max(best[m - 1]);
    }
    best[1..].to_vec()
}

/// Largest subset of `[n]` accepted by `pred`, over all `2^n` subsets.
pub fn max_subset_by_predicate<P: FnMut(&IntegerSet) -> bool>(n: usize, mut pred: P) -> usize {
    assert!(n <= 24, "oracle is exponential in n");
    let mut best = 0;
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let set =
            IntegerSet::from_values((0..n).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1));
        if pred(&set) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_count_the_example() {
        // 1 + 4 = 2 + 3 in 2! * 2! * 2 ordered ways
        assert_eq!(
            s_star_by_tuples(&IntegerSet::from_values([1, 2, 3, 4]), 2),
            8
        );
        assert_eq!(
            s_star_by_tuples(&IntegerSet::from_values([1, 2, 4, 8]), 2),
            0
        );
    }

    #[test]
    fn subset_oracle_small() {
        assert_eq!(max_bstar_by_subsets(4, 2), vec![1, 2, 3, 3]);
        assert_eq!(max_bstar_by_subsets(5, 3), vec![1, 2, 3, 4, 5]);
    }
}
