//! Uniform set families with restricted pairwise intersections, the
//! Deza–Erdős–Frankl product bound, and the family of solution sets that
//! links distinct-element solutions to such systems.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{binomial_saturating, Limits};
use crate::moments::{factorial, s_star_k_bipartite};
use crate::report::{CheckReport, Exact};
use crate::sets::IntegerSet;
use crate::structure::good_exponent_set;
use crate::subsets::{for_each_combination, SumIndex};

/// A family of distinct `member_size`-subsets of a labeled ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    ground: Vec<i64>,
    member_size: usize,
    members: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct FamilyFile {
    ground: Vec<i64>,
    members: Vec<Vec<i64>>,
    #[serde(default)]
    member_size: Option<usize>,
}

impl SetFamily {
    pub fn new(ground: &[i64], member_size: usize, members: Vec<Vec<i64>>) -> Result<Self> {
        let mut g = ground.to_vec();
        g.sort_unstable();
        g.dedup();
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(members.len());
        for mut m in members {
            m.sort_unstable();
            m.dedup();
            if m.len() != member_size {
                return Err(Error::InvalidParameter(format!(
                    "member {m:?} does not have {member_size} distinct elements"
                )));
            }
            if let Some(v) = m.iter().find(|v| g.binary_search(v).is_err()) {
                return Err(Error::InvalidParameter(format!(
                    "element {v} not in ground set"
                )));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::InvalidParameter(format!("duplicate member {m:?}")));
            }
            out.push(m);
        }
        Ok(SetFamily {
            ground: g,
            member_size,
            members: out,
        })
    }

    /// All `k`-subsets of `{1, ..., n}`.
    pub fn all_subsets(n: usize, k: usize) -> Self {
        let mut members = Vec::new();
        for_each_combination(n, k, |c| {
            members.push(c.iter().map(|&i| i as i64 + 1).collect());
            true
        });
        SetFamily {
            ground: (1..=n as i64).collect(),
            member_size: k,
            members,
        }
    }

    /// Parses `{"ground": [...], "members": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let size = f
            .member_size
            .or_else(|| f.members.first().map(Vec::len))
            .unwrap_or(0);
        SetFamily::new(&f.ground, size, f.members)
    }

    pub fn ground(&self) -> &[i64] {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn member_size(&self) -> usize {
        self.member_size
    }

    pub fn members(&self) -> &[Vec<i64>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn intersection_size(a: &[i64], b: &[i64]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    pub member_size: usize,
    /// Intersection sizes over all unordered pairs of members.
    pub observed: BTreeSet<usize>,
    pub declared: Option<BTreeSet<usize>>,
}

impl IntersectionProfile {
    pub fn with_declared(mut self, declared: BTreeSet<usize>) -> Self {
        self.declared = Some(declared);
        self
    }

    /// Whether the family is an `L`-system for the declared `L`.
    pub fn is_l_system(&self) -> Option<bool> {
        self.declared
            .as_ref()
            .map(|l| self.observed.is_subset(l) && l.iter().all(|&x| x <= self.member_size))
    }
}

pub fn intersection_profile(family: &SetFamily) -> IntersectionProfile {
    let mut observed = BTreeSet::new();
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            observed.insert(intersection_size(&m[i], &m[j]));
        }
    }
    IntersectionProfile {
        member_size: family.member_size,
        observed,
        declared: None,
    }
}

/// `prod_{l in L} (n - l) / (k - l)` as an exact rational.
pub fn def_bound(n: usize, k: usize, allowed: &BTreeSet<usize>) -> Result<Exact> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "member size {k} exceeds ground size {n}"
        )));
    }
    if let Some(&l) = allowed.iter().find(|&&l| l >= k) {
        return Err(Error::InvalidParameter(format!(
            "intersection size {l} must be below the member size {k}"
        )));
    }
    let mut acc = BigRational::one();
    for &l in allowed {
        acc *= BigRational::new(BigInt::from(n - l), BigInt::from(k - l));
    }
    Ok(Exact(acc))
}

/// Ground-set size from which the product bound is proved for `k`-uniform
/// systems: `2^k k^3`.
pub fn def_threshold(k: usize) -> BigUint {
    BigUint::from(2u32).pow(k as u32) * BigUint::from(k).pow(3u32)
}

/// Checks that `family` is an `(n, k, L)`-system and compares its size with
/// the product bound. The bound is asserted when the system property holds
/// and `n >= 2^k k^3`; below that it is reported only.
pub fn check_def_bound(family: &SetFamily, allowed: &BTreeSet<usize>) -> Result<CheckReport> {
    let n = family.ground_size();
    let k = family.member_size();
    let profile = intersection_profile(family).with_declared(allowed.clone());
    let is_system = profile.is_l_system().unwrap_or(false);
    let large = BigUint::from(n) >= def_threshold(k);
    let mut r = CheckReport::new("def_bound");
    r.hypothesis_met = large;
    r.quantity("n", Exact::int(n))
        .quantity("k", Exact::int(k))
        .quantity("|family|", Exact::int(family.len()));
    r.property("family is an (n,k,L)-system", is_system, true);
    if k <= n && allowed.iter().all(|&l| l < k) {
        let bound = def_bound(n, k, allowed)?;
        r.quantity("bound", bound.clone());
        let holds = r.le(
            "|family| <= prod (n-l)/(k-l)",
            Exact::int(family.len()),
            bound,
            is_system && large,
        );
        if !holds && !large {
            r.note(format!(
                "bound exceeded below the ground-size threshold 2^k k^3 = {}",
                def_threshold(k)
            ));
        }
    } else {
        r.note("L contains a value >= k or k > n; product bound undefined");
    }
    Ok(r)
}

/// All `2l`-sets `Z = {x_1..x_l, y_1..y_l}` with the `x_i` distinct in
/// `B'`, the `y_i` distinct in `B \ B'`, and `sum x = sum y`. The ground set
/// is `B` itself.
pub fn solution_family(
    b: &IntegerSet,
    b_prime: &IntegerSet,
    l: usize,
    limits: &Limits,
) -> Result<SetFamily> {
    if l < 2 {
        return Err(Error::InvalidParameter(
            "solution family needs l >= 2".into(),
        ));
    }
    if !b_prime.is_subset_of(b) {
        return Err(Error::InvalidParameter("B' must be a subset of B".into()));
    }
    let rest = b.difference(b_prime);
    limits.check(
        "l-subsets for the solution family",
        binomial_saturating(b_prime.len(), l).saturating_add(binomial_saturating(rest.len(), l)),
    )?;
    let right = SumIndex::subsets(rest.elements(), l)?;
    let lv = b_prime.elements();
    let mut members = Vec::new();
    for_each_combination(lv.len(), l, |x| {
        let sum: i64 = x.iter().map(|&i| lv[i]).sum();
        for &(_, id) in right.with_sum(sum) {
            let mut z: Vec<i64> = x.iter().map(|&i| lv[i]).collect();
            z.extend(
                right
                    .positions(id)
                    .iter()
                    .map(|&p| rest.elements()[p as usize]),
            );
            z.sort_unstable();
            members.push(z);
        }
        true
    });
    members.sort();
    SetFamily::new(b.elements(), 2 * l, members)
}

/// Whether `z` splits into `l` elements of `b_prime` and `l` others with
/// equal sums.
pub fn has_bipartite_split(z: &[i64], b_prime: &IntegerSet, l: usize) -> bool {
    let left: i64 = z.iter().filter(|v| b_prime.contains(**v)).sum();
    let count = z.iter().filter(|v| b_prime.contains(**v)).count();
    let total: i64 = z.iter().sum();
    z.len() == 2 * l && count == l && 2 * left == total
}

/// `L = { 2l - x : x in X }`, clipped to `[0, 2l]`.
pub fn intersection_sizes_from_bad(bad: &BTreeSet<usize>, l: usize) -> BTreeSet<usize> {
    bad.iter()
        .filter(|&&x| x <= 2 * l)
        .map(|&x| 2 * l - x)
        .collect()
}

/// Checks that the solution family of `(B, B')` at order `l` is a
/// `(|B|, 2l, 2l - X)`-system and the cardinality chain
/// `|A_l| <= prod (|B| - l_i)/(2l - l_i) <= |B|^r / r! <= |B|^l / l!`
/// with `r = |X ∩ [2l]|`.
///
/// The intersection argument needs `2l <= k`; `bad` must be `X(B)` for
/// exponents up to `k`, which is re-derived and compared.
pub fn check_al_is_l_system(
    b: &IntegerSet,
    b_prime: &IntegerSet,
    l: usize,
    bad: &BTreeSet<usize>,
    k: usize,
    limits: &Limits,
) -> Result<CheckReport> {
    let family = solution_family(b, b_prime, l, limits)?;
    let n = b.len();
    let allowed = intersection_sizes_from_bad(bad, l);
    let r_count = bad.iter().filter(|&&x| x <= 2 * l).count();
    let in_range = 2 * l <= k;
    let mut r = CheckReport::new("al_is_l_system");
    r.hypothesis_met = in_range;
    r.quantity("|B|", Exact::int(n))
        .quantity("l", Exact::int(l))
        .quantity("r", Exact::int(r_count))
        .quantity("|A_l|", Exact::int(family.len()));

    let (_, actual_bad) = good_exponent_set(b, k, limits)?;
    r.property("X = X(B)", &actual_bad == bad, true);

    let profile = intersection_profile(&family).with_declared(allowed.clone());
    r.property(
        "pairwise intersections lie in 2l - X",
        profile.is_l_system().unwrap_or(false),
        in_range,
    );
    if allowed.is_empty() {
        r.note("L is empty: the product bound is the empty product 1");
    }

    let star = s_star_k_bipartite(b_prime, &b.difference(b_prime), l, limits)?;
    let lf = factorial(l);
    r.equal(
        "S*_l(B', B \\ B') = (l!)^2 |A_l|",
        star,
        lf.pow(2u32) * BigUint::from(family.len()),
    );
    r.property(
        "every member splits across (B', B \\ B')",
        family
            .members()
            .iter()
            .all(|z| has_bipartite_split(z, b_prime, l)),
        true,
    );

    let size = Exact::int(family.len());
    if 2 * l <= n {
        let bound = def_bound(n, 2 * l, &allowed)?;
        r.quantity("def_bound", bound.clone());
        let large = BigUint::from(n) >= def_threshold(2 * l);
        r.le(
            "|A_l| <= prod (|B|-l_i)/(2l-l_i)",
            size.clone(),
            bound.clone(),
            in_range && large,
        );
        r.le(
            "prod (|B|-l_i)/(2l-l_i) <= |B|^r / r!",
            bound,
            power_over_factorial(n, r_count),
            true,
        );
    }
    r.le(
        "|A_l| <= |B|^r / r!",
        size,
        power_over_factorial(n, r_count),
        in_range,
    );
    r.le("r <= l", Exact::int(r_count), Exact::int(l), in_range);
    r.le(
        "|B|^r / r! <= |B|^l / l!",
        power_over_factorial(n, r_count),
        power_over_factorial(n, l),
        in_range && n >= l,
    );
    Ok(r)
}

fn power_over_factorial(n: usize, r: usize) -> Exact {
    Exact(BigRational::new(
        BigInt::from(BigUint::from(n).pow(r as u32)),
        BigInt::from(factorial(r)),
    ))
}
