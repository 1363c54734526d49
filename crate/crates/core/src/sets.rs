//! Canonical integer sets and the `B_k` / weak `B_k` membership predicates.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{binomial_saturating, Limits};
use crate::subsets::SumIndex;

/// Largest supported element magnitude. Keeps every k-fold sum inside `i64`.
pub const MAX_MAGNITUDE: i64 = 1 << 48;

/// A finite set of integers stored as a strictly increasing sequence.
///
/// With an ambient bound `N` the set lives in `[N] = {1, ..., N}`.
///
/// Serializes as a sorted JSON array; the ambient bound is not serialized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    elements: Vec<i64>,
    ambient: Option<u64>,
}

impl Serialize for IntegerSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(d)?;
        IntegerSet::new(&values, None)
            .map(|(s, _)| s)
            .map_err(serde::de::Error::custom)
    }
}

impl IntegerSet {
    /// Normalizes `values` (sort + dedup) and validates them against
    /// `ambient`. The flag is true when duplicates were dropped.
    pub fn new(values: &[i64], ambient: Option<u64>) -> Result<(Self, bool)> {
        if ambient == Some(0) {
            return Err(Error::InvalidParameter(
                "ambient bound must be positive".into(),
            ));
        }
        for &v in values {
            if v.unsigned_abs() > MAX_MAGNITUDE as u64 {
                return Err(Error::ValueTooLarge(v));
            }
            if let Some(bound) = ambient {
                if v < 0 {
                    return Err(Error::NegativeElement(v));
                }
                if v == 0 || v as u64 > bound {
                    return Err(Error::OutOfAmbient { value: v, bound });
                }
            }
        }
        let mut elements = values.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let dropped = elements.len() != values.len();
        Ok((IntegerSet { elements, ambient }, dropped))
    }

    /// Builds a set from values known to be valid; panics otherwise.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let v: Vec<i64> = values.into_iter().collect();
        IntegerSet::new(&v, None).expect("valid set").0
    }

    /// `{1, ..., n}` inside the ambient interval `[n]`.
    pub fn interval(n: u64) -> Self {
        IntegerSet {
            elements: (1..=n as i64).collect(),
            ambient: Some(n.max(1)),
        }
    }

    pub fn empty() -> Self {
        IntegerSet {
            elements: Vec::new(),
            ambient: None,
        }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn ambient(&self) -> Option<u64> {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.elements.binary_search(&value).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elements.iter().copied()
    }

    /// Attaches an ambient bound after validating membership.
    pub fn with_ambient(self, ambient: u64) -> Result<Self> {
        Ok(IntegerSet::new(&self.elements, Some(ambient))?.0)
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Elements of `self` not in `other`. Keeps the ambient bound.
    pub fn difference(&self, other: &IntegerSet) -> IntegerSet {
        IntegerSet {
            elements: self.iter().filter(|&v| !other.contains(v)).collect(),
            ambient: self.ambient,
        }
    }

    pub fn union(&self, other: &IntegerSet) -> IntegerSet {
        let mut elements: Vec<i64> = self.iter().chain(other.iter()).collect();
        elements.sort_unstable();
        elements.dedup();
        IntegerSet {
            elements,
            ambient: None,
        }
    }

    /// Keeps the elements whose positions are set in `mask`.
    pub fn select(&self, mask: u64) -> IntegerSet {
        IntegerSet {
            elements: self
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .collect(),
            ambient: self.ambient,
        }
    }

    /// Applies `a -> scale * a + shift`. Drops the ambient bound.
    pub fn affine(&self, scale: i64, shift: i64) -> Result<IntegerSet> {
        if scale == 0 {
            return Err(Error::InvalidParameter(
                "affine scale must be non-zero".into(),
            ));
        }
        let values: Vec<i64> = self.iter().map(|v| scale * v + shift).collect();
        Ok(IntegerSet::new(&values, None)?.0)
    }

    /// Parses a set file: either a JSON array of integers, or integers
    /// separated by whitespace or commas, with `#` comments.
    pub fn parse(text: &str, ambient: Option<u64>) -> Result<(Self, bool)> {
        let trimmed = text.trim_start();
        let values: Vec<i64> = if trimmed.starts_with('[') {
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            let mut out = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let content = line.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    continue;
                }
                for token in content.split(|c: char| c.is_whitespace() || c == ',') {
                    if token.is_empty() {
                        continue;
                    }
                    let v = token.parse::<i64>().map_err(|e| {
                        Error::Parse(format!("line {}: {:?}: {e}", lineno + 1, token))
                    })?;
                    out.push(v);
                }
            }
            out
        };
        IntegerSet::new(&values, ambient)
    }

    pub fn read(path: &Path, ambient: Option<u64>) -> Result<(Self, bool)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text, ambient)
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `make_set`: normalize `values` into an [`IntegerSet`].
pub fn make_set(values: &[i64], ambient: Option<u64>) -> Result<(IntegerSet, bool)> {
    IntegerSet::new(values, ambient)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    BKViolation,
    BStarKViolation,
}

/// A solution of `x_1 + ... + x_k = y_1 + ... + y_k` witnessing that a set
/// fails one of the predicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub k: usize,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub kind: ViolationKind,
}

impl ViolationWitness {
    /// Checks the witness invariants independently of how it was found.
    pub fn is_valid(&self) -> bool {
        if self.left.len() != self.k || self.right.len() != self.k {
            return false;
        }
        if self.left.iter().sum::<i64>() != self.right.iter().sum::<i64>() {
            return false;
        }
        match self.kind {
            ViolationKind::BKViolation => {
                let mut l = self.left.clone();
                let mut r = self.right.clone();
                l.sort_unstable();
                r.sort_unstable();
                l != r
            }
            ViolationKind::BStarKViolation => {
                let mut all: Vec<i64> = self.left.iter().chain(&self.right).copied().collect();
                all.sort_unstable();
                all.windows(2).all(|w| w[0] != w[1])
            }
        }
    }

    /// True when every entry of the witness lies in `set`.
    pub fn lies_in(&self, set: &IntegerSet) -> bool {
        self.left
            .iter()
            .chain(&self.right)
            .all(|&v| set.contains(v))
    }
}

/// Answer of a membership predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub holds: bool,
    pub witness: Option<ViolationWitness>,
}

fn values_at(set: &IntegerSet, pos: &[u16]) -> Vec<i64> {
    pos.iter().map(|&p| set.elements[p as usize]).collect()
}

/// Weak `B_k` test: true iff `A` has no solution in `2k` pairwise distinct
/// elements.
///
/// Such a solution is the same thing as two disjoint `k`-subsets with equal
/// sums; the witness is the lexicographically first pair of positions.
pub fn is_b_star_k(set: &IntegerSet, k: usize, limits: &Limits) -> Result<Membership> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if set.len() < 2 * k {
        return Ok(Membership {
            holds: true,
            witness: None,
        });
    }
    limits.check(
        "k-subsets for the weak B_k test",
        binomial_saturating(set.len(), k),
    )?;
    let index = SumIndex::subsets(set.elements(), k)?;
    Ok(match index.first_disjoint_pair() {
        Some((x, y)) => Membership {
            holds: false,
            witness: Some(ViolationWitness {
                k,
                left: values_at(set, &x),
                right: values_at(set, &y),
                kind: ViolationKind::BStarKViolation,
            }),
        },
        None => Membership {
            holds: true,
            witness: None,
        },
    })
}

/// `B_k` test: true iff equal `k`-fold sums force the two sides to be
/// permutations of each other.
///
/// When a solution in distinct elements exists it is reported first, since
/// it is the strongest kind of violation; otherwise the witness is the
/// lexicographically first pair of distinct multisets with equal sums.
pub fn is_b_k(set: &IntegerSet, k: usize, limits: &Limits) -> Result<Membership> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k == 1 {
        return Ok(Membership {
            holds: true,
            witness: None,
        });
    }
    let star = is_b_star_k(set, k, limits)?;
    if let Some(mut w) = star.witness {
        w.kind = ViolationKind::BKViolation;
        return Ok(Membership {
            holds: false,
            witness: Some(w),
        });
    }
    let n = set.len();
    limits.check(
        "k-multisets for the B_k test",
        binomial_saturating(n + k - 1, k),
    )?;
    let index = SumIndex::multisets(set.elements(), k)?;
    Ok(match index.first_equal_pair() {
        Some((x, y)) => Membership {
            holds: false,
            witness: Some(ViolationWitness {
                k,
                left: values_at(set, &x),
                right: values_at(set, &y),
                kind: ViolationKind::BKViolation,
            }),
        },
        None => Membership {
            holds: true,
            witness: None,
        },
    })
}
