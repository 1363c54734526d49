//! Closed-form upper and lower bounds for the largest weak `B_k` subset of
//! `{1, ..., N}`, tabulated with certified rounding.
//!
//! Every bound has the shape `c * N^(1/k)` with `c` an algebraic constant,
//! so each is stored as an exact `d`-th root of a rational and rounded in
//! the direction that keeps it a valid bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{decimal_ceil, decimal_floor, Surd};
use crate::limits::Limits;
use crate::moments::sigma_k;
use crate::report::{CheckReport, Exact};
use crate::sets::{is_b_star_k, IntegerSet};

/// Direction in which a bound is rounded for display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    Up,
    Down,
}

/// A real bound `radicand^(1/degree)` with its rounding direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub surd: Surd,
    pub rounding: Rounding,
    pub digits: u32,
}

impl BoundValue {
    fn new(radicand: BigUint, degree: usize, rounding: Rounding, digits: u32) -> Self {
        BoundValue {
            surd: Surd::new(
                BigRational::from_integer(BigInt::from(radicand)),
                degree as u32,
            ),
            rounding,
            digits,
        }
    }

    fn new_ratio(
        num: BigUint,
        den: BigUint,
        degree: usize,
        rounding: Rounding,
        digits: u32,
    ) -> Self {
        BoundValue {
            surd: Surd::new(
                BigRational::new(BigInt::from(num), BigInt::from(den)),
                degree as u32,
            ),
            rounding,
            digits,
        }
    }

    /// The value rounded to `digits` decimals in the certified direction.
    pub fn rounded(&self) -> BigRational {
        match self.rounding {
            Rounding::Up => self.surd.round_up(self.digits),
            Rounding::Down => self.surd.round_down(self.digits),
        }
    }

    pub fn decimal(&self) -> String {
        let v = self.rounded();
        match self.rounding {
            Rounding::Up => decimal_ceil(&v, self.digits),
            Rounding::Down => decimal_floor(&v, self.digits),
        }
    }

    pub fn floor(&self) -> BigUint {
        self.surd.floor()
    }

    pub fn ceil(&self) -> BigUint {
        self.surd.ceil()
    }

    /// Exact `m <= value`.
    pub fn admits(&self, m: usize) -> bool {
        self.surd.cmp_integer(&BigUint::from(m)) != std::cmp::Ordering::Less
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BoundValue", 4)?;
        st.serialize_field("value", &self.decimal())?;
        st.serialize_field("rounding", &self.rounding)?;
        st.serialize_field("floor", &self.floor().to_string())?;
        st.serialize_field("exact", &self.surd.to_string())?;
        st.end()
    }
}

/// The four bounds at one `(N, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: usize,
    /// `16 k^(3/2) N^(1/k)`.
    pub main_bound: BoundValue,
    /// `k^(2 - 1/k) N^(1/k)`.
    pub ruzsa_bound: BoundValue,
    /// `(k^2 / 4) N^(1/k)`.
    pub timmons_upper: BoundValue,
    /// `2^(1 - 1/k) N^(1/k)`, a lower bound: rounded down.
    pub timmons_lower: BoundValue,
    /// `N >= (2 k^(9/2))^k`.
    pub hypothesis_met: bool,
}

fn big(v: impl Into<BigUint>) -> BigUint {
    v.into()
}

/// `N^2 >= 4^k k^(9k)`, the squared form of `N >= (2 k^(9/2))^k`.
pub fn main_hypothesis(n: u64, k: usize) -> bool {
    let k32 = k as u32;
    big(n).pow(2u32) >= big(4u32).pow(k32) * big(k).pow(9 * k32)
}

impl BoundRow {
    pub fn new(n: u64, k: usize, digits: u32) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter("N and k must be positive".into()));
        }
        let k32 = k as u32;
        let nn = big(n);
        let kk = big(k);
        // (16 k^(3/2) N^(1/k))^(2k) = 16^(2k) k^(3k) N^2
        let main = big(16u32).pow(2 * k32) * kk.clone().pow(3 * k32) * nn.clone().pow(2u32);
        // (k^(2-1/k) N^(1/k))^k = k^(2k-1) N
        let ruzsa = kk.clone().pow(2 * k32 - 1) * nn.clone();
        // ((k^2/4) N^(1/k))^k = k^(2k) N / 4^k
        let t_up_num = kk.pow(2 * k32) * nn.clone();
        let t_up_den = big(4u32).pow(k32);
        // (2^(1-1/k) N^(1/k))^k = 2^(k-1) N
        let t_low = big(2u32).pow(k32 - 1) * nn;
        Ok(BoundRow {
            n,
            k,
            main_bound: BoundValue::new(main, 2 * k, Rounding::Up, digits),
            ruzsa_bound: BoundValue::new(ruzsa, k, Rounding::Up, digits),
            timmons_upper: BoundValue::new_ratio(t_up_num, t_up_den, k, Rounding::Up, digits),
            timmons_lower: BoundValue::new(t_low, k, Rounding::Down, digits),
            hypothesis_met: main_hypothesis(n, k),
        })
    }

    /// CSV cells in the order of [`CSV_HEADER`], without search columns.
    pub fn csv_cells(&self) -> [String; 5] {
        [
            self.main_bound.decimal(),
            self.ruzsa_bound.decimal(),
            self.timmons_upper.decimal(),
            self.timmons_lower.decimal(),
            self.hypothesis_met.to_string(),
        ]
    }
}

pub const CSV_HEADER: &str =
    "N,k,best_size,exact,main_bound,ruzsa_bound,timmons_upper,timmons_lower,hypothesis_met";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub precision: u32,
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    /// Rows with empty search columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},,,{}\n", r.n, r.k, r.csv_cells().join(",")));
        }
        out
    }
}

/// All four bounds for every `(N, k)` pair, `N` varying fastest within `k`.
pub fn bound_table(n_values: &[u64], k_values: &[usize], digits: u32) -> Result<BoundTable> {
    let mut rows = Vec::with_capacity(n_values.len() * k_values.len());
    for &k in k_values {
        for &n in n_values {
            rows.push(BoundRow::new(n, k, digits)?);
        }
    }
    Ok(BoundTable {
        precision: digits,
        rows,
    })
}

/// Checks the moment bound `M_k <= 2k 8^k k^(3k/2) |A|^k` for a weak `B_k`
/// set (compared after squaring, exactly), the step
/// `|A|^(2k) <= |kA| M_k`, and, given `N` with `A ⊆ [N]`, the size bound
/// `|A| <= 16 k^(3/2) N^(1/k)`.
///
/// The moment bound is asserted when `|A| >= 20 k^6`, the size bound when
/// `N >= (2 k^(9/2))^k`; otherwise they are reported only.
pub fn verify_theorem_chain(
    set: &IntegerSet,
    k: usize,
    ambient: Option<u64>,
    limits: &Limits,
) -> Result<CheckReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let membership = is_b_star_k(set, k, limits)?;
    if !membership.holds {
        return Err(Error::HypothesisViolated(format!(
            "set is not a weak B_{k} set"
        )));
    }
    if let Some(n) = ambient {
        if set.iter().any(|v| v < 1 || v as u64 > n) {
            return Err(Error::OutOfAmbient {
                value: set.iter().find(|&v| v < 1 || v as u64 > n).unwrap_or(0),
                bound: n,
            });
        }
    }
    let k32 = k as u32;
    let size = set.len();
    let mut r = CheckReport::new("theorem_chain");
    let large = big(size) >= big(20u32) * big(k).pow(6u32);
    r.hypothesis_met = large;

    let sigma = sigma_k(set, k)?;
    let mk = sigma.sum_of_squares();
    let support = sigma.support_len();
    // (2k 8^k k^(3k/2) |A|^k)^2 = 4k^2 64^k k^(3k) |A|^(2k)
    let bound_sq = big(4u32)
        * big(k).pow(2u32)
        * big(64u32).pow(k32)
        * big(k).pow(3 * k32)
        * big(size).pow(2 * k32);
    let bound = Surd::new(BigRational::from_integer(BigInt::from(bound_sq.clone())), 2);
    r.quantity("|A|", Exact::int(size))
        .quantity("k", Exact::int(k))
        .quantity("M_k", mk.clone())
        .quantity("moment_bound_rounded_up", Exact(bound.round_up(6)))
        .quantity("|kA|", Exact::int(support));
    r.le(
        "M_k^2 <= (2k 8^k k^(3k/2) |A|^k)^2",
        mk.clone().pow(2u32),
        bound_sq,
        large,
    );
    r.le(
        "|A|^2k <= |kA| M_k",
        big(size).pow(2 * k32),
        big(support) * mk,
        true,
    );
    if let Some(n) = ambient {
        let row = BoundRow::new(n, k, 6)?;
        r.quantity("N", Exact::int(n))
            .quantity("main_bound_rounded_up", Exact(row.main_bound.rounded()));
        let lhs = big(size).pow(2 * k32);
        let rhs = big(16u32).pow(2 * k32) * big(k).pow(3 * k32) * big(n).pow(2u32);
        r.le(
            "|A|^2k <= (16 k^(3/2) N^(1/k))^2k",
            lhs,
            rhs,
            row.hypothesis_met,
        );
        if !row.hypothesis_met {
            r.note("N below (2k^(9/2))^k: size bound reported only");
        }
    }
    if !large {
        r.note("|A| below 20k^6: moment bound reported only");
    }
    Ok(r)
}

impl From<&BoundValue> for Exact {
    fn from(b: &BoundValue) -> Self {
        Exact(b.rounded())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn main_bound_at_1024() {
        let row = BoundRow::new(1024, 2, 6).unwrap();
        // 16 * 2^(3/2) * 32 = 1024 sqrt 2 = 1448.1546878...
        assert_eq!(row.main_bound.ceil(), big(1449u32));
        assert_eq!(row.main_bound.floor(), big(1448u32));
        assert_eq!(row.main_bound.decimal(), "1448.154688");
        assert!(!row.hypothesis_met);
        assert!(!main_hypothesis(2047, 2));
        assert!(main_hypothesis(2048, 2));
    }

    #[test]
    fn k1_rows_are_linear() {
        let row = BoundRow::new(37, 1, 3).unwrap();
        assert_eq!(row.main_bound.decimal(), "592.000");
        assert_eq!(row.ruzsa_bound.decimal(), "37.000");
        assert_eq!(row.timmons_upper.decimal(), "9.250");
        assert_eq!(row.timmons_lower.decimal(), "37.000");
        assert!(row.hypothesis_met);
    }

    #[test]
    fn rounding_directions() {
        let row = BoundRow::new(10, 2, 3).unwrap();
        // sqrt(2 * 10) = 4.4721..., 2^(3/2) sqrt(10) = 8.9442..., sqrt(80) = 8.9442...
        assert_eq!(row.timmons_lower.decimal(), "4.472");
        assert_eq!(row.ruzsa_bound.decimal(), "8.945");
        assert_eq!(row.timmons_upper.decimal(), "3.163");
        assert!(row.ruzsa_bound.admits(8));
        assert!(!row.ruzsa_bound.admits(9));
    }

    #[test]
    fn table_and_csv() {
        let t = bound_table(&[1024], &[2], 2).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert!(csv.contains("1024,2,,,1448.16,"));
        assert!(csv.trim_end().ends_with(",false"));
        assert!(bound_table(&[0], &[2], 2).is_err());
    }

    #[test]
    fn chain_examples() {
        let lim = Limits::default();
        let a = IntegerSet::interval(20);
        let r = verify_theorem_chain(&a, 1, Some(20), &lim).unwrap();
        assert!(r.hypothesis_met && r.passed());
        assert_eq!(r.get("M_k"), Some(&Exact::int(20)));
        assert_eq!(r.get("moment_bound_rounded_up"), Some(&Exact::int(320)));

        let a = IntegerSet::from_values([1, 2, 3, 5]);
        let r = verify_theorem_chain(&a, 2, None, &lim).unwrap();
        assert!(!r.hypothesis_met);
        assert!(
            r.inequality("M_k^2 <= (2k 8^k k^(3k/2) |A|^k)^2")
                .unwrap()
                .holds
        );
        assert!(r.passed());

        let a = IntegerSet::from_values([1, 2, 3, 4]);
        assert!(matches!(
            verify_theorem_chain(&a, 2, None, &lim),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
