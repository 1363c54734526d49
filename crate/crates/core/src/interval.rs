//! Certified real arithmetic for the few irrational quantities that appear:
//! real `d`-th roots of non-negative rationals.
//!
//! A root is enclosed in an interval with rational endpoints computed from
//! exact integer `d`-th roots, so every comparison made here is a proof,
//! never a floating point guess.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// `Some(true)` if every point of `self` is `<=` every point of `other`,
    /// `Some(false)` if every point is `>`, `None` if the intervals overlap.
    pub fn certainly_le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }
}

fn ten_pow(digits: u32) -> BigUint {
    BigUint::from(10u32).pow(digits)
}

/// The real number `radicand^(1/degree)` for a non-negative rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    radicand: BigRational,
    degree: u32,
}

impl Surd {
    pub fn new(radicand: BigRational, degree: u32) -> Self {
        assert!(degree >= 1, "root degree must be positive");
        assert!(!radicand.is_negative(), "radicand must be non-negative");
        Surd { radicand, degree }
    }

    pub fn integer_root(radicand: BigUint, degree: u32) -> Self {
        Surd::new(BigRational::from_integer(BigInt::from(radicand)), degree)
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `floor(self * 10^digits)` exactly.
    fn scaled_floor(&self, digits: u32) -> BigUint {
        let scale = ten_pow(digits).pow(self.degree);
        let num = self.radicand.numer().magnitude() * scale;
        let den = self.radicand.denom().magnitude();
        (num / den).nth_root(self.degree)
    }

    /// Whether `self * 10^digits` is exactly an integer.
    fn scaled_is_exact(&self, digits: u32, floor: &BigUint) -> bool {
        let lhs = BigRational::from_integer(BigInt::from(floor.pow(self.degree)));
        let scale = BigRational::from_integer(BigInt::from(ten_pow(digits).pow(self.degree)));
        lhs == &self.radicand * scale
    }

    /// Enclosure of width at most `10^-digits`.
    pub fn enclose(&self, digits: u32) -> Interval {
        let floor = self.scaled_floor(digits);
        let den = BigInt::from(ten_pow(digits));
        let lo = BigRational::new(BigInt::from(floor.clone()), den.clone());
        if self.scaled_is_exact(digits, &floor) {
            Interval::point(lo)
        } else {
            let hi = BigRational::new(BigInt::from(floor + 1u32), den);
            Interval { lo, hi }
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigUint {
        self.scaled_floor(0)
    }

    /// Exact ceiling.
    pub fn ceil(&self) -> BigUint {
        let f = self.floor();
        if self.scaled_is_exact(0, &f) {
            f
        } else {
            f + 1u32
        }
    }

    /// Exact comparison with a non-negative integer.
    pub fn cmp_integer(&self, m: &BigUint) -> Ordering {
        let lhs = BigRational::from_integer(BigInt::from(m.pow(self.degree)));
        self.radicand.cmp(&lhs)
    }

    /// Rounded down to `digits` decimals.
    pub fn round_down(&self, digits: u32) -> BigRational {
        self.enclose(digits).lo
    }

    /// Rounded up to `digits` decimals.
    pub fn round_up(&self, digits: u32) -> BigRational {
        self.enclose(digits).hi
    }

    /// Approximate value for display only.
    pub fn approx_f64(&self) -> f64 {
        let e = self.enclose(12);
        e.lo.to_f64().unwrap_or(f64::NAN)
    }
}

/// Decimal rendering of a rational with `digits` fractional digits,
/// truncated toward negative infinity.
pub fn decimal_floor(v: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(ten_pow(digits));
    let scaled = (v.numer() * &scale).div_floor(v.denom());
    render_scaled(&scaled, digits)
}

/// Same as [`decimal_floor`] but rounded toward positive infinity.
pub fn decimal_ceil(v: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(ten_pow(digits));
    let scaled = (v.numer() * &scale).div_ceil(v.denom());
    render_scaled(&scaled, digits)
}

fn render_scaled(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let mag = scaled.magnitude().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        mag
    } else if mag.len() <= d {
        format!("0.{}{}", "0".repeat(d - mag.len()), mag)
    } else {
        format!("{}.{}", &mag[..mag.len() - d], &mag[mag.len() - d..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certified {
    Holds,
    Fails,
    Undecided,
}

/// Decides `x^(1/d) <= y^(1/d) + z^(1/d)` for non-negative integers by
/// enclosing the roots at escalating precision, up to `max_digits`.
pub fn certify_root_le_sum(
    x: &BigUint,
    y: &BigUint,
    z: &BigUint,
    d: u32,
    max_digits: u32,
) -> (Certified, u32) {
    // a zero summand reduces to an exact integer comparison
    if y.is_zero() || z.is_zero() {
        let other = if y.is_zero() { z } else { y };
        let verdict = if x <= other {
            Certified::Holds
        } else {
            Certified::Fails
        };
        return (verdict, 0);
    }
    let (sx, sy, sz) = (
        Surd::integer_root(x.clone(), d),
        Surd::integer_root(y.clone(), d),
        Surd::integer_root(z.clone(), d),
    );
    let mut digits = 8;
    loop {
        let lhs = sx.enclose(digits);
        let rhs = sy.enclose(digits).add(&sz.enclose(digits));
        match lhs.certainly_le(&rhs) {
            Some(true) => return (Certified::Holds, digits),
            Some(false) => return (Certified::Fails, digits),
            None if digits >= max_digits => return (Certified::Undecided, digits),
            None => digits = (digits * 2).min(max_digits),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^(1/{})", self.radicand, self.degree)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_enclosure() {
        let s = Surd::new(rat(2, 1), 2);
        let e = s.enclose(6);
        assert_eq!(e.lo, rat(1_414_213, 1_000_000));
        assert_eq!(e.hi, rat(1_414_214, 1_000_000));
        assert_eq!(s.floor(), BigUint::from(1u32));
        assert_eq!(s.ceil(), BigUint::from(2u32));
    }

    #[test]
    fn perfect_powers_are_exact() {
        let s = Surd::new(rat(27, 8), 3);
        assert_eq!(s.enclose(4), Interval::point(rat(3, 2)));
        assert_eq!(s.floor(), BigUint::from(1u32));
        assert_eq!(s.ceil(), BigUint::from(2u32));
        assert_eq!(
            Surd::new(rat(1024, 1), 2).cmp_integer(&BigUint::from(32u32)),
            Ordering::Equal
        );
    }

    #[test]
    fn decimal_rendering_rounds_outward() {
        let v = rat(-1, 3);
        assert_eq!(decimal_floor(&v, 3), "-0.334");
        assert_eq!(decimal_ceil(&v, 3), "-0.333");
        assert_eq!(decimal_ceil(&rat(7, 2), 0), "4");
        assert_eq!(decimal_floor(&rat(1, 200), 2), "0.00");
    }

    #[test]
    fn root_sum_certification() {
        let b = |v: u32| BigUint::from(v);
        // sqrt(8) <= sqrt(2) + sqrt(2) holds with equality, never certified
        // strictly, so it must come back undecided or holds at the cap
        let (c, _) = certify_root_le_sum(&b(8), &b(2), &b(2), 2, 64);
        assert_ne!(c, Certified::Fails);
        assert_eq!(
            certify_root_le_sum(&b(9), &b(4), &b(1), 2, 64).0,
            Certified::Holds
        );
        assert_eq!(
            certify_root_le_sum(&b(10), &b(4), &b(1), 2, 64).0,
            Certified::Fails
        );
        assert_eq!(
            certify_root_le_sum(&b(5), &b(5), &b(0), 4, 64).0,
            Certified::Holds
        );
        assert_eq!(
            certify_root_le_sum(&b(7), &b(2), &b(3), 2, 64).0,
            Certified::Holds
        );
    }
}
