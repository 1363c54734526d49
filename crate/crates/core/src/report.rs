//! Report objects shared by every check.
//!
//! Exact values serialize as decimal strings (`"123"` or `"7/2"`) so that
//! no precision is lost in JSON.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// An exact rational quantity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn int<T: Into<BigInt>>(v: T) -> Self {
        Exact(BigRational::from_integer(v.into()))
    }

    pub fn ratio<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> Self {
        Exact(BigRational::new(n.into(), d.into()))
    }

    pub fn from_uint(v: &BigUint) -> Self {
        Exact(BigRational::from_integer(BigInt::from(v.clone())))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<BigUint> for Exact {
    fn from(v: BigUint) -> Self {
        Exact::from_uint(&v)
    }
}

impl From<u128> for Exact {
    fn from(v: u128) -> Self {
        Exact::int(v)
    }
}

/// One `lhs <= rhs` comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: Exact,
    pub rhs: Exact,
    pub holds: bool,
    /// False when the inequality is informational only (its hypothesis is
    /// not met), in which case `holds == false` is not a failure.
    pub asserted: bool,
}

/// A named boolean property that is not an inequality between numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Property {
    pub name: String,
    pub holds: bool,
    pub asserted: bool,
}

/// Result of a check: the quantities involved, whether the hypothesis of
/// the underlying statement is met, and each verified relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub quantities: BTreeMap<String, Exact>,
    pub hypothesis_met: bool,
    pub inequalities: Vec<Inequality>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<Property>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            quantities: BTreeMap::new(),
            hypothesis_met: true,
            inequalities: Vec::new(),
            properties: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn quantity(&mut self, name: &str, value: impl Into<Exact>) -> &mut Self {
        self.quantities.insert(name.to_string(), value.into());
        self
    }

    /// Records `lhs <= rhs`.
    pub fn le(
        &mut self,
        name: &str,
        lhs: impl Into<Exact>,
        rhs: impl Into<Exact>,
        asserted: bool,
    ) -> bool {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = lhs <= rhs;
        self.inequalities.push(Inequality {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
            asserted,
        });
        holds
    }

    /// Records `lhs == rhs` as a pair of inequalities-in-one, named `name`.
    pub fn equal(&mut self, name: &str, lhs: impl Into<Exact>, rhs: impl Into<Exact>) -> bool {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = lhs == rhs;
        self.properties.push(Property {
            name: format!("{name} ({lhs} == {rhs})"),
            holds,
            asserted: true,
        });
        holds
    }

    pub fn property(&mut self, name: &str, holds: bool, asserted: bool) -> bool {
        self.properties.push(Property {
            name: name.to_string(),
            holds,
            asserted,
        });
        holds
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn get(&self, name: &str) -> Option<&Exact> {
        self.quantities.get(name)
    }

    pub fn inequality(&self, name: &str) -> Option<&Inequality> {
        self.inequalities.iter().find(|i| i.name == name)
    }

    /// True when every asserted relation holds.
    pub fn passed(&self) -> bool {
        self.inequalities.iter().all(|i| i.holds || !i.asserted)
            && self.properties.iter().all(|p| p.holds || !p.asserted)
    }

    /// Names of asserted relations that fail.
    pub fn failures(&self) -> Vec<String> {
        self.inequalities
            .iter()
            .filter(|i| i.asserted && !i.holds)
            .map(|i| i.name.clone())
            .chain(
                self.properties
                    .iter()
                    .filter(|p| p.asserted && !p.holds)
                    .map(|p| p.name.clone()),
            )
            .collect()
    }
}

/// Serde helper: `BigUint` as a decimal string.
pub fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
