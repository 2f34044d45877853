//! Certified rational values: exact, lower bounds, or infinite.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Value of `ν̄`, `δ` or a slope together with its certificate kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NuValue {
    Exact(BigRational),
    /// A certified lower bound; the true value may be larger.
    AtLeast(BigRational),
    Infinite,
}

impl NuValue {
    pub fn exact(n: i64, d: i64) -> NuValue {
        NuValue::Exact(BigRational::new(n.into(), d.into()))
    }

    pub fn at_least(n: i64, d: i64) -> NuValue {
        NuValue::AtLeast(BigRational::new(n.into(), d.into()))
    }

    pub fn from_int(n: u64) -> NuValue {
        NuValue::Exact(BigRational::from_integer(n.into()))
    }

    pub fn at_least_int(n: u64) -> NuValue {
        NuValue::AtLeast(BigRational::from_integer(n.into()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NuValue::Exact(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, NuValue::Infinite)
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            NuValue::Exact(q) => Some(q),
            _ => None,
        }
    }

    /// The rational carried by `Exact` and `AtLeast`.
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            NuValue::Exact(q) | NuValue::AtLeast(q) => Some(q),
            NuValue::Infinite => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            NuValue::Exact(_) => "exact",
            NuValue::AtLeast(_) => "at_least",
            NuValue::Infinite => "infinite",
        }
    }

    /// Minimum of two certified values. `min(Exact a, AtLeast b)` is exact
    /// only when `a <= b`.
    pub fn min(&self, other: &NuValue) -> NuValue {
        use NuValue::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x.clone(),
            (Exact(a), Exact(b)) => Exact(a.min(b).clone()),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b).clone()),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a <= b {
                    Exact(a.clone())
                } else {
                    AtLeast(b.clone())
                }
            }
        }
    }

    /// Divides the carried value by a positive integer.
    pub fn div_int(&self, k: u64) -> NuValue {
        assert!(k > 0, "division by zero");
        let k = BigRational::from_integer(k.into());
        match self {
            NuValue::Exact(a) => NuValue::Exact(a / &k),
            NuValue::AtLeast(a) => NuValue::AtLeast(a / &k),
            NuValue::Infinite => NuValue::Infinite,
        }
    }

    pub fn mul_int(&self, k: u64) -> NuValue {
        let k = BigRational::from_integer(k.into());
        match self {
            NuValue::Exact(a) => NuValue::Exact(a * &k),
            NuValue::AtLeast(a) => NuValue::AtLeast(a * &k),
            NuValue::Infinite => NuValue::Infinite,
        }
    }

    /// Whether this value could be `other`'s true value or below it, i.e.
    /// the two certificates are consistent with `self <= other`.
    pub fn may_be_le(&self, other: &NuValue) -> bool {
        match (self, other) {
            (_, NuValue::Infinite) | (_, NuValue::AtLeast(_)) => true,
            (NuValue::Infinite, _) => false,
            (NuValue::Exact(a) | NuValue::AtLeast(a), NuValue::Exact(b)) => a <= b,
        }
    }

    /// Whether an exact value lies in `(1/m!)·ℕ`.
    pub fn in_lattice(&self, m: u32) -> bool {
        match self {
            NuValue::Exact(q) => {
                let fact: BigInt = (1..=m as u64).map(BigInt::from).product();
                !q.is_negative() && fact.is_multiple_of(q.denom())
            }
            _ => true,
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |q: &BigRational| {
            if q.denom().is_one() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        };
        match self {
            NuValue::Exact(q) => write!(f, "{}", show(q)),
            NuValue::AtLeast(q) => write!(f, ">= {}", show(q)),
            NuValue::Infinite => write!(f, "infinity"),
        }
    }
}

/// An integer on the wire: a JSON number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(n: &BigInt) -> Self {
        match i64::try_from(n) {
            Ok(k) => WireInt::Small(k),
            Err(_) => WireInt::Big(n.to_string()),
        }
    }
}

impl WireInt {
    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            WireInt::Small(k) => Some(BigInt::from(*k)),
            WireInt::Big(s) => s.parse().ok(),
        }
    }
}

/// An exact rational on the wire, `{num, den}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: WireInt,
    pub den: WireInt,
}

impl From<&BigRational> for Fraction {
    fn from(q: &BigRational) -> Self {
        Fraction { num: q.numer().into(), den: q.denom().into() }
    }
}

impl Fraction {
    pub fn to_rational(&self) -> Option<BigRational> {
        let den = self.den.to_bigint()?;
        (!den.is_zero()).then(|| BigRational::new(self.num.to_bigint().unwrap_or_default(), den))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num: Option<WireInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<WireInt>,
}

impl Serialize for NuValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (num, den) = match self.value() {
            Some(q) => (Some(q.numer().into()), Some(q.denom().into())),
            None => (None, None),
        };
        Wire { kind: self.kind().into(), num, den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NuValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let rat = || -> Result<BigRational, D::Error> {
            match (w.num.clone(), w.den.clone()) {
                (Some(num), Some(den)) => Fraction { num, den }
                    .to_rational()
                    .ok_or_else(|| D::Error::custom("bad fraction")),
                _ => Err(D::Error::custom("missing num/den")),
            }
        };
        match w.kind.as_str() {
            "exact" => Ok(NuValue::Exact(rat()?)),
            "at_least" => Ok(NuValue::AtLeast(rat()?)),
            "infinite" => Ok(NuValue::Infinite),
            other => Err(D::Error::custom(format!("unknown kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_rules() {
        let e2 = NuValue::exact(2, 1);
        assert_eq!(e2.min(&NuValue::Infinite), e2);
        assert_eq!(e2.min(&NuValue::at_least(3, 1)), e2);
        assert_eq!(e2.min(&NuValue::at_least(1, 1)), NuValue::at_least(1, 1));
        assert_eq!(NuValue::exact(5, 2).min(&e2), e2);
        assert_eq!(NuValue::Infinite.min(&NuValue::Infinite), NuValue::Infinite);
    }

    #[test]
    fn lattice_and_scaling() {
        assert!(NuValue::exact(7, 3).in_lattice(4));
        assert!(!NuValue::exact(7, 5).in_lattice(4));
        assert_eq!(NuValue::exact(4, 1).div_int(2), NuValue::exact(2, 1));
        assert_eq!(NuValue::exact(5, 2).to_string(), "5/2");
        assert_eq!(NuValue::at_least(16, 1).to_string(), ">= 16");
    }
}
