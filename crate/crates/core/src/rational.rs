//! Exact rational helpers and the `p/q` text encoding used in documents.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// A rational that serializes as the string `"p/q"` with `q > 0`, always
/// written with an explicit denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Rational);

impl Exact {
    pub fn from_int(n: i64) -> Self {
        Exact(int(n))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl From<Rational> for Exact {
    fn from(q: Rational) -> Self {
        Exact(q)
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Self {
        Exact(int(n))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed exact rational {0:?}: expected \"p/q\" with q > 0")]
pub struct ParseExactError(String);

impl FromStr for Exact {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseExactError(s.to_string());
        let (p, q) = s.split_once('/').ok_or_else(err)?;
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if !q.is_positive() {
            return Err(err());
        }
        // Only reduced fractions are canonical; anything else would not
        // survive a write/read round trip byte-for-byte.
        if !p.gcd(&q).is_one() {
            return Err(err());
        }
        Ok(Exact(BigRational::new(p, q)))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_always_writes_denominator() {
        assert_eq!(Exact::from_int(5).to_string(), "5/1");
        assert_eq!(Exact(ratio(-22, 4)).to_string(), "-11/2");
        assert_eq!(Exact::from_int(0).to_string(), "0/1");
    }

    #[test]
    fn exact_parse_rejects_floats_and_unreduced() {
        assert!("2.5".parse::<Exact>().is_err());
        assert!("5".parse::<Exact>().is_err());
        assert!("4/2".parse::<Exact>().is_err());
        assert!("1/-2".parse::<Exact>().is_err());
        assert_eq!("-7/3".parse::<Exact>().unwrap(), Exact(ratio(-7, 3)));
        assert_eq!("0/1".parse::<Exact>().unwrap(), Exact::from_int(0));
    }

    #[test]
    fn to_i64_only_for_integers() {
        assert_eq!(to_i64(&int(-12)), Some(-12));
        assert_eq!(to_i64(&ratio(1, 2)), None);
    }
}
