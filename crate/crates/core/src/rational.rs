//! Exact rationals and their string form `"p/q"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`; whitespace around the number is ignored.
pub fn parse(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    Rat::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn floor_i64(r: &Rat) -> Result<i64> {
    i64::try_from(r.floor().to_integer()).map_err(|_| Error::Overflow("floor"))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `(e - 1) / e` for some positive integer `e`; returns that `e`.
pub fn standard_index(r: &Rat) -> Option<u64> {
    if r.is_negative() || *r >= Rat::one() {
        return None;
    }
    // 1 - r = 1/e
    let rest = Rat::one() - r;
    if !rest.numer().is_one() {
        return None;
    }
    u64::try_from(rest.denom().clone()).ok()
}

/// Formats a vector as `(a,b,c)`.
pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn fmt_int_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Serde adapter storing a rational as its `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatString(pub Rat);

impl Serialize for RatString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RatString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map(RatString).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse(" -3 ").unwrap(), int(-3));
        assert_eq!(parse("4/8").unwrap(), ratio(1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("0.5").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn standard_coefficients() {
        assert_eq!(standard_index(&int(0)), Some(1));
        assert_eq!(standard_index(&ratio(1, 2)), Some(2));
        assert_eq!(standard_index(&ratio(5, 6)), Some(6));
        assert_eq!(standard_index(&ratio(1, 3)), None);
        assert_eq!(standard_index(&int(1)), None);
        assert_eq!(standard_index(&ratio(-1, 2)), None);
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-7/3", "12"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }
}
