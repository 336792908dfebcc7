//! Exact rationals and their text form `p/q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Integers print bare, everything else as `p/q` in lowest terms.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        i64::try_from(r.numer()).ok()
    } else {
        None
    }
}

pub mod serde_rational {
    use super::{format, parse, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rational_vec {
    use super::{format, parse, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for r in [ratio(1, 4), int(-3), ratio(-7, 3), int(0)] {
            assert_eq!(parse(&format(&r)), Some(r));
        }
        assert_eq!(format(&ratio(2, 4)), "1/2");
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }
}
