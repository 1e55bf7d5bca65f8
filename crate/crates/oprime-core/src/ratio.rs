//! Rational <-> string conversions for reports and file formats.
//!
//! Every external interface carries rationals as strings ("p/q" or a plain
//! integer string) — never floating point.

use num::BigRational;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::Rational;

pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn vec_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_string).collect()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse(s)).collect()
}

/// Serde adapter: serialize a `Rational` as its canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        parse_vec(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn round_trips() {
        for r in [rat(0), rat(-3), ratio(7, 2), ratio(-1, 6)] {
            assert_eq!(parse(&to_string(&r)).unwrap(), r);
        }
        assert_eq!(parse("3").unwrap(), rat(3));
        assert_eq!(parse("-4/6").unwrap(), ratio(-2, 3));
        assert!(parse("1.5").is_err());
    }
}
