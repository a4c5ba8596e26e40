use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Coefficient field for homology and Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// `GF(p)`; `p` is prime and below `2^31`.
    Prime(u32),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u32) -> Result<Self, ParseError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ParseError::Field(format!("gfp:{p}")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::GF2
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u64| d * d <= p as u64).all(|d| !(p as u64).is_multiple_of(d))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(2) => write!(f, "gf2"),
            FieldSpec::Prime(p) => write!(f, "gfp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gf2" => Ok(FieldSpec::GF2),
            "q" | "qq" | "rationals" => Ok(FieldSpec::Rationals),
            other => {
                let p = other
                    .strip_prefix("gfp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| ParseError::Field(s.into()))?;
                FieldSpec::prime(p).map_err(|_| ParseError::Field(s.into()))
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
