use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The named matrix parameters of the hypergeometric families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParamName {
    A,
    APrime,
    B,
    BPrime,
    C,
    CPrime,
}

impl ParamName {
    pub const ALL: [ParamName; 6] = [
        ParamName::A,
        ParamName::APrime,
        ParamName::B,
        ParamName::BPrime,
        ParamName::C,
        ParamName::CPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::A => "A",
            ParamName::APrime => "A'",
            ParamName::B => "B",
            ParamName::BPrime => "B'",
            ParamName::C => "C",
            ParamName::CPrime => "C'",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let normalized = s.trim().replace('′', "'");
        ParamName::ALL
            .into_iter()
            .find(|p| p.as_str() == normalized)
            .ok_or_else(|| Error::Invalid(format!("unknown parameter name `{s}`")))
    }
}
