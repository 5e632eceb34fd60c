use core::fmt;
use core::str::FromStr;

/// A natural number or infinity. Heights, types and localisation parameters
/// all live here.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => n.fmt(f),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("expected a decimal integer or `inf`")]
pub struct ParseExtNatError;

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtNat::Infinite);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseExtNatError);
        }
        s.parse().map(ExtNat::Finite).map_err(|_| ParseExtNatError)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_top() {
        let x = ExtNat::Finite(u64::MAX);
        assert!(x < ExtNat::Infinite);
        assert_eq!(x.min(ExtNat::Infinite), x);
        assert_eq!(x.max(ExtNat::Infinite), ExtNat::Infinite);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("inf".parse::<ExtNat>(), Ok(ExtNat::Infinite));
        assert_eq!("17".parse::<ExtNat>(), Ok(ExtNat::Finite(17)));
        assert!("+3".parse::<ExtNat>().is_err());
        assert!("".parse::<ExtNat>().is_err());
        assert!("99999999999999999999999".parse::<ExtNat>().is_err());
        assert_eq!(ExtNat::Infinite.to_string(), "inf");
    }
}
