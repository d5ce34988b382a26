//! The five update rules and their exact parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A threshold fraction 0 < α < 1, kept as a reduced rational p/q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha(Ratio<u64>);

impl Alpha {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p == 0 || p >= q {
            return Err(Error::params(format!("alpha {p}/{q} must satisfy 0 < alpha < 1")));
        }
        Ok(Alpha(Ratio::new(p, q)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        Ratio::new(self.numer() as i64, self.denom() as i64)
    }

    /// q·count ≥ p·degree, i.e. count ≥ α·degree without rounding.
    #[inline]
    pub fn reached(&self, count: usize, degree: usize) -> bool {
        self.denom() as u128 * count as u128 >= self.numer() as u128 * degree as u128
    }

    /// Smallest integer count with `reached(count, degree)`: ⌈p·degree/q⌉.
    pub fn min_count(&self, degree: usize) -> usize {
        let num = self.numer() as u128 * degree as u128;
        num.div_ceil(self.denom() as u128) as usize
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// Accepts `p/q` only; decimals are rejected to keep comparisons exact.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once('/').ok_or_else(|| Error::params(format!("alpha {s:?} must be written as p/q")))?;
        let parse =
            |x: &str| x.trim().parse::<u64>().map_err(|_| Error::params(format!("alpha {s:?} must be written as p/q")));
        Alpha::new(parse(p)?, parse(q)?)
    }
}

impl Serialize for Alpha {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelSpec {
    /// Black iff at least `r` black neighbors.
    RThreshold { r: u32 },
    /// As `RThreshold`, but black nodes stay black.
    RMonotone { r: u32 },
    /// Black iff at least an α fraction of neighbors are black.
    AlphaThreshold { alpha: Alpha },
    /// As `AlphaThreshold`, but black nodes stay black.
    AlphaMonotone { alpha: Alpha },
    /// Adopt the strict neighborhood majority; keep the own color on ties.
    Majority,
}

impl ModelSpec {
    pub fn r_threshold(r: u32) -> Result<Self> {
        Self::check_r(r).map(|r| ModelSpec::RThreshold { r })
    }

    pub fn r_monotone(r: u32) -> Result<Self> {
        Self::check_r(r).map(|r| ModelSpec::RMonotone { r })
    }

    pub fn alpha_threshold(p: u64, q: u64) -> Result<Self> {
        Ok(ModelSpec::AlphaThreshold { alpha: Alpha::new(p, q)? })
    }

    pub fn alpha_monotone(p: u64, q: u64) -> Result<Self> {
        Ok(ModelSpec::AlphaMonotone { alpha: Alpha::new(p, q)? })
    }

    fn check_r(r: u32) -> Result<u32> {
        if r == 0 {
            Err(Error::params("r must be at least 1"))
        } else {
            Ok(r)
        }
    }

    /// The integer threshold r, for the two r-models.
    pub fn threshold(&self) -> Option<u32> {
        match *self {
            ModelSpec::RThreshold { r } | ModelSpec::RMonotone { r } => Some(r),
            _ => None,
        }
    }

    pub fn alpha(&self) -> Option<Alpha> {
        match *self {
            ModelSpec::AlphaThreshold { alpha } | ModelSpec::AlphaMonotone { alpha } => Some(alpha),
            _ => None,
        }
    }

    /// Whether black nodes never turn white.
    pub fn is_monotone(&self) -> bool {
        matches!(self, ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. })
    }

    /// The non-monotone counterpart of a monotone model, and vice versa.
    pub fn counterpart(&self) -> Option<ModelSpec> {
        match *self {
            ModelSpec::RThreshold { r } => Some(ModelSpec::RMonotone { r }),
            ModelSpec::RMonotone { r } => Some(ModelSpec::RThreshold { r }),
            ModelSpec::AlphaThreshold { alpha } => Some(ModelSpec::AlphaMonotone { alpha }),
            ModelSpec::AlphaMonotone { alpha } => Some(ModelSpec::AlphaThreshold { alpha }),
            ModelSpec::Majority => None,
        }
    }

    /// The color of a node with `black` black neighbors out of `degree`,
    /// given its own color `own`.
    #[inline]
    pub fn next_color(&self, own: bool, black: usize, degree: usize) -> bool {
        match *self {
            ModelSpec::RThreshold { r } => black >= r as usize,
            ModelSpec::RMonotone { r } => own || black >= r as usize,
            ModelSpec::AlphaThreshold { alpha } => alpha.reached(black, degree),
            ModelSpec::AlphaMonotone { alpha } => own || alpha.reached(black, degree),
            ModelSpec::Majority => {
                let white = degree - black;
                match black.cmp(&white) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => own,
                }
            }
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::RThreshold { r } => write!(f, "rthresh:r={r}"),
            ModelSpec::RMonotone { r } => write!(f, "rmono:r={r}"),
            ModelSpec::AlphaThreshold { alpha } => write!(f, "athresh:a={alpha}"),
            ModelSpec::AlphaMonotone { alpha } => write!(f, "amono:a={alpha}"),
            ModelSpec::Majority => f.write_str("majority"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    /// Grammar: `rthresh:r=2` | `rmono:r=2` | `athresh:a=1/2` | `amono:a=2/3` | `majority`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "majority" {
            return Ok(ModelSpec::Majority);
        }
        let bad = || Error::params(format!("unrecognised model spec {s:?}"));
        let (kind, param) = s.split_once(':').ok_or_else(bad)?;
        let (key, value) = param.split_once('=').ok_or_else(bad)?;
        match (kind, key) {
            ("rthresh", "r") | ("rmono", "r") => {
                let r: u32 = value.parse().map_err(|_| bad())?;
                if kind == "rthresh" {
                    ModelSpec::r_threshold(r)
                } else {
                    ModelSpec::r_monotone(r)
                }
            }
            ("athresh", "a") => Ok(ModelSpec::AlphaThreshold { alpha: value.parse()? }),
            ("amono", "a") => Ok(ModelSpec::AlphaMonotone { alpha: value.parse()? }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_is_reduced_and_bounded() {
        let a = Alpha::new(2, 4).unwrap();
        assert_eq!((a.numer(), a.denom()), (1, 2));
        assert!(Alpha::new(1, 1).is_err());
        assert!(Alpha::new(0, 3).is_err());
        assert!("0.5".parse::<Alpha>().is_err());
    }

    #[test]
    fn alpha_comparison_is_closed_and_exact() {
        let half = Alpha::new(1, 2).unwrap();
        assert!(half.reached(2, 4));
        assert!(!half.reached(1, 4));
        let third = Alpha::new(1, 3).unwrap();
        assert!(third.reached(1, 3));
        assert_eq!(third.min_count(3), 1);
        assert_eq!(third.min_count(4), 2);
        assert_eq!(Alpha::new(2, 3).unwrap().min_count(3), 2);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["rthresh:r=2", "rmono:r=3", "athresh:a=1/2", "amono:a=2/3", "majority"] {
            let m: ModelSpec = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("rthresh:r=0".parse::<ModelSpec>().is_err());
        assert!("athresh:a=0.5".parse::<ModelSpec>().is_err());
        assert!("bogus".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn majority_keeps_color_on_tie() {
        let m = ModelSpec::Majority;
        assert!(m.next_color(true, 2, 4));
        assert!(!m.next_color(false, 2, 4));
        assert!(m.next_color(false, 3, 4));
        assert!(!m.next_color(true, 1, 4));
    }
}
