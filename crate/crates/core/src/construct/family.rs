//! Named graph families addressed by `name` plus `key=value` parameters, as
//! used on the command line and in experiment sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{
    bipartite_double, circulant_regular, clique_with_leaves, complete, complete_bipartite, cycle, eternal_tightness,
    path_of_cliques, star, torus,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Alpha;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete,
    Cycle,
    Star,
    CompleteBipartite,
    Torus,
    CliquePath,
    CliqueLeaves,
    Double,
    EternalTight,
    Circulant,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Complete,
        Family::Cycle,
        Family::Star,
        Family::CompleteBipartite,
        Family::Torus,
        Family::CliquePath,
        Family::CliqueLeaves,
        Family::Double,
        Family::EternalTight,
        Family::Circulant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::CompleteBipartite => "kbipartite",
            Family::Torus => "torus",
            Family::CliquePath => "cliquepath",
            Family::CliqueLeaves => "cliqueleaves",
            Family::Double => "double",
            Family::EternalTight => "eternal-tight",
            Family::Circulant => "circulant",
        }
    }

    /// Parameter names, in the order they are documented.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Family::Complete | Family::Cycle | Family::Star => &["n"],
            Family::CompleteBipartite => &["a", "b"],
            Family::Torus => &["L", "d"],
            Family::CliquePath | Family::EternalTight => &["n", "r"],
            Family::CliqueLeaves => &["n", "a"],
            Family::Double => &["base", "n"],
            Family::Circulant => &["l", "r"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::params(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// A family together with its parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub params: BTreeMap<String, String>,
}

impl FamilyParams {
    pub fn new(family: Family) -> Self {
        FamilyParams { family, params: BTreeMap::new() }
    }

    /// Parses `k=v,k=v` (empty input gives no parameters).
    pub fn parse(family: Family, params: &str) -> Result<Self> {
        let mut out = FamilyParams::new(family);
        for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) =
                pair.split_once('=').ok_or_else(|| Error::params(format!("parameter {pair:?} is not key=value")))?;
            out.set(k.trim(), v.trim())?;
        }
        Ok(out)
    }

    /// Sets one parameter, rejecting keys the family does not take.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !self.family.keys().contains(&key) {
            return Err(Error::params(format!(
                "family {} takes parameters {:?}, not {key:?}",
                self.family,
                self.family.keys()
            )));
        }
        self.params.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::params(format!("family {} needs parameter {key}", self.family)))
    }

    fn int(&self, key: &str) -> Result<usize> {
        let v = self.raw(key)?;
        v.parse().map_err(|_| Error::params(format!("parameter {key}={v:?} is not a non-negative integer")))
    }

    pub fn build(&self) -> Result<Graph> {
        match self.family {
            Family::Complete => complete(self.int("n")?),
            Family::Cycle => cycle(self.int("n")?),
            Family::Star => star(self.int("n")?),
            Family::CompleteBipartite => complete_bipartite(self.int("a")?, self.int("b")?),
            Family::Torus => {
                let d = u32::try_from(self.int("d")?).map_err(|_| Error::params("d too large"))?;
                torus(self.int("L")?, d)
            }
            Family::CliquePath => path_of_cliques(self.int("n")?, self.int("r")?),
            Family::CliqueLeaves => {
                let alpha: Alpha = self.raw("a")?.parse()?;
                clique_with_leaves(self.int("n")?, alpha)
            }
            Family::Double => {
                let base: Family = self.get("base").unwrap_or("complete").parse()?;
                if base.keys() != ["n"] {
                    return Err(Error::params("double takes base=complete|cycle|star"));
                }
                let mut inner = FamilyParams::new(base);
                inner.set("n", self.raw("n")?)?;
                Ok(bipartite_double(&inner.build()?))
            }
            Family::EternalTight => Ok(eternal_tightness(self.int("n")?, self.int("r")?)?.graph),
            Family::Circulant => circulant_regular(self.int("l")?, self.int("r")?),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        let mut sep = ':';
        for key in self.family.keys() {
            if let Some(v) = self.params.get(*key) {
                write!(f, "{sep}{key}={v}")?;
                sep = ',';
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("hypercube".parse::<Family>().is_err());
    }

    #[test]
    fn builds_from_params() {
        let t = FamilyParams::parse(Family::Torus, "L=4,d=2").unwrap();
        assert_eq!(t.build().unwrap().node_count(), 16);
        assert_eq!(t.to_string(), "torus:L=4,d=2");
        let d = FamilyParams::parse(Family::Double, "base=cycle,n=5").unwrap();
        assert_eq!(d.build().unwrap().node_count(), 10);
        let c = FamilyParams::parse(Family::CliqueLeaves, "n=16,a=1/2").unwrap();
        assert_eq!(c.build().unwrap().edge_count(), 6 + 12);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(FamilyParams::parse(Family::Cycle, "m=4").is_err());
        assert!(FamilyParams::parse(Family::Cycle, "n").is_err());
        assert!(FamilyParams::parse(Family::Cycle, "n=x").unwrap().build().is_err());
        assert!(FamilyParams::new(Family::Cycle).build().is_err());
    }
}
