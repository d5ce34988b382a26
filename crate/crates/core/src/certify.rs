//! Decision procedures for dynamos, monotone dynamos, robust and eternal sets.
//!
//! Dynamo and eternal checks simulate only from B_0 = S. That is enough
//! because every rule is monotone in the configuration: a superset of S
//! can only end up with more black nodes.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::config::Configuration;
use crate::dynamics::{default_step_cap, summarize};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{Kernel, RunSummary};
use crate::model::ModelSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Dynamo,
    MonotoneDynamo,
    Robust,
    Eternal,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::Dynamo, Role::MonotoneDynamo, Role::Robust, Role::Eternal];

    pub fn name(self) -> &'static str {
        match self {
            Role::Dynamo => "dynamo",
            Role::MonotoneDynamo => "monotone-dynamo",
            Role::Robust => "robust",
            Role::Eternal => "eternal",
        }
    }

    /// Robust and eternal sets must be non-empty.
    pub fn needs_nonempty(self) -> bool {
        matches!(self, Role::Robust | Role::Eternal)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Role::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::params(format!("unknown role {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Summary of the trajectory from B_0 = S.
    Run {
        stabilization_time: usize,
        period: usize,
        cap_hit: bool,
        ends_all_black: bool,
        reached_all_white: bool,
        monotone: bool,
    },
    /// A member of S whose inside-degree fails the robustness test.
    Violation { node: usize, inside: usize, degree: usize },
    /// Every member of S passes the robustness test.
    AllMembersHold,
    /// Black nodes never change color in monotone models.
    MonotoneModel,
}

impl Evidence {
    fn from_run(s: &RunSummary) -> Evidence {
        Evidence::Run {
            stabilization_time: s.stabilization_time,
            period: s.period as usize,
            cap_hit: s.cap_hit,
            ends_all_black: s.ends_all_black,
            reached_all_white: s.reached_all_white,
            monotone: s.monotone,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            Evidence::Run { stabilization_time, period, cap_hit, ends_all_black, reached_all_white, monotone } => {
                json!({
                    "T": stabilization_time,
                    "p": period,
                    "cap_hit": cap_hit,
                    "all_black": ends_all_black,
                    "all_white": reached_all_white,
                    "monotone": monotone,
                })
            }
            Evidence::Violation { node, inside, degree } => json!({
                "violator": node,
                "inside": inside,
                "degree": degree,
            }),
            Evidence::AllMembersHold => json!({ "violator": null }),
            Evidence::MonotoneModel => json!({ "monotone_model": true }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub role: Role,
    pub witness_set: Vec<usize>,
    pub verdict: bool,
    pub evidence: Evidence,
}

impl Certificate {
    /// `{"role": str, "set": [int,...], "verdict": bool, "evidence": {...}}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "role": self.role.name(),
            "set": self.witness_set,
            "verdict": self.verdict,
            "evidence": self.evidence.to_json(),
        })
    }

    /// The violating node of a failed robustness check.
    pub fn violator(&self) -> Option<usize> {
        match self.evidence {
            Evidence::Violation { node, .. } => Some(node),
            _ => None,
        }
    }
}

/// Whether a member with `inside` of `degree` neighbors in S stays black
/// no matter what happens outside S.
fn member_holds(model: &ModelSpec, inside: usize, degree: usize) -> bool {
    match *model {
        ModelSpec::RThreshold { r } => inside >= r as usize,
        ModelSpec::AlphaThreshold { alpha } => alpha.reached(inside, degree),
        // A tie keeps the own color, so half the neighborhood suffices.
        ModelSpec::Majority => 2 * inside >= degree,
        ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. } => true,
    }
}

fn robust_evidence(g: &Graph, model: &ModelSpec, set: &Configuration) -> Evidence {
    if model.is_monotone() {
        return Evidence::MonotoneModel;
    }
    for v in set.black_nodes() {
        let inside = g.degree_into(v, set);
        if !member_holds(model, inside, g.degree(v)) {
            return Evidence::Violation { node: v, inside, degree: g.degree(v) };
        }
    }
    Evidence::AllMembersHold
}

fn run_verdict(role: Role, s: &RunSummary) -> bool {
    match role {
        Role::Dynamo => s.ends_all_black,
        Role::MonotoneDynamo => s.ends_all_black && s.monotone,
        Role::Eternal => !s.cap_hit && !s.reached_all_white,
        Role::Robust => unreachable!("robustness is structural"),
    }
}

/// Checks `role` for the set `nodes` after validating the graph.
pub fn certify(g: &Graph, model: &ModelSpec, role: Role, nodes: &[usize]) -> Result<Certificate> {
    g.validate(model)?;
    certify_unvalidated(g, model, role, nodes)
}

/// As [`certify`], without the connectivity and r ≤ δ checks.
pub fn certify_unvalidated(g: &Graph, model: &ModelSpec, role: Role, nodes: &[usize]) -> Result<Certificate> {
    if role.needs_nonempty() && nodes.is_empty() {
        return Err(Error::EmptySet);
    }
    let set = Configuration::from_nodes(g.node_count(), nodes)?;
    let (verdict, evidence) = if role == Role::Robust {
        let ev = robust_evidence(g, model, &set);
        (!matches!(ev, Evidence::Violation { .. }), ev)
    } else {
        let s = summarize(g, model, &set)?;
        (run_verdict(role, &s), Evidence::from_run(&s))
    };
    Ok(Certificate { role, witness_set: set.black_nodes(), verdict, evidence })
}

pub fn is_robust(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> Result<Certificate> {
    certify(g, model, Role::Robust, nodes)
}

pub fn is_dynamo(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> Result<Certificate> {
    certify(g, model, Role::Dynamo, nodes)
}

pub fn is_monotone_dynamo(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> Result<Certificate> {
    certify(g, model, Role::MonotoneDynamo, nodes)
}

pub fn is_eternal(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> Result<Certificate> {
    certify(g, model, Role::Eternal, nodes)
}

/// A reusable verdict function for the solver's inner loop (n ≤ 64).
pub(crate) struct Checker<'a> {
    model: ModelSpec,
    role: Role,
    kernel: Option<Kernel>,
    masks: Option<&'a [u64]>,
    cap: usize,
}

impl<'a> Checker<'a> {
    pub fn new(g: &'a Graph, model: &ModelSpec, role: Role) -> Self {
        Checker { model: *model, role, kernel: Kernel::new(g, model), masks: g.masks(), cap: default_step_cap(g) }
    }

    /// Verdict for the set given as a bitmask (n ≤ 64 only).
    pub fn holds_mask(&self, mask: u64) -> bool {
        if self.role.needs_nonempty() && mask == 0 {
            return false;
        }
        if self.role == Role::Robust {
            if self.model.is_monotone() {
                return true;
            }
            let masks = self.masks.expect("mask path needs n <= 64");
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let inside = (masks[v] & mask).count_ones() as usize;
                if !member_holds(&self.model, inside, masks[v].count_ones() as usize) {
                    return false;
                }
            }
            return true;
        }
        let kernel = self.kernel.as_ref().expect("mask path needs n <= 64");
        run_verdict(self.role, &kernel.run(mask, self.cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{complete, cycle, star};

    fn athresh(p: u64, q: u64) -> ModelSpec {
        ModelSpec::alpha_threshold(p, q).unwrap()
    }

    #[test]
    fn robust_examples() {
        let c7 = cycle(7).unwrap();
        assert!(is_robust(&c7, &ModelSpec::Majority, &[3, 4]).unwrap().verdict);
        let c5 = cycle(5).unwrap();
        let cert = is_robust(&c5, &athresh(3, 4), &[0, 1]).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.violator(), Some(0));
        assert!(is_robust(&c5, &ModelSpec::r_monotone(2).unwrap(), &[2]).unwrap().verdict);
        assert_eq!(is_robust(&c5, &ModelSpec::Majority, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn dynamo_examples() {
        let c5 = cycle(5).unwrap();
        assert!(is_dynamo(&c5, &athresh(1, 2), &[0]).unwrap().verdict);
        let k6 = complete(6).unwrap();
        let r2 = ModelSpec::r_threshold(2).unwrap();
        for (a, b) in [(0, 1), (2, 5), (3, 4)] {
            assert!(is_dynamo(&k6, &r2, &[a, b]).unwrap().verdict);
        }
        let c6 = cycle(6).unwrap();
        for mask in 0u64..63 {
            let nodes = Configuration::from_mask(6, mask).black_nodes();
            assert!(!is_dynamo(&c6, &r2, &nodes).unwrap().verdict);
        }
        assert!(is_dynamo(&c6, &r2, &[0, 1, 2, 3, 4, 5]).unwrap().verdict);
        assert!(!is_dynamo(&c6, &r2, &[]).unwrap().verdict);
    }

    #[test]
    fn monotone_dynamo_examples() {
        let k6 = complete(6).unwrap();
        let r2 = ModelSpec::r_threshold(2).unwrap();
        assert!(is_monotone_dynamo(&k6, &r2, &[0, 1, 2]).unwrap().verdict);
        assert!(!is_monotone_dynamo(&k6, &r2, &[0, 1]).unwrap().verdict);
        let c6 = cycle(6).unwrap();
        assert!(is_monotone_dynamo(&c6, &athresh(1, 2), &[0, 1]).unwrap().verdict);
    }

    #[test]
    fn eternal_examples() {
        let s = star(6).unwrap();
        for (p, q) in [(1, 3), (1, 2), (4, 5)] {
            assert!(is_eternal(&s, &athresh(p, q), &[0]).unwrap().verdict);
        }
        let c6 = cycle(6).unwrap();
        assert!(is_eternal(&c6, &ModelSpec::r_threshold(2).unwrap(), &[0, 2, 4]).unwrap().verdict);
        let k6 = complete(6).unwrap();
        assert!(!is_eternal(&k6, &ModelSpec::r_threshold(3).unwrap(), &[0, 1]).unwrap().verdict);
    }

    #[test]
    fn checker_matches_certify() {
        let g = cycle(7).unwrap();
        for model in [ModelSpec::r_threshold(1).unwrap(), athresh(1, 2), ModelSpec::Majority] {
            for role in Role::ALL {
                let checker = Checker::new(&g, &model, role);
                for mask in 1u64..128 {
                    let nodes = Configuration::from_mask(7, mask).black_nodes();
                    let cert = certify(&g, &model, role, &nodes).unwrap();
                    assert_eq!(checker.holds_mask(mask), cert.verdict, "{model} {role} {mask:b}");
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let c5 = cycle(5).unwrap();
        let cert = is_robust(&c5, &athresh(3, 4), &[1, 0]).unwrap();
        let v = cert.to_json();
        assert_eq!(v["role"], "robust");
        assert_eq!(v["set"], json!([0, 1]));
        assert_eq!(v["verdict"], false);
        assert_eq!(v["evidence"]["violator"], 0);
    }
}
