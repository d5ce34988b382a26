//! Lower and upper bounds on minimum set sizes and stabilization times, as
//! exact values with their integer rounding.
//!
//! Each entry carries a short provenance label. Entries marked `asymptotic`
//! hide an unknown constant and are never used as hard limits; entries
//! marked `open` are valid but not known to be tight.

use std::fmt;

use num_integer::Roots;
use num_rational::Ratio;
use serde_json::json;

use crate::certify::Role;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Alpha, ModelSpec};

pub type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn alpha_q(a: Alpha) -> Q {
    Q::new(a.numer() as i128, a.denom() as i128)
}

/// A bound value: an exact rational, or √radicand + offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(Q),
    SqrtPlus { radicand: Q, offset: Q },
}

impl BoundValue {
    /// Smallest integer ≥ the value.
    pub fn ceil(&self) -> i128 {
        match self {
            BoundValue::Exact(v) => v.ceil().to_integer(),
            BoundValue::SqrtPlus { radicand, offset } => {
                // k ≥ √R + o  ⇔  k - o ≥ 0 and (k - o)² ≥ R; monotone in k.
                let ok = |k: i128| {
                    let d = q(k) - offset;
                    d >= q(0) && d * d >= *radicand
                };
                let mut k = self.estimate() - 2;
                while ok(k) {
                    k -= 1;
                }
                while !ok(k) {
                    k += 1;
                }
                k
            }
        }
    }

    /// Largest integer ≤ the value.
    pub fn floor(&self) -> i128 {
        match self {
            BoundValue::Exact(v) => v.floor().to_integer(),
            BoundValue::SqrtPlus { radicand, offset } => {
                let ok = |k: i128| {
                    let d = q(k) - offset;
                    d < q(0) || d * d <= *radicand
                };
                let mut k = self.estimate() + 2;
                while !ok(k) {
                    k -= 1;
                }
                while ok(k + 1) {
                    k += 1;
                }
                k
            }
        }
    }

    fn estimate(&self) -> i128 {
        match self {
            BoundValue::Exact(v) => v.to_integer(),
            BoundValue::SqrtPlus { radicand, offset } => {
                let r = radicand.to_integer().max(0);
                r.sqrt() + offset.to_integer()
            }
        }
    }
}

fn fmt_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

impl fmt::Display for BoundValue {
    /// `p/q`, or `sqrt(p/q)+p/q` for the square-root forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => f.write_str(&fmt_q(v)),
            BoundValue::SqrtPlus { radicand, offset } => {
                let sign = if *offset < q(0) { "-" } else { "+" };
                write!(f, "sqrt({}){sign}{}", fmt_q(radicand), fmt_q(&(if *offset < q(0) { -offset } else { *offset })))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub value: BoundValue,
    /// Ceiling for lower bounds, floor for upper bounds (one less for a
    /// strict upper bound landing on an integer).
    pub int: i64,
    pub provenance: String,
    pub asymptotic: bool,
    pub open: bool,
    pub strict: bool,
}

impl BoundEntry {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value.to_string(),
            "int": self.int,
            "provenance": self.provenance,
            "asymptotic": self.asymptotic,
            "open": self.open,
            "strict": self.strict,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Dynamo,
    MonotoneDynamo,
    Robust,
    Eternal,
    Stabilization,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Dynamo => "dynamo",
            Target::MonotoneDynamo => "monotone-dynamo",
            Target::Robust => "robust",
            Target::Eternal => "eternal",
            Target::Stabilization => "stabilization",
        }
    }
}

impl From<Role> for Target {
    fn from(role: Role) -> Self {
        match role {
            Role::Dynamo => Target::Dynamo,
            Role::MonotoneDynamo => Target::MonotoneDynamo,
            Role::Robust => Target::Robust,
            Role::Eternal => Target::Eternal,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub target: Target,
    pub lower: Vec<BoundEntry>,
    pub upper: Vec<BoundEntry>,
    /// 1 for even n, 0 for odd n.
    pub parity_x: u8,
}

impl BoundReport {
    fn new(target: Target, n: usize) -> Self {
        BoundReport { target, lower: Vec::new(), upper: Vec::new(), parity_x: u8::from(n.is_multiple_of(2)) }
    }

    fn lower(mut self, value: BoundValue, provenance: &str) -> Self {
        let int = value.ceil() as i64;
        self.lower.push(BoundEntry {
            value,
            int,
            provenance: provenance.to_string(),
            asymptotic: false,
            open: false,
            strict: false,
        });
        self
    }

    fn upper(mut self, value: BoundValue, provenance: &str) -> Self {
        let int = value.floor() as i64;
        self.upper.push(BoundEntry {
            value,
            int,
            provenance: provenance.to_string(),
            asymptotic: false,
            open: false,
            strict: false,
        });
        self
    }

    fn exact_lower(self, v: Q, provenance: &str) -> Self {
        self.lower(BoundValue::Exact(v), provenance)
    }

    fn exact_upper(self, v: Q, provenance: &str) -> Self {
        self.upper(BoundValue::Exact(v), provenance)
    }

    fn mark_last_lower(mut self, f: impl FnOnce(&mut BoundEntry)) -> Self {
        f(self.lower.last_mut().expect("an entry was just pushed"));
        self
    }

    fn mark_last_upper(mut self, f: impl FnOnce(&mut BoundEntry)) -> Self {
        f(self.upper.last_mut().expect("an entry was just pushed"));
        self
    }

    /// The strongest non-asymptotic lower bound.
    pub fn best_lower(&self) -> Option<i64> {
        self.lower.iter().filter(|e| !e.asymptotic).map(|e| e.int).max()
    }

    /// The strongest non-asymptotic upper bound.
    pub fn best_upper(&self) -> Option<i64> {
        self.upper.iter().filter(|e| !e.asymptotic).map(|e| e.int).min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "target": self.target.name(),
            "lower": self.lower.iter().map(BoundEntry::to_json).collect::<Vec<_>>(),
            "upper": self.upper.iter().map(BoundEntry::to_json).collect::<Vec<_>>(),
            "best_lower": self.best_lower(),
            "best_upper": self.best_upper(),
            "parity_x": self.parity_x,
        })
    }
}

fn check_n(n: usize) -> Result<i128> {
    if n == 0 {
        return Err(Error::params("bounds need n >= 1"));
    }
    Ok(n as i128)
}

/// √(value) - 1 for a rational radicand.
fn sqrt_minus_one(radicand: Q) -> BoundValue {
    BoundValue::SqrtPlus { radicand, offset: q(-1) }
}

/// `_min_degree` is accepted for symmetry with the other graph-level bounds;
/// no dynamo bound here depends on it.
pub fn dynamo_bounds(n: usize, m: usize, _min_degree: usize, model: &ModelSpec) -> Result<BoundReport> {
    let nq = check_n(n)?;
    let mq = m as i128;
    let r = BoundReport::new(Target::Dynamo, n);
    Ok(match *model {
        ModelSpec::RMonotone { r: thr } => {
            let t = thr as i128;
            r.exact_lower(q(t), "trivial: r seeds")
                .exact_lower(q(nq) - Q::new(mq, t), "edge count: n - m/r")
                .exact_upper(Q::new(t * nq, t + 1), "Reichman: rn/(r+1)")
        }
        ModelSpec::RThreshold { r: 1 } => {
            r.exact_lower(q(1), "odd cycle: 1 seed").exact_upper(q(2), "bipartite: 2 seeds")
        }
        ModelSpec::RThreshold { r: thr } => {
            let t = thr as i128;
            r.exact_lower(q(t), "trivial: r seeds")
                .exact_lower(q(2) * (q(nq) - Q::new(mq, t)), "edge count: 2(n - m/r)")
                .exact_upper(q(nq), "trivial: all nodes")
        }
        ModelSpec::AlphaMonotone { alpha } => r
            .exact_lower(q(1), "trivial: one seed")
            .exact_upper(q(2) * alpha_q(alpha) * q(nq), "Garbe-Mycroft-McDowell: 2an"),
        ModelSpec::AlphaThreshold { alpha } => {
            let a = alpha_q(alpha);
            let r = if a > Q::new(3, 4) {
                r.lower(sqrt_minus_one(q(4) * a * a * q(nq)), "Berger: 2a*sqrt(n) - 1")
            } else if a > Q::new(1, 2) {
                r.exact_lower(q(1), "trivial: one seed; tight value unknown").mark_last_lower(|e| e.open = true)
            } else {
                r.exact_lower(q(1), "odd cycle: 1 seed")
            };
            r.exact_upper(q(nq), "trivial: all nodes")
        }
        ModelSpec::Majority => r
            .exact_lower(q(1), "Berger: constant-size dynamos exist")
            .exact_upper(q(nq), "trivial: all nodes; tight value unknown")
            .mark_last_upper(|e| e.open = true),
    })
}

pub fn monotone_dynamo_bounds(n: usize, m: usize, min_degree: usize, model: &ModelSpec) -> Result<BoundReport> {
    if model.is_monotone() {
        let mut r = dynamo_bounds(n, m, min_degree, model)?;
        r.target = Target::MonotoneDynamo;
        return Ok(r);
    }
    let nq = check_n(n)?;
    let r = BoundReport::new(Target::MonotoneDynamo, n);
    let two = q(2.min(nq));
    Ok(match *model {
        ModelSpec::RThreshold { r: 1 } => {
            r.exact_lower(two, "seeds need a black neighbor: 2").exact_upper(q(2), "two adjacent nodes")
        }
        ModelSpec::RThreshold { r: thr } => r
            .exact_lower(q(thr as i128 + 1), "seeds need r black neighbors: r+1")
            .exact_upper(q(nq), "trivial: all nodes"),
        ModelSpec::AlphaThreshold { alpha } => {
            let a = alpha_q(alpha);
            let mut r = r.exact_lower(two, "seeds need a black neighbor: 2");
            if a > Q::new(1, 2) {
                r = r.lower(sqrt_minus_one(a * q(nq) / (q(1) - a)), "boundary potential: sqrt(an/(1-a)) - 1");
            }
            r.exact_upper(q(nq), "trivial: all nodes")
        }
        ModelSpec::Majority => r
            .exact_lower(two, "seeds need a black neighbor: 2")
            .lower(sqrt_minus_one(q(nq)), "Peleg: sqrt(n) - 1")
            .exact_upper(q(nq), "trivial: all nodes"),
        ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. } => unreachable!(),
    })
}

pub fn robust_bounds(n: usize, model: &ModelSpec) -> Result<BoundReport> {
    let nq = check_n(n)?;
    let r = BoundReport::new(Target::Robust, n);
    Ok(match *model {
        ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. } => {
            r.exact_lower(q(1), "black nodes stay black").exact_upper(q(1), "black nodes stay black")
        }
        ModelSpec::RThreshold { r: 1 } => {
            r.exact_lower(q(2.min(nq)), "members need a member neighbor: 2").exact_upper(q(2), "two adjacent nodes")
        }
        ModelSpec::RThreshold { r: thr } => r
            .exact_lower(q(thr as i128 + 1), "members need r member neighbors: r+1")
            .exact_upper(q(nq), "trivial: all nodes"),
        ModelSpec::AlphaThreshold { alpha } => {
            let a = alpha_q(alpha);
            // V itself is robust, so the bound never exceeds n.
            let lower = (q(1) / (q(1) - a)).ceil().min(q(nq));
            let r = r.exact_lower(lower, "boundary member: ceil(1/(1-a)), at most n");
            if a <= Q::new(1, 2) {
                r.exact_upper(q(2) * a * q(nq) + q(1) / a, "balanced partition: 2an + 1/a")
            } else {
                r.exact_upper(q(nq), "trivial: all nodes")
            }
        }
        ModelSpec::Majority => r
            .exact_lower(q(2.min(nq)), "members need a member neighbor: 2")
            .exact_upper(Q::new(nq, 2).floor() + q(1), "balanced bipartition: floor(n/2) + 1"),
    })
}

pub fn eternal_bounds(n: usize, model: &ModelSpec) -> Result<BoundReport> {
    let nq = check_n(n)?;
    let r = BoundReport::new(Target::Eternal, n);
    let x = r.parity_x as i128;
    Ok(match *model {
        ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. } => {
            r.exact_lower(q(1), "black nodes stay black").exact_upper(q(1), "black nodes stay black")
        }
        ModelSpec::RThreshold { r: 1 } => {
            r.exact_lower(q(1), "trivial: one node").exact_upper(q(1), "black neighborhoods never empty")
        }
        ModelSpec::RThreshold { r: 2 } => r
            .exact_lower(q(2.min(nq)), "a lone black node whitens: 2")
            .exact_upper(Q::new(nq, 1 + x), "longest cycle: n/(1+x)"),
        ModelSpec::RThreshold { r: thr } => r
            .exact_lower(q(thr as i128), "fewer than r black nodes all whiten: r")
            .exact_upper(q(nq), "trivial: all nodes"),
        ModelSpec::AlphaThreshold { alpha } => {
            let a = alpha_q(alpha);
            let r = r.exact_lower(q(1), "trivial: one node");
            if a <= Q::new(1, 2) {
                r.exact_upper(q(2) * a * q(nq) + q(1) / a, "robust sets are eternal: 2an + 1/a")
            } else {
                r.exact_upper(q(nq), "trivial: all nodes")
            }
        }
        ModelSpec::Majority => r
            .exact_lower(q(1), "trivial: one node")
            .exact_upper(Q::new(nq, 2).floor() + q(1), "robust sets are eternal: floor(n/2) + 1"),
    })
}

/// Caps on the stabilization time T.
pub fn stabilization_bounds(n: usize, m: usize, min_degree: usize, model: &ModelSpec) -> Result<BoundReport> {
    let nq = check_n(n)?;
    let (mq, dq) = (m as i128, min_degree as i128);
    let mut r = BoundReport::new(Target::Stabilization, n);
    match *model {
        ModelSpec::RMonotone { r: thr } => {
            if min_degree == 0 {
                return Err(Error::params("stabilization bound needs min degree >= 1"));
            }
            let t = thr as i128;
            r = r
                .exact_upper(q((nq - t).max(0)), "one new node per round: n - r")
                .exact_upper(Q::new(18 * t * nq, dq), "degree argument: T < 18rn/d")
                .mark_last_upper(|e| {
                    e.strict = true;
                    e.int = match &e.value {
                        BoundValue::Exact(v) => (v.ceil().to_integer() - 1) as i64,
                        BoundValue::SqrtPlus { .. } => unreachable!(),
                    };
                });
        }
        ModelSpec::AlphaMonotone { .. } => {}
        ModelSpec::RThreshold { .. } | ModelSpec::AlphaThreshold { .. } | ModelSpec::Majority => {
            r = r.exact_upper(q(mq), "Fogelman et al.: O(m)").mark_last_upper(|e| e.asymptotic = true);
        }
    }
    Ok(r.exact_upper(q(4 * mq + 2 * nq + 4), "harness step cap: 4m + 2n + 4"))
}

/// Bounds for a set role, from the graph's n, m and δ.
pub fn role_bounds(g: &Graph, model: &ModelSpec, role: Role) -> Result<BoundReport> {
    let (n, m, d) = (g.node_count(), g.edge_count(), g.min_degree());
    match role {
        Role::Dynamo => dynamo_bounds(n, m, d, model),
        Role::MonotoneDynamo => monotone_dynamo_bounds(n, m, d, model),
        Role::Robust => robust_bounds(n, model),
        Role::Eternal => eternal_bounds(n, model),
    }
}
