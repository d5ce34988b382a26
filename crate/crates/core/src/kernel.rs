//! Single-word simulation for graphs with at most 64 nodes.
//!
//! Each update rule is compiled to a per-node integer threshold so a step is
//! one AND + popcount per node. The general `dynamics::step` evaluates the
//! rules literally (including the q·count ≥ p·degree comparison) and is the
//! reference this kernel is tested against.

use crate::graph::Graph;
use crate::model::ModelSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Threshold,
    Monotone,
    Majority,
}

#[derive(Clone, Debug)]
pub(crate) struct Kernel {
    masks: Vec<u64>,
    need: Vec<u32>,
    // Majority only: the black count at which a node keeps its color.
    tie: Vec<u32>,
    rule: Rule,
    full: u64,
}

/// What happened along one trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RunSummary {
    pub stabilization_time: usize,
    pub period: u8,
    pub cap_hit: bool,
    /// The terminal cycle is the all-black fixed point.
    pub ends_all_black: bool,
    pub reached_all_white: bool,
    /// B_t ⊆ B_{t+1} on every observed transition.
    pub monotone: bool,
}

impl Kernel {
    pub fn new(g: &Graph, model: &ModelSpec) -> Option<Kernel> {
        let masks = g.masks()?.to_vec();
        let n = g.node_count();
        let degrees = g.degrees();
        let rule = match model {
            ModelSpec::RThreshold { .. } | ModelSpec::AlphaThreshold { .. } => Rule::Threshold,
            ModelSpec::RMonotone { .. } | ModelSpec::AlphaMonotone { .. } => Rule::Monotone,
            ModelSpec::Majority => Rule::Majority,
        };
        let need: Vec<u32> = degrees
            .iter()
            .map(|&d| match model {
                ModelSpec::RThreshold { r } | ModelSpec::RMonotone { r } => *r,
                ModelSpec::AlphaThreshold { alpha } | ModelSpec::AlphaMonotone { alpha } => alpha.min_count(d) as u32,
                ModelSpec::Majority => (d / 2 + 1) as u32,
            })
            .collect();
        let tie = degrees.iter().map(|&d| if d % 2 == 0 { (d / 2) as u32 } else { u32::MAX }).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Some(Kernel { masks, need, tie, rule, full })
    }

    #[inline]
    pub fn step(&self, c: u64) -> u64 {
        let mut next = 0u64;
        for (v, &m) in self.masks.iter().enumerate() {
            let black = (m & c).count_ones();
            let own = (c >> v) & 1 == 1;
            let on = match self.rule {
                Rule::Threshold => black >= self.need[v],
                Rule::Monotone => own || black >= self.need[v],
                Rule::Majority => black >= self.need[v] || (own && black == self.tie[v]),
            };
            next |= (on as u64) << v;
        }
        next
    }

    /// Iterates until the configuration repeats with period 1 or 2, or the
    /// step cap runs out.
    pub fn run(&self, start: u64, step_cap: usize) -> RunSummary {
        let mut summary = RunSummary {
            stabilization_time: step_cap,
            period: 0,
            cap_hit: true,
            ends_all_black: false,
            reached_all_white: start == 0,
            monotone: true,
        };
        let mut before: Option<u64> = None;
        let mut cur = start;
        for t in 1..=step_cap {
            let next = self.step(cur);
            summary.monotone &= cur & !next == 0;
            summary.reached_all_white |= next == 0;
            if next == cur {
                summary.stabilization_time = t - 1;
                summary.period = 1;
                summary.cap_hit = false;
                summary.ends_all_black = next == self.full;
                return summary;
            }
            if before == Some(next) {
                summary.stabilization_time = t - 2;
                summary.period = 2;
                summary.cap_hit = false;
                return summary;
            }
            before = Some(cur);
            cur = next;
        }
        summary
    }
}
