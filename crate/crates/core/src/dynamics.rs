//! Synchronous updates, trajectories with period-1/2 cycle detection,
//! stabilization sweeps and the edge-boundary potential.

use rand::RngCore;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernel::{Kernel, RunSummary};
use crate::model::ModelSpec;
use crate::par::{self, Exec};

/// Largest n for which all 2^n starting configurations may be swept.
pub const EXHAUSTIVE_NODE_CAP: usize = 22;

/// 4m + 2n + 4: the safety cap over the O(m) transient bound.
pub fn default_step_cap(g: &Graph) -> usize {
    4 * g.edge_count() + 2 * g.node_count() + 4
}

/// One synchronous round: every node reads the previous configuration.
pub fn step(g: &Graph, model: &ModelSpec, c: &Configuration) -> Result<Configuration> {
    check_len(g, c)?;
    let mut next = Configuration::all_white(g.node_count());
    step_into(g, model, c, &mut next);
    Ok(next)
}

fn check_len(g: &Graph, c: &Configuration) -> Result<()> {
    if c.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), got: c.len() });
    }
    Ok(())
}

fn step_into(g: &Graph, model: &ModelSpec, c: &Configuration, next: &mut Configuration) {
    for v in 0..g.node_count() {
        let black = g.neighbors(v).iter().filter(|&&u| c.get(u)).count();
        next.set(v, model.next_color(c.get(v), black, g.degree(v)));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// C_0 .. C_{T+p-1}; when the cap was hit, everything computed.
    pub configs: Vec<Configuration>,
    pub stabilization_time: usize,
    pub period: usize,
    pub step_cap_hit: bool,
}

#[derive(Serialize)]
struct TrajectoryJson {
    #[serde(rename = "T")]
    t: usize,
    p: usize,
    cap_hit: bool,
    #[serde(rename = "final")]
    cycle: Vec<String>,
}

impl Trajectory {
    /// The configurations repeated forever (empty if the cap was hit).
    pub fn cycle(&self) -> &[Configuration] {
        if self.step_cap_hit {
            &[]
        } else {
            &self.configs[self.stabilization_time..]
        }
    }

    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("trajectory holds C_0")
    }

    /// Whether the process settles on the all-black fixed point.
    pub fn reaches_all_black(&self) -> bool {
        !self.step_cap_hit && self.period == 1 && self.last().is_all_black()
    }

    /// `{"T": int, "p": int, "cap_hit": bool, "final": [bitstring, ...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let cycle = if self.step_cap_hit {
            vec![self.last().to_bitstring()]
        } else {
            self.cycle().iter().map(Configuration::to_bitstring).collect()
        };
        serde_json::to_value(TrajectoryJson {
            t: self.stabilization_time,
            p: self.period,
            cap_hit: self.step_cap_hit,
            cycle,
        })
        .expect("plain struct serializes")
    }
}

/// Iterates `step` from `c0` until C_t equals C_{t-1} or C_{t-2}.
///
/// `step_cap` defaults to [`default_step_cap`]; hitting it sets
/// `step_cap_hit` instead of looping forever.
pub fn simulate(g: &Graph, model: &ModelSpec, c0: &Configuration, step_cap: Option<usize>) -> Result<Trajectory> {
    check_len(g, c0)?;
    let cap = step_cap.unwrap_or_else(|| default_step_cap(g));
    let mut configs = vec![c0.clone()];
    for t in 1..=cap {
        let mut next = Configuration::all_white(g.node_count());
        step_into(g, model, &configs[t - 1], &mut next);
        let (time, period) = if next == configs[t - 1] {
            (t - 1, 1)
        } else if t >= 2 && next == configs[t - 2] {
            (t - 2, 2)
        } else {
            configs.push(next);
            continue;
        };
        return Ok(Trajectory { configs, stabilization_time: time, period, step_cap_hit: false });
    }
    Ok(Trajectory { configs, stabilization_time: cap, period: 0, step_cap_hit: true })
}

/// Runs from `start` and summarizes the trajectory, on the single-word
/// kernel when the graph is small enough.
pub(crate) fn summarize(g: &Graph, model: &ModelSpec, start: &Configuration) -> Result<RunSummary> {
    check_len(g, start)?;
    let cap = default_step_cap(g);
    if let (Some(kernel), Some(mask)) = (Kernel::new(g, model), start.as_mask()) {
        return Ok(kernel.run(mask, cap));
    }
    let traj = simulate(g, model, start, Some(cap))?;
    let monotone = traj.configs.windows(2).all(|w| w[0].is_subset_of(&w[1]))
        && traj.cycle().iter().all(|c| traj.configs[traj.stabilization_time].is_subset_of(c));
    Ok(RunSummary {
        stabilization_time: traj.stabilization_time,
        period: traj.period as u8,
        cap_hit: traj.step_cap_hit,
        ends_all_black: traj.reaches_all_black(),
        reached_all_white: traj.configs.iter().any(Configuration::is_all_white),
        monotone,
    })
}

/// Which starting configurations a stabilization sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// All 2^n configurations; n ≤ [`EXHAUSTIVE_NODE_CAP`].
    Exhaustive,
    /// `samples` uniform configurations drawn from a SplitMix64 stream.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepStats {
    pub max_time: usize,
    pub max_period: usize,
    pub cap_hits: u64,
    pub configurations: u64,
}

impl SweepStats {
    fn merge(self, other: SweepStats) -> SweepStats {
        SweepStats {
            max_time: self.max_time.max(other.max_time),
            max_period: self.max_period.max(other.max_period),
            cap_hits: self.cap_hits + other.cap_hits,
            configurations: self.configurations + other.configurations,
        }
    }

    fn single(s: &RunSummary) -> SweepStats {
        SweepStats {
            max_time: s.stabilization_time,
            max_period: s.period as usize,
            cap_hits: s.cap_hit as u64,
            configurations: 1,
        }
    }
}

/// Deterministic uniform configurations for sampled sweeps.
pub fn sample_configurations(n: usize, samples: u64, seed: u64) -> Vec<Configuration> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let mut c = Configuration::all_white(n);
            let mut word = 0u64;
            for v in 0..n {
                if v % 64 == 0 {
                    word = rng.next_u64();
                }
                c.set(v, (word >> (v % 64)) & 1 == 1);
            }
            c
        })
        .collect()
}

/// Maximum stabilization time (and period) over a set of starting
/// configurations. The reduction is a max, so any partition of the work
/// yields the same answer.
pub fn max_stabilization(g: &Graph, model: &ModelSpec, mode: SweepMode, exec: Exec) -> Result<SweepStats> {
    let n = g.node_count();
    let cap = default_step_cap(g);
    match mode {
        SweepMode::Exhaustive => {
            if n > EXHAUSTIVE_NODE_CAP {
                return Err(Error::CapExceeded {
                    what: "exhaustive sweep node count",
                    value: n as u64,
                    cap: EXHAUSTIVE_NODE_CAP as u64,
                });
            }
            let kernel = Kernel::new(g, model).expect("n <= 22 fits one word");
            Ok(par::fold_map(
                exec,
                0..(1u64 << n),
                SweepStats::default(),
                |mask| SweepStats::single(&kernel.run(mask, cap)),
                SweepStats::merge,
            ))
        }
        SweepMode::Sampled { samples, seed } => {
            let starts = sample_configurations(n, samples, seed);
            let kernel = Kernel::new(g, model);
            let one = |i: u64| -> SweepStats {
                let c = &starts[i as usize];
                match (&kernel, c.as_mask()) {
                    (Some(k), Some(mask)) => SweepStats::single(&k.run(mask, cap)),
                    _ => {
                        let traj = simulate(g, model, c, Some(cap)).expect("length checked");
                        SweepStats {
                            max_time: traj.stabilization_time,
                            max_period: traj.period,
                            cap_hits: traj.step_cap_hit as u64,
                            configurations: 1,
                        }
                    }
                }
            };
            Ok(par::fold_map(exec, 0..samples, SweepStats::default(), one, SweepStats::merge))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialTrace {
    /// Φ_t = |∂(B_t)| for each recorded configuration.
    pub phi: Vec<usize>,
    /// |B_t \ B_{t-1}|; entry 0 is |B_0|.
    pub new_black: Vec<usize>,
}

pub fn potential_trace(g: &Graph, traj: &Trajectory) -> PotentialTrace {
    let phi = traj.configs.iter().map(|c| g.boundary_of(c)).collect();
    let mut new_black = Vec::with_capacity(traj.configs.len());
    for (t, c) in traj.configs.iter().enumerate() {
        new_black.push(if t == 0 { c.black_count() } else { c.difference_count(&traj.configs[t - 1]) });
    }
    PotentialTrace { phi, new_black }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{complete, complete_bipartite, cycle, path_of_cliques, star};

    fn set(n: usize, nodes: &[usize]) -> Configuration {
        Configuration::from_nodes(n, nodes).unwrap()
    }

    #[test]
    fn one_step_on_c4() {
        let g = cycle(4).unwrap();
        let next = step(&g, &ModelSpec::r_threshold(1).unwrap(), &set(4, &[0])).unwrap();
        assert_eq!(next.black_nodes(), vec![1, 3]);
    }

    #[test]
    fn majority_alternates_on_k22() {
        let g = complete_bipartite(2, 2).unwrap();
        let next = step(&g, &ModelSpec::Majority, &set(4, &[0, 1])).unwrap();
        assert_eq!(next.black_nodes(), vec![2, 3]);
    }

    #[test]
    fn all_white_is_fixed() {
        let g = cycle(5).unwrap();
        for model in [
            ModelSpec::r_threshold(1).unwrap(),
            ModelSpec::r_monotone(2).unwrap(),
            ModelSpec::alpha_threshold(1, 3).unwrap(),
            ModelSpec::alpha_monotone(1, 2).unwrap(),
            ModelSpec::Majority,
        ] {
            let white = Configuration::all_white(5);
            assert_eq!(step(&g, &model, &white).unwrap(), white);
        }
    }

    #[test]
    fn star_center_floods_alpha_monotone() {
        let g = star(6).unwrap();
        for (p, q) in [(1, 3), (1, 2), (9, 10)] {
            let next = step(&g, &ModelSpec::alpha_monotone(p, q).unwrap(), &set(6, &[0])).unwrap();
            assert!(next.is_all_black());
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = cycle(5).unwrap();
        let err = step(&g, &ModelSpec::Majority, &Configuration::all_white(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 5, got: 3 });
    }

    #[test]
    fn path_of_cliques_takes_n_minus_r_rounds() {
        let g = path_of_cliques(10, 3).unwrap();
        let traj = simulate(&g, &ModelSpec::r_monotone(3).unwrap(), &set(10, &[0, 1, 2]), None).unwrap();
        assert_eq!(traj.stabilization_time, 7);
        assert_eq!(traj.period, 1);
        assert!(traj.last().is_all_black());
        assert_eq!(traj.configs.len(), 8);
    }

    #[test]
    fn k22_has_period_two() {
        let g = complete_bipartite(2, 2).unwrap();
        let traj = simulate(&g, &ModelSpec::r_threshold(1).unwrap(), &set(4, &[0, 1]), None).unwrap();
        assert_eq!((traj.stabilization_time, traj.period), (0, 2));
        assert_eq!(traj.cycle().len(), 2);
        let json = traj.to_json();
        assert_eq!(json["p"], 2);
        assert_eq!(json["final"][0], "1100");
    }

    #[test]
    fn monochromatic_black_is_immediate() {
        let g = cycle(7).unwrap();
        let traj = simulate(&g, &ModelSpec::Majority, &Configuration::all_black(7), None).unwrap();
        assert_eq!((traj.stabilization_time, traj.period), (0, 1));
    }

    #[test]
    fn step_cap_is_reported() {
        let g = path_of_cliques(10, 3).unwrap();
        let traj = simulate(&g, &ModelSpec::r_monotone(3).unwrap(), &set(10, &[0, 1, 2]), Some(3)).unwrap();
        assert!(traj.step_cap_hit);
        assert!(traj.cycle().is_empty());
    }

    #[test]
    fn exhaustive_sweep_examples() {
        let h = path_of_cliques(10, 3).unwrap();
        let s =
            max_stabilization(&h, &ModelSpec::r_monotone(3).unwrap(), SweepMode::Exhaustive, Exec::default()).unwrap();
        assert_eq!(s.max_time, 7);
        assert_eq!(s.configurations, 1024);

        // Oracle: plain loop over the 32 configurations with the reference simulator.
        let k5 = complete(5).unwrap();
        let model = ModelSpec::r_monotone(2).unwrap();
        let oracle = (0..32u64)
            .map(|m| simulate(&k5, &model, &Configuration::from_mask(5, m), None).unwrap().stabilization_time)
            .max()
            .unwrap();
        let s = max_stabilization(&k5, &model, SweepMode::Exhaustive, Exec::Sequential).unwrap();
        assert_eq!(s.max_time, oracle);
        assert!(s.max_time <= 2);

        let c5 = cycle(5).unwrap();
        let s = max_stabilization(&c5, &ModelSpec::Majority, SweepMode::Exhaustive, Exec::default()).unwrap();
        assert_eq!(s.cap_hits, 0);
        assert!(s.max_time <= default_step_cap(&c5));
    }

    #[test]
    fn exhaustive_guard() {
        let g = cycle(23).unwrap();
        assert!(matches!(
            max_stabilization(&g, &ModelSpec::Majority, SweepMode::Exhaustive, Exec::Sequential),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sampled_sweep_is_deterministic_across_modes() {
        let g = cycle(80).unwrap();
        let mode = SweepMode::Sampled { samples: 64, seed: 7 };
        let a = max_stabilization(&g, &ModelSpec::Majority, mode, Exec::Sequential).unwrap();
        let b = max_stabilization(&g, &ModelSpec::Majority, mode, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.configurations, 64);
    }

    #[test]
    fn potential_examples() {
        let g = cycle(5).unwrap();
        let traj = simulate(&g, &ModelSpec::alpha_threshold(1, 2).unwrap(), &set(5, &[0]), None).unwrap();
        assert_eq!(potential_trace(&g, &traj).phi[0], 2);

        let k4 = complete(4).unwrap();
        let traj = simulate(&k4, &ModelSpec::alpha_threshold(2, 3).unwrap(), &set(4, &[0, 1, 2]), None).unwrap();
        let trace = potential_trace(&k4, &traj);
        assert_eq!(&trace.phi[..2], &[3, 0]);
        assert_eq!(&trace.new_black[..2], &[3, 1]);

        let traj = simulate(&k4, &ModelSpec::Majority, &Configuration::all_black(4), None).unwrap();
        assert!(potential_trace(&k4, &traj).phi.iter().all(|&p| p == 0));
    }
}
