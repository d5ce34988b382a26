//! Exact minimum dynamos, monotone dynamos, robust and eternal sets by
//! subset enumeration in ascending size.
//!
//! Within one size, sets are visited in lexicographic order of their sorted
//! node lists. The rank space is cut into fixed chunks and the first chunk
//! holding a success wins, so the witness and the `checked` count do not
//! depend on the execution mode.

use serde_json::json;

use crate::bounds::role_bounds;
use crate::certify::{Checker, Role};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::ModelSpec;
use crate::par::{self, Exec};

/// Default cap on n for exponential searches.
pub const DEFAULT_NODE_CAP: usize = 24;

/// Largest number of sets `count_sets_of_size` will examine.
pub const COUNT_BUDGET: u64 = 1 << 26;

const CHUNK: u64 = 1024;

/// `TDL_MAX_NODES` if set to a positive integer, else [`DEFAULT_NODE_CAP`].
pub fn node_cap_from_env() -> usize {
    std::env::var("TDL_MAX_NODES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_NODE_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest set size to try; `None` means n.
    pub size_cap: Option<usize>,
    /// Start at the catalog lower bound instead of the smallest admissible size.
    pub use_bound_seed: bool,
    pub exec: Exec,
    pub node_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { size_cap: None, use_bound_seed: true, exec: Exec::default(), node_cap: DEFAULT_NODE_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub minimum_size: usize,
    /// Lexicographically smallest set of minimum size.
    pub witness: Vec<usize>,
    /// Sets examined, counting every set of the sizes below the answer.
    pub checked_subsets: u64,
    pub bound_seed: usize,
}

impl SolveResult {
    /// `{"size": int, "witness": [int,...], "checked": int, "seed_bound": int}`
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "size": self.minimum_size,
            "witness": self.witness,
            "checked": self.checked_subsets,
            "seed_bound": self.bound_seed,
        })
    }
}

/// C(n, k) for n ≤ 64 (saturating, never reached in that range).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// The `rank`-th size-`k` subset of 0..n in lexicographic order.
fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        for c in start..n {
            let below = binomial(n - c - 1, k - i - 1);
            if rank < below {
                out.push(c);
                start = c + 1;
                break;
            }
            rank -= below;
        }
    }
    out
}

/// Advances to the next subset in lexicographic order; false at the end.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Rank of the first success within one chunk of size-`k` subsets.
fn first_in_chunk(checker: &Checker, n: usize, k: usize, chunk: u64, total: u64) -> Option<(u64, Vec<usize>)> {
    let lo = chunk * CHUNK;
    let hi = (lo + CHUNK).min(total);
    let mut idx = unrank(n, k, lo);
    for rank in lo..hi {
        if checker.holds_mask(mask_of(&idx)) {
            return Some((rank, idx));
        }
        next_combination(&mut idx, n);
    }
    None
}

fn count_in_chunk(checker: &Checker, n: usize, k: usize, chunk: u64, total: u64) -> Vec<Vec<usize>> {
    let lo = chunk * CHUNK;
    let hi = (lo + CHUNK).min(total);
    let mut idx = unrank(n, k, lo);
    let mut found = Vec::new();
    for _ in lo..hi {
        if checker.holds_mask(mask_of(&idx)) {
            found.push(idx.clone());
        }
        next_combination(&mut idx, n);
    }
    found
}

fn check_size(g: &Graph, node_cap: usize) -> Result<()> {
    let n = g.node_count();
    let cap = node_cap.min(64);
    if n > cap {
        return Err(Error::CapExceeded { what: "subset enumeration node count", value: n as u64, cap: cap as u64 });
    }
    Ok(())
}

/// Minimum size of a set with the given role, with the lexicographically
/// smallest witness.
pub fn min_set(g: &Graph, model: &ModelSpec, role: Role, opts: SolveOptions) -> Result<SolveResult> {
    g.validate(model)?;
    check_size(g, opts.node_cap)?;
    let n = g.node_count();
    let floor = usize::from(role.needs_nonempty());
    let seed = if opts.use_bound_seed {
        let lower = role_bounds(g, model, role)?.best_lower().unwrap_or(0);
        (lower.max(0) as usize).clamp(floor, n)
    } else {
        floor
    };
    let size_cap = opts.size_cap.unwrap_or(n).min(n);
    let checker = Checker::new(g, model, role);
    let mut checked = 0u64;
    for k in seed..=size_cap {
        let total = binomial(n, k);
        let chunks = total.div_ceil(CHUNK);
        let hit = par::find_first(opts.exec, 0..chunks, |c| first_in_chunk(&checker, n, k, c, total));
        if let Some((rank, witness)) = hit {
            return Ok(SolveResult { minimum_size: k, witness, checked_subsets: checked + rank + 1, bound_seed: seed });
        }
        checked += total;
    }
    Err(Error::NoSolution { role: role.name().to_string(), size_cap })
}

/// All size-`size` sets with the given role, in lexicographic order.
pub fn sets_of_size(g: &Graph, model: &ModelSpec, role: Role, size: usize, exec: Exec) -> Result<Vec<Vec<usize>>> {
    g.validate(model)?;
    check_size(g, 64)?;
    let n = g.node_count();
    let total = binomial(n, size);
    if total > COUNT_BUDGET {
        return Err(Error::CapExceeded { what: "number of subsets to count", value: total, cap: COUNT_BUDGET });
    }
    let checker = Checker::new(g, model, role);
    let chunks = total.div_ceil(CHUNK);
    let mut sets = par::fold_map(
        exec,
        0..chunks,
        Vec::new(),
        |c| count_in_chunk(&checker, n, size, c, total),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    // The parallel reduce may concatenate chunks out of order.
    sets.sort_unstable();
    Ok(sets)
}

/// Number of size-`size` sets with the given role.
pub fn count_sets_of_size(g: &Graph, model: &ModelSpec, role: Role, size: usize, exec: Exec) -> Result<u64> {
    Ok(sets_of_size(g, model, role, size, exec)?.len() as u64)
}

/// Size-r dynamo count in the r-threshold model on a dense graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseDynamoReport {
    pub n: usize,
    pub r: u32,
    pub count: u64,
    /// C(n, r), the number of candidate sets.
    pub candidates: u64,
}

impl DenseDynamoReport {
    /// At least one size-r dynamo exists.
    pub fn holds(&self) -> bool {
        self.count >= 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "r": self.r,
            "count": self.count,
            "candidates": self.candidates,
            "holds": self.holds(),
        })
    }
}

/// Counts size-r dynamos when δ ≥ n/2 + r.
pub fn verify_dense_dynamos(g: &Graph, r: u32, exec: Exec) -> Result<DenseDynamoReport> {
    let (n, d) = (g.node_count(), g.min_degree());
    if 2 * d < n + 2 * r as usize {
        return Err(Error::PreconditionUnmet(format!("min degree {d} is below n/2 + r = {n}/2 + {r}")));
    }
    let model = ModelSpec::r_threshold(r)?;
    let count = count_sets_of_size(g, &model, Role::Dynamo, r as usize, exec)?;
    Ok(DenseDynamoReport { n, r, count, candidates: binomial(n, r as usize) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{complete, cycle, star};

    fn solve(g: &Graph, model: &ModelSpec, role: Role) -> SolveResult {
        min_set(g, model, role, SolveOptions::default()).unwrap()
    }

    fn rth(r: u32) -> ModelSpec {
        ModelSpec::r_threshold(r).unwrap()
    }

    #[test]
    fn lexicographic_unranking() {
        for (n, k) in [(6, 3), (7, 0), (5, 5), (9, 2)] {
            let mut idx: Vec<usize> = (0..k).collect();
            for rank in 0..binomial(n, k) {
                assert_eq!(unrank(n, k, rank), idx);
                let more = next_combination(&mut idx, n);
                assert_eq!(more, rank + 1 < binomial(n, k));
            }
        }
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve(&complete(6).unwrap(), &rth(2), Role::Dynamo).minimum_size, 2);
        assert_eq!(solve(&cycle(6).unwrap(), &rth(2), Role::Dynamo).minimum_size, 6);
        assert_eq!(solve(&cycle(5).unwrap(), &rth(1), Role::Dynamo).minimum_size, 1);
        assert_eq!(solve(&cycle(6).unwrap(), &rth(1), Role::Dynamo).minimum_size, 2);
        assert_eq!(solve(&cycle(6).unwrap(), &rth(2), Role::Eternal).minimum_size, 3);
        assert_eq!(solve(&cycle(5).unwrap(), &rth(2), Role::Eternal).minimum_size, 5);
        let k5 = solve(&complete(5).unwrap(), &ModelSpec::Majority, Role::Robust);
        assert_eq!((k5.minimum_size, k5.witness.clone()), (3, vec![0, 1, 2]));
        let half = ModelSpec::alpha_threshold(1, 2).unwrap();
        assert_eq!(solve(&star(5).unwrap(), &half, Role::Eternal).witness, vec![0]);
    }

    #[test]
    fn seeded_and_unseeded_agree_across_modes() {
        let g = cycle(8).unwrap();
        for role in Role::ALL {
            let base = min_set(
                &g,
                &rth(2),
                role,
                SolveOptions { use_bound_seed: false, exec: Exec::Sequential, ..SolveOptions::default() },
            )
            .unwrap();
            for exec in [Exec::Sequential, Exec::Parallel] {
                let seeded = min_set(&g, &rth(2), role, SolveOptions { exec, ..SolveOptions::default() }).unwrap();
                assert_eq!((seeded.minimum_size, &seeded.witness), (base.minimum_size, &base.witness));
            }
        }
    }

    #[test]
    fn counts() {
        let k6 = complete(6).unwrap();
        assert_eq!(count_sets_of_size(&k6, &rth(2), Role::Dynamo, 2, Exec::default()).unwrap(), 15);
        let c6 = cycle(6).unwrap();
        assert_eq!(count_sets_of_size(&c6, &rth(2), Role::Dynamo, 3, Exec::default()).unwrap(), 0);
        let c5 = cycle(5).unwrap();
        let half = ModelSpec::alpha_threshold(1, 2).unwrap();
        assert_eq!(count_sets_of_size(&c5, &half, Role::Dynamo, 1, Exec::default()).unwrap(), 5);
    }

    #[test]
    fn dense_dynamos() {
        let r = verify_dense_dynamos(&complete(10).unwrap(), 2, Exec::default()).unwrap();
        assert_eq!((r.count, r.candidates), (45, 45));
        let mut g = complete(10).unwrap();
        for i in 0..5 {
            g.remove_edge(2 * i, 2 * i + 1);
        }
        assert!(verify_dense_dynamos(&g, 2, Exec::default()).unwrap().holds());
        assert!(matches!(
            verify_dense_dynamos(&cycle(8).unwrap(), 2, Exec::default()),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn caps() {
        let big = cycle(30).unwrap();
        assert!(matches!(
            min_set(&big, &rth(1), Role::Dynamo, SolveOptions::default()),
            Err(Error::CapExceeded { .. })
        ));
        let capped = SolveOptions { size_cap: Some(4), ..SolveOptions::default() };
        assert_eq!(
            min_set(&cycle(6).unwrap(), &rth(2), Role::Dynamo, capped),
            Err(Error::NoSolution { role: "dynamo".into(), size_cap: 4 })
        );
    }
}
