//! Shared fixtures: seeded random graphs, the family test matrix and
//! first-principles oracles that do not go through the library's checkers.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use tdl_core::construct::{self, Family, FamilyParams};
use tdl_core::{Alpha, Graph, ModelSpec, Role};

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// A random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut SplitMix64, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// As [`random_connected`], then joins low-degree nodes to random partners
/// until the minimum degree reaches `min_degree`.
pub fn random_min_degree(rng: &mut SplitMix64, n: usize, p: f64, min_degree: usize) -> Graph {
    let mut g = random_connected(rng, n, p);
    while g.min_degree() < min_degree {
        let v = (0..n).find(|&v| g.degree(v) < min_degree).unwrap();
        let u = loop {
            let u = rng.random_range(0..n);
            if u != v && !g.has_edge(u, v) {
                break u;
            }
        };
        g.add_edge(u, v).unwrap();
    }
    g
}

pub fn alpha(p: u64, q: u64) -> Alpha {
    Alpha::new(p, q).unwrap()
}

/// Every model kind with r ∈ {1, 2, 3} and α ∈ {1/3, 1/2, 2/3, 4/5}.
pub fn model_matrix() -> Vec<ModelSpec> {
    let mut out = Vec::new();
    for r in 1..=3 {
        out.push(ModelSpec::r_threshold(r).unwrap());
        out.push(ModelSpec::r_monotone(r).unwrap());
    }
    for (p, q) in [(1, 3), (1, 2), (2, 3), (4, 5)] {
        out.push(ModelSpec::alpha_threshold(p, q).unwrap());
        out.push(ModelSpec::alpha_monotone(p, q).unwrap());
    }
    out.push(ModelSpec::Majority);
    out
}

fn family(f: Family, params: &str) -> Option<(String, Graph)> {
    let fp = FamilyParams::parse(f, params).unwrap();
    fp.build().ok().map(|g| (fp.to_string(), g))
}

/// Every constructed family instance with 3 ≤ n ≤ `max_n`, labelled.
pub fn family_graphs(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        out.extend(family(Family::Complete, &format!("n={n}")));
        out.extend(family(Family::Cycle, &format!("n={n}")));
        out.extend(family(Family::Star, &format!("n={n}")));
        for a in 1..=n / 2 {
            out.extend(family(Family::CompleteBipartite, &format!("a={a},b={}", n - a)));
        }
        for r in 1..=3 {
            out.extend(family(Family::CliquePath, &format!("n={n},r={r}")));
        }
        for (p, q) in [(1, 2), (2, 3), (4, 5)] {
            out.extend(family(Family::CliqueLeaves, &format!("n={n},a={p}/{q}")));
        }
        for r in 2..n {
            out.extend(family(Family::Circulant, &format!("l={n},r={r}")));
        }
        for r in 3..=4 {
            out.extend(family(Family::EternalTight, &format!("n={n},r={r}")));
        }
        for base in ["complete", "cycle"] {
            if n % 2 == 0 {
                out.extend(family(Family::Double, &format!("base={base},n={}", n / 2)));
            }
        }
        for clique in [2, 3, 5] {
            if let Ok(g) = construct::clique_attachment(n, clique) {
                out.push((format!("clique-attachment:n={n},c={clique}"), g));
            }
        }
    }
    for l in 3..=max_n {
        for d in 1..=3u32 {
            if l.pow(d) <= max_n && l.pow(d) >= 3 {
                out.extend(family(Family::Torus, &format!("L={l},d={d}")));
            }
        }
    }
    out.retain(|(_, g)| g.node_count() <= max_n);
    out
}

/// Black-neighbour count of `v` under the boolean configuration `c`.
pub fn black_neighbors(g: &Graph, c: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| c[u]).count()
}

/// One synchronous round, written out rule by rule.
pub fn oracle_step(g: &Graph, model: &ModelSpec, c: &[bool]) -> Vec<bool> {
    (0..g.node_count())
        .map(|v| {
            let b = black_neighbors(g, c, v);
            let d = g.degree(v);
            match *model {
                ModelSpec::RThreshold { r } => b >= r as usize,
                ModelSpec::RMonotone { r } => c[v] || b >= r as usize,
                ModelSpec::AlphaThreshold { alpha } => b as u64 * alpha.denom() >= d as u64 * alpha.numer(),
                ModelSpec::AlphaMonotone { alpha } => c[v] || b as u64 * alpha.denom() >= d as u64 * alpha.numer(),
                ModelSpec::Majority => {
                    if 2 * b > d {
                        true
                    } else if 2 * b < d {
                        false
                    } else {
                        c[v]
                    }
                }
            }
        })
        .collect()
}

pub fn to_bools(n: usize, nodes: &[usize]) -> Vec<bool> {
    let mut c = vec![false; n];
    for &v in nodes {
        c[v] = true;
    }
    c
}

/// Iterates until a configuration repeats (any period) and returns the
/// trajectory up to the first repeat plus the index it repeats from.
pub fn oracle_orbit(g: &Graph, model: &ModelSpec, start: Vec<bool>) -> (Vec<Vec<bool>>, usize) {
    let mut seen = vec![start];
    loop {
        let next = oracle_step(g, model, seen.last().unwrap());
        if let Some(i) = seen.iter().position(|c| *c == next) {
            return (seen, i);
        }
        seen.push(next);
    }
}

/// Oracle eternal check: all-white never appears along the orbit.
pub fn oracle_eternal(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> bool {
    let (orbit, _) = oracle_orbit(g, model, to_bools(g.node_count(), nodes));
    orbit.iter().all(|c| c.iter().any(|&b| b))
}

/// Oracle dynamo check: the orbit settles on all-black.
pub fn oracle_dynamo(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> bool {
    let (orbit, from) = oracle_orbit(g, model, to_bools(g.node_count(), nodes));
    orbit.len() == from + 1 && orbit[from].iter().all(|&b| b)
}

/// Oracle robustness for threshold-type models: the set stays black when
/// everything outside it is white.
pub fn oracle_robust(g: &Graph, model: &ModelSpec, nodes: &[usize]) -> bool {
    let c = to_bools(g.node_count(), nodes);
    let next = oracle_step(g, model, &c);
    nodes.iter().all(|&v| next[v])
}

/// Smallest size of a set passing `pred`, by brute force over all subsets.
pub fn oracle_min(n: usize, pred: impl Fn(&[usize]) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let nodes: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if pred(&nodes) {
            best = Some(size);
        }
    }
    best
}

/// Oracle for each role, independent of the library's certifier.
pub fn oracle_role(g: &Graph, model: &ModelSpec, role: Role, nodes: &[usize]) -> bool {
    match role {
        Role::Dynamo => oracle_dynamo(g, model, nodes),
        Role::MonotoneDynamo => {
            let (orbit, from) = oracle_orbit(g, model, to_bools(g.node_count(), nodes));
            let grows = orbit.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(&a, &b)| !a || b));
            grows && orbit.len() == from + 1 && orbit[from].iter().all(|&b| b)
        }
        Role::Robust => !nodes.is_empty() && oracle_robust(g, model, nodes),
        Role::Eternal => !nodes.is_empty() && oracle_eternal(g, model, nodes),
    }
}
