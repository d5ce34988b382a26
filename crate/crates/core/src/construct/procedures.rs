//! Constructive procedures that produce robust and eternal sets.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Alpha;

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::GraphDisconnected)
    }
}

/// Neighbor counts of `u` into each part.
fn part_counts(g: &Graph, part: &[usize], u: usize, counts: &mut [usize]) {
    counts.iter_mut().for_each(|c| *c = 0);
    for &w in g.neighbors(u) {
        counts[part[w]] += 1;
    }
}

/// Local search over balanced partitions, then the largest part.
///
/// The graph is split into k = ⌊1/α⌋ parts of size at least a = ⌊αn⌋, with
/// at most one part allowed to drop to a - 1. A node moves to another part
/// when it has strictly more neighbors there and the size rule survives the
/// move. Every move cuts at least one boundary edge, so the search ends; at
/// the end the largest part is robust in the α-threshold model.
pub fn robust_via_partition(g: &Graph, alpha: Alpha) -> Result<Vec<usize>> {
    require_connected(g)?;
    if 2 * alpha.numer() > alpha.denom() {
        return Err(Error::params(format!("partition procedure needs alpha <= 1/2, got {alpha}")));
    }
    let n = g.node_count();
    let k = (alpha.denom() / alpha.numer()) as usize;
    let a = (alpha.numer() as u128 * n as u128 / alpha.denom() as u128) as i64;

    let mut part = vec![0usize; n];
    let mut size = vec![0i64; k];
    let (base, extra) = (n / k, n % k);
    let mut v = 0;
    for (i, s) in size.iter_mut().enumerate() {
        let len = base + usize::from(i < extra);
        part[v..v + len].iter_mut().for_each(|p| *p = i);
        *s = len as i64;
        v += len;
    }

    let valid = |size: &[i64]| {
        let short: Vec<i64> = size.iter().copied().filter(|&s| s < a).collect();
        short.is_empty() || (short.len() == 1 && short[0] == a - 1)
    };

    let mut counts = vec![0usize; k];
    loop {
        let mut moved = false;
        for u in 0..n {
            let from = part[u];
            part_counts(g, &part, u, &mut counts);
            let mut best: Option<usize> = None;
            for to in (0..k).filter(|&to| to != from && counts[to] > counts[from]) {
                if best.is_some_and(|b| counts[b] >= counts[to]) {
                    continue;
                }
                size[from] -= 1;
                size[to] += 1;
                if valid(&size) {
                    best = Some(to);
                }
                size[from] += 1;
                size[to] -= 1;
            }
            if let Some(to) = best {
                part[u] = to;
                size[from] -= 1;
                size[to] += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }

    let largest = (0..k).max_by_key(|&i| (size[i], std::cmp::Reverse(i))).unwrap_or(0);
    Ok((0..n).filter(|&v| part[v] == largest).collect())
}

/// Local search over near-balanced bipartitions, then the larger side.
///
/// Both sides stay within [⌊n/2⌋ - 1, ⌊n/2⌋ + 1]; at a local optimum the
/// larger side is robust in the majority model.
pub fn robust_via_bipartition_majority(g: &Graph) -> Result<Vec<usize>> {
    require_connected(g)?;
    let n = g.node_count();
    if n < 2 {
        return Err(Error::params("bipartition procedure needs n >= 2"));
    }
    let half = (n / 2) as i64;
    let (lo, hi) = (half - 1, half + 1);
    let first = n.div_ceil(2);
    let mut side: Vec<usize> = (0..n).map(|v| usize::from(v >= first)).collect();
    let mut size = [first as i64, (n - first) as i64];

    let mut counts = [0usize; 2];
    loop {
        let mut moved = false;
        for u in 0..n {
            let from = side[u];
            let to = 1 - from;
            part_counts(g, &side, u, &mut counts);
            if counts[to] > counts[from] && size[from] > lo && size[to] < hi {
                side[u] = to;
                size[from] -= 1;
                size[to] += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }

    let larger = if size[0] >= size[1] { 0 } else { 1 };
    Ok((0..n).filter(|&v| side[v] == larger).collect())
}

/// Every other node of an even cycle given in traversal order.
fn alternate(cycle: &[usize]) -> Vec<usize> {
    debug_assert!(cycle.len().is_multiple_of(2));
    cycle.iter().step_by(2).copied().collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// An eternal set of size at most n/2 for the 2-threshold model.
///
/// Starts from a longest cycle C (exact search, at most `node_cap` nodes).
/// If |C| ≤ n/2 its nodes are returned; an even C gives its alternate nodes.
/// Otherwise C is odd and longer than n/2, and a walk from a node outside C
/// closes either an even cycle through C (alternate nodes returned) or a
/// short cycle that is returned whole.
pub fn eternal_r2_construct(g: &Graph, node_cap: usize) -> Result<Vec<usize>> {
    require_connected(g)?;
    let n = g.node_count();
    if n % 2 == 1 {
        return Err(Error::params(format!("eternal set procedure needs even n, got {n}")));
    }
    if g.min_degree() < 2 {
        return Err(Error::ThresholdExceedsMinDegree { r: 2, min_degree: g.min_degree() });
    }
    let cyc = g.longest_cycle_exact(node_cap)?.ok_or_else(|| Error::PreconditionUnmet("graph has no cycle".into()))?;
    let k = cyc.len();
    if k <= n / 2 {
        return Ok(sorted(cyc));
    }
    if k % 2 == 0 {
        return Ok(sorted(alternate(&cyc)));
    }

    let mut pos = vec![usize::MAX; n];
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = i;
    }
    let on_cycle = |v: usize| pos[v] != usize::MAX;
    // k > n/2 and k odd means k < n, so some node lies off the cycle.
    let (y1, u) = (0..n)
        .filter(|&y| !on_cycle(y))
        .find_map(|y| g.neighbors(y).iter().find(|&&w| on_cycle(w)).map(|&w| (y, w)))
        .ok_or_else(|| Error::PreconditionUnmet("no node adjacent to the longest cycle".into()))?;

    let mut walk = vec![y1];
    let mut on_walk = vec![usize::MAX; n];
    on_walk[y1] = 0;
    let (mut prev, mut cur) = (u, y1);
    loop {
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).expect("minimum degree at least 2");
        if next == u {
            let mut c = vec![u];
            c.extend(&walk);
            return Ok(sorted(c));
        }
        if on_cycle(next) {
            // Two cycles share the path u, y1, ..., cur, next; one is even.
            let pn = pos[next];
            let forward: Vec<usize> = (0..).map(|i| cyc[(pn + i) % k]).take_while(|&v| v != u).collect();
            let backward: Vec<usize> = (0..).map(|i| cyc[(pn + k - i) % k]).take_while(|&v| v != u).collect();
            debug_assert_eq!(forward.len() + backward.len(), k);
            for arc in [forward, backward] {
                let mut c = vec![u];
                c.extend(&walk);
                c.extend(arc);
                if c.len() % 2 == 0 {
                    return Ok(sorted(alternate(&c)));
                }
            }
            unreachable!("one of two cycles sharing a path with an odd cycle is even");
        }
        if on_walk[next] != usize::MAX {
            return Ok(sorted(walk[on_walk[next]..].to_vec()));
        }
        on_walk[next] = walk.len();
        walk.push(next);
        prev = cur;
        cur = next;
    }
}
