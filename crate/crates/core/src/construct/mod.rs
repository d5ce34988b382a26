//! Deterministic graph families and extremal constructions.
//!
//! Every generator numbers its nodes canonically (blocks of consecutive ids)
//! so witnesses in tests and reports stay stable.

mod family;
mod procedures;

pub use family::{Family, FamilyParams};
pub use procedures::{eternal_r2_construct, robust_via_bipartition_majority, robust_via_partition};

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Alpha;

/// The four textbook families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicFamily {
    Complete,
    Cycle,
    Star,
    CompleteBipartite,
}

/// `sizes` is `[n]` for the single-parameter families and `[a, b]` for
/// complete bipartite graphs.
pub fn make_basic(family: BasicFamily, sizes: &[usize]) -> Result<Graph> {
    match (family, sizes) {
        (BasicFamily::Complete, &[n]) => complete(n),
        (BasicFamily::Cycle, &[n]) => cycle(n),
        (BasicFamily::Star, &[n]) => star(n),
        (BasicFamily::CompleteBipartite, &[a, b]) => complete_bipartite(a, b),
        _ => Err(Error::params(format!("wrong number of sizes for {family:?}: {sizes:?}"))),
    }
}

/// K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::params("complete graph needs n >= 1"));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// C_n with edges i -- (i+1 mod n).
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::params("cycle needs n >= 3"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// P_n with edges i -- i+1.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::params("path needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// S_n on n nodes: center 0 joined to leaves 1..n-1.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::params("star needs n >= 2"));
    }
    Graph::new(n, (1..n).map(|i| (0, i)))
}

/// K_{a,b}: sides 0..a and a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::params("complete bipartite graph needs both sides non-empty"));
    }
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// The slow-stabilization graph H: node v_i (1-based, stored as i-1) for
/// i ≥ r+1 is adjacent to v_1..v_{r-1} and v_{i-1}.
pub fn path_of_cliques(n: usize, r: usize) -> Result<Graph> {
    if r == 0 || n < r + 2 {
        return Err(Error::params(format!("H(n, r) needs r >= 1 and n >= r + 2, got n={n}, r={r}")));
    }
    let mut edges = Vec::new();
    for i in r..n {
        edges.extend((0..r - 1).map(|hub| (hub, i)));
        edges.push((i - 1, i));
    }
    Graph::new(n, edges)
}

/// A k-clique (nodes 0..k) with n/k - 1 leaves on each clique node, where
/// k = √(αn/(1-α)). Leaves of clique node i are consecutive after the clique.
pub fn clique_with_leaves(n: usize, alpha: Alpha) -> Result<Graph> {
    let (p, q) = (alpha.numer() as u128, alpha.denom() as u128);
    if 2 * p < q {
        return Err(Error::params("clique with leaves needs alpha >= 1/2"));
    }
    let num = p * n as u128;
    let den = q - p;
    if !num.is_multiple_of(den) {
        return Err(Error::params(format!("alpha*n/(1-alpha) is not an integer for n={n}, alpha={alpha}")));
    }
    let k2 = num / den;
    let k = k2.sqrt();
    if k * k != k2 || k == 0 || !(n as u128).is_multiple_of(k) {
        return Err(Error::params(format!("k = sqrt({k2}) and n/k must be integers for n={n}, alpha={alpha}")));
    }
    let k = k as usize;
    let leaves = n / k - 1;
    let mut edges: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    for i in 0..k {
        edges.extend((0..leaves).map(|j| (i, k + i * leaves + j)));
    }
    Graph::new(n, edges)
}

/// T_L^d: node set [L]^d flattened row-major, adjacent iff the coordinates
/// differ by ±1 (mod L) in exactly one position.
pub fn torus(side: usize, dim: u32) -> Result<Graph> {
    if side < 3 || dim == 0 {
        return Err(Error::params("torus needs L >= 3 and d >= 1"));
    }
    let n = side.checked_pow(dim).ok_or_else(|| Error::params("torus too large"))?;
    let mut edges = Vec::with_capacity(n * dim as usize);
    let mut stride = 1;
    for _ in 0..dim {
        for v in 0..n {
            let coord = (v / stride) % side;
            let up = v - coord * stride + ((coord + 1) % side) * stride;
            edges.push((v, up));
        }
        stride *= side;
    }
    Graph::new(n, edges)
}

/// Bipartite double F of H: x_i is node i, y_i is node n_H + i, and
/// x_i -- y_j whenever {v_i, v_j} is an edge of H. F is disconnected (two
/// copies of H) exactly when H is bipartite.
pub fn bipartite_double(h: &Graph) -> Graph {
    let n = h.node_count();
    let edges = h.edges().iter().flat_map(|&(i, j)| [(i, n + j), (j, n + i)]);
    Graph::new(2 * n, edges).expect("double cover of a simple graph is simple")
}

/// Circulant r-regular graph on Z_l: offsets ±1..±r/2 for even r, and
/// ±1..±(r-1)/2 plus the antipode l/2 for odd r.
pub fn circulant_regular(l: usize, r: usize) -> Result<Graph> {
    if r == 0 || l < r + 1 || (r * l) % 2 == 1 || (r == 1 && l != 2) {
        return Err(Error::params(format!(
            "no connected {r}-regular circulant on {l} nodes (need l >= r+1, r*l even)"
        )));
    }
    let mut edges = Vec::new();
    for v in 0..l {
        for off in 1..=r / 2 {
            edges.push((v, (v + off) % l));
        }
        if r % 2 == 1 && v < l / 2 {
            edges.push((v, v + l / 2));
        }
    }
    // For r = l - 1 with even l the antipode coincides with offset l/2 from
    // the ±offsets only when l/2 <= r/2, which l >= r + 1 rules out.
    Graph::new(l, edges)
}

/// Layout of [`eternal_tightness`]: K blocks of r+1 nodes, block i at
/// `i*(r+1)..(i+1)*(r+1)` with v_i^(1) first and v_i^(2) second, then the
/// filler, then (odd n) the extra node w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EternalTightness {
    pub graph: Graph,
    pub blocks: Vec<Vec<usize>>,
    pub filler: Vec<usize>,
    pub extra: Option<usize>,
}

/// The chain of near-cliques with no small eternal set in the r-threshold
/// model. For even n the result is r-regular.
pub fn eternal_tightness(n: usize, r: usize) -> Result<EternalTightness> {
    if r < 3 {
        return Err(Error::params("eternal tightness construction needs r >= 3"));
    }
    if n % 2 == 1 {
        let mut base = eternal_tightness(n - 1, r)?;
        if base.blocks.len() < r {
            return Err(Error::params(format!(
                "odd n needs at least r = {r} blocks, n - 1 = {} gives {}",
                n - 1,
                base.blocks.len()
            )));
        }
        let w = n - 1;
        let edges = base.graph.edges().iter().copied().chain(base.blocks.iter().take(r).map(|b| (b[1], w)));
        base.graph = Graph::new(n, edges)?;
        base.extra = Some(w);
        return Ok(base);
    }
    let block = r + 1;
    let k = (n / block)
        .checked_sub(1)
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::params(format!("n = {n} too small for r = {r}: need floor(n/(r+1)) >= 2")))?;
    let filler_len = n - k * block;
    let filler = circulant_regular(filler_len, r)?;
    let mut edges = Vec::new();
    let blocks: Vec<Vec<usize>> = (0..k).map(|i| (i * block..(i + 1) * block).collect()).collect();
    for b in &blocks {
        for x in 0..block {
            for y in x + 1..block {
                if (x, y) != (0, 1) {
                    edges.push((b[x], b[y]));
                }
            }
        }
    }
    for i in 0..k - 1 {
        edges.push((blocks[i][1], blocks[i + 1][0]));
    }
    let off = k * block;
    edges.extend(filler.edges().iter().filter(|&&e| e != (0, 1)).map(|&(u, v)| (u + off, v + off)));
    edges.push((off, blocks[0][0]));
    edges.push((off + 1, blocks[k - 1][1]));
    Ok(EternalTightness { graph: Graph::new(n, edges)?, blocks, filler: (off..n).collect(), extra: None })
}

/// A clique on nodes 0..c joined by the edge {0, c} to a path on c..n.
/// With c = ⌈1/(1-α)⌉ the clique is a minimum robust set for α.
pub fn clique_attachment(n: usize, clique: usize) -> Result<Graph> {
    if clique == 0 || n <= clique {
        return Err(Error::params("clique attachment needs 1 <= clique < n"));
    }
    let mut g = complete(clique)?.disjoint_union(&path(n - clique)?);
    g.add_edge(0, clique)?;
    Ok(g)
}
