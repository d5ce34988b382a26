//! Undirected simple graphs on dense node ids `0..n`.

use std::collections::VecDeque;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// Default guard for the exponential longest-cycle search.
pub const DEFAULT_CYCLE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    connected: bool,
    // Neighborhood bit masks, kept only while n <= 64.
    masks: Option<Vec<u64>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph { n, adj: vec![Vec::new(); n], edges: Vec::new(), connected: true, masks: None };
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::InvalidNode { node: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::params(format!("self-loop at node {u}")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::params(format!("duplicate edge {{{u},{v}}}")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    fn finish(&mut self) {
        for list in self.adj.iter_mut() {
            list.sort_unstable();
        }
        self.edges.sort_unstable();
        self.connected = self.compute_connected();
        self.masks =
            (self.n <= 64).then(|| self.adj.iter().map(|nb| nb.iter().fold(0u64, |m, &u| m | (1u64 << u))).collect());
    }

    fn compute_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Adds one edge and recomputes derived data.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.insert_edge(u, v)?;
        self.finish();
        Ok(())
    }

    /// Removes an edge if present; returns whether it existed.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.adj[u].contains(&v) {
            return false;
        }
        self.adj[u].retain(|&x| x != v);
        self.adj[v].retain(|&x| x != u);
        let key = (u.min(v), u.max(v));
        self.edges.retain(|&e| e != key);
        self.finish();
        true
    }

    /// Disjoint union; `other`'s nodes are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// δ(G); zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub(crate) fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    /// d_S(v): neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &Configuration) -> usize {
        if let (Some(masks), Some(m)) = (self.masks(), set.as_mask()) {
            return (masks[v] & m).count_ones() as usize;
        }
        self.adj[v].iter().filter(|&&u| set.get(u)).count()
    }

    /// |∂(S)|, the number of edges with exactly one endpoint in `set`.
    pub fn boundary_of(&self, set: &Configuration) -> usize {
        self.edges.iter().filter(|&&(u, v)| set.get(u) != set.get(v)).count()
    }

    /// |∂(S)| for an explicit node list.
    pub fn boundary_size(&self, nodes: &[usize]) -> Result<usize> {
        let set = Configuration::from_nodes(self.n, nodes)?;
        Ok(self.boundary_of(&set))
    }

    /// Rejects disconnected graphs and thresholds above the minimum degree.
    pub fn validate(&self, model: &ModelSpec) -> Result<()> {
        if !self.connected {
            return Err(Error::GraphDisconnected);
        }
        if let Some(r) = model.threshold() {
            let min_degree = self.min_degree();
            if r as usize > min_degree {
                return Err(Error::ThresholdExceedsMinDegree { r, min_degree });
            }
        }
        Ok(())
    }

    /// BFS 2-coloring. Returns the two sides, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        if !self.connected {
            return Err(Error::GraphDisconnected);
        }
        let (color, _) = self.bfs_layers();
        for &(u, v) in &self.edges {
            if color[u] % 2 == color[v] % 2 {
                return Ok(None);
            }
        }
        let (even, odd): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| color[v] % 2 == 0);
        Ok(Some((even, odd)))
    }

    pub fn is_bipartite(&self) -> Result<bool> {
        Ok(self.bipartition()?.is_some())
    }

    // BFS depth and parent from node 0.
    fn bfs_layers(&self) -> (Vec<usize>, Vec<usize>) {
        let mut depth = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        if self.n == 0 {
            return (depth, parent);
        }
        let mut queue = VecDeque::from([0]);
        depth[0] = 0;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        (depth, parent)
    }

    /// A simple odd cycle, listed in traversal order (the last node is
    /// adjacent to the first), or `None` when the graph is bipartite.
    pub fn find_odd_cycle(&self) -> Result<Option<Vec<usize>>> {
        if !self.connected {
            return Err(Error::GraphDisconnected);
        }
        let (depth, parent) = self.bfs_layers();
        // An edge inside one BFS layer closes an odd cycle through the LCA.
        let Some(&(mut a, mut b)) = self.edges.iter().find(|&&(u, v)| depth[u] == depth[v]) else {
            return Ok(None);
        };
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        // Both halves end in the LCA; keep it once.
        right.pop();
        right.reverse();
        left.extend(right);
        Ok(Some(left))
    }

    /// A longest simple cycle by exhaustive DFS, or `None` for a forest.
    ///
    /// Each cycle is rooted at its smallest node; branches that cannot beat the
    /// best length so far are pruned and the search stops at a Hamiltonian cycle.
    pub fn longest_cycle_exact(&self, node_cap: usize) -> Result<Option<Vec<usize>>> {
        if self.n > node_cap {
            return Err(Error::CapExceeded {
                what: "longest cycle search node count",
                value: self.n as u64,
                cap: node_cap as u64,
            });
        }
        let mut search =
            CycleSearch { g: self, on_path: vec![false; self.n], path: Vec::with_capacity(self.n), best: Vec::new() };
        for root in 0..self.n {
            if search.best.len() == self.n || self.n - root <= search.best.len() {
                break;
            }
            search.on_path[root] = true;
            search.path.push(root);
            search.extend(root);
            search.path.pop();
            search.on_path[root] = false;
        }
        Ok((!search.best.is_empty()).then_some(search.best))
    }
}

struct CycleSearch<'g> {
    g: &'g Graph,
    on_path: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl CycleSearch<'_> {
    fn extend(&mut self, root: usize) {
        let n = self.g.n;
        if self.best.len() == n {
            return;
        }
        let last = *self.path.last().unwrap();
        if self.path.len() >= 3 && self.g.has_edge(last, root) && self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        // Nodes still available: unvisited and larger than the root.
        let available = (root + 1..n).filter(|&u| !self.on_path[u]).count();
        if self.path.len() + available <= self.best.len() {
            return;
        }
        for i in 0..self.g.adj[last].len() {
            let u = self.g.adj[last][i];
            if u > root && !self.on_path[u] {
                self.on_path[u] = true;
                self.path.push(u);
                self.extend(root);
                self.path.pop();
                self.on_path[u] = false;
            }
        }
    }
}
