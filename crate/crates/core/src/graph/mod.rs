//! Undirected simple graphs, ingestion, generators and exact subgraph counts.

mod count;
mod generate;
mod io;

pub use count::{
    count_four_cycles, count_stars_and_walks, count_triangles, ground_truth, GroundTruth,
};
pub use generate::{erdos_renyi, generate_power_law, generate_power_law_with_min_degree, induced_random_subgraph, random_bipartite};
pub use io::{load_edge_list, parse_edge_list, IdBase, LoadStats};

use serde::{Deserialize, Serialize};

/// Immutable undirected simple graph on nodes `0..n` with sorted adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from arbitrary pairs. Self-loops and duplicates
    /// (in either orientation) are dropped.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in pairs {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edges = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        Graph {
            adj,
            edges: edges / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Neighbors with a smaller index than `u`, in increasing order.
    pub fn low_neighbors(&self, u: usize) -> &[usize] {
        let list = &self.adj[u];
        &list[..list.partition_point(|&v| v < u)]
    }

    /// Number of neighbors with a smaller index (the "low degree").
    pub fn low_degree(&self, u: usize) -> usize {
        self.low_neighbors(u).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `nodes` (must be strictly increasing); node
    /// `nodes[r]` becomes `r`.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (r, &u) in nodes.iter().enumerate() {
            index[u] = r;
        }
        let adj: Vec<Vec<usize>> = nodes
            .iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter_map(|&v| (index[v] != usize::MAX).then_some(index[v]))
                    .collect()
            })
            .collect();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edges }
    }
}
