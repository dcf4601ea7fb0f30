use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Graph;

/// Exact subgraph statistics of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroundTruth {
    pub triangles: u64,
    pub four_cycles: u64,
    pub two_stars: u64,
    pub three_stars: u64,
    /// Ordered walks `v0..v4` with four edges, backtracking included.
    pub walks4: u64,
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Number of triangles, each counted once as `i > j > k`.
pub fn count_triangles(g: &Graph) -> u64 {
    (0..g.n())
        .into_par_iter()
        .map(|i| {
            let low_i = g.low_neighbors(i);
            low_i
                .iter()
                .map(|&j| sorted_intersection_len(low_i, g.low_neighbors(j)))
                .sum::<u64>()
        })
        .sum()
}

/// Number of (unlabelled) 4-cycles.
///
/// Every 4-cycle has two diagonals; summing `C(codeg(u, w), 2)` over
/// unordered pairs counts each cycle once per diagonal.
pub fn count_four_cycles(g: &Graph) -> u64 {
    let n = g.n();
    let doubled: u64 = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u64; n], Vec::new()),
            |(codeg, touched), u| {
                for &v in g.neighbors(u) {
                    for &w in g.neighbors(v) {
                        if w > u {
                            if codeg[w] == 0 {
                                touched.push(w);
                            }
                            codeg[w] += 1;
                        }
                    }
                }
                let mut sum = 0;
                for &w in touched.iter() {
                    let c = codeg[w];
                    sum += c * (c.saturating_sub(1)) / 2;
                    codeg[w] = 0;
                }
                touched.clear();
                sum
            },
        )
        .sum();
    doubled / 2
}

fn choose(n: u64, k: u64) -> u64 {
    match k {
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unreachable!("only pairs and triples are needed"),
    }
}

/// Two-stars, three-stars and 4-walks; `triangles` and `four_cycles` are
/// left at zero (see [`ground_truth`]).
pub fn count_stars_and_walks(g: &Graph) -> GroundTruth {
    let mut out = GroundTruth::default();
    for u in 0..g.n() {
        let d = g.degree(u) as u64;
        out.two_stars += choose(d, 2);
        out.three_stars += choose(d, 3);
        // walks v0..v4 pair up two 2-walks leaving the middle vertex
        let two_walks: u64 = g.neighbors(u).iter().map(|&v| g.degree(v) as u64).sum();
        out.walks4 += two_walks * two_walks;
    }
    out
}

/// All statistics at once.
pub fn ground_truth(g: &Graph) -> GroundTruth {
    GroundTruth {
        triangles: count_triangles(g),
        four_cycles: count_four_cycles(g),
        ..count_stars_and_walks(g)
    }
}
