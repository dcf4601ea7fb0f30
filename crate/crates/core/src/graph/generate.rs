use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

const PARITY_RETRIES: usize = 64;

/// Uniformly samples `target_n` nodes without replacement and returns the
/// induced subgraph. Relative id order is preserved.
pub fn induced_random_subgraph<R: Rng + ?Sized>(
    g: &Graph,
    target_n: usize,
    rng: &mut R,
) -> Result<Graph> {
    if target_n == 0 || target_n > g.n() {
        return Err(Error::invalid(format!(
            "subsample size {target_n} must be in 1..={}",
            g.n()
        )));
    }
    let mut nodes = index::sample(rng, g.n(), target_n).into_vec();
    nodes.sort_unstable();
    Ok(g.induced(&nodes))
}

/// Configuration-model graph whose degree sequence follows `d^-exponent`
/// on `1..n`. Self-loops and multi-edges produced by the pairing are
/// discarded, so realized degrees can fall below the drawn ones.
pub fn generate_power_law<R: Rng + ?Sized>(n: usize, exponent: f64, rng: &mut R) -> Graph {
    generate_power_law_with_min_degree(n, exponent, 1, rng)
}

/// As [`generate_power_law`] with degrees drawn from `min_degree..n`.
pub fn generate_power_law_with_min_degree<R: Rng + ?Sized>(
    n: usize,
    exponent: f64,
    min_degree: usize,
    rng: &mut R,
) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let lo = min_degree.clamp(1, n - 1);
    let weights: Vec<f64> = (lo..n).map(|d| (d as f64).powf(-exponent)).collect();
    let dist = WeightedIndex::new(&weights).expect("positive weights");
    let mut degrees: Vec<usize> = (0..n).map(|_| lo + dist.sample(rng)).collect();

    // the pairing needs an even stub count
    let mut retries = 0;
    while degrees.iter().sum::<usize>() % 2 == 1 {
        let u = rng.gen_range(0..n);
        if retries < PARITY_RETRIES {
            degrees[u] = lo + dist.sample(rng);
        } else if degrees[u] > 0 {
            degrees[u] -= 1;
        }
        retries += 1;
    }

    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(u, &d)| std::iter::repeat(u).take(d))
        .collect();
    stubs.shuffle(rng);
    Graph::from_edges(n, stubs.chunks_exact(2).map(|p| (p[0], p[1])))
}

/// G(n, p) random graph.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, pairs)
}

/// Random bipartite graph between `0..left` and `left..left+right`.
pub fn random_bipartite<R: Rng + ?Sized>(left: usize, right: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..left {
        for v in left..left + right {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(left + right, pairs)
}
