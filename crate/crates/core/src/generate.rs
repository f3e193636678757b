//! Seeded random connected graphs.
//!
//! A uniform spanning tree of `K_n` is drawn by a random walk (Aldous-Broder),
//! then `m - n + 1` further edges are drawn uniformly without replacement from
//! the pairs the tree does not use. The generator is ChaCha8 seeded with the
//! given integer, so output is identical across runs and platforms.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MbvError, Result};
use crate::graph::{Edge, Graph};

pub fn generate_random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if n == 0 || m + 1 < n || m > max {
        return Err(MbvError::InfeasibleEdgeCount { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: HashSet<Edge> = HashSet::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);

    let mut visited = vec![false; n];
    let mut current = rng.gen_range(0..n);
    visited[current] = true;
    let mut reached = 1;
    while reached < n {
        let mut next = rng.gen_range(0..n - 1);
        if next >= current {
            next += 1;
        }
        if !visited[next] {
            visited[next] = true;
            reached += 1;
            used.insert(Edge::new(current, next));
            pairs.push((current, next));
        }
        current = next;
    }

    let extra = m + 1 - n;
    let available = max - (n - 1);
    if extra * 2 <= available {
        while pairs.len() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && used.insert(Edge::new(a, b)) {
                pairs.push((a, b));
            }
        }
    } else {
        let mut free = Vec::with_capacity(available);
        for a in 0..n {
            for b in a + 1..n {
                if !used.contains(&Edge::new(a, b)) {
                    free.push((a, b));
                }
            }
        }
        for i in index::sample(&mut rng, available, extra) {
            pairs.push(free[i]);
        }
    }
    Graph::new(n, &pairs)
}
