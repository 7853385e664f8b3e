//! Shared test support: an independent combinatorial oracle for the
//! octagon-tiling ring sizes, and a small deterministic generator for
//! support-bounded random configurations.
#![allow(dead_code)] // shared across test targets; not every target uses every helper


use std::collections::BTreeSet;

use gset_ca::ca::Configuration;
use gset_ca::group::cell;
use gset_ca::StateSet;

/// Ring sizes of the {8,3} tiling by face adjacency, computed from the dual
/// {3,8} vertex graph: vertices of degree 8, triangular faces, grown ring
/// by ring. Each ring is a cycle; a new ring consists of one shared child
/// per ring edge plus the remaining own children per vertex. Completely
/// independent of the hyperboloid construction.
pub fn dual_ring_sizes(layers: usize) -> Vec<usize> {
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    let connect = |adj: &mut Vec<BTreeSet<usize>>, a: usize, b: usize| {
        adj[a].insert(b);
        adj[b].insert(a);
    };

    let mut rings: Vec<Vec<usize>> = vec![vec![0]];
    if layers >= 1 {
        let first: Vec<usize> = (1..=8).collect();
        adjacency.resize(9, BTreeSet::new());
        for i in 0..8 {
            connect(&mut adjacency, 0, first[i]);
            connect(&mut adjacency, first[i], first[(i + 1) % 8]);
        }
        rings.push(first);
    }

    for k in 1..layers {
        let ring: Vec<usize> = rings[k].clone();
        let below: BTreeSet<usize> = rings[k - 1].iter().copied().collect();
        let m = ring.len();
        let up_degree: Vec<usize> = ring
            .iter()
            .map(|&v| {
                let b = adjacency[v].iter().filter(|n| below.contains(n)).count();
                8 - 2 - b
            })
            .collect();

        let mut next: Vec<usize> = Vec::new();
        let fresh = |adj: &mut Vec<BTreeSet<usize>>, next: &mut Vec<usize>| -> usize {
            let id = adj.len();
            adj.push(BTreeSet::new());
            next.push(id);
            id
        };

        // corner child shared by the ring edge (v_i, v_{i+1}), then the own
        // children of v_{i+1}; consecutive new vertices are adjacent
        let mut first_corner = usize::MAX;
        let mut prev_new = usize::MAX;
        for i in 0..m {
            let corner = fresh(&mut adjacency, &mut next);
            if first_corner == usize::MAX {
                first_corner = corner;
            }
            if prev_new != usize::MAX {
                connect(&mut adjacency, prev_new, corner);
            }
            connect(&mut adjacency, ring[i], corner);
            connect(&mut adjacency, ring[(i + 1) % m], corner);
            prev_new = corner;

            let own = up_degree[(i + 1) % m] - 2;
            for _ in 0..own {
                let child = fresh(&mut adjacency, &mut next);
                connect(&mut adjacency, ring[(i + 1) % m], child);
                connect(&mut adjacency, prev_new, child);
                prev_new = child;
            }
        }
        connect(&mut adjacency, prev_new, first_corner);
        rings.push(next);
    }

    // self-check: every vertex off the outermost ring has full degree
    for ring in rings.iter().take(layers) {
        for &v in ring {
            assert_eq!(adjacency[v].len(), 8, "oracle vertex {v} degree");
        }
    }

    rings.iter().map(|r| r.len()).collect()
}

/// SplitMix64; fixed, tiny, and reproducible forever.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// A random configuration with at most `max_support` non-quiescent cells
/// inside the Chebyshev ball of the given radius.
pub fn random_sparse_config(
    states: &StateSet,
    radius: i64,
    max_support: usize,
    seed: u64,
) -> Configuration {
    let mut rng = TestRng(seed);
    let mut x = Configuration::empty(states.quiescent());
    let side = 2 * radius + 1;
    let live: Vec<&String> = states
        .symbols()
        .iter()
        .filter(|s| s.as_str() != states.quiescent())
        .collect();
    for _ in 0..max_support {
        let cx = rng.below(side as u64) as i64 - radius;
        let cy = rng.below(side as u64) as i64 - radius;
        let s = live[rng.below(live.len() as u64) as usize];
        x.set(cell(cx, cy), s.clone());
    }
    x
}
