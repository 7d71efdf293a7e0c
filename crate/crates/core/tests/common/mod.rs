#![allow(dead_code)]

use isocut::gen::gnp_weighted;
use isocut::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with `n` in `lo..=hi`; one in five may be disconnected.
pub fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, w_max: u64) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.2..0.7);
    let connected = rng.gen_bool(0.8);
    gnp_weighted(n, p, 1, w_max, rng.gen(), connected).expect("dense enough to connect")
}

pub fn connected_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize, w_max: u64) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.2..0.7);
    gnp_weighted(n, p, 1, w_max, rng.gen(), true).expect("dense enough to connect")
}

/// Uniform subset with size in `lo..=min(hi, n)`.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> VertexSet {
    let size = rng.gen_range(lo..=hi.min(n));
    let all: Vec<usize> = (0..n).collect();
    VertexSet::from_iter(n, all.choose_multiple(rng, size).copied())
}
