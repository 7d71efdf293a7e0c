//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

type Graph = WeightedGraph<u64>;

const CONNECT_RETRIES: u64 = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    GnpWeighted { n: usize, p: f64, w_min: u64, w_max: u64, seed: u64, connected: bool },
    PlantedCut { n: usize, side: usize, cross: u64, seed: u64 },
    Dumbbell { n: usize },
    Cycle { n: usize },
    Clique { n: usize },
    Grid { rows: usize, cols: usize },
}

impl GeneratorSpec {
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::GnpWeighted { n, p, seed, .. } => format!("gnp-{n}-{p}-s{seed}"),
            GeneratorSpec::PlantedCut { n, side, cross, seed } => format!("planted-{n}-{side}-{cross}-s{seed}"),
            GeneratorSpec::Dumbbell { n } => format!("dumbbell-{n}"),
            GeneratorSpec::Cycle { n } => format!("cycle-{n}"),
            GeneratorSpec::Clique { n } => format!("clique-{n}"),
            GeneratorSpec::Grid { rows, cols } => format!("grid-{rows}x{cols}"),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match *spec {
        GeneratorSpec::GnpWeighted { n, p, w_min, w_max, seed, connected } => gnp_weighted(n, p, w_min, w_max, seed, connected),
        GeneratorSpec::PlantedCut { n, side, cross, seed } => planted_cut(n, side, cross, seed),
        GeneratorSpec::Dumbbell { n } => {
            if n < 4 || n % 2 == 1 {
                return Err(Error::InvalidParameter("dumbbell needs an even n >= 4".into()));
            }
            Ok(dumbbell(n))
        }
        GeneratorSpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
            }
            Ok(cycle(n))
        }
        GeneratorSpec::Clique { n } => Ok(clique(n)),
        GeneratorSpec::Grid { rows, cols } => Ok(grid(rows, cols)),
    }
}

fn unit(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    WeightedGraph::new(n, edges.into_iter().map(|(u, v)| (u, v, 1))).expect("unit generator")
}

pub fn clique(n: usize) -> Graph {
    unit(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Graph {
    unit(n, (0..n).map(|u| (u, (u + 1) % n)))
}

pub fn path(n: usize) -> Graph {
    unit(n, (1..n).map(|u| (u - 1, u)))
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    unit(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Two unit cliques on `n/2` vertices joined by one unit bridge
/// `(n/2 - 1, n/2)`.
pub fn dumbbell(n: usize) -> Graph {
    let h = n / 2;
    let left = (0..h).flat_map(|u| (u + 1..h).map(move |v| (u, v)));
    let right = (h..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)));
    unit(n, left.chain(right).chain([(h - 1, h)]))
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    unit(rows * cols, e)
}

/// G(n, p) with uniform integer weights in `w_min..=w_max`. With
/// `connected`, resamples (deterministically from `seed`) until connected.
pub fn gnp_weighted(n: usize, p: f64, w_min: u64, w_max: u64, seed: u64, connected: bool) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || w_min == 0 || w_min > w_max {
        return Err(Error::InvalidParameter(format!("gnp: p={p}, weights {w_min}..={w_max}")));
    }
    for attempt in 0..CONNECT_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    e.push((u, v, rng.gen_range(w_min..=w_max)));
                }
            }
        }
        let g = WeightedGraph::new(n, e)?;
        if !connected || g.components().len() <= 1 {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!("gnp({n}, {p}) not connected after {CONNECT_RETRIES} attempts")))
}

/// Two dense sides joined by crossing edges of total weight `cross`. Each side
/// contains a cycle of weight `cross + 1`, so every vertex has weighted degree
/// above `cross` and the planted cut undercuts every singleton.
pub fn planted_cut(n: usize, side: usize, cross: u64, seed: u64) -> Result<Graph> {
    if side < 3 || n < side + 3 || cross == 0 {
        return Err(Error::InvalidParameter("planted cut needs sides of >= 3 vertices and cross >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    for (lo, hi) in [(0, side), (side, n)] {
        let k = hi - lo;
        for i in 0..k {
            e.push((lo + i, lo + (i + 1) % k, cross + 1));
        }
        for u in lo..hi {
            for v in u + 1..hi {
                if rng.gen_bool(0.3) {
                    e.push((u, v, rng.gen_range(1..=cross + 1)));
                }
            }
        }
    }
    for _ in 0..cross {
        e.push((rng.gen_range(0..side), rng.gen_range(side..n), 1));
    }
    WeightedGraph::new(n, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn deterministic_given_seed() {
        let a = gnp_weighted(30, 0.2, 1, 50, 7, true).unwrap();
        let b = gnp_weighted(30, 0.2, 1, 50, 7, true).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.components().len(), 1);
        assert_eq!(planted_cut(30, 10, 3, 1).unwrap(), planted_cut(30, 10, 3, 1).unwrap());
    }

    #[test]
    fn unreachable_connectivity_fails() {
        assert!(gnp_weighted(5, 0.0, 1, 1, 0, true).is_err());
        assert!(gnp_weighted(1, 0.0, 1, 1, 0, true).is_ok());
    }

    #[test]
    fn planted_cut_structure() {
        let g = planted_cut(30, 10, 3, 9).unwrap();
        let side = VertexSet::from_iter(30, 0..10);
        assert_eq!(g.cut_weight(&side).unwrap(), 3);
        assert!((0..30).all(|v| g.weighted_degree(v) > 3));
    }

    #[test]
    fn shapes() {
        assert_eq!(dumbbell(8).m(), 13);
        assert_eq!(cycle(10).m(), 10);
        assert_eq!(grid(3, 4).m(), 17);
        assert_eq!(star(6).m(), 6);
        let spec = GeneratorSpec::Dumbbell { n: 8 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"dumbbell","n":8}"#);
        assert_eq!(serde_json::from_str::<GeneratorSpec>(&json).unwrap(), spec);
        assert!(generate(&GeneratorSpec::Dumbbell { n: 7 }).is_err());
    }
}
