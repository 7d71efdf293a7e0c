//! Exact-weight undirected graphs and the cut primitives shared by every
//! algorithm in the crate.

mod io;
mod vertex_set;

use std::collections::VecDeque;

use serde::Serialize;

pub use io::{parse_dimacs, parse_edge_list, write_dimacs, write_edge_list, DimacsInstance};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};
use crate::scalar::Weight;

pub type VertexId = usize;

/// Canonical undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge<W> {
    pub u: VertexId,
    pub v: VertexId,
    pub w: W,
}

/// Undirected graph on `0..n` with positive integer weights.
///
/// Self-loops and zero-weight edges are dropped at construction, parallel
/// edges are merged by summing, and the edge list is kept sorted by `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    // (neighbor, edge index)
    // CSR adjacency: neighbours of v are adj[offsets[v]..offsets[v + 1]]
    offsets: Vec<usize>,
    adj: Vec<(VertexId, usize)>,
    total: W,
}

impl<W: Weight> WeightedGraph<W> {
    pub fn new<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, W)>,
    {
        let limit = W::total_limit();
        let mut raw: Vec<(VertexId, VertexId, W)> = Vec::new();
        let mut total: u128 = 0;
        for (u, v, w) in triples {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v || w.is_zero() {
                continue;
            }
            total += w.wide();
            if total >= limit {
                return Err(Error::WeightOverflow { limit });
            }
            raw.push(if u < v { (u, v, w) } else { (v, u, w) });
        }
        raw.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let mut edges: Vec<Edge<W>> = Vec::with_capacity(raw.len());
        for (u, v, w) in raw {
            match edges.last_mut() {
                // parallel edges merge; the sum stays below the total limit
                Some(e) if e.u == u && e.v == v => e.w = e.w + w,
                _ => edges.push(Edge { u, v, w }),
            }
        }
        let mut offsets = vec![0; n + 1];
        for e in &edges {
            offsets[e.u + 1] += 1;
            offsets[e.v + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![(0, 0); 2 * edges.len()];
        for (i, e) in edges.iter().enumerate() {
            adj[fill[e.u]] = (e.v, i);
            fill[e.u] += 1;
            adj[fill[e.v]] = (e.u, i);
            fill[e.v] += 1;
        }
        Ok(WeightedGraph { n, edges, offsets, adj, total: W::from_wide(total).expect("below limit") })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn total_weight(&self) -> W {
        self.total
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn weighted_degree(&self, v: VertexId) -> W {
        self.neighbors(v).iter().map(|&(_, i)| self.edges[i].w).sum()
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.neighbors(u).iter().find(|&&(x, _)| x == v).map(|&(_, i)| i)
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == W::one())
    }

    /// Σ w(u,v) over edges with exactly one endpoint in `side`.
    pub fn cut_weight(&self, side: &VertexSet) -> Result<W> {
        if side.universe() != self.n || !side.is_proper() {
            return Err(Error::TrivialCut);
        }
        Ok(self.boundary_weight(side))
    }

    /// Boundary weight without the properness check; zero for ∅ and V.
    pub(crate) fn boundary_weight(&self, side: &VertexSet) -> W {
        self.edges
            .iter()
            .filter(|e| side.contains(e.u) != side.contains(e.v))
            .map(|e| e.w)
            .sum()
    }

    /// Weight of edges from `v` to vertices outside `cluster`.
    pub fn weight_leaving(&self, v: VertexId, cluster: &VertexSet) -> W {
        self.neighbors(v)
            .iter()
            .filter(|&&(x, _)| !cluster.contains(x))
            .map(|&(_, i)| self.edges[i].w)
            .sum()
    }

    /// Contracts every class of a partition of `V` into one vertex. Class `i`
    /// becomes contracted vertex `i`.
    pub fn contract(&self, classes: &[VertexSet]) -> Result<ContractionMap<W>> {
        let mut map = vec![usize::MAX; self.n];
        for (i, c) in classes.iter().enumerate() {
            if c.universe() != self.n || c.is_empty() {
                return Err(Error::NotAPartition);
            }
            for v in c.iter() {
                if map[v] != usize::MAX {
                    return Err(Error::NotAPartition);
                }
                map[v] = i;
            }
        }
        if map.iter().any(|&x| x == usize::MAX) {
            return Err(Error::NotAPartition);
        }
        self.contract_labels(map, classes.len())
    }

    /// Contracts by a surjective labelling `map: V -> 0..k`.
    pub(crate) fn contract_labels(&self, map: Vec<usize>, k: usize) -> Result<ContractionMap<W>> {
        let graph = WeightedGraph::new(k, self.edges.iter().map(|e| (map[e.u], map[e.v], e.w)))?;
        Ok(ContractionMap { original_n: self.n, map, graph })
    }

    /// Connected components of `(V, E \ removed)`, ordered by smallest member.
    pub fn components_after_removal(&self, removed: &[(VertexId, VertexId)]) -> Result<Vec<VertexSet>> {
        let mut gone = vec![false; self.m()];
        for &(u, v) in removed {
            let i = self.edge_index(u, v).ok_or(Error::EdgeNotFound(u, v))?;
            gone[i] = true;
        }
        Ok(self.components_where(|i| !gone[i]))
    }

    /// Components of the subgraph keeping only edges whose index passes `keep`.
    pub(crate) fn components_where(&self, keep: impl Fn(usize) -> bool) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut set = VertexSet::empty(self.n);
            comp[s] = id;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                set.insert(x);
                for &(y, i) in self.neighbors(x) {
                    if comp[y] == usize::MAX && keep(i) {
                        comp[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            out.push(set);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_where(|_| true)
    }
}

/// One side of a cut together with its boundary weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut<W> {
    pub side: VertexSet,
    pub weight: W,
}

impl<W: Weight> Cut<W> {
    pub fn new(g: &WeightedGraph<W>, side: VertexSet) -> Result<Self> {
        let weight = g.cut_weight(&side)?;
        Ok(Cut { side, weight })
    }

    /// Recomputes the boundary weight and checks the side is proper.
    pub fn is_valid_for(&self, g: &WeightedGraph<W>) -> bool {
        g.cut_weight(&self.side).map(|w| w == self.weight).unwrap_or(false)
    }

    /// True if both sides contain a vertex of `terminals`.
    pub fn separates(&self, terminals: &VertexSet) -> bool {
        let inside = self.side.intersection_len(terminals);
        inside > 0 && inside < terminals.len()
    }
}

/// Result of contracting the classes of a partition.
#[derive(Debug, Clone)]
pub struct ContractionMap<W> {
    pub original_n: usize,
    /// Original vertex to contracted vertex.
    pub map: Vec<usize>,
    pub graph: WeightedGraph<W>,
}

impl<W: Weight> ContractionMap<W> {
    /// Preimage of a contracted vertex set.
    pub fn lift(&self, contracted: &VertexSet) -> VertexSet {
        VertexSet::from_iter(
            self.original_n,
            (0..self.original_n).filter(|&v| contracted.contains(self.map[v])),
        )
    }
}
