//! `(φ, d)`-expander decomposition with boundary-augmented demands.
//!
//! Clusters are refined recursively: whenever some cut inside a cluster has
//! sparsity below `φ` with respect to the cluster's augmented demands
//! `d_i(v) = d(v) + w(E({v}, V \ V_i))`, the cluster is split along the
//! sparsest cut found. Clusters of at most [`EXHAUSTIVE_LIMIT`] vertices are
//! searched exhaustively, so they leave the loop certified; larger clusters
//! are searched with spectral and breadth-first sweeps and are reported
//! uncertified when no violating cut turns up.

use std::cmp::Ordering;
use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet, WeightedGraph};
use crate::isolating::ceil_log2;
use crate::scalar::Weight;

pub type Phi = Ratio<u64>;

pub const EXHAUSTIVE_LIMIT: usize = 20;
const SPECTRAL_LIMIT: usize = 1200;
const SPECTRAL_VECTORS: usize = 3;

/// Nonnegative per-vertex demands with a cached total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemandVector<W> {
    values: Vec<W>,
    total: u128,
}

impl<W: Weight> DemandVector<W> {
    pub fn new(values: Vec<W>) -> Self {
        let total = values.iter().map(|w| w.wide()).sum();
        DemandVector { values, total }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![W::zero(); n])
    }

    /// `value` on every member of `set`, zero elsewhere.
    pub fn uniform_on(set: &VertexSet, value: W) -> Self {
        Self::new((0..set.universe()).map(|v| if set.contains(v) { value } else { W::zero() }).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: VertexId) -> W {
        self.values[v]
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn sum_over(&self, set: &VertexSet) -> u128 {
        set.iter().map(|v| self.values[v].wide()).sum()
    }
}

// 128x128 -> 256-bit product as (hi, lo)
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a0, a1, b0, b1) = (a & mask, a >> 64, b & mask, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
    let lo = (p00 & mask) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

fn cmp_products(a: u128, b: u128, c: u128, d: u128) -> Ordering {
    mul_wide(a, b).cmp(&mul_wide(c, d))
}

/// `w(∂S) / min{d(S), d(V \ S)}` as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sparsity {
    Finite { cut: u128, demand: u128 },
    /// The smaller side carries no demand.
    Infinite,
}

impl Sparsity {
    pub fn new(cut: u128, demand_side: u128, demand_rest: u128) -> Self {
        match demand_side.min(demand_rest) {
            0 => Sparsity::Infinite,
            demand => Sparsity::Finite { cut, demand },
        }
    }

    pub fn is_below(&self, phi: Phi) -> bool {
        match *self {
            Sparsity::Infinite => false,
            Sparsity::Finite { cut, demand } => {
                cmp_products(cut, *phi.denom() as u128, *phi.numer() as u128, demand) == Ordering::Less
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Sparsity::Infinite => f64::INFINITY,
            Sparsity::Finite { cut, demand } => cut as f64 / demand as f64,
        }
    }
}

impl Ord for Sparsity {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Sparsity::Infinite, Sparsity::Infinite) => Ordering::Equal,
            (Sparsity::Infinite, _) => Ordering::Greater,
            (_, Sparsity::Infinite) => Ordering::Less,
            (Sparsity::Finite { cut: a, demand: b }, Sparsity::Finite { cut: c, demand: d }) => cmp_products(a, d, c, b),
        }
    }
}

impl PartialOrd for Sparsity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Sparsity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sparsity::Infinite => s.serialize_str("inf"),
            Sparsity::Finite { cut, demand } => s.serialize_str(&format!("{cut}/{demand}")),
        }
    }
}

pub fn sparsity<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>, s: &VertexSet) -> Result<Sparsity> {
    let cut = g.cut_weight(s)?.wide();
    let inside = d.sum_over(s);
    Ok(Sparsity::new(cut, inside, d.total() - inside))
}

/// Sparsest cut found in a graph, and whether the search was exhaustive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsestCut {
    pub side: VertexSet,
    pub sparsity: Sparsity,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpanderVerdict {
    pub is_expander: bool,
    /// False when the graph was too large for exhaustive search and the
    /// verdict comes from heuristic sweeps.
    pub certified: bool,
}

/// Exhaustive check for graphs of at most [`EXHAUSTIVE_LIMIT`] vertices;
/// advisory sweep check beyond.
pub fn verify_expander<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>, phi: Phi) -> ExpanderVerdict {
    match sparsest_cut(g, d) {
        None => ExpanderVerdict { is_expander: true, certified: true },
        Some(c) => ExpanderVerdict { is_expander: !c.sparsity.is_below(phi), certified: c.exhaustive },
    }
}

/// Sparsest cut: exact for small graphs, heuristic otherwise. `None` when the
/// graph has fewer than two vertices.
pub fn sparsest_cut<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>) -> Option<SparsestCut> {
    if g.n() < 2 {
        return None;
    }
    if g.n() <= EXHAUSTIVE_LIMIT {
        let (side, sparsity) = exhaustive_sparsest(g, d);
        Some(SparsestCut { side, sparsity, exhaustive: true })
    } else {
        let (side, sparsity) = heuristic_sparsest(g, d);
        Some(SparsestCut { side, sparsity, exhaustive: false })
    }
}

fn exhaustive_sparsest<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>) -> (VertexSet, Sparsity) {
    let n = g.n();
    let mut nbrs = vec![Vec::new(); n];
    for e in g.edges() {
        nbrs[e.u].push((e.v, e.w.wide() as i128));
        nbrs[e.v].push((e.u, e.w.wide() as i128));
    }
    // vertex n-1 stays outside; each cut is seen once
    let mut mask = 0u64;
    let mut cut: i128 = 0;
    let mut demand: u128 = 0;
    let mut best: Option<(u64, Sparsity)> = None;
    for i in 1u64..(1u64 << (n - 1)) {
        let x = i.trailing_zeros() as usize;
        let inside = mask >> x & 1;
        for &(y, w) in &nbrs[x] {
            cut += if mask >> y & 1 == inside { w } else { -w };
        }
        if inside == 1 {
            demand -= d.get(x).wide();
        } else {
            demand += d.get(x).wide();
        }
        mask ^= 1 << x;
        let s = Sparsity::new(cut as u128, demand, d.total() - demand);
        if best.map_or(true, |(_, b)| s < b) {
            best = Some((mask, s));
        }
    }
    let (mask, s) = best.expect("n >= 2");
    (VertexSet::from_mask(n, mask), s)
}

/// Evaluates every proper prefix of `order` and returns the sparsest.
fn sweep<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>, order: &[VertexId], best: &mut Option<(VertexSet, Sparsity)>) {
    let n = g.n();
    let mut in_set = vec![false; n];
    let mut cut: i128 = 0;
    let mut demand: u128 = 0;
    let mut best_len = None;
    let mut best_s = best.as_ref().map(|b| b.1);
    for (i, &v) in order.iter().enumerate().take(n - 1) {
        for &(y, e) in g.neighbors(v) {
            let w = g.edges()[e].w.wide() as i128;
            cut += if in_set[y] { -w } else { w };
        }
        in_set[v] = true;
        demand += d.get(v).wide();
        let s = Sparsity::new(cut as u128, demand, d.total() - demand);
        if best_s.map_or(true, |b| s < b) {
            best_s = Some(s);
            best_len = Some(i + 1);
        }
    }
    if let Some(len) = best_len {
        *best = Some((VertexSet::from_iter(n, order[..len].iter().copied()), best_s.unwrap()));
    }
}

fn heuristic_sparsest<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>) -> (VertexSet, Sparsity) {
    let n = g.n();
    let mut best: Option<(VertexSet, Sparsity)> = None;

    let comps = g.components();
    if comps.len() > 1 {
        for c in &comps {
            let s = sparsity(g, d, c).expect("proper component");
            if best.as_ref().map_or(true, |b| s < b.1) {
                best = Some((c.clone(), s));
            }
        }
    }

    if n <= SPECTRAL_LIMIT {
        let scale: Vec<f64> = (0..n)
            .map(|v| (d.get(v).wide() as f64 + g.weighted_degree(v).wide() as f64 + 1.0).sqrt())
            .collect();
        let mut m = DMatrix::<f64>::zeros(n, n);
        for e in g.edges() {
            let w = e.w.wide() as f64;
            m[(e.u, e.u)] += w;
            m[(e.v, e.v)] += w;
            m[(e.u, e.v)] -= w;
            m[(e.v, e.u)] -= w;
        }
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] /= scale[i] * scale[j];
            }
        }
        let eig = SymmetricEigen::new(m);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        for &k in idx.iter().skip(1).take(SPECTRAL_VECTORS) {
            let x: Vec<f64> = (0..n).map(|v| eig.eigenvectors[(v, k)] / scale[v]).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
            sweep(g, d, &order, &mut best);
            order.reverse();
            sweep(g, d, &order, &mut best);
        }
    }

    let stride = n.div_ceil(256).max(1);
    for start in (0..n).step_by(stride) {
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut q = VecDeque::from([start]);
        seen[start] = true;
        while let Some(x) = q.pop_front() {
            order.push(x);
            let mut next: Vec<usize> = g.neighbors(x).iter().map(|&(y, _)| y).filter(|&y| !seen[y]).collect();
            next.sort_unstable();
            for y in next {
                seen[y] = true;
                q.push_back(y);
            }
        }
        order.extend((0..n).filter(|&v| !seen[v]));
        sweep(g, d, &order, &mut best);
    }
    best.expect("n >= 2")
}

/// Induced subgraph on `cluster`, with local ids in ascending global order.
pub fn induced<W: Weight>(g: &WeightedGraph<W>, cluster: &VertexSet) -> (WeightedGraph<W>, Vec<VertexId>) {
    let members = cluster.to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let sub = WeightedGraph::new(
        members.len(),
        g.edges().iter().filter(|e| cluster.contains(e.u) && cluster.contains(e.v)).map(|e| (local[e.u], local[e.v], e.w)),
    )
    .expect("subgraph of a valid graph");
    (sub, members)
}

/// `d_i(v) = d(v) + w(E({v}, V \ V_i))` for the members of `cluster`, in
/// ascending vertex order.
pub fn augmented_demands<W: Weight>(g: &WeightedGraph<W>, d: &DemandVector<W>, cluster: &VertexSet) -> DemandVector<W> {
    DemandVector::new(cluster.iter().map(|v| d.get(v) + g.weight_leaving(v, cluster)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster<W> {
    pub vertices: VertexSet,
    /// Augmented demands of the members, ascending by vertex id.
    pub demands: DemandVector<W>,
    /// Exhaustively verified `(φ, d_i)`-expander.
    pub certified: bool,
}

impl<W: Weight> Cluster<W> {
    pub fn demand_of(&self, v: VertexId) -> Option<W> {
        self.vertices.iter().position(|x| x == v).map(|i| self.demands.get(i))
    }
}

fn ser_phi<S: Serializer>(phi: &Phi, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&phi.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpanderDecomposition<W> {
    /// Clusters ordered by smallest member.
    pub clusters: Vec<Cluster<W>>,
    pub inter_cluster_weight: W,
    #[serde(serialize_with = "ser_phi")]
    pub phi: Phi,
    pub budget: u128,
    pub splits: usize,
}

impl<W: Weight> ExpanderDecomposition<W> {
    pub fn cluster_of(&self, v: VertexId) -> Option<usize> {
        self.clusters.iter().position(|c| c.vertices.contains(v))
    }

    pub fn all_certified(&self) -> bool {
        self.clusters.iter().all(|c| c.certified)
    }
}

/// `⌊c_b · φ · d(V) · max(1, ⌈lg n⌉)²⌋`.
pub fn decomposition_budget(n: usize, demand_total: u128, phi: Phi, budget_const: Phi) -> u128 {
    let lg = (ceil_log2(n) as u128).max(1);
    let num = *budget_const.numer() as u128 * *phi.numer() as u128;
    let den = *budget_const.denom() as u128 * *phi.denom() as u128;
    num.saturating_mul(demand_total).saturating_mul(lg * lg) / den
}

pub fn check_phi(phi: Phi) -> Result<()> {
    if *phi.numer() == 0 || phi > Phi::from_integer(1) {
        return Err(Error::InvalidParameter(format!("phi must lie in (0, 1], got {phi}")));
    }
    Ok(())
}

pub fn expander_decompose<W: Weight>(
    g: &WeightedGraph<W>,
    d: &DemandVector<W>,
    phi: Phi,
    budget_const: Phi,
) -> Result<ExpanderDecomposition<W>> {
    check_phi(phi)?;
    if d.len() != g.n() {
        return Err(Error::InvalidParameter("demand vector length differs from n".into()));
    }
    let n = g.n();
    let cap = 4 * n;
    let mut splits = 0;
    let mut done = Vec::new();
    let mut queue: VecDeque<VertexSet> = VecDeque::new();
    if n > 0 {
        queue.push_back(VertexSet::full(n));
    }
    while let Some(cluster) = queue.pop_front() {
        let demands = augmented_demands(g, d, &cluster);
        if cluster.len() < 2 {
            done.push(Cluster { vertices: cluster, demands, certified: true });
            continue;
        }
        let (sub, members) = induced(g, &cluster);
        let found = sparsest_cut(&sub, &demands).expect("two or more vertices");
        if found.sparsity.is_below(phi) {
            splits += 1;
            if splits > cap {
                return Err(Error::RefinementCap(cap));
            }
            let side = VertexSet::from_iter(n, found.side.iter().map(|i| members[i]));
            let rest = cluster.difference(&side);
            queue.push_back(side);
            queue.push_back(rest);
        } else {
            done.push(Cluster { vertices: cluster, demands, certified: found.exhaustive });
        }
    }
    done.sort_by_key(|c| c.vertices.first());
    let mut owner = vec![0; n];
    for (i, c) in done.iter().enumerate() {
        for v in c.vertices.iter() {
            owner[v] = i;
        }
    }
    let inter: W = g.edges().iter().filter(|e| owner[e.u] != owner[e.v]).map(|e| e.w).sum();
    let budget = decomposition_budget(n, d.total(), phi, budget_const);
    if inter.wide() > budget {
        return Err(Error::DecompositionBudget { weight: inter.wide(), budget });
    }
    Ok(ExpanderDecomposition { clusters: done, inter_cluster_weight: inter, phi, budget, splits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn degrees(g: &WeightedGraph<u64>) -> DemandVector<u64> {
        DemandVector::new((0..g.n()).map(|v| g.weighted_degree(v)).collect())
    }

    #[test]
    fn wide_products() {
        assert_eq!(mul_wide(u128::MAX, 2), (1, u128::MAX - 1));
        assert_eq!(mul_wide(1 << 64, 1 << 64), (1, 0));
        assert_eq!(cmp_products(u128::MAX, 3, u128::MAX - 1, 3), Ordering::Greater);
    }

    #[test]
    fn k4_sparsity() {
        let k4 = gen::clique(4);
        let d = degrees(&k4);
        assert_eq!(sparsity(&k4, &d, &VertexSet::from_iter(4, [0])).unwrap(), Sparsity::Finite { cut: 3, demand: 3 });
        let two = sparsity(&k4, &d, &VertexSet::from_iter(4, [0, 1])).unwrap();
        assert_eq!(two.cmp(&Sparsity::Finite { cut: 2, demand: 3 }), Ordering::Equal);
        let z = DemandVector::uniform_on(&VertexSet::from_iter(4, [0]), 5u64);
        assert_eq!(sparsity(&k4, &z, &VertexSet::from_iter(4, [1, 2])).unwrap(), Sparsity::Infinite);
        assert!(sparsity(&k4, &d, &VertexSet::empty(4)).is_err());
    }

    #[test]
    fn verify_examples() {
        let k4 = gen::clique(4);
        let v = verify_expander(&k4, &degrees(&k4), Phi::new(1, 2));
        assert!(v.is_expander && v.certified);
        let db = gen::dumbbell(6);
        assert!(!verify_expander(&db, &degrees(&db), Phi::new(1, 2)).is_expander);
        let single = gen::clique(1);
        assert!(verify_expander(&single, &DemandVector::zeros(1), Phi::new(1, 2)).is_expander);
    }

    #[test]
    fn k6_single_cluster() {
        let k6 = gen::clique(6);
        let d = DemandVector::uniform_on(&VertexSet::full(6), 1u64);
        let dec = expander_decompose(&k6, &d, Phi::new(1, 8), Phi::from_integer(1)).unwrap();
        assert_eq!(dec.clusters.len(), 1);
        assert_eq!(dec.inter_cluster_weight, 0);
        assert!(dec.all_certified());
    }

    #[test]
    fn two_k5_split() {
        let g = gen::dumbbell(10);
        let d = DemandVector::uniform_on(&VertexSet::full(10), 1u64);
        let dec = expander_decompose(&g, &d, Phi::new(1, 4), Phi::from_integer(1)).unwrap();
        let sides: Vec<VertexSet> = dec.clusters.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(sides, vec![VertexSet::from_iter(10, 0..5), VertexSet::from_iter(10, 5..10)]);
        assert_eq!(dec.inter_cluster_weight, 1);
        for c in &dec.clusters {
            for v in c.vertices.iter() {
                assert_eq!(c.demand_of(v).unwrap() - d.get(v), g.weight_leaving(v, &c.vertices));
            }
        }
    }

    #[test]
    fn trivial_graphs() {
        let one = gen::clique(1);
        let dec = expander_decompose(&one, &DemandVector::zeros(1), Phi::new(1, 2), Phi::from_integer(1)).unwrap();
        assert_eq!(dec.clusters.len(), 1);
        assert_eq!(dec.inter_cluster_weight, 0);
        assert!(expander_decompose(&one, &DemandVector::zeros(1), Phi::new(3, 2), Phi::from_integer(1)).is_err());
    }

    #[test]
    fn large_cycle_splits_heuristically() {
        let g = gen::cycle(64);
        let d = DemandVector::uniform_on(&VertexSet::full(64), 2u64);
        let dec = expander_decompose(&g, &d, Phi::new(1, 4), Phi::from_integer(1)).unwrap();
        assert!(dec.clusters.len() > 1);
        assert!(dec.all_certified(), "pieces end up small enough to certify");
        for c in &dec.clusters {
            let (sub, _) = induced(&g, &c.vertices);
            assert!(verify_expander(&sub, &c.demands, dec.phi).is_expander);
        }
    }
}
