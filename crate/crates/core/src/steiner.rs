//! Steiner minimum cut drivers.
//!
//! The deterministic driver keeps a working terminal set `U ⊆ T`. While `U`
//! holds at least `k` terminals it runs isolating cuts over an isolator family
//! on `U` (catching every minimum cut with few terminals of `U` on one side),
//! then shrinks `U` by keeping a few representatives per cluster of an
//! expander decomposition (which preserves both sides of every cut that is
//! balanced with respect to `U`). Once `U` is small every pair is cut by a
//! direct s–t flow. The global minimum cut is the case `T = V`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expander::{check_phi, expander_decompose, DemandVector, ExpanderDecomposition, Phi};
use crate::graph::{Cut, VertexId, VertexSet, WeightedGraph};
use crate::isolating::{ceil_log2, minimum_isolating_cuts};
use crate::maxflow::{max_flow, FlowMeter, MaxFlowEngine};
use crate::oracles::{naive_steiner, stoer_wagner};
use crate::scalar::Weight;
use crate::splitters::isolator_family_min2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerInstance<W> {
    graph: WeightedGraph<W>,
    terminals: VertexSet,
}

impl<W: Weight> SteinerInstance<W> {
    pub fn new(graph: WeightedGraph<W>, terminals: VertexSet) -> Result<Self> {
        if terminals.universe() != graph.n() {
            return Err(Error::InvalidParameter("terminal set universe differs from n".into()));
        }
        if terminals.len() < 2 {
            return Err(Error::TooFewTerminals { need: 2, got: terminals.len() });
        }
        Ok(SteinerInstance { graph, terminals })
    }

    /// All vertices are terminals.
    pub fn global(graph: WeightedGraph<W>) -> Result<Self> {
        let t = VertexSet::full(graph.n());
        Self::new(graph, t)
    }

    pub fn graph(&self) -> &WeightedGraph<W> {
        &self.graph
    }

    pub fn terminals(&self) -> &VertexSet {
        &self.terminals
    }

    pub fn is_global(&self) -> bool {
        self.terminals.len() == self.graph.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMode {
    /// Powers of two up to the lightest terminal degree.
    Guess,
    /// Exact value from Stoer–Wagner when `T = V`; guessing otherwise.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgoConfig {
    pub phi: Phi,
    /// Overrides the derived `⌈(1+1/φ)³⌉`.
    pub k: Option<usize>,
    pub budget_const: Phi,
    /// Overrides the default `⌈4·log₂ n⌉` repetitions per scale.
    pub rand_reps: Option<usize>,
    pub seed: u64,
    pub fallback_enabled: bool,
    pub estimate: EstimateMode,
}

impl Default for AlgoConfig {
    fn default() -> Self {
        AlgoConfig {
            phi: Phi::new(1, 16),
            k: None,
            budget_const: Phi::from_integer(1),
            rand_reps: None,
            seed: 0,
            fallback_enabled: true,
            estimate: EstimateMode::Guess,
        }
    }
}

impl AlgoConfig {
    pub fn with_phi(phi: Phi) -> Self {
        AlgoConfig { phi, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        check_phi(self.phi)?;
        if self.k == Some(0) {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if self.rand_reps == Some(0) {
            return Err(Error::InvalidParameter("rand_reps must be at least 1".into()));
        }
        if *self.budget_const.numer() == 0 {
            return Err(Error::InvalidParameter("budget constant must be positive".into()));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k.unwrap_or_else(|| derived_k(self.phi))
    }

    pub fn reps(&self, n: usize) -> usize {
        self.rand_reps.unwrap_or_else(|| ((4.0 * (n.max(2) as f64).log2()).ceil() as usize).max(1))
    }
}

fn phi_parts(phi: Phi) -> (u128, u128) {
    (*phi.numer() as u128, *phi.denom() as u128)
}

/// `⌈(1+1/φ)³⌉`.
pub fn derived_k(phi: Phi) -> usize {
    let (a, b) = phi_parts(phi);
    match ((a + b).checked_pow(3), a.checked_pow(3)) {
        (Some(x), Some(y)) => usize::try_from(x.div_ceil(y)).unwrap_or(usize::MAX),
        _ => ((1.0 + b as f64 / a as f64).powi(3)).ceil() as usize,
    }
}

/// `⌈1+1/φ⌉`, the number of representatives kept per large cluster.
pub fn large_pick(phi: Phi) -> usize {
    let (a, b) = phi_parts(phi);
    (a + b).div_ceil(a) as usize
}

/// `count ≥ (1+1/φ)³`.
pub fn meets_balance_threshold(count: usize, phi: Phi) -> bool {
    let (a, b) = phi_parts(phi);
    match (a.checked_pow(3), (a + b).checked_pow(3)) {
        (Some(y), Some(x)) => (count as u128).checked_mul(y).map_or(true, |c| c >= x),
        _ => count >= derived_k(phi),
    }
}

fn fold<W: Weight>(best: &mut Option<Cut<W>>, c: &Cut<W>) -> bool {
    if best.as_ref().map_or(true, |b| c.weight < b.weight) {
        *best = Some(c.clone());
        true
    } else {
        false
    }
}

fn pairs(x: usize) -> u128 {
    (x as u128) * (x.saturating_sub(1) as u128) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Estimate<W> {
    /// Candidate values of `λ̃`, ascending. Empty when the terminals are split
    /// across components.
    pub guesses: Vec<W>,
    /// Lightest terminal degree, an upper bound on `λ`.
    pub upper: W,
    /// The single guess is the exact minimum cut value.
    pub exact: bool,
}

impl<W: Weight> Estimate<W> {
    pub fn is_disconnected(&self) -> bool {
        self.guesses.is_empty()
    }
}

fn zero_cut_side<W: Weight>(inst: &SteinerInstance<W>) -> Option<VertexSet> {
    let t = inst.terminals();
    let first = t.first()?;
    let comp = inst.graph().components().into_iter().find(|c| c.contains(first))?;
    (!t.is_subset(&comp)).then_some(comp)
}

/// Guesses for `λ̃`. One of them lies in `[λ, 2λ)`, so within `[λ, 3λ]`.
pub fn approx_mincut_estimate<W: Weight>(inst: &SteinerInstance<W>, mode: EstimateMode) -> Result<Estimate<W>> {
    if zero_cut_side(inst).is_some() {
        return Ok(Estimate { guesses: Vec::new(), upper: W::zero(), exact: true });
    }
    let g = inst.graph();
    if mode == EstimateMode::Oracle && inst.is_global() {
        let c = stoer_wagner(g)?;
        return Ok(Estimate { guesses: vec![c.weight], upper: c.weight, exact: true });
    }
    let upper = inst.terminals().iter().map(|v| g.weighted_degree(v)).min().expect("two terminals");
    let mut guesses = Vec::new();
    let mut x = W::one();
    loop {
        guesses.push(x);
        if x >= upper {
            break;
        }
        x = x + x;
    }
    Ok(Estimate { guesses, upper, exact: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Det,
    Rand,
    StoerWagner,
    Naive,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Det, Method::Rand, Method::StoerWagner, Method::Naive];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Det => "det",
            Method::Rand => "rand",
            Method::StoerWagner => "stoer-wagner",
            Method::Naive => "naive",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Method::Rand)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method '{s}'")))
    }
}

fn ser_phi<S: Serializer>(phi: &Phi, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&phi.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub guess: u128,
    pub u_size: usize,
    pub family_size: usize,
    /// The unbalanced family for this `U` was already run under an earlier guess.
    pub memo_hit: bool,
    pub unbalanced_weight: Option<u128>,
    pub clusters: usize,
    pub certified: bool,
    pub inter_cluster_weight: u128,
    pub u_prime_size: Option<usize>,
    pub halved: bool,
    pub error: Option<String>,
    #[serde(skip)]
    pub u: VertexSet,
    /// Terminals of `U` per cluster, empty ones included.
    #[serde(skip)]
    pub parts: Vec<VertexSet>,
    #[serde(skip)]
    pub u_prime: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetTrace {
    pub k: usize,
    #[serde(serialize_with = "ser_phi")]
    pub phi: Phi,
    pub guesses: Vec<u128>,
    pub skipped_guesses: Vec<u128>,
    pub rounds: Vec<RoundTrace>,
    /// `|U|` entering each pairwise phase.
    pub final_u_sizes: Vec<usize>,
    /// Distinct s–t flows run by the pairwise phases and the fallback.
    pub pair_flows: usize,
    pub fallback_used: bool,
    pub zero_cut: bool,
    pub budget: u128,
    pub budget_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleTrace {
    pub scale: u32,
    pub samples: usize,
    pub skipped: usize,
    pub calls: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandTrace {
    pub seed: u64,
    pub reps: usize,
    pub scales: Vec<ScaleTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Trace {
    Deterministic(DetTrace),
    Randomized(RandTrace),
    Naive,
    StoerWagner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutReport<W> {
    pub method: Method,
    pub best_cut: Cut<W>,
    pub lambda: W,
    pub meter: FlowMeter,
    pub trace: Trace,
}

impl<W: Weight> CutReport<W> {
    fn new(method: Method, best_cut: Cut<W>, meter: FlowMeter, trace: Trace) -> Self {
        CutReport { method, lambda: best_cut.weight, best_cut, meter, trace }
    }

    /// Side and complement both meet `T` and the weight matches a recompute.
    pub fn is_valid_for(&self, inst: &SteinerInstance<W>) -> bool {
        self.best_cut.separates(inst.terminals()) && self.best_cut.is_valid_for(inst.graph()) && self.lambda == self.best_cut.weight
    }

    pub fn det_trace(&self) -> Option<&DetTrace> {
        match &self.trace {
            Trace::Deterministic(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbalancedOutcome<W> {
    pub cut: Option<Cut<W>>,
    pub family_size: usize,
}

/// Isolating cuts for every set of the min-2 isolator family on `U`.
/// Finds a cut no heavier than any cut `S` with `1 ≤ |S ∩ U| ≤ k`.
pub fn unbalanced_case<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    u: &VertexSet,
    k: usize,
    meter: &mut FlowMeter,
) -> Result<UnbalancedOutcome<W>> {
    if u.len() < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: u.len() });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let family = isolator_family_min2(u.len(), k.min(u.len() - 1))?;
    let members = u.to_vec();
    let mut best = None;
    for set in &family.sets {
        let r = VertexSet::from_iter(g.n(), set.iter().map(|i| members[i]));
        for c in minimum_isolating_cuts(engine, g, &r, meter)?.cuts {
            fold(&mut best, &c.cut);
        }
    }
    Ok(UnbalancedOutcome { cut: best, family_size: family.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusterClass {
    Trivial,
    Small,
    Large,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sparsification<W> {
    pub u_prime: VertexSet,
    pub decomposition: ExpanderDecomposition<W>,
    pub classes: Vec<ClusterClass>,
}

impl<W: Weight> Sparsification<W> {
    /// `U_i = U ∩ V_i` for each cluster.
    pub fn parts(&self, u: &VertexSet) -> Vec<VertexSet> {
        self.decomposition.clusters.iter().map(|c| c.vertices.intersection(u)).collect()
    }
}

/// Decomposes with demand `λ̃` on `U` and keeps the lowest-id terminal of
/// each small cluster and the `⌈1+1/φ⌉` lowest of each large one.
pub fn sparsify_terminals<W: Weight>(
    g: &WeightedGraph<W>,
    u: &VertexSet,
    phi: Phi,
    lambda_tilde: W,
    budget_const: Phi,
) -> Result<Sparsification<W>> {
    check_phi(phi)?;
    if lambda_tilde.is_zero() {
        return Err(Error::InvalidParameter("lambda estimate must be positive".into()));
    }
    let d = DemandVector::uniform_on(u, lambda_tilde);
    let decomposition = expander_decompose(g, &d, phi, budget_const)?;
    let (a, b) = phi_parts(phi);
    let pick = large_pick(phi);
    let mut u_prime = VertexSet::empty(g.n());
    let mut classes = Vec::with_capacity(decomposition.clusters.len());
    for c in &decomposition.clusters {
        let part = c.vertices.intersection(u);
        let size = part.len() as u128;
        let (class, take) = if size == 0 {
            (ClusterClass::Trivial, 0)
        } else if size * a * a <= b * b {
            (ClusterClass::Small, 1)
        } else {
            (ClusterClass::Large, pick)
        };
        for v in part.iter().take(take) {
            u_prime.insert(v);
        }
        classes.push(class);
    }
    Ok(Sparsification { u_prime, decomposition, classes })
}

/// Flow calls made by one [`unbalanced_case`] on a set of `u` terminals:
/// `Σ_R (⌈lg|R|⌉ + 1)` over the family.
pub fn unbalanced_cost(u: usize, k: usize) -> Result<u128> {
    if u < 2 || k == 0 {
        return Ok(0);
    }
    let family = isolator_family_min2(u, k.min(u - 1))?;
    Ok(family.sets.iter().map(|r| ceil_log2(r.len()) as u128 + 1).sum())
}

/// Worst-case flow calls of [`steiner_mincut_det`] without fallback.
///
/// The first round runs once (its `U = T` is shared by every guess). Round
/// `r ≥ 1` of a guess has `k ≤ |U| ≤ ⌊|T|/2^r⌋` and is charged the costliest
/// such size; the pairwise phase sees fewer than `k` terminals.
pub fn call_budget(terminals: usize, guesses: usize, k: usize) -> Result<u128> {
    let k = k.max(2);
    if terminals < k {
        return Ok(pairs(terminals));
    }
    let mut prefix_max = vec![0u128; terminals / 2 + 1];
    for u in k..=terminals / 2 {
        prefix_max[u] = prefix_max[u - 1].max(unbalanced_cost(u, k)?);
    }
    let mut later = 0;
    let mut cap = terminals / 2;
    while cap >= k {
        later += prefix_max[cap];
        cap /= 2;
    }
    Ok(unbalanced_cost(terminals, k)? + guesses as u128 * (later + pairs(k - 1)))
}

struct PairCache<W> {
    done: BTreeSet<(VertexId, VertexId)>,
    best: Option<Cut<W>>,
}

impl<W: Weight> PairCache<W> {
    fn cut<E: MaxFlowEngine>(&mut self, engine: &E, g: &WeightedGraph<W>, s: VertexId, t: VertexId, meter: &mut FlowMeter) -> Result<()> {
        if self.done.insert((s, t)) {
            let f = max_flow(engine, g, s, t, meter)?;
            fold(&mut self.best, &Cut { side: f.min_side, weight: f.value });
        }
        Ok(())
    }
}

pub fn steiner_mincut_det<E: MaxFlowEngine, W: Weight>(engine: &E, inst: &SteinerInstance<W>, cfg: &AlgoConfig) -> Result<CutReport<W>> {
    cfg.validate()?;
    let g = inst.graph();
    let t = inst.terminals();
    let k = cfg.k().max(2);
    let mut meter = FlowMeter::new();
    let est = approx_mincut_estimate(inst, cfg.estimate)?;
    let mut trace = DetTrace {
        k,
        phi: cfg.phi,
        guesses: est.guesses.iter().map(|x| x.wide()).collect(),
        skipped_guesses: Vec::new(),
        rounds: Vec::new(),
        final_u_sizes: Vec::new(),
        pair_flows: 0,
        fallback_used: false,
        zero_cut: false,
        budget: 0,
        budget_ok: true,
    };
    if let Some(side) = zero_cut_side(inst) {
        trace.zero_cut = true;
        let cut = Cut { side, weight: W::zero() };
        return Ok(CutReport::new(Method::Det, cut, meter, Trace::Deterministic(trace)));
    }
    trace.budget = call_budget(t.len(), est.guesses.len(), k)?;

    let mut best: Option<Cut<W>> = None;
    let mut seen_u: BTreeMap<VertexSet, usize> = BTreeMap::new();
    let mut pair_cache: PairCache<W> = PairCache { done: BTreeSet::new(), best: None };
    let mut finals = Vec::new();
    if t.len() < k {
        finals.push(t.clone());
    } else {
        for &guess in &est.guesses {
            let bound = best.as_ref().map(|b| b.weight.wide()).into_iter().chain(pair_cache.best.as_ref().map(|b| b.weight.wide())).min();
            if bound.is_some_and(|b| guess.wide() >= 2 * b) {
                trace.skipped_guesses.push(guess.wide());
                continue;
            }
            let mut u = t.clone();
            let mut finished = false;
            while u.len() >= k {
                let (family_size, memo_hit) = match seen_u.get(&u) {
                    Some(&size) => (size, true),
                    None => {
                        let out = unbalanced_case(engine, g, &u, k, &mut meter)?;
                        if let Some(c) = &out.cut {
                            fold(&mut best, c);
                        }
                        seen_u.insert(u.clone(), out.family_size);
                        (out.family_size, false)
                    }
                };
                let mut round = RoundTrace {
                    guess: guess.wide(),
                    u_size: u.len(),
                    family_size,
                    memo_hit,
                    unbalanced_weight: best.as_ref().map(|b| b.weight.wide()),
                    clusters: 0,
                    certified: false,
                    inter_cluster_weight: 0,
                    u_prime_size: None,
                    halved: false,
                    error: None,
                    u: u.clone(),
                    parts: Vec::new(),
                    u_prime: None,
                };
                match sparsify_terminals(g, &u, cfg.phi, guess, cfg.budget_const) {
                    Ok(sp) => {
                        round.clusters = sp.decomposition.clusters.len();
                        round.certified = sp.decomposition.all_certified();
                        round.inter_cluster_weight = sp.decomposition.inter_cluster_weight.wide();
                        round.u_prime_size = Some(sp.u_prime.len());
                        round.parts = sp.parts(&u);
                        round.u_prime = Some(sp.u_prime.clone());
                        if 2 * sp.u_prime.len() <= u.len() {
                            round.halved = true;
                            trace.rounds.push(round);
                            u = sp.u_prime;
                            continue;
                        }
                    }
                    Err(e) if e.is_internal() => return Err(e),
                    Err(e) => round.error = Some(e.to_string()),
                }
                let after = round.u_prime_size.unwrap_or(u.len());
                trace.rounds.push(round);
                if !cfg.fallback_enabled {
                    return Err(Error::SparsificationFailed { before: u.len(), after });
                }
                trace.fallback_used = true;
                let s = u.first().expect("nonempty U");
                for x in u.iter().skip(1) {
                    pair_cache.cut(engine, g, s, x, &mut meter)?;
                }
                finished = true;
                break;
            }
            if !finished {
                finals.push(u);
            }
        }
    }
    for u in &finals {
        trace.final_u_sizes.push(u.len());
        let members = u.to_vec();
        for (i, &s) in members.iter().enumerate() {
            for &x in &members[i + 1..] {
                pair_cache.cut(engine, g, s, x, &mut meter)?;
            }
        }
    }
    trace.pair_flows = pair_cache.done.len();
    if let Some(c) = &pair_cache.best {
        fold(&mut best, c);
    }
    let best = best.ok_or_else(|| Error::ContractViolation("deterministic driver produced no cut".into()))?;
    trace.budget_ok = !trace.fallback_used && meter.call_count as u128 <= trace.budget;
    Ok(CutReport::new(Method::Det, best, meter, Trace::Deterministic(trace)))
}

pub fn global_mincut_det<E: MaxFlowEngine, W: Weight>(engine: &E, g: &WeightedGraph<W>, cfg: &AlgoConfig) -> Result<CutReport<W>> {
    if g.n() < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: g.n() });
    }
    steiner_mincut_det(engine, &SteinerInstance::global(g.clone())?, cfg)
}

/// Isolating cuts on random terminal samples at every density `2^-i`, plus
/// one s–t cut between the two lowest terminals.
pub fn steiner_mincut_rand<E: MaxFlowEngine, W: Weight>(engine: &E, inst: &SteinerInstance<W>, cfg: &AlgoConfig) -> Result<CutReport<W>> {
    cfg.validate()?;
    let g = inst.graph();
    let t = inst.terminals();
    let reps = cfg.reps(g.n());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut meter = FlowMeter::new();
    let mut best = None;
    let mut scales = Vec::new();
    for i in 0..=t.len().ilog2() {
        let before = meter.call_count;
        let mut st = ScaleTrace { scale: i, samples: 0, skipped: 0, calls: 0 };
        let rounds = if i == 0 { 1 } else { reps };
        for _ in 0..rounds {
            let r = if i == 0 {
                t.clone()
            } else {
                VertexSet::from_iter(g.n(), t.iter().filter(|_| rng.gen_range(0u64..1 << i) == 0))
            };
            st.samples += 1;
            if r.len() < 2 {
                st.skipped += 1;
                continue;
            }
            for c in minimum_isolating_cuts(engine, g, &r, &mut meter)?.cuts {
                fold(&mut best, &c.cut);
            }
        }
        st.calls = meter.call_count - before;
        scales.push(st);
    }
    let mut it = t.iter();
    let (s, x) = (it.next().unwrap(), it.next().unwrap());
    let f = max_flow(engine, g, s, x, &mut meter)?;
    fold(&mut best, &Cut { side: f.min_side, weight: f.value });
    let trace = Trace::Randomized(RandTrace { seed: cfg.seed, reps, scales });
    Ok(CutReport::new(Method::Rand, best.expect("fixed pair cut"), meter, trace))
}

/// Runs any method under a common report shape.
pub fn run_method<E: MaxFlowEngine, W: Weight>(engine: &E, inst: &SteinerInstance<W>, cfg: &AlgoConfig, method: Method) -> Result<CutReport<W>> {
    match method {
        Method::Det => steiner_mincut_det(engine, inst, cfg),
        Method::Rand => steiner_mincut_rand(engine, inst, cfg),
        Method::Naive => {
            let mut meter = FlowMeter::new();
            let cut = naive_steiner(engine, inst.graph(), inst.terminals(), &mut meter)?;
            Ok(CutReport::new(Method::Naive, cut, meter, Trace::Naive))
        }
        Method::StoerWagner => {
            if !inst.is_global() {
                return Err(Error::InvalidParameter("stoer-wagner needs T = V".into()));
            }
            let cut = stoer_wagner(inst.graph())?;
            Ok(CutReport::new(Method::StoerWagner, cut, FlowMeter::new(), Trace::StoerWagner))
        }
    }
}

/// Clusters with terminals on both sides of `a`.
pub fn clusters_cut(parts: &[VertexSet], a: &VertexSet) -> usize {
    parts.iter().filter(|p| {
        let inside = p.intersection_len(a);
        inside > 0 && inside < p.len()
    }).count()
}

/// `Σᵢ min{|Uᵢ∩A|, |Uᵢ∩B|} ≤ w(E(A,B)) / (φλ)`, exactly.
pub fn claim_cut_ab(parts: &[VertexSet], a: &VertexSet, cut_weight: u128, phi: Phi, lambda: u128) -> bool {
    let (num, den) = phi_parts(phi);
    let sum: u128 = parts
        .iter()
        .map(|p| {
            let inside = p.intersection_len(a);
            inside.min(p.len() - inside) as u128
        })
        .sum();
    sum * num * lambda <= cut_weight * den
}

/// At most `1+1/φ` clusters have terminals on both sides of `a`.
pub fn claim_cut_v(parts: &[VertexSet], a: &VertexSet, phi: Phi) -> bool {
    let (num, den) = phi_parts(phi);
    clusters_cut(parts, a) as u128 * num <= num + den
}

/// With `ℓ ≥ 2` clusters holding terminals, each such cluster's boundary is
/// a Steiner cut, so `ℓ·λ ≤ 2·inter_cluster_weight`.
pub fn claim_num_clusters(parts: &[VertexSet], inter_cluster_weight: u128, lambda: u128) -> bool {
    let l = parts.iter().filter(|p| !p.is_empty()).count() as u128;
    l <= 1 || l * lambda <= 2 * inter_cluster_weight
}

/// A minimum cut side with at least `(1+1/φ)³` terminals of `U` on each side.
pub fn balance_witness<'a>(min_sides: &'a [VertexSet], u: &VertexSet, phi: Phi) -> Option<&'a VertexSet> {
    min_sides.iter().find(|s| {
        let inside = s.intersection_len(u);
        meets_balance_threshold(inside, phi) && meets_balance_threshold(u.len() - inside, phi)
    })
}

/// A minimum cut side holding between 1 and `k` terminals of `U`, with some
/// terminal of `U` outside.
pub fn unbalanced_witness(min_sides: &[VertexSet], u: &VertexSet, k: usize) -> Option<VertexSet> {
    min_sides.iter().find_map(|s| {
        let inside = s.intersection_len(u);
        let outside = u.len() - inside;
        if inside == 0 || outside == 0 {
            None
        } else if inside <= k {
            Some(s.clone())
        } else if outside <= k {
            Some(s.complement())
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::maxflow::Dinic;

    fn global(g: WeightedGraph<u64>) -> SteinerInstance<u64> {
        SteinerInstance::global(g).unwrap()
    }

    #[test]
    fn derived_constants() {
        assert_eq!(derived_k(Phi::new(1, 16)), 4913);
        assert_eq!(derived_k(Phi::from_integer(1)), 8);
        assert_eq!(derived_k(Phi::new(2, 3)), 16);
        assert_eq!(large_pick(Phi::new(1, 4)), 5);
        assert_eq!(large_pick(Phi::new(2, 3)), 3);
        assert!(meets_balance_threshold(8, Phi::from_integer(1)));
        assert!(!meets_balance_threshold(7, Phi::from_integer(1)));
        assert_eq!(AlgoConfig::default().reps(16), 16);
    }

    #[test]
    fn estimate_examples() {
        let e = approx_mincut_estimate(&global(gen::dumbbell(8)), EstimateMode::Guess).unwrap();
        assert!(e.guesses.iter().any(|&x| (1..=3).contains(&x)));
        let e = approx_mincut_estimate(&global(gen::cycle(8)), EstimateMode::Guess).unwrap();
        assert!(e.guesses.iter().any(|&x| (2..=6).contains(&x)));
        let e = approx_mincut_estimate(&global(gen::cycle(8)), EstimateMode::Oracle).unwrap();
        assert_eq!(e.guesses, vec![2]);
        let split = WeightedGraph::new(4, [(0, 1, 1u64), (2, 3, 1)]).unwrap();
        assert!(approx_mincut_estimate(&global(split), EstimateMode::Guess).unwrap().is_disconnected());
    }

    #[test]
    fn det_examples() {
        let cfg = AlgoConfig::default();
        let r = global_mincut_det(&Dinic, &gen::dumbbell(8), &cfg).unwrap();
        assert_eq!(r.lambda, 1);
        assert!(r.best_cut.side == VertexSet::from_iter(8, 0..4) || r.best_cut.side == VertexSet::from_iter(8, 4..8));
        assert_eq!(global_mincut_det(&Dinic, &gen::cycle(8), &cfg).unwrap().lambda, 2);
        assert_eq!(global_mincut_det(&Dinic, &gen::clique(5), &cfg).unwrap().lambda, 4);
        assert_eq!(global_mincut_det(&Dinic, &gen::cycle(10), &cfg).unwrap().lambda, 2);
        assert!(global_mincut_det(&Dinic, &gen::clique(1), &cfg).is_err());
    }

    #[test]
    fn det_loop_runs_with_small_k() {
        let cfg = AlgoConfig { k: Some(3), phi: Phi::new(1, 2), ..AlgoConfig::default() };
        let g = gen::dumbbell(12);
        let r = global_mincut_det(&Dinic, &g, &cfg).unwrap();
        assert_eq!(r.lambda, 1);
        let tr = r.det_trace().unwrap();
        assert!(!tr.rounds.is_empty());
        assert!(r.is_valid_for(&global(g)));
        assert_eq!(r.meter.call_count as usize, r.meter.log.len());
    }

    #[test]
    fn det_zero_cut() {
        let split = WeightedGraph::new(4, [(0, 1, 3u64), (2, 3, 1)]).unwrap();
        let inst = SteinerInstance::new(split, VertexSet::from_iter(4, [1, 3])).unwrap();
        let r = steiner_mincut_det(&Dinic, &inst, &AlgoConfig::default()).unwrap();
        assert_eq!(r.lambda, 0);
        assert_eq!(r.meter.call_count, 0);
        assert!(r.is_valid_for(&inst));
    }

    #[test]
    fn unbalanced_examples() {
        let g = gen::dumbbell(8);
        let mut m = FlowMeter::new();
        let u = VertexSet::from_iter(8, [0, 7]);
        assert_eq!(unbalanced_case(&Dinic, &g, &u, 1, &mut m).unwrap().cut.unwrap().weight, 1);
        let star = gen::star(6);
        let leaves = VertexSet::from_iter(7, 1..7);
        assert_eq!(unbalanced_case(&Dinic, &star, &leaves, 1, &mut m).unwrap().cut.unwrap().weight, 1);
        assert!(unbalanced_case(&Dinic, &star, &VertexSet::from_iter(7, [1]), 1, &mut m).is_err());
    }

    #[test]
    fn sparsify_examples() {
        let g = gen::dumbbell(10);
        let u = VertexSet::full(10);
        let sp = sparsify_terminals(&g, &u, Phi::new(1, 4), 1, Phi::from_integer(1)).unwrap();
        assert_eq!(sp.decomposition.clusters.len(), 2);
        assert!(sp.u_prime.intersection_len(&VertexSet::from_iter(10, 0..5)) >= 1);
        assert!(sp.u_prime.intersection_len(&VertexSet::from_iter(10, 5..10)) >= 1);

        let k9 = gen::clique(9);
        let sp = sparsify_terminals(&k9, &VertexSet::full(9), Phi::new(1, 2), 1, Phi::from_integer(1)).unwrap();
        assert_eq!(sp.classes, vec![ClusterClass::Large]);
        assert_eq!(sp.u_prime, VertexSet::from_iter(9, 0..3));
    }

    #[test]
    fn rand_examples() {
        let g = gen::dumbbell(8);
        let inst = SteinerInstance::new(g, VertexSet::from_iter(8, [0, 7])).unwrap();
        for seed in 0..5 {
            let cfg = AlgoConfig { seed, ..AlgoConfig::default() };
            assert_eq!(steiner_mincut_rand(&Dinic, &inst, &cfg).unwrap().lambda, 1);
        }
        let c8 = global(gen::cycle(8));
        let hits = (0..100).filter(|&seed| {
            let cfg = AlgoConfig { seed, ..AlgoConfig::default() };
            steiner_mincut_rand(&Dinic, &c8, &cfg).unwrap().lambda == 2
        });
        assert!(hits.count() >= 99);
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
