//! Minimum isolating cuts in `⌈lg|R|⌉ + 1` max-flow calls.
//!
//! Phase A computes a minimum cut for each of `⌈lg|R|⌉` bipartitions of `R`
//! that together separate every pair of terminals. Removing the union of
//! those cut edges leaves components each holding at most one terminal; the
//! minimal isolating cut of `v` lies inside `v`'s component `C_v`.
//!
//! Phase B finds every `S_v` with a single flow: each component is cut off
//! from the rest of the graph by contracting `V \ C_v` into a shared sink,
//! all terminals are merged into one source, and the resulting instances,
//! which only meet at the source and sink, are solved together.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Cut, VertexId, VertexSet, WeightedGraph};
use crate::maxflow::{max_flow, min_cut_separating, FlowMeter, MaxFlowEngine};
use crate::scalar::Weight;

/// Isolating cut for one terminal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatingCut<W> {
    pub terminal: VertexId,
    /// `S_v`, with `S_v ∩ R = {v}`.
    pub cut: Cut<W>,
    /// `C_v`, the component of `G \ F` holding `v`.
    pub component: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsolatingCutResult<W> {
    /// One entry per terminal, ascending by vertex id.
    pub cuts: Vec<IsolatingCut<W>>,
    pub phase_a: FlowMeter,
    pub phase_b: FlowMeter,
}

impl<W: Weight> IsolatingCutResult<W> {
    pub fn get(&self, v: VertexId) -> Option<&IsolatingCut<W>> {
        self.cuts.iter().find(|c| c.terminal == v)
    }

    /// Lightest isolating cut; ties go to the lowest terminal id.
    pub fn lightest(&self) -> Option<&Cut<W>> {
        self.cuts.iter().map(|c| &c.cut).min_by_key(|c| c.weight)
    }
}

pub fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// `⌈lg|R|⌉` bipartitions of `R`. Terminals get labels `0..|R|` in ascending
/// id order; bipartition `i` puts labels with bit `i` clear on the `A` side.
pub fn bipartition_schedule(r: &VertexSet) -> Result<Vec<(VertexSet, VertexSet)>> {
    if r.len() < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: r.len() });
    }
    let n = r.universe();
    let members = r.to_vec();
    Ok((0..ceil_log2(members.len()))
        .map(|bit| {
            let mut a = VertexSet::empty(n);
            let mut b = VertexSet::empty(n);
            for (label, &v) in members.iter().enumerate() {
                if label >> bit & 1 == 0 {
                    a.insert(v);
                } else {
                    b.insert(v);
                }
            }
            (a, b)
        })
        .collect())
}

pub fn minimum_isolating_cuts<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    r: &VertexSet,
    meter: &mut FlowMeter,
) -> Result<IsolatingCutResult<W>> {
    if r.universe() != g.n() {
        return Err(Error::InvalidParameter("terminal set universe mismatch".into()));
    }
    let schedule = bipartition_schedule(r)?;

    let start = meter.clone();
    let mut crossed = vec![false; g.m()];
    for (a, b) in &schedule {
        let cut = min_cut_separating(engine, g, a, b, meter)?;
        for (i, e) in g.edges().iter().enumerate() {
            if cut.side.contains(e.u) != cut.side.contains(e.v) {
                crossed[i] = true;
            }
        }
    }
    let phase_a = meter.since(&start);

    let components = g.components_where(|i| !crossed[i]);
    // owner[x] = terminal whose component contains x
    let mut owner: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut component_of = Vec::with_capacity(r.len());
    for comp in &components {
        let held_set = comp.intersection(r);
        let mut held = held_set.iter();
        if let Some(v) = held.next() {
            if held.next().is_some() {
                return Err(Error::ContractViolation(format!("component {comp:?} holds several terminals")));
            }
            for x in comp.iter() {
                owner[x] = Some(v);
            }
            component_of.push((v, comp.clone()));
        }
    }
    component_of.sort_by_key(|&(v, _)| v);
    if component_of.len() != r.len() {
        return Err(Error::ContractViolation("terminal without a component".into()));
    }

    // Batched instance: 0 = merged terminals, 1 = shared sink, then every
    // non-terminal vertex of some C_v in id order.
    const SOURCE: usize = 0;
    const SINK: usize = 1;
    let mut local = vec![usize::MAX; g.n()];
    let mut next = 2;
    for x in 0..g.n() {
        match owner[x] {
            Some(_) if r.contains(x) => local[x] = SOURCE,
            Some(_) => {
                local[x] = next;
                next += 1;
            }
            None => local[x] = SINK,
        }
    }
    let mut triples = Vec::with_capacity(g.m());
    for e in g.edges() {
        match (owner[e.u], owner[e.v]) {
            (Some(a), Some(b)) if a == b => triples.push((local[e.u], local[e.v], e.w)),
            (Some(_), Some(_)) => {
                triples.push((local[e.u], SINK, e.w));
                triples.push((local[e.v], SINK, e.w));
            }
            (Some(_), None) => triples.push((local[e.u], SINK, e.w)),
            (None, Some(_)) => triples.push((local[e.v], SINK, e.w)),
            (None, None) => {}
        }
    }
    let batched = WeightedGraph::new(next, triples)?;
    let start = meter.clone();
    let flow = max_flow(engine, &batched, SOURCE, SINK, meter)?;
    let phase_b = meter.since(&start);

    let mut cuts = Vec::with_capacity(r.len());
    let mut total = W::zero();
    for (v, comp) in component_of {
        let side = VertexSet::from_iter(
            g.n(),
            comp.iter().filter(|&x| x == v || (!r.contains(x) && flow.min_side.contains(local[x]))),
        );
        let weight = g.cut_weight(&side)?;
        total = total + weight;
        cuts.push(IsolatingCut { terminal: v, cut: Cut { side, weight }, component: comp });
    }
    if total != flow.value {
        return Err(Error::ContractViolation(format!(
            "isolating cut weights sum to {total}, batched flow value {}",
            flow.value
        )));
    }
    Ok(IsolatingCutResult { cuts, phase_a, phase_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::maxflow::Dinic;

    fn pairs_separated(r: &VertexSet) -> bool {
        let sched = bipartition_schedule(r).unwrap();
        let m = r.to_vec();
        m.iter().enumerate().all(|(i, &u)| {
            m[i + 1..].iter().all(|&v| sched.iter().any(|(a, b)| (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u))))
        })
    }

    #[test]
    fn schedule_examples() {
        let two = VertexSet::from_iter(6, [2, 5]);
        assert_eq!(bipartition_schedule(&two).unwrap(), vec![(VertexSet::from_iter(6, [2]), VertexSet::from_iter(6, [5]))]);
        let four = VertexSet::from_iter(8, [0, 3, 4, 7]);
        assert_eq!(bipartition_schedule(&four).unwrap().len(), 2);
        assert!(pairs_separated(&four));
        let five = VertexSet::from_iter(9, [0, 2, 4, 6, 8]);
        let sched = bipartition_schedule(&five).unwrap();
        assert_eq!(sched.len(), 3);
        assert!(sched.iter().all(|(a, b)| !a.is_empty() && !b.is_empty()));
        assert!(pairs_separated(&five));
        assert!(bipartition_schedule(&VertexSet::from_iter(3, [1])).is_err());
    }

    #[test]
    fn schedule_separates_all_sizes() {
        for k in 2..=40 {
            let r = VertexSet::from_iter(50, (0..k).map(|i| i + 3));
            assert!(pairs_separated(&r), "|R| = {k}");
            assert_eq!(bipartition_schedule(&r).unwrap().len() as u32, ceil_log2(k));
        }
    }

    #[test]
    fn star_leaves() {
        let star = gen::star(4);
        let r = VertexSet::from_iter(5, 1..5);
        let mut meter = FlowMeter::new();
        let res = minimum_isolating_cuts(&Dinic, &star, &r, &mut meter).unwrap();
        for c in &res.cuts {
            assert_eq!(c.cut.side, VertexSet::from_iter(5, [c.terminal]));
            assert_eq!(c.cut.weight, 1);
        }
        assert_eq!(res.phase_a.call_count, 2);
        assert_eq!(res.phase_b.call_count, 1);
        assert_eq!(meter.call_count, 3);
    }

    #[test]
    fn dumbbell_triangles() {
        let d = gen::dumbbell(6);
        let r = VertexSet::from_iter(6, [0, 5]);
        let res = minimum_isolating_cuts(&Dinic, &d, &r, &mut FlowMeter::new()).unwrap();
        assert_eq!(res.get(0).unwrap().cut, Cut { side: VertexSet::from_iter(6, 0..3), weight: 1 });
        assert_eq!(res.get(5).unwrap().cut, Cut { side: VertexSet::from_iter(6, 3..6), weight: 1 });
    }

    #[test]
    fn isolated_terminal_gets_its_component() {
        let g = WeightedGraph::<u64>::new(5, [(0, 1, 3), (2, 3, 1), (3, 4, 1)]).unwrap();
        let r = VertexSet::from_iter(5, [0, 2, 4]);
        let res = minimum_isolating_cuts(&Dinic, &g, &r, &mut FlowMeter::new()).unwrap();
        assert_eq!(res.get(0).unwrap().cut, Cut { side: VertexSet::from_iter(5, [0, 1]), weight: 0 });
        assert_eq!(res.get(2).unwrap().cut.weight, 1);
        assert_eq!(res.get(4).unwrap().cut.weight, 1);
    }

    #[test]
    fn unit_graphs_give_unit_instances() {
        let g = gen::grid(4, 4);
        let r = VertexSet::from_iter(16, [0, 5, 10, 15]);
        let mut meter = FlowMeter::new();
        minimum_isolating_cuts(&Dinic, &g, &r, &mut meter).unwrap();
        // every instance is a contraction of at most 2m unit edges
        assert!(meter.log.iter().all(|&(_, m)| m <= 2 * g.m()));
    }
}
