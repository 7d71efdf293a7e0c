//! s–t maximum flow: the universal subroutine every cut algorithm here is
//! built on, plus exact call metering.

mod dinic;
mod meter;

use serde::Serialize;

pub use dinic::{Dinic, EdmondsKarp};
pub use meter::FlowMeter;

use crate::error::{Error, Result};
use crate::graph::{Cut, VertexId, VertexSet, WeightedGraph};
use crate::scalar::Weight;

/// Outcome of one s–t max-flow computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowResult<W> {
    pub value: W,
    /// Vertices reachable from `s` in the final residual network: the
    /// inclusion-minimal source side among all minimum s–t cuts.
    pub min_side: VertexSet,
}

/// An exact s–t max-flow algorithm. Implementations must be deterministic.
pub trait MaxFlowEngine: Sync {
    fn name(&self) -> &'static str;

    /// Solves without validation or metering; callers go through [`max_flow`].
    fn solve<W: Weight>(&self, g: &WeightedGraph<W>, s: VertexId, t: VertexId) -> FlowResult<W>;
}

/// Metered max-flow call.
pub fn max_flow<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    s: VertexId,
    t: VertexId,
    meter: &mut FlowMeter,
) -> Result<FlowResult<W>> {
    for x in [s, t] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    if s == t {
        return Err(Error::SameEndpoints);
    }
    meter.record(g.n(), g.m());
    Ok(engine.solve(g, s, t))
}

/// Minimum cut with `A` on one side and `B` on the other, computed by
/// contracting `A` into a source and `B` into a sink and running one flow.
/// The returned side is the inclusion-minimal minimizer containing `A`.
pub fn min_cut_separating<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    a: &VertexSet,
    b: &VertexSet,
    meter: &mut FlowMeter,
) -> Result<Cut<W>> {
    if a.universe() != g.n() || b.universe() != g.n() {
        return Err(Error::InvalidParameter("terminal set universe mismatch".into()));
    }
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return Err(Error::OverlappingTerminals);
    }
    // source 0, sink 1, remaining vertices keep their relative order
    let mut map = vec![0; g.n()];
    let mut next = 2;
    for (v, slot) in map.iter_mut().enumerate() {
        *slot = if a.contains(v) {
            0
        } else if b.contains(v) {
            1
        } else {
            next += 1;
            next - 1
        };
    }
    let contracted = g.contract_labels(map, next)?;
    let flow = max_flow(engine, &contracted.graph, 0, 1, meter)?;
    let side = contracted.lift(&flow.min_side);
    debug_assert_eq!(g.boundary_weight(&side), flow.value);
    Ok(Cut { side, weight: flow.value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn g(n: usize, e: &[(usize, usize, u64)]) -> WeightedGraph<u64> {
        WeightedGraph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn path_bottleneck() {
        let p = g(3, &[(0, 1, 5), (1, 2, 3)]);
        let mut meter = FlowMeter::new();
        let r = max_flow(&Dinic, &p, 0, 2, &mut meter).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.min_side, VertexSet::from_iter(3, [0, 1]));
        assert_eq!(meter.log, vec![(3, 2)]);
    }

    #[test]
    fn disjoint_paths_add() {
        let x = g(4, &[(0, 1, 2), (1, 3, 2), (0, 2, 3), (2, 3, 3)]);
        let r = max_flow(&Dinic, &x, 0, 3, &mut FlowMeter::new()).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.min_side, VertexSet::from_iter(4, [0]));
    }

    #[test]
    fn disconnected_endpoints() {
        let x = g(4, &[(0, 1, 2), (2, 3, 2)]);
        let r = max_flow(&Dinic, &x, 0, 3, &mut FlowMeter::new()).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.min_side, VertexSet::from_iter(4, [0, 1]));
    }

    #[test]
    fn rejects_same_endpoints() {
        let x = g(2, &[(0, 1, 1)]);
        let mut meter = FlowMeter::new();
        assert_eq!(max_flow(&Dinic, &x, 1, 1, &mut meter).unwrap_err(), Error::SameEndpoints);
        assert_eq!(meter.call_count, 0);
    }

    #[test]
    fn separating_dumbbell_and_star() {
        let d = gen::dumbbell(8);
        let mut meter = FlowMeter::new();
        let c = min_cut_separating(&Dinic, &d, &VertexSet::from_iter(8, [0]), &VertexSet::from_iter(8, [7]), &mut meter).unwrap();
        assert_eq!(c.weight, 1);
        assert_eq!(c.side, VertexSet::from_iter(8, 0..4));

        let star = gen::star(4);
        let a = VertexSet::from_iter(5, [1, 2]);
        let b = VertexSet::from_iter(5, [3, 4]);
        let c = min_cut_separating(&Dinic, &star, &a, &b, &mut meter).unwrap();
        assert_eq!(c.weight, 2);
        assert_eq!(meter.call_count, 2);
        // contracted instance: n - |A| - |B| + 2 vertices
        assert_eq!(meter.log[1].0, 3);
    }

    #[test]
    fn separating_errors() {
        let d = gen::dumbbell(8);
        let mut meter = FlowMeter::new();
        let a = VertexSet::from_iter(8, [0, 1]);
        let overlap = VertexSet::from_iter(8, [1, 5]);
        assert_eq!(min_cut_separating(&Dinic, &d, &a, &overlap, &mut meter).unwrap_err(), Error::OverlappingTerminals);
        assert_eq!(min_cut_separating(&Dinic, &d, &a, &VertexSet::empty(8), &mut meter).unwrap_err(), Error::OverlappingTerminals);
    }

    #[test]
    fn engines_agree() {
        for seed in 0..40 {
            let x = gen::gnp_weighted(10, 0.5, 1, 9, seed, false).unwrap();
            let a = Dinic.solve(&x, 0, 9);
            let b = EdmondsKarp.solve(&x, 0, 9);
            assert_eq!(a, b);
        }
    }
}
