//! Independent exact baselines: Stoer–Wagner, the `|T|−1`-flow Steiner
//! routine, `|R|`-flow isolating cuts, and brute-force cut enumeration.
//!
//! Nothing here reuses the cut extraction in `maxflow::min_cut_separating`
//! or the `isolating` module.

use crate::error::{Error, Result};
use crate::graph::{Cut, VertexId, VertexSet, WeightedGraph};
use crate::isolating::{IsolatingCut, IsolatingCutResult};
use crate::maxflow::{max_flow, FlowMeter, MaxFlowEngine};
use crate::scalar::Weight;

pub const ENUMERATION_LIMIT: usize = 20;

/// Global minimum cut via maximum-adjacency orderings and contraction.
pub fn stoer_wagner<W: Weight>(g: &WeightedGraph<W>) -> Result<Cut<W>> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: n });
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Ok(Cut { side: comps[0].clone(), weight: W::zero() });
    }
    let mut adj = vec![vec![0u128; n]; n];
    for e in g.edges() {
        adj[e.u][e.v] += e.w.wide();
        adj[e.v][e.u] += e.w.wide();
    }
    let mut groups: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<VertexId> = (0..n).collect();
    let mut best: Option<(u128, Vec<VertexId>)> = None;
    while alive.len() > 1 {
        let mut key = vec![0u128; n];
        let mut added = vec![false; n];
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        for _ in 0..alive.len() {
            let next = *alive
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                .unwrap();
            added[next] = true;
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += adj[next][v];
                }
            }
        }
        let phase = key[last];
        if best.as_ref().map_or(true, |(w, _)| phase < *w) {
            best = Some((phase, groups[last].clone()));
        }
        // merge last into prev
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        for &v in &alive {
            let w = adj[last][v];
            adj[prev][v] += w;
            adj[v][prev] += w;
        }
        adj[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }
    let (w, side) = best.expect("n >= 2");
    Ok(Cut { side: VertexSet::from_iter(n, side), weight: W::from_wide(w).expect("cut below total") })
}

/// Steiner minimum cut with `|T|−1` flows from the lowest terminal.
pub fn naive_steiner<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    terminals: &VertexSet,
    meter: &mut FlowMeter,
) -> Result<Cut<W>> {
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: terminals.len() });
    }
    let mut it = terminals.iter();
    let s = it.next().unwrap();
    let mut best: Option<Cut<W>> = None;
    for t in it {
        let f = max_flow(engine, g, s, t, meter)?;
        if best.as_ref().map_or(true, |b| f.value < b.weight) {
            best = Some(Cut { side: f.min_side, weight: f.value });
        }
    }
    Ok(best.unwrap())
}

/// Minimum isolating cuts with one flow per terminal: `v` is the source and
/// `R \ {v}` is contracted into the sink.
pub fn naive_isolating<E: MaxFlowEngine, W: Weight>(
    engine: &E,
    g: &WeightedGraph<W>,
    r: &VertexSet,
    meter: &mut FlowMeter,
) -> Result<IsolatingCutResult<W>> {
    if r.len() < 2 {
        return Err(Error::TooFewTerminals { need: 2, got: r.len() });
    }
    let start = meter.clone();
    let mut cuts = Vec::with_capacity(r.len());
    for v in r.iter() {
        let sink = r.difference(&VertexSet::from_iter(g.n(), [v]));
        let mut classes = vec![sink];
        classes.extend((0..g.n()).filter(|x| !r.contains(*x) || *x == v).map(|x| VertexSet::from_iter(g.n(), [x])));
        let c = g.contract(&classes)?;
        let f = max_flow(engine, &c.graph, c.map[v], 0, meter)?;
        let side = c.lift(&f.min_side);
        cuts.push(IsolatingCut { terminal: v, cut: Cut { side, weight: f.value }, component: VertexSet::full(g.n()) });
    }
    Ok(IsolatingCutResult { cuts, phase_a: meter.since(&start), phase_b: FlowMeter::new() })
}

/// Which cut sides an enumeration admits.
#[derive(Debug, Clone)]
pub enum Constraint {
    Global,
    SourceSink(VertexId, VertexId),
    Separating(VertexSet, VertexSet),
    /// `S ∩ R = {v}`.
    Isolating { r: VertexSet, v: VertexId },
    TerminalSplitting(VertexSet),
}

fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

impl Constraint {
    fn admits(&self, full: u64) -> impl Fn(u64) -> bool {
        let (kind, a, b) = match self {
            Constraint::Global => (0, 0, 0),
            Constraint::SourceSink(s, t) => (1, 1u64 << s, 1u64 << t),
            Constraint::Separating(a, b) => (1, mask_of(a), mask_of(b)),
            Constraint::Isolating { r, v } => (2, mask_of(r), 1u64 << v),
            Constraint::TerminalSplitting(t) => (3, mask_of(t), 0),
        };
        move |m: u64| {
            m != 0
                && m != full
                && match kind {
                    0 => true,
                    1 => m & a == a && m & b == 0,
                    2 => m & a == b,
                    _ => m & a != 0 && m & a != a,
                }
        }
    }
}

/// Visits every nonempty proper side with its boundary weight.
fn gray_sweep<W: Weight>(g: &WeightedGraph<W>, mut f: impl FnMut(u64, u128)) -> Result<()> {
    let n = g.n();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { n, limit: ENUMERATION_LIMIT });
    }
    let mut nbrs = vec![Vec::new(); n];
    for e in g.edges() {
        nbrs[e.u].push((e.v, e.w.wide() as i128));
        nbrs[e.v].push((e.u, e.w.wide() as i128));
    }
    let full = (1u64 << n) - 1;
    let mut mask = 0u64;
    let mut weight: i128 = 0;
    for i in 1u64..(1u64 << n) {
        let x = i.trailing_zeros() as usize;
        let inside = mask >> x & 1;
        for &(y, w) in &nbrs[x] {
            weight += if mask >> y & 1 == inside { w } else { -w };
        }
        mask ^= 1 << x;
        if mask != full {
            f(mask, weight as u128);
        }
    }
    Ok(())
}

/// Minimum cut under `constraint` by brute force over all sides. Ties go to
/// the smallest side, then the lexicographically smallest bitset.
pub fn enumerate_cuts<W: Weight>(g: &WeightedGraph<W>, constraint: &Constraint) -> Result<Option<Cut<W>>> {
    let (weight, sides) = enumerate_min_cuts(g, constraint)?;
    Ok(sides.into_iter().next().map(|side| Cut { side, weight: W::from_wide(weight).unwrap() }))
}

/// The minimum weight under `constraint` and every side attaining it, in
/// tie-break order.
pub fn enumerate_min_cuts<W: Weight>(g: &WeightedGraph<W>, constraint: &Constraint) -> Result<(u128, Vec<VertexSet>)> {
    let n = g.n();
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let admits = constraint.admits(full);
    let mut best = u128::MAX;
    let mut masks = Vec::new();
    gray_sweep(g, |m, w| {
        if admits(m) {
            if w < best {
                best = w;
                masks.clear();
            }
            if w == best {
                masks.push(m);
            }
        }
    })?;
    masks.sort_by_key(|&m| (m.count_ones(), m));
    Ok((best, masks.into_iter().map(|m| VertexSet::from_mask(n, m)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::maxflow::Dinic;

    #[test]
    fn stoer_wagner_examples() {
        assert_eq!(stoer_wagner(&gen::clique(4)).unwrap().weight, 3);
        let d = stoer_wagner(&gen::dumbbell(8)).unwrap();
        assert_eq!(d.weight, 1);
        assert!(d.is_valid_for(&gen::dumbbell(8)));
        assert!(stoer_wagner(&gen::clique(1)).is_err());
        let split = WeightedGraph::<u64>::new(4, [(0, 1, 5), (2, 3, 5)]).unwrap();
        assert_eq!(stoer_wagner(&split).unwrap().weight, 0);
    }

    #[test]
    fn enumeration_examples() {
        let c4 = gen::cycle(4);
        assert_eq!(enumerate_cuts(&c4, &Constraint::Global).unwrap().unwrap().weight, 2);
        let p = WeightedGraph::<u64>::new(3, [(0, 1, 5), (1, 2, 3)]).unwrap();
        let c = enumerate_cuts(&p, &Constraint::SourceSink(0, 2)).unwrap().unwrap();
        assert_eq!((c.weight, c.side), (3, VertexSet::from_iter(3, [0, 1])));
        assert!(matches!(enumerate_cuts(&gen::cycle(21), &Constraint::Global), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn naive_examples() {
        let d = gen::dumbbell(8);
        let mut meter = FlowMeter::new();
        assert_eq!(naive_steiner(&Dinic, &d, &VertexSet::full(8), &mut meter).unwrap().weight, 1);
        assert_eq!(meter.call_count, 7);

        let star = gen::star(4);
        let r = VertexSet::from_iter(5, 1..5);
        let res = naive_isolating(&Dinic, &star, &r, &mut FlowMeter::new()).unwrap();
        assert!(res.cuts.iter().all(|c| c.cut.weight == 1 && c.cut.side.len() == 1));

        let pair = VertexSet::from_iter(8, [0, 7]);
        let res = naive_isolating(&Dinic, &d, &pair, &mut FlowMeter::new()).unwrap();
        assert_eq!(res.cuts[0].cut.weight, res.cuts[1].cut.weight);
    }

    #[test]
    fn oracles_agree_small() {
        for seed in 0..60 {
            let n = 3 + (seed as usize % 10);
            let g = gen::gnp_weighted(n, 0.5, 1, 20, seed, false).unwrap();
            let sw = stoer_wagner(&g).unwrap();
            let en = enumerate_cuts(&g, &Constraint::Global).unwrap().unwrap();
            assert_eq!(sw.weight, en.weight);
            let ns = naive_steiner(&Dinic, &g, &VertexSet::full(n), &mut FlowMeter::new()).unwrap();
            assert_eq!(ns.weight, en.weight);
            let t = VertexSet::from_iter(n, (0..n).filter(|v| v % 2 == 0));
            let ts = enumerate_cuts(&g, &Constraint::TerminalSplitting(t.clone())).unwrap().unwrap();
            assert_eq!(naive_steiner(&Dinic, &g, &t, &mut FlowMeter::new()).unwrap().weight, ts.weight);
        }
    }
}
