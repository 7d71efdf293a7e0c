mod common;

use isocut::expander::{augmented_demands, expander_decompose, induced, verify_expander, DemandVector, Phi};
use isocut::isolating::{ceil_log2, minimum_isolating_cuts};
use isocut::maxflow::{max_flow, EdmondsKarp};
use isocut::oracles::{enumerate_cuts, naive_isolating, naive_steiner, stoer_wagner, Constraint};
use isocut::steiner::{global_mincut_det, steiner_mincut_det, steiner_mincut_rand, AlgoConfig, SteinerInstance};
use isocut::{Dinic, FlowMeter, Graph, VertexSet};
use proptest::prelude::*;

fn graph_strategy(max_n: usize, max_w: u64) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 1..=max_w), 0..=n * (n - 1) / 2)
            .prop_map(move |e| Graph::new(n, e).unwrap())
    })
}

fn loop_config() -> AlgoConfig {
    AlgoConfig { phi: Phi::from_integer(1), ..AlgoConfig::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn flow_matches_enumeration(g in graph_strategy(9, 20), s in 0usize..9, t in 0usize..9) {
        let (s, t) = (s % g.n(), t % g.n());
        prop_assume!(s != t);
        let f = max_flow(&Dinic, &g, s, t, &mut FlowMeter::new()).unwrap();
        let e = enumerate_cuts(&g, &Constraint::SourceSink(s, t)).unwrap().unwrap();
        prop_assert_eq!(f.value, e.weight);
        prop_assert_eq!(&f.min_side, &e.side);
        let ek = max_flow(&EdmondsKarp, &g, s, t, &mut FlowMeter::new()).unwrap();
        prop_assert_eq!(ek, f);
    }

    #[test]
    fn isolating_matches_naive(g in graph_strategy(10, 30), picks in prop::collection::vec(0usize..10, 2..6)) {
        let r = VertexSet::from_iter(g.n(), picks.iter().map(|&x| x % g.n()));
        prop_assume!(r.len() >= 2);
        let mut meter = FlowMeter::new();
        let fast = minimum_isolating_cuts(&Dinic, &g, &r, &mut meter).unwrap();
        let slow = naive_isolating(&Dinic, &g, &r, &mut FlowMeter::new()).unwrap();
        prop_assert_eq!(meter.call_count, ceil_log2(r.len()) as u64 + 1);
        for (a, b) in fast.cuts.iter().zip(&slow.cuts) {
            prop_assert_eq!(a.cut.weight, b.cut.weight);
            prop_assert_eq!(&a.cut.side, &b.cut.side);
            prop_assert!(a.cut.side.is_subset(&a.component));
        }
    }

    #[test]
    fn det_global_matches_stoer_wagner(g in graph_strategy(12, 20)) {
        let sw = stoer_wagner(&g).unwrap();
        for cfg in [AlgoConfig::default(), loop_config()] {
            let r = global_mincut_det(&Dinic, &g, &cfg).unwrap();
            prop_assert_eq!(r.lambda, sw.weight);
            prop_assert!(r.best_cut.is_valid_for(&g));
            prop_assert!(r.meter.is_consistent());
        }
    }

    #[test]
    fn det_steiner_matches_naive(g in graph_strategy(12, 20), picks in prop::collection::vec(0usize..12, 2..12)) {
        let t = VertexSet::from_iter(g.n(), picks.iter().map(|&x| x % g.n()));
        prop_assume!(t.len() >= 2);
        let naive = naive_steiner(&Dinic, &g, &t, &mut FlowMeter::new()).unwrap();
        let inst = SteinerInstance::new(g, t).unwrap();
        for cfg in [AlgoConfig::default(), loop_config()] {
            let r = steiner_mincut_det(&Dinic, &inst, &cfg).unwrap();
            prop_assert_eq!(r.lambda, naive.weight);
            prop_assert!(r.is_valid_for(&inst));
        }
    }

    #[test]
    fn rand_returns_valid_cut(g in graph_strategy(10, 20), seed in any::<u64>()) {
        let inst = SteinerInstance::global(g).unwrap();
        let cfg = AlgoConfig { seed, rand_reps: Some(2), ..AlgoConfig::default() };
        let r = steiner_mincut_rand(&Dinic, &inst, &cfg).unwrap();
        prop_assert!(r.is_valid_for(&inst));
    }

    #[test]
    fn decomposition_clusters_are_expanders(g in graph_strategy(10, 10), num in 1u64..=4, dem in prop::collection::vec(0u64..20, 10)) {
        let phi = Phi::new(num, 4);
        let d = DemandVector::new(dem[..g.n()].to_vec());
        let dec = expander_decompose(&g, &d, phi, Phi::from_integer(1)).unwrap();
        let mut covered = VertexSet::empty(g.n());
        for c in &dec.clusters {
            prop_assert!(covered.is_disjoint(&c.vertices));
            covered = covered.union(&c.vertices);
            prop_assert_eq!(&augmented_demands(&g, &d, &c.vertices), &c.demands);
            let (sub, _) = induced(&g, &c.vertices);
            let v = verify_expander(&sub, &c.demands, phi);
            prop_assert!(v.is_expander && v.certified);
        }
        prop_assert_eq!(covered, VertexSet::full(g.n()));
        prop_assert!(dec.inter_cluster_weight as u128 <= dec.budget);
    }
}

#[test]
fn det_is_reproducible() {
    let mut rng = common::rng(7);
    let g = common::connected_graph(&mut rng, 20, 30, 50);
    let cfg = loop_config();
    let a = global_mincut_det(&Dinic, &g, &cfg).unwrap();
    let b = global_mincut_det(&Dinic, &g, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn readme_example() {
    use isocut::steiner::{run_method, Method};
    let g = Graph::new(4, [(0, 1, 3), (1, 2, 1), (2, 3, 3), (3, 0, 1)]).unwrap();
    let inst = SteinerInstance::new(g, VertexSet::from_iter(4, [0, 2])).unwrap();
    let report = run_method(&Dinic, &inst, &AlgoConfig::default(), Method::Det).unwrap();
    assert_eq!(report.lambda, 2);
}
