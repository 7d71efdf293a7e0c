use std::collections::VecDeque;

use super::{FlowResult, MaxFlowEngine};
use crate::graph::{VertexId, VertexSet, WeightedGraph};
use crate::scalar::Weight;

/// Dinic's blocking-flow algorithm on the bidirected residual network.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dinic;

struct Network<W> {
    head: Vec<usize>,
    // arcs 2i and 2i+1 are the two directions of undirected edge i
    to: Vec<usize>,
    cap: Vec<W>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl<W: Weight> Network<W> {
    fn new(g: &WeightedGraph<W>) -> Self {
        let mut net = Network {
            head: vec![NIL; g.n()],
            to: Vec::with_capacity(2 * g.m()),
            cap: Vec::with_capacity(2 * g.m()),
            next: Vec::with_capacity(2 * g.m()),
        };
        for e in g.edges() {
            net.arc(e.u, e.v, e.w);
            net.arc(e.v, e.u, e.w);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: W) {
        self.to.push(to);
        self.cap.push(cap);
        self.next.push(self.head[from]);
        self.head[from] = self.to.len() - 1;
    }

    fn levels(&self, s: usize, t: usize, level: &mut [usize]) -> bool {
        level.fill(NIL);
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if level[y] == NIL && !self.cap[a].is_zero() {
                    level[y] = level[x] + 1;
                    q.push_back(y);
                }
                a = self.next[a];
            }
        }
        level[t] != NIL
    }

    fn augment(&mut self, x: usize, t: usize, limit: W, level: &[usize], iter: &mut [usize]) -> W {
        if x == t {
            return limit;
        }
        while iter[x] != NIL {
            let a = iter[x];
            let y = self.to[a];
            if !self.cap[a].is_zero() && level[y] == level[x] + 1 {
                let pushed = self.augment(y, t, limit.min(self.cap[a]), level, iter);
                if !pushed.is_zero() {
                    self.cap[a] = self.cap[a] - pushed;
                    self.cap[a ^ 1] = self.cap[a ^ 1] + pushed;
                    return pushed;
                }
            }
            iter[x] = self.next[a];
        }
        W::zero()
    }

    fn reachable(&self, s: usize) -> VertexSet {
        let mut seen = VertexSet::empty(self.head.len());
        seen.insert(s);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if !self.cap[a].is_zero() && seen.insert(y) {
                    q.push_back(y);
                }
                a = self.next[a];
            }
        }
        seen
    }
}

impl MaxFlowEngine for Dinic {
    fn name(&self) -> &'static str {
        "dinic"
    }

    fn solve<W: Weight>(&self, g: &WeightedGraph<W>, s: VertexId, t: VertexId) -> FlowResult<W> {
        let mut net = Network::new(g);
        let mut level = vec![NIL; g.n()];
        let mut value = W::zero();
        // no path carries more than the total weight
        let unbounded = g.total_weight();
        while net.levels(s, t, &mut level) {
            let mut iter = net.head.clone();
            loop {
                let f = net.augment(s, t, unbounded, &level, &mut iter);
                if f.is_zero() {
                    break;
                }
                value = value + f;
            }
        }
        FlowResult { value, min_side: net.reachable(s) }
    }
}

/// Shortest-augmenting-path reference engine, used to cross-check Dinic.
#[derive(Debug, Clone, Copy, Default)]
pub struct EdmondsKarp;

impl MaxFlowEngine for EdmondsKarp {
    fn name(&self) -> &'static str {
        "edmonds-karp"
    }

    fn solve<W: Weight>(&self, g: &WeightedGraph<W>, s: VertexId, t: VertexId) -> FlowResult<W> {
        let mut net = Network::new(g);
        let mut value = W::zero();
        loop {
            let mut via = vec![NIL; g.n()];
            let mut q = VecDeque::from([s]);
            let mut found = false;
            while let Some(x) = q.pop_front() {
                let mut a = net.head[x];
                while a != NIL {
                    let y = net.to[a];
                    if y != s && via[y] == NIL && !net.cap[a].is_zero() {
                        via[y] = a;
                        if y == t {
                            found = true;
                            break;
                        }
                        q.push_back(y);
                    }
                    a = net.next[a];
                }
                if found {
                    break;
                }
            }
            if !found {
                break;
            }
            let mut bottleneck = g.total_weight();
            let mut y = t;
            while y != s {
                let a = via[y];
                bottleneck = bottleneck.min(net.cap[a]);
                y = net.to[a ^ 1];
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                net.cap[a] = net.cap[a] - bottleneck;
                net.cap[a ^ 1] = net.cap[a ^ 1] + bottleneck;
                y = net.to[a ^ 1];
            }
            value = value + bottleneck;
        }
        FlowResult { value, min_side: net.reachable(s) }
    }
}
