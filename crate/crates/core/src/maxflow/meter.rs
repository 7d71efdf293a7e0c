use serde::{Deserialize, Serialize};

/// Exact accounting of max-flow invocations and their instance sizes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowMeter {
    pub call_count: u64,
    pub aggregate_vertices: u64,
    pub aggregate_edges: u64,
    /// `(n, m)` of every call, in order.
    pub log: Vec<(usize, usize)>,
}

impl FlowMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, n: usize, m: usize) {
        self.call_count += 1;
        self.aggregate_vertices += n as u64;
        self.aggregate_edges += m as u64;
        self.log.push((n, m));
    }

    /// Folds a per-worker meter into this one.
    pub fn merge(&mut self, other: &FlowMeter) {
        self.call_count += other.call_count;
        self.aggregate_vertices += other.aggregate_vertices;
        self.aggregate_edges += other.aggregate_edges;
        self.log.extend_from_slice(&other.log);
    }

    /// Calls recorded after a previous snapshot of this meter.
    pub fn since(&self, earlier: &FlowMeter) -> FlowMeter {
        let log = self.log[earlier.log.len()..].to_vec();
        FlowMeter {
            call_count: self.call_count - earlier.call_count,
            aggregate_vertices: self.aggregate_vertices - earlier.aggregate_vertices,
            aggregate_edges: self.aggregate_edges - earlier.aggregate_edges,
            log,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.call_count == self.log.len() as u64
            && self.aggregate_vertices == self.log.iter().map(|&(n, _)| n as u64).sum::<u64>()
            && self.aggregate_edges == self.log.iter().map(|&(_, m)| m as u64).sum::<u64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_delta() {
        let mut a = FlowMeter::new();
        a.record(4, 5);
        let snap = a.clone();
        let mut worker = FlowMeter::new();
        worker.record(3, 2);
        worker.record(7, 9);
        a.merge(&worker);
        assert!(a.is_consistent());
        assert_eq!(a.call_count, 3);
        assert_eq!(a.since(&snap), worker);
    }
}
