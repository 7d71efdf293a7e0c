//! Method × instance grid with flow-call metering and JSON/CSV reports.
//!
//! CSV columns, in order: `instance, label, n, m, terminals, method, weight,
//! flow_calls, aggregate_vertices, aggregate_edges, budget, budget_ok,
//! ratio_vs_naive, wall_ms, error`. Wall time is informational only.

use std::io::{Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::maxflow::MaxFlowEngine;
use crate::steiner::{run_method, AlgoConfig, Method, SteinerInstance, Trace};
use crate::Graph;

pub const SCHEMA: u32 = 1;

pub const CSV_COLUMNS: [&str; 15] = [
    "instance",
    "label",
    "n",
    "m",
    "terminals",
    "method",
    "weight",
    "flow_calls",
    "aggregate_vertices",
    "aggregate_edges",
    "budget",
    "budget_ok",
    "ratio_vs_naive",
    "wall_ms",
    "error",
];

#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub label: String,
    pub graph: Graph,
    /// `None` means every vertex is a terminal.
    pub terminals: Option<VertexSet>,
}

impl BenchInstance {
    pub fn global(label: impl Into<String>, graph: Graph) -> Self {
        BenchInstance { label: label.into(), graph, terminals: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: usize,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub terminals: usize,
    pub method: Method,
    pub weight: Option<u64>,
    pub flow_calls: Option<u64>,
    pub aggregate_vertices: Option<u64>,
    pub aggregate_edges: Option<u64>,
    pub budget: Option<u128>,
    pub budget_ok: Option<bool>,
    pub ratio_vs_naive: Option<f64>,
    pub wall_ms: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema: u32,
    pub phi: String,
    pub k: usize,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Instances on which exact methods returned different weights.
    pub fn disagreements(&self) -> Vec<usize> {
        let mut bad: Vec<usize> = self
            .rows
            .iter()
            .filter(|r| r.method.is_exact() && r.weight.is_some())
            .filter(|r| {
                self.rows
                    .iter()
                    .any(|o| o.instance == r.instance && o.method.is_exact() && o.weight.is_some() && o.weight != r.weight)
            })
            .map(|r| r.instance)
            .collect();
        bad.dedup();
        bad
    }

    pub fn row(&self, instance: usize, method: Method) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.instance == instance && r.method == method)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::ContractViolation(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let report: BenchReport = serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if report.schema != SCHEMA {
            return Err(Error::InvalidParameter(format!("unsupported report schema {}", report.schema)));
        }
        Ok(report)
    }

    pub fn write_csv<Wr: Write>(&self, out: Wr) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.rows.is_empty() {
            w.write_record(CSV_COLUMNS).map_err(csv_err)?;
        }
        for r in &self.rows {
            w.serialize(r).map_err(csv_err)?;
        }
        w.flush().map_err(|e| Error::ContractViolation(e.to_string()))
    }

    pub fn read_csv_rows<Rd: Read>(input: Rd) -> Result<Vec<BenchRow>> {
        let mut r = csv::Reader::from_reader(input);
        let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
        if header != CSV_COLUMNS {
            return Err(Error::Parse { line: 1, msg: format!("unexpected CSV header {header:?}") });
        }
        r.deserialize().map(|row| row.map_err(csv_err)).collect()
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse { line, msg: e.to_string() }
}

/// Runs every method on every instance. Failures land in the row's `error`
/// column. Rows are ordered by instance index, then method name.
pub fn bench<E: MaxFlowEngine>(engine: &E, methods: &[Method], instances: &[BenchInstance], cfg: &AlgoConfig) -> BenchReport {
    let mut methods = methods.to_vec();
    methods.sort_by_key(|m| m.name());
    methods.dedup();
    let mut rows = Vec::new();
    for (i, b) in instances.iter().enumerate() {
        let start = rows.len();
        let terminals = b.terminals.clone().unwrap_or_else(|| VertexSet::full(b.graph.n()));
        let inst = SteinerInstance::new(b.graph.clone(), terminals.clone());
        for &method in &methods {
            let clock = Instant::now();
            let outcome = inst.as_ref().map_err(Clone::clone).and_then(|inst| run_method(engine, inst, cfg, method));
            let wall_ms = clock.elapsed().as_secs_f64() * 1e3;
            let mut row = BenchRow {
                instance: i,
                label: b.label.clone(),
                n: b.graph.n(),
                m: b.graph.m(),
                terminals: terminals.len(),
                method,
                weight: None,
                flow_calls: None,
                aggregate_vertices: None,
                aggregate_edges: None,
                budget: None,
                budget_ok: None,
                ratio_vs_naive: None,
                wall_ms,
                error: None,
            };
            match outcome {
                Ok(rep) => {
                    row.weight = Some(rep.lambda);
                    row.flow_calls = Some(rep.meter.call_count);
                    row.aggregate_vertices = Some(rep.meter.aggregate_vertices);
                    row.aggregate_edges = Some(rep.meter.aggregate_edges);
                    if let Trace::Deterministic(t) = &rep.trace {
                        row.budget = Some(t.budget);
                        row.budget_ok = Some(t.budget_ok);
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            rows.push(row);
        }
        let naive = rows[start..].iter().find(|r| r.method == Method::Naive).and_then(|r| r.flow_calls);
        if let Some(base) = naive.filter(|&c| c > 0) {
            for r in &mut rows[start..] {
                r.ratio_vs_naive = r.flow_calls.map(|c| c as f64 / base as f64);
            }
        }
    }
    BenchReport { schema: SCHEMA, phi: cfg.phi.to_string(), k: cfg.k(), seed: cfg.seed, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::maxflow::Dinic;

    #[test]
    fn empty_grid() {
        let r = bench(&Dinic, &Method::ALL, &[], &AlgoConfig::default());
        assert!(r.rows.is_empty());
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert!(BenchReport::read_csv_rows(buf.as_slice()).unwrap().is_empty());
    }

    #[test]
    fn methods_agree_and_round_trip() {
        let inst = vec![
            BenchInstance::global("dumbbell-16", gen::dumbbell(16)),
            BenchInstance { label: "path".into(), graph: gen::path(5), terminals: Some(VertexSet::from_iter(5, [0, 4])) },
        ];
        let r = bench(&Dinic, &Method::ALL, &inst, &AlgoConfig::default());
        assert_eq!(r.rows.len(), 8);
        assert!(r.disagreements().is_empty());
        assert_eq!(r.row(0, Method::Naive).unwrap().flow_calls, Some(15));
        assert_eq!(r.row(0, Method::Rand).unwrap().weight, Some(1));
        assert!(r.row(1, Method::StoerWagner).unwrap().error.is_some());
        assert_eq!(r.row(0, Method::Naive).unwrap().ratio_vs_naive, Some(1.0));

        assert_eq!(BenchReport::from_json(&r.to_json().unwrap()).unwrap(), r);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_COLUMNS.join(",")));
        assert_eq!(BenchReport::read_csv_rows(buf.as_slice()).unwrap(), r.rows);
    }
}
