use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use isocut::bench::{bench, BenchInstance};
use isocut::expander::{expander_decompose, DemandVector, Phi};
use isocut::gen::{self, GeneratorSpec};
use isocut::graph::{parse_dimacs, parse_edge_list, write_dimacs, write_edge_list, DimacsInstance};
use isocut::isolating::minimum_isolating_cuts;
use isocut::maxflow::max_flow;
use isocut::oracles::{enumerate_cuts, naive_isolating, Constraint, ENUMERATION_LIMIT};
use isocut::splitters::{
    for_each_subset, isolator_family, isolator_family_min2, splitter_family, unisolated_subset, unsplit_subset, SetFamily,
};
use isocut::steiner::{run_method, AlgoConfig, EstimateMode, Method, SteinerInstance};
use isocut::{Dinic, Error, FlowMeter, Graph, Result, VertexSet};

// stdout writes that tolerate a closed pipe
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const VERIFY_EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Parser)]
#[command(name = "isocut", version, about = "Minimum Steiner and global cuts from few max-flow calls")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input graph file.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Expansion parameter, e.g. `1/16`.
    #[arg(long, global = true, value_parser = parse_ratio, default_value = "1/16")]
    phi: Phi,
    /// Overrides the derived unbalanced-case threshold.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_parser = parse_ratio, default_value = "1")]
    budget_const: Phi,
    /// Repetitions per sampling scale of the randomized method.
    #[arg(long, global = true)]
    rand_reps: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Estimate::Guess)]
    estimate: Estimate,
    /// Fail instead of finishing with direct flows when sparsification stalls.
    #[arg(long, global = true)]
    no_fallback: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimate {
    Guess,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gnp,
    PlantedCut,
    Dumbbell,
    Cycle,
    Clique,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Splitter,
    Isolator,
    Min2,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        w_min: u64,
        #[arg(long, default_value_t = 10)]
        w_max: u64,
        #[arg(long)]
        allow_disconnected: bool,
        #[arg(long, default_value_t = 4)]
        side: usize,
        #[arg(long, default_value_t = 1)]
        cross: u64,
        #[arg(long, default_value_t = 4)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// s–t maximum flow and minimal minimum cut.
    Maxflow {
        #[arg(long)]
        source: Option<usize>,
        #[arg(long)]
        sink: Option<usize>,
    },
    /// Minimum isolating cuts of a terminal set.
    Isolating {
        #[arg(long, value_parser = parse_terminals)]
        terminals: Terminals,
        /// One flow per terminal instead of the batched computation.
        #[arg(long)]
        naive: bool,
    },
    /// Build a splitter or isolator family over `[n]`.
    SplitterGen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FamilyKind::Min2)]
        family: FamilyKind,
        /// Check the defining property over all subsets of size at most k.
        #[arg(long)]
        verify: bool,
    },
    /// Expander decomposition with respect to vertex demands.
    ExpanderDecomp {
        /// Whitespace-separated demands, one per vertex; weighted degrees if omitted.
        #[arg(long)]
        demands: Option<PathBuf>,
    },
    /// Global minimum cut.
    Mincut {
        #[arg(long, value_parser = parse_method, default_value = "det")]
        method: Method,
    },
    /// Steiner minimum cut for a terminal set.
    Steiner {
        #[arg(long, value_parser = parse_terminals)]
        terminals: Terminals,
        #[arg(long, value_parser = parse_method, default_value = "det")]
        method: Method,
    },
    /// Cross-check all methods on one instance.
    Verify {
        #[arg(long, value_parser = parse_terminals)]
        terminals: Option<Terminals>,
    },
    /// Call-count comparison across methods and instance sizes.
    Bench {
        #[arg(long, value_enum, default_value_t = Kind::Dumbbell)]
        family: Kind,
        #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64])]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = parse_method, default_values = ["det", "naive"])]
        methods: Vec<Method>,
        /// Also write the CSV report here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Debug)]
enum Terminals {
    All,
    List(Vec<usize>),
}

fn parse_ratio(s: &str) -> std::result::Result<Phi, String> {
    s.trim().parse::<Ratio<u64>>().map_err(|e| format!("expected a fraction like 1/16: {e}"))
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_terminals(s: &str) -> std::result::Result<Terminals, String> {
    if s == "all" {
        return Ok(Terminals::All);
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse().map_err(|_| part.to_string())?, b.parse().map_err(|_| part.to_string())?);
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("bad terminal '{part}'"))?),
        }
    }
    Ok(Terminals::List(out))
}

impl Terminals {
    fn resolve(&self, n: usize) -> Result<VertexSet> {
        match self {
            Terminals::All => Ok(VertexSet::full(n)),
            Terminals::List(ids) => {
                if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
                    return Err(Error::VertexOutOfRange { vertex: bad, n });
                }
                Ok(VertexSet::from_iter(n, ids.iter().copied()))
            }
        }
    }
}

impl Global {
    fn config(&self) -> AlgoConfig {
        AlgoConfig {
            phi: self.phi,
            k: self.k,
            budget_const: self.budget_const,
            rand_reps: self.rand_reps,
            seed: self.seed,
            fallback_enabled: !self.no_fallback,
            estimate: match self.estimate {
                Estimate::Guess => EstimateMode::Guess,
                Estimate::Oracle => EstimateMode::Oracle,
            },
        }
    }

    fn load(&self) -> Result<DimacsInstance<u64>> {
        let path = self.graph.as_ref().ok_or_else(|| Error::InvalidParameter("--graph is required".into()))?;
        let text = read(path)?;
        match self.format {
            Format::Edgelist => Ok(DimacsInstance { graph: parse_edge_list(&text)?, source: None, sink: None }),
            Format::Dimacs => parse_dimacs(&text),
        }
    }

    fn graph(&self) -> Result<Graph> {
        Ok(self.load()?.graph)
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display()))),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn ids(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_family(family: &SetFamily, json: bool) {
    if json {
        out!("{}", to_json(family));
    } else {
        outln!("sets {} bound {}", family.len(), family.size_bound);
        for s in &family.sets {
            outln!("{}", ids(s));
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen { kind, n, p, w_min, w_max, allow_disconnected, side, cross, rows, cols, out } => {
            let spec = match kind {
                Kind::Gnp => GeneratorSpec::GnpWeighted {
                    n: *n,
                    p: *p,
                    w_min: *w_min,
                    w_max: *w_max,
                    seed: g.seed,
                    connected: !allow_disconnected,
                },
                Kind::PlantedCut => GeneratorSpec::PlantedCut { n: *n, side: *side, cross: *cross, seed: g.seed },
                Kind::Dumbbell => GeneratorSpec::Dumbbell { n: *n },
                Kind::Cycle => GeneratorSpec::Cycle { n: *n },
                Kind::Clique => GeneratorSpec::Clique { n: *n },
                Kind::Grid => GeneratorSpec::Grid { rows: *rows, cols: *cols },
            };
            let graph = gen::generate(&spec)?;
            let text = match g.format {
                Format::Edgelist => write_edge_list(&graph),
                Format::Dimacs => {
                    let sink = graph.n().checked_sub(1).filter(|&t| t > 0);
                    write_dimacs(&DimacsInstance { source: sink.map(|_| 0), sink, graph })
                }
            };
            write_out(out.as_ref(), &text)
        }
        Command::Maxflow { source, sink } => {
            let inst = g.load()?;
            let s = source.or(inst.source).ok_or_else(|| Error::InvalidParameter("no source given".into()))?;
            let t = sink.or(inst.sink).ok_or_else(|| Error::InvalidParameter("no sink given".into()))?;
            let mut meter = FlowMeter::new();
            let f = max_flow(&Dinic, &inst.graph, s, t, &mut meter)?;
            if g.json {
                out!("{}", to_json(&json!({ "value": f.value, "min_side": f.min_side, "meter": meter })));
            } else {
                outln!("value {}", f.value);
                outln!("side {}", ids(&f.min_side));
            }
            Ok(())
        }
        Command::Isolating { terminals, naive } => {
            let graph = g.graph()?;
            let r = terminals.resolve(graph.n())?;
            let mut meter = FlowMeter::new();
            let res = if *naive {
                naive_isolating(&Dinic, &graph, &r, &mut meter)?
            } else {
                minimum_isolating_cuts(&Dinic, &graph, &r, &mut meter)?
            };
            if g.json {
                out!("{}", to_json(&res));
            } else {
                outln!("flow calls {} (phase A {}, phase B {})", meter.call_count, res.phase_a.call_count, res.phase_b.call_count);
                for c in &res.cuts {
                    outln!("{} weight {} side {}", c.terminal, c.cut.weight, ids(&c.cut.side));
                }
            }
            Ok(())
        }
        Command::SplitterGen { n, k, family, verify } => {
            if *verify && *n > VERIFY_EXHAUSTIVE_LIMIT {
                return Err(Error::TooLarge { n: *n, limit: VERIFY_EXHAUSTIVE_LIMIT });
            }
            match family {
                FamilyKind::Splitter => {
                    let f = splitter_family(*n, *k)?;
                    if *verify {
                        if let Some(bad) = unsplit_subset(&f) {
                            return Err(Error::ContractViolation(format!("subset {bad:?} is not split")));
                        }
                    }
                    if g.json {
                        out!("{}", to_json(&f));
                    } else {
                        outln!("functions {} bound {} primes {:?}", f.functions.len(), f.size_bound, f.primes);
                    }
                }
                FamilyKind::Isolator | FamilyKind::Min2 => {
                    let f = match family {
                        FamilyKind::Isolator => isolator_family(*n, *k)?,
                        _ => isolator_family_min2(*n, *k)?,
                    };
                    if *verify {
                        if let Some(bad) = unisolated_subset(&f, *k) {
                            return Err(Error::ContractViolation(format!("subset {bad:?} is not isolated")));
                        }
                    }
                    print_family(&f, g.json);
                }
            }
            if *verify && !g.json {
                let sizes = match family {
                    FamilyKind::Splitter => *k..=*k,
                    _ => 1..=*k,
                };
                let mut checked = 0u64;
                for size in sizes {
                    for_each_subset(*n, size, |_| {
                        checked += 1;
                        true
                    });
                }
                outln!("verified {checked} subsets");
            }
            Ok(())
        }
        Command::ExpanderDecomp { demands } => {
            let graph = g.graph()?;
            let d = match demands {
                Some(path) => {
                    let text = read(path)?;
                    let values = text
                        .lines()
                        .enumerate()
                        .filter(|(_, l)| !l.trim_start().starts_with(['#', 'c']))
                        .flat_map(|(i, l)| l.split_whitespace().map(move |tok| (i + 1, tok)))
                        .map(|(line, tok)| tok.parse::<u64>().map_err(|e| Error::Parse { line, msg: e.to_string() }))
                        .collect::<Result<Vec<_>>>()?;
                    if values.len() != graph.n() {
                        return Err(Error::InvalidParameter(format!("{} demands for {} vertices", values.len(), graph.n())));
                    }
                    DemandVector::new(values)
                }
                None => DemandVector::new((0..graph.n()).map(|v| graph.weighted_degree(v)).collect()),
            };
            let dec = expander_decompose(&graph, &d, g.phi, g.budget_const)?;
            if g.json {
                out!("{}", to_json(&dec));
            } else {
                outln!("clusters {} inter-cluster weight {} budget {}", dec.clusters.len(), dec.inter_cluster_weight, dec.budget);
                for c in &dec.clusters {
                    outln!("{} {}", if c.certified { "certified" } else { "heuristic" }, ids(&c.vertices));
                }
            }
            Ok(())
        }
        Command::Mincut { method } => {
            let inst = SteinerInstance::global(g.graph()?)?;
            report(&inst, &g.config(), *method, g.json)
        }
        Command::Steiner { terminals, method } => {
            let graph = g.graph()?;
            let t = terminals.resolve(graph.n())?;
            let inst = SteinerInstance::new(graph, t)?;
            report(&inst, &g.config(), *method, g.json)
        }
        Command::Verify { terminals } => {
            let graph = g.graph()?;
            let t = terminals.as_ref().unwrap_or(&Terminals::All).resolve(graph.n())?;
            let inst = SteinerInstance::new(graph, t.clone())?;
            let cfg = g.config();
            let mut results = Vec::new();
            for m in Method::ALL {
                if m == Method::StoerWagner && !inst.is_global() {
                    continue;
                }
                let r = run_method(&Dinic, &inst, &cfg, m)?;
                if !r.is_valid_for(&inst) {
                    return Err(Error::ContractViolation(format!("{m} returned an invalid cut")));
                }
                results.push((m.name().to_string(), r.lambda, r.meter.call_count));
            }
            if inst.graph().n() <= ENUMERATION_LIMIT {
                let c = enumerate_cuts(inst.graph(), &Constraint::TerminalSplitting(t))?.expect("two terminals");
                results.push(("enumeration".into(), c.weight, 0));
            }
            let exact = results.iter().find(|r| r.0 == "naive").map(|r| r.1).expect("naive ran");
            let disagree: Vec<&String> = results.iter().filter(|r| r.0 != "rand" && r.1 != exact).map(|r| &r.0).collect();
            let rand_ok = results.iter().any(|r| r.0 == "rand" && r.1 == exact);
            if g.json {
                let rows: Vec<_> = results.iter().map(|(m, w, c)| json!({ "method": m, "weight": w, "flow_calls": c })).collect();
                out!("{}", to_json(&json!({ "weight": exact, "agree": disagree.is_empty(), "rand_matches": rand_ok, "methods": rows })));
            } else {
                for (m, w, c) in &results {
                    outln!("{m:<12} weight {w:<8} flow calls {c}");
                }
                outln!("{}", if disagree.is_empty() { "exact methods agree" } else { "MISMATCH" });
            }
            if !disagree.is_empty() {
                return Err(Error::ContractViolation(format!("exact methods disagree: {disagree:?}")));
            }
            Ok(())
        }
        Command::Bench { family, sizes, methods, csv } => {
            let mut instances = Vec::new();
            if let Some(path) = &g.graph {
                instances.push(BenchInstance::global(path.display().to_string(), g.graph()?));
            }
            for &n in sizes {
                let spec = match family {
                    Kind::Gnp => GeneratorSpec::GnpWeighted { n, p: 0.3, w_min: 1, w_max: 10, seed: g.seed, connected: true },
                    Kind::PlantedCut => GeneratorSpec::PlantedCut { n, side: n / 3, cross: 1, seed: g.seed },
                    Kind::Dumbbell => GeneratorSpec::Dumbbell { n },
                    Kind::Cycle => GeneratorSpec::Cycle { n },
                    Kind::Clique => GeneratorSpec::Clique { n },
                    Kind::Grid => GeneratorSpec::Grid { rows: n, cols: n },
                };
                instances.push(BenchInstance::global(spec.label(), gen::generate(&spec)?));
            }
            let rep = bench(&Dinic, methods, &instances, &g.config());
            if let Some(path) = csv {
                let file = fs::File::create(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
                rep.write_csv(file)?;
            }
            if g.json {
                out!("{}", rep.to_json()?);
                outln!();
            } else {
                rep.write_csv(std::io::stdout())?;
            }
            if !rep.disagreements().is_empty() {
                return Err(Error::ContractViolation(format!("exact methods disagree on instances {:?}", rep.disagreements())));
            }
            Ok(())
        }
    }
}

fn report(inst: &SteinerInstance<u64>, cfg: &AlgoConfig, method: Method, json: bool) -> Result<()> {
    let r = run_method(&Dinic, inst, cfg, method)?;
    if !r.is_valid_for(inst) {
        return Err(Error::ContractViolation("reported cut does not match its weight".into()));
    }
    if json {
        out!("{}", to_json(&r));
    } else {
        outln!("weight {}", r.lambda);
        outln!("side {}", ids(&r.best_cut.side));
        outln!("flow calls {}", r.meter.call_count);
        if let Some(t) = r.det_trace() {
            outln!("budget {} ok {}", t.budget, t.budget_ok);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
