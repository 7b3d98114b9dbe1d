//! Command-line front end. Exit codes: 0 when a certificate is found or the
//! command succeeds, 2 for usage or precondition problems, 3 when a search
//! completes without finding anything, 4 when a budget is exhausted.

use crate::exploration::{audit_growth, audit_min_degree, explore, ExploreParams};
use crate::graph::Graph;
use crate::oracle::{
    complete_bipartite, ex_brute, ex_brute_naive, gen_min_degree_bipartite, gen_planted_well_placed,
    gen_random_bipartite, gen_random_trilayered, gen_trilayered_min_degree, polarity_graph, ExError,
};
use crate::pipeline::{bound, find_even_cycle};
use crate::theta::{find_theta_avg_degree, find_theta_exhaustive, find_theta_min_degree, ThetaError};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(
    name = "evencycle",
    version,
    about = "search for even cycles through verifiable certificates"
)]
pub struct Cli {
    /// Worker threads for the parallel parts; default is the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run the capped level exploration and audit it.
    Explore(ExploreArgs),
    /// Search for a cycle on exactly 2k vertices.
    FindCycle(FindCycleArgs),
    /// Exact extremal edge counts from the brute-force oracle.
    Ex(ExArgs),
    /// Generate a host graph.
    Gen(GenArgs),
    /// Evaluate the edge bound for n and k.
    Bound(BoundArgs),
    /// Find a theta graph in a host.
    Theta(ThetaArgs),
}

#[derive(clap::Args)]
pub struct ExploreArgs {
    /// Graph file: a "n m" header line, then one "u v" line per edge.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, short, default_value_t = 1)]
    pub d: usize,
    /// Levels to explore; defaults to k.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Cap multiplier; defaults to k cubed.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Write the growth audit as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Fail (exit 1) when any audited inequality breaks.
    #[arg(long)]
    pub strict: bool,
}

#[derive(clap::Args)]
pub struct FindCycleArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, short)]
    pub d: Option<usize>,
    #[arg(long)]
    pub root: Option<usize>,
    /// Write the full pipeline report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ExArgs {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short)]
    pub k: usize,
    /// Use the direct enumeration over all edge subsets (n up to 6).
    #[arg(long)]
    pub naive: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    CompleteBipartite,
    RandomBipartite,
    MinDegreeBipartite,
    Polarity,
    Planted,
    RandomTrilayered,
    MinDegreeTrilayered,
}

#[derive(clap::Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Graph file destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Layer file destination, required for the trilayered kinds.
    #[arg(long)]
    pub layers_out: Option<PathBuf>,
    /// Planted metadata (root, level, certificate) as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub left: usize,
    #[arg(long, default_value_t = 4)]
    pub right: usize,
    #[arg(long, default_value_t = 8)]
    pub edges: usize,
    #[arg(long, default_value_t = 2)]
    pub delta: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long, short, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub n1: usize,
    #[arg(long, default_value_t = 6)]
    pub n2: usize,
    #[arg(long, default_value_t = 4)]
    pub n3: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p12: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p23: f64,
    #[arg(long, default_value_t = 2)]
    pub d12: usize,
    #[arg(long, default_value_t = 2)]
    pub d21: usize,
    #[arg(long, default_value_t = 2)]
    pub d23: usize,
    #[arg(long, default_value_t = 2)]
    pub d32: usize,
}

#[derive(clap::Args)]
pub struct BoundArgs {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short)]
    pub k: usize,
    /// Compare an edge count against the bound.
    #[arg(long)]
    pub edges: Option<usize>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThetaMode {
    /// Exhaustive below 25 vertices, average-degree route above.
    Auto,
    Exhaustive,
    MinDegree,
    AvgDegree,
}

#[derive(clap::Args)]
pub struct ThetaArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ThetaMode::Auto)]
    pub mode: ThetaMode,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    run_parsed(cli)
}

pub fn run_parsed(cli: Cli) -> i32 {
    if let Some(threads) = cli.threads {
        // ignore failures from double configuration in the same process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match cli.command {
        Command::Explore(a) => cmd_explore(a),
        Command::FindCycle(a) => cmd_find_cycle(a),
        Command::Ex(a) => cmd_ex(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Theta(a) => cmd_theta(a),
    }
}

fn read_graph(path: &Path) -> Result<Graph, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {}", path.display(), e);
        EXIT_USAGE
    })?;
    Graph::parse(&text).map_err(|e| {
        eprintln!("cannot parse {}: {}", path.display(), e);
        EXIT_USAGE
    })
}

fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), i32> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| {
            eprintln!("cannot write {}: {}", p.display(), e);
            EXIT_USAGE
        }),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), i32> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    fs::write(path, text + "\n").map_err(|e| {
        eprintln!("cannot write {}: {}", path.display(), e);
        EXIT_USAGE
    })
}

fn cmd_explore(a: ExploreArgs) -> i32 {
    if a.k < 1 || a.d < 1 {
        eprintln!("k and d must be at least 1");
        return EXIT_USAGE;
    }
    let g = match read_graph(&a.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if a.root >= g.n() {
        eprintln!("root {} out of range, graph has {} vertices", a.root, g.n());
        return EXIT_USAGE;
    }
    let params = ExploreParams {
        k: a.k,
        d: a.d,
        delta_mult: a.delta.unwrap_or(a.k * a.k * a.k),
    };
    let depth = a.depth.unwrap_or(a.k);
    let ex = explore(&g, a.root, &params, depth);
    for level in &ex.levels {
        println!(
            "level {}: {} chosen of {} candidates ({:?})",
            level.index,
            level.chosen.len(),
            level.candidates.len(),
            level.tag
        );
    }
    let audit = audit_growth(&g, &ex, a.k, a.d);
    let mut clean = true;
    for r in audit.inequalities.iter().filter(|r| !r.holds) {
        clean = false;
        println!("inequality {} breaks at level {}: {} vs {}", r.id, r.i, r.lhs, r.rhs);
    }
    let audit_delta = g.min_degree().min(params.cap());
    match audit_min_degree(&g, &ex, audit_delta) {
        Ok(()) => println!("min-degree audit (delta = {}): ok", audit_delta),
        Err(v) => {
            clean = false;
            println!("min-degree audit (delta = {}): {}", audit_delta, v);
        }
    }
    if clean {
        println!("growth audit: all inequalities hold");
    }
    if let Some(path) = &a.json {
        let value = serde_json::to_value(&audit).expect("audit serializes");
        if let Err(code) = write_json(path, &value) {
            return code;
        }
    }
    if a.strict && !clean {
        return 1;
    }
    EXIT_OK
}

fn cmd_find_cycle(a: FindCycleArgs) -> i32 {
    if a.k < 2 {
        eprintln!("k must be at least 2");
        return EXIT_USAGE;
    }
    let g = match read_graph(&a.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let out = find_even_cycle(&g, a.k, a.d, a.root);
    if let Some(path) = &a.json {
        let value = serde_json::to_value(&out.report).expect("report serializes");
        if let Err(code) = write_json(path, &value) {
            return code;
        }
    }
    match &out.cycle {
        Some(cert) => {
            let ids: Vec<String> = cert.vertices.iter().map(|v| v.to_string()).collect();
            println!("found cycle on {} vertices: {}", cert.vertices.len(), ids.join(" "));
            EXIT_OK
        }
        None => {
            println!("no cycle on {} vertices found", 2 * a.k);
            EXIT_NONE
        }
    }
}

fn cmd_ex(a: ExArgs) -> i32 {
    if a.naive {
        if a.k < 2 || a.n < 1 || a.n > 6 {
            eprintln!("the direct enumeration needs k >= 2 and n in 1..=6");
            return EXIT_USAGE;
        }
        for n in 1..=a.n {
            println!("{} {}", n, ex_brute_naive(n, a.k));
        }
        return EXIT_OK;
    }
    match ex_brute(a.n, a.k) {
        Ok(entries) => {
            for e in &entries {
                println!("{} {}", e.n, e.max_edges);
            }
            if let Some(path) = &a.json {
                let value = serde_json::json!(entries
                    .iter()
                    .map(|e| serde_json::json!({"n": e.n, "k": e.k, "max_edges": e.max_edges}))
                    .collect::<Vec<_>>());
                if let Err(code) = write_json(path, &value) {
                    return code;
                }
            }
            EXIT_OK
        }
        Err(e @ ExError::BadK { .. }) => {
            eprintln!("{}", e);
            EXIT_USAGE
        }
        Err(e @ ExError::OverBudget { .. }) => {
            eprintln!("{}", e);
            EXIT_BUDGET
        }
    }
}

fn cmd_gen(a: GenArgs) -> i32 {
    let needs_layers = matches!(a.kind, GenKind::RandomTrilayered | GenKind::MinDegreeTrilayered);
    if needs_layers && a.layers_out.is_none() {
        eprintln!("trilayered kinds need --layers-out");
        return EXIT_USAGE;
    }
    match a.kind {
        GenKind::CompleteBipartite => {
            if a.left == 0 || a.right == 0 {
                eprintln!("sides must be nonempty");
                return EXIT_USAGE;
            }
            let g = complete_bipartite(a.left, a.right);
            write_text(a.out.as_ref(), &g.to_text()).err().unwrap_or(EXIT_OK)
        }
        GenKind::RandomBipartite => {
            if a.edges > a.left * a.right {
                eprintln!("edge count over the {} available pairs", a.left * a.right);
                return EXIT_USAGE;
            }
            let g = gen_random_bipartite(a.left, a.right, a.edges, a.seed);
            write_text(a.out.as_ref(), &g.to_text()).err().unwrap_or(EXIT_OK)
        }
        GenKind::MinDegreeBipartite => {
            if a.delta == 0 || a.delta > a.left || a.delta > a.right {
                eprintln!("need 1 <= delta <= both sides");
                return EXIT_USAGE;
            }
            let g = gen_min_degree_bipartite(a.left, a.right, a.delta, a.seed);
            write_text(a.out.as_ref(), &g.to_text()).err().unwrap_or(EXIT_OK)
        }
        GenKind::Polarity => {
            if !matches!(a.q, 2 | 3 | 5 | 7 | 11 | 13) {
                eprintln!("q must be a prime up to 13");
                return EXIT_USAGE;
            }
            let pg = polarity_graph(a.q);
            write_text(a.out.as_ref(), &pg.graph.to_text()).err().unwrap_or(EXIT_OK)
        }
        GenKind::Planted => {
            if a.k < 2 {
                eprintln!("k must be at least 2");
                return EXIT_USAGE;
            }
            let inst = gen_planted_well_placed(a.k, a.seed);
            if let Err(code) = write_text(a.out.as_ref(), &inst.graph.to_text()) {
                return code;
            }
            eprintln!("root {} level {} expected {}", inst.root, inst.mid_level, inst.expected_len);
            if let Some(path) = &a.json {
                let value = serde_json::json!({
                    "root": inst.root,
                    "level": inst.mid_level,
                    "expected_len": inst.expected_len,
                    "levels": inst.levels,
                    "cert": inst.cert,
                });
                if let Err(code) = write_json(path, &value) {
                    return code;
                }
            }
            EXIT_OK
        }
        GenKind::RandomTrilayered => {
            if !(0.0..=1.0).contains(&a.p12) || !(0.0..=1.0).contains(&a.p23) {
                eprintln!("probabilities must lie in [0, 1]");
                return EXIT_USAGE;
            }
            let t = gen_random_trilayered(a.n1, a.n2, a.n3, a.p12, a.p23, a.seed);
            if let Err(code) = write_text(a.out.as_ref(), &t.host().to_text()) {
                return code;
            }
            write_text(a.layers_out.as_ref(), &t.layers_to_text()).err().unwrap_or(EXIT_OK)
        }
        GenKind::MinDegreeTrilayered => {
            if a.d12 > a.n2 || a.d21 > a.n1 || a.d23 > a.n3 || a.d32 > a.n2 {
                eprintln!("degree floors cannot exceed the opposite layer");
                return EXIT_USAGE;
            }
            let t = gen_trilayered_min_degree(a.n1, a.n2, a.n3, a.d12, a.d21, a.d23, a.d32, a.seed);
            if let Err(code) = write_text(a.out.as_ref(), &t.host().to_text()) {
                return code;
            }
            write_text(a.layers_out.as_ref(), &t.layers_to_text()).err().unwrap_or(EXIT_OK)
        }
    }
}

fn cmd_bound(a: BoundArgs) -> i32 {
    if a.k < 2 || a.n == 0 {
        eprintln!("need k >= 2 and n >= 1");
        return EXIT_USAGE;
    }
    let value = bound(a.n, a.k);
    println!("{}", value);
    let within = a.edges.map(|m| (m as f64) <= value);
    if let Some(w) = within {
        println!("{} edges: {}", a.edges.unwrap(), if w { "within" } else { "over" });
    }
    if let Some(path) = &a.json {
        let v = serde_json::json!({
            "n": a.n, "k": a.k, "value": value,
            "edges": a.edges, "within": within,
        });
        if let Err(code) = write_json(path, &v) {
            return code;
        }
    }
    EXIT_OK
}

fn cmd_theta(a: ThetaArgs) -> i32 {
    if a.k < 2 {
        eprintln!("k must be at least 2");
        return EXIT_USAGE;
    }
    let g = match read_graph(&a.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let found = match a.mode {
        ThetaMode::Exhaustive => Ok(find_theta_exhaustive(&g, a.k)),
        ThetaMode::Auto if g.n() <= 24 => Ok(find_theta_exhaustive(&g, a.k)),
        ThetaMode::Auto | ThetaMode::AvgDegree => find_theta_avg_degree(&g, a.k).map(Some),
        ThetaMode::MinDegree => find_theta_min_degree(&g, a.k).map(Some),
    };
    match found {
        Ok(Some(theta)) => {
            let ids: Vec<String> = theta.cycle.iter().map(|v| v.to_string()).collect();
            println!("cycle: {}", ids.join(" "));
            println!("chord: {} {}", theta.chord.0, theta.chord.1);
            if let Some(path) = &a.json {
                let value = serde_json::to_value(&theta).expect("theta serializes");
                if let Err(code) = write_json(path, &value) {
                    return code;
                }
            }
            EXIT_OK
        }
        Ok(None) => {
            println!("no theta graph found");
            EXIT_NONE
        }
        Err(e) => {
            // hypotheses of the constructive finders are preconditions
            eprintln!("{}", e);
            match e {
                ThetaError::BadK(_)
                | ThetaError::NotBipartite
                | ThetaError::LowDegree { .. }
                | ThetaError::LowAverageDegree { .. }
                | ThetaError::EmptyGraph => EXIT_USAGE,
            }
        }
    }
}
