//! Command-line surface: classify a labelled graph, decompose it as a tree
//! of groups, run the empirical Cayley-ball estimator, cross-check the
//! classifier against the oracle, or generate a random document corpus.
//!
//! Exit codes: 0 success, 1 input error, 2 unsupported labels, 3 resource
//! cap, 4 cross-check disagreement.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use graph_product_ends::classifier::{self, Witness};
use graph_product_ends::decompose;
use graph_product_ends::document::{parse_graph_document, NameMap};
use graph_product_ends::error::Error;
use graph_product_ends::harness;
use graph_product_ends::labels::EndsClass;
use graph_product_ends::oracle::{self, DEFAULT_BALL_CAP, DEFAULT_MARGIN, DEFAULT_R_MAX};

#[derive(Parser)]
#[command(name = "gpends", about = "End counts for graph products of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Graph document path, or - for stdin
    #[arg(long, default_value = "-")]
    input: String,
    /// Emit JSON instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Number of ends, witness, and dictionary checks
    Classify {
        #[command(flatten)]
        input: InputArg,
    },
    /// Tree-of-groups decomposition over finite clique separators
    Decompose {
        #[command(flatten)]
        input: InputArg,
        /// Also write a Graphviz rendering to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Empirical Cayley-ball ends estimate (concrete cyclic labels only)
    Oracle {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = DEFAULT_R_MAX)]
        rmax: u32,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        cap: usize,
        /// Write sphere sizes and shell component counts as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Classifier-vs-oracle agreement over all small labelled graphs
    Crosscheck {
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        /// Cyclic orders to label vertices with (subset of {2, 3})
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        pool: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        rmax: u32,
        #[arg(long, default_value_t = 2)]
        margin: u32,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        cap: usize,
        /// Reserved; the enumeration is exhaustive and deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random graph documents, one JSON document per line
    Corpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::UnsupportedLabel(_) => ExitCode::from(2),
        Error::ResourceCap { .. } => ExitCode::from(3),
        _ => ExitCode::from(1),
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
    }
}

fn witness_text(w: &Witness, names: &NameMap) -> String {
    let set = |s: &graph_product_ends::VertexSet| format!("{{{}}}", names.names(s).join(", "));
    match w {
        Witness::CompleteAllFinite => "complete graph, all vertex groups finite".into(),
        Witness::CompleteOneMultiEnded { vertex } => format!(
            "complete graph, unique multi-ended vertex group at {}",
            names.name(*vertex)
        ),
        Witness::JoinTwoZ2 { universal, pair } => format!(
            "join of finite complete part {} with two non-adjacent Z2 vertices {}",
            set(universal),
            set(pair)
        ),
        Witness::FiniteCliqueSeparator { separator } => {
            format!("finite clique separator {}", set(separator))
        }
        Witness::OneEndedNoSeparator => {
            "connected, not complete, no finite clique separator".into()
        }
        Witness::CompleteOneOneEnded { vertex } => format!(
            "complete graph, unique one-ended vertex group at {}",
            names.name(*vertex)
        ),
        Witness::CompleteManyInfinite => {
            "complete graph with at least two infinite vertex groups".into()
        }
    }
}

#[derive(Serialize)]
struct WitnessReport {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    universal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    separator: Option<Vec<String>>,
}

impl WitnessReport {
    fn new(w: &Witness, names: &NameMap) -> WitnessReport {
        let mut report = WitnessReport {
            kind: String::new(),
            vertex: None,
            universal: None,
            pair: None,
            separator: None,
        };
        match w {
            Witness::CompleteAllFinite => report.kind = "complete_all_finite".into(),
            Witness::CompleteOneMultiEnded { vertex } => {
                report.kind = "complete_one_multi_ended".into();
                report.vertex = Some(names.name(*vertex).to_string());
            }
            Witness::JoinTwoZ2 { universal, pair } => {
                report.kind = "join_two_z2".into();
                report.universal = Some(names.names(universal));
                report.pair = Some(names.names(pair));
            }
            Witness::FiniteCliqueSeparator { separator } => {
                report.kind = "finite_clique_separator".into();
                report.separator = Some(names.names(separator));
            }
            Witness::OneEndedNoSeparator => report.kind = "one_ended_no_separator".into(),
            Witness::CompleteOneOneEnded { vertex } => {
                report.kind = "complete_one_one_ended".into();
                report.vertex = Some(names.name(*vertex).to_string());
            }
            Witness::CompleteManyInfinite => report.kind = "complete_many_infinite".into(),
        }
        report
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    name: String,
    ends: EndsClass,
    witness: WitnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hyperbolic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    virtually_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<String>,
}

fn cmd_classify(input: &InputArg) -> Result<(), Error> {
    let text = read_input(&input.input)?;
    let (lg, names, name) = parse_graph_document(&text)?;
    let verdict = classifier::ends(&lg);
    let order = lg.special_subgroup_order(&lg.graph.vertex_set())?;
    let (hyperbolic, virtually_free, notice) = if lg.all_finite() {
        (
            Some(classifier::is_hyperbolic(&lg)?),
            Some(classifier::is_virtually_free(&lg)?),
            None,
        )
    } else {
        (
            None,
            None,
            Some("dictionary checks omitted: not all vertex groups are finite".to_string()),
        )
    };
    if input.json {
        let report = ClassifyReport {
            name,
            ends: verdict.ends,
            witness: WitnessReport::new(&verdict.witness, &names),
            order,
            hyperbolic,
            virtually_free,
            notice,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("name: {name}");
        println!("ends: {}", verdict.ends);
        println!("witness: {}", witness_text(&verdict.witness, &names));
        if let Some(order) = order {
            println!("order: {order}");
        }
        if let (Some(h), Some(vf)) = (hyperbolic, virtually_free) {
            println!("hyperbolic: {h}");
            println!("virtually_free: {vf}");
        } else if let Some(notice) = notice {
            println!("notice: {notice}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeReport {
    name: String,
    nodes: Vec<Vec<String>>,
    edges: Vec<DecomposeEdge>,
}

#[derive(Serialize)]
struct DecomposeEdge {
    a: usize,
    b: usize,
    label: Vec<String>,
    edge_group_order: u128,
}

fn cmd_decompose(input: &InputArg, dot: Option<&PathBuf>) -> Result<(), Error> {
    let text = read_input(&input.input)?;
    let (lg, names, name) = parse_graph_document(&text)?;
    let tree = decompose::tree_of_groups(&lg);
    let report = DecomposeReport {
        name,
        nodes: tree.nodes.iter().map(|n| names.names(n)).collect(),
        edges: tree
            .edges
            .iter()
            .map(|e| DecomposeEdge {
                a: e.a,
                b: e.b,
                label: names.names(&e.label),
                edge_group_order: lg
                    .special_subgroup_order(&e.label)
                    .expect("edge label vertices exist")
                    .expect("edge groups are finite"),
            })
            .collect(),
    };
    if let Some(path) = dot {
        let rendered =
            decompose::render_dot_with(&tree, &lg, &|v| names.name(v).to_string());
        fs::write(path, rendered)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    if input.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("name: {}", report.name);
        for (i, node) in report.nodes.iter().enumerate() {
            println!("node {i}: {{{}}}", node.join(", "));
        }
        for e in &report.edges {
            println!(
                "edge {} -- {}: {{{}}} (order {})",
                e.a,
                e.b,
                e.label.join(", "),
                e.edge_group_order
            );
        }
    }
    Ok(())
}

fn cmd_oracle(
    input: &InputArg,
    rmax: u32,
    margin: u32,
    cap: usize,
    csv: Option<&PathBuf>,
) -> Result<ExitCode, Error> {
    let text = read_input(&input.input)?;
    let (lg, _names, name) = parse_graph_document(&text)?;
    oracle::require_cyclic(&lg)?;
    let report = oracle::ends_estimate(&lg, rmax, margin, cap)?;
    if let Some(path) = csv {
        fs::write(path, oracle::report_csv(&report))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    if input.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("name: {name}");
        println!("verdict: {}", report.verdict);
        println!(
            "radii: inner {} outer {}",
            report.inner_radius, report.outer_radius
        );
        println!(
            "sphere sizes: {}",
            report
                .sphere_sizes
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        println!(
            "shell components: {}",
            report
                .shell_component_counts
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        if let Some(count) = report.element_count {
            println!("element count: {count}");
        }
        if report.capped {
            println!("warning: ball size cap reached; data is partial");
        }
    }
    Ok(if report.capped {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_crosscheck(
    nmax: usize,
    pool: &[u64],
    rmax: u32,
    margin: u32,
    cap: usize,
    json: bool,
) -> Result<ExitCode, Error> {
    let summary = harness::crosscheck(nmax, pool, rmax, margin, cap)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    } else {
        for rec in &summary.records {
            println!(
                "{} classifier={} oracle={} agree={}",
                rec.graph_hash,
                rec.classifier,
                rec.oracle,
                rec.agree.map_or("n/a".into(), |a| a.to_string())
            );
        }
        println!(
            "total={} conclusive={} agreements={} inconclusive={}",
            summary.total, summary.conclusive, summary.agreements, summary.inconclusive
        );
    }
    if !summary.disagreements.is_empty() {
        eprintln!(
            "cross-check disagreement on graphs: {}",
            summary.disagreements.join(", ")
        );
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(count: usize, n: usize, edge_prob: f64, seed: u64) -> Result<(), Error> {
    for doc in harness::corpus(count, n, edge_prob, seed)? {
        println!("{}", serde_json::to_string(&doc).unwrap());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Classify { input } => cmd_classify(input).map(|()| ExitCode::SUCCESS),
        Command::Decompose { input, dot } => {
            cmd_decompose(input, dot.as_ref()).map(|()| ExitCode::SUCCESS)
        }
        Command::Oracle {
            input,
            rmax,
            margin,
            cap,
            csv,
        } => cmd_oracle(input, *rmax, *margin, *cap, csv.as_ref()),
        Command::Crosscheck {
            nmax,
            pool,
            rmax,
            margin,
            cap,
            seed: _,
            json,
        } => cmd_crosscheck(*nmax, pool, *rmax, *margin, *cap, *json),
        Command::Corpus {
            count,
            n,
            edge_prob,
            seed,
        } => cmd_corpus(*count, *n, *edge_prob, *seed).map(|()| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}
