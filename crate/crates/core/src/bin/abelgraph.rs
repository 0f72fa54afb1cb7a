use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use abelgraph::abel::{abel_fibers, abel_image, sample_points};
use abelgraph::corpus::{generate, run_suite, CorpusSpec};
use abelgraph::graph::{DualGraph, PointOnCurve};
use abelgraph::report;
use abelgraph::{Error, Result};

/// Abel maps on stable curves, computed from the dual graph.
///
/// Graph files are JSON: {"vertices":[{"id":"C1","genus":0},...],
/// "edges":[{"id":"e1","ends":["C1","C2"]},...]}. Enumeration is limited to
/// graphs with at most ABELGRAPH_MAX_VERTICES vertices (default 16).
#[derive(Parser)]
#[command(name = "abelgraph", version)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary, class group, balanced sets, tails and the Abel table.
    Analyze {
        graph: PathBuf,
        /// Degrees for the balanced sets.
        #[arg(long = "degree", short, value_delimiter = ',', default_value = "1")]
        degrees: Vec<i64>,
        /// Vertex id used to reduce class representatives.
        #[arg(long)]
        base: Option<String>,
    },
    /// The image of one point under the completed first Abel map.
    Abel {
        graph: PathBuf,
        #[command(flatten)]
        point: PointArgs,
        /// Label of the smooth point (default `p`).
        #[arg(long)]
        label: Option<String>,
    },
    /// Partition of sample points by equal Abel image.
    Fibers {
        graph: PathBuf,
        /// Smooth sample points per component.
        #[arg(long, default_value_t = 2)]
        per_component: usize,
    },
    /// Invariant factors of the degree class group.
    ClassGroup { graph: PathBuf },
    /// Balanced and stably balanced multidegrees of one degree.
    Balanced {
        graph: PathBuf,
        #[arg(long, short)]
        degree: i64,
        #[arg(long)]
        base: Option<String>,
    },
    /// The closed formula on a curve with two components.
    Vine {
        graph: PathBuf,
        #[arg(long, short)]
        degree: i64,
        /// Degree of the divisor on the first component.
        #[arg(long)]
        a: Option<i64>,
    },
    /// Generate random stable graphs and run every invariant check on them.
    Corpus(CorpusArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PointArgs {
    /// Component carrying a smooth point.
    #[arg(long)]
    component: Option<String>,
    /// Node (edge id).
    #[arg(long)]
    node: Option<String>,
    /// One smooth point per component and every node.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// JSON spec; the flags below are ignored when given.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [2, 5])]
    genus: Vec<i64>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [1, 6])]
    vertices: Vec<usize>,
    #[arg(long, default_value_t = 12)]
    max_edges: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0.15)]
    loop_probability: f64,
    /// Directory for the generated graphs and summary.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(path: &Path) -> Result<DualGraph> {
    DualGraph::from_json(&std::fs::read_to_string(path)?)
}

fn base_index(host: &DualGraph, base: Option<&str>) -> Result<usize> {
    base.map_or(Ok(0), |id| host.vertex_index(id))
}

fn corpus_spec(args: &CorpusArgs) -> Result<CorpusSpec> {
    let spec = match &args.spec {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => CorpusSpec {
            genus: [args.genus[0], args.genus[1]],
            vertices: [args.vertices[0], args.vertices[1]],
            max_edges: args.max_edges,
            seed: args.seed,
            count: args.count,
            loop_probability: args.loop_probability,
        },
    };
    spec.validate()?;
    Ok(spec)
}

fn corpus(args: &CorpusArgs) -> Result<Value> {
    let spec = corpus_spec(args)?;
    let graphs = generate(&spec)?;
    let suite = run_suite(&graphs);
    let summary = json!({
        "spec": spec,
        "graphs": suite.graphs,
        "checks": suite.checks,
        "passed": suite.passed(),
        "violations": suite.violations,
    });
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        for (i, g) in graphs.iter().enumerate() {
            std::fs::write(dir.join(format!("graph_{i:04}.json")), g.to_json())?;
        }
        std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)?)?;
    }
    Ok(summary)
}

fn run(command: &Command) -> Result<Value> {
    match command {
        Command::Analyze { graph, degrees, base } => {
            let host = load(graph)?;
            report::analysis_report(&host, degrees, base_index(&host, base.as_deref())?)
        }
        Command::Abel { graph, point, label } => {
            if label.is_some() && point.component.is_none() {
                return Err(Error::InvalidArgument("--label needs --component".into()));
            }
            let host = load(graph)?;
            let label = label.as_deref().unwrap_or("p");
            if point.all {
                return Ok(json!(report::abel_table(&host, label)?));
            }
            let p = match (&point.component, &point.node) {
                (Some(c), _) => PointOnCurve::smooth(c.clone(), label),
                (_, Some(e)) => PointOnCurve::node(e.clone()),
                _ => unreachable!("clap requires one of the point arguments"),
            };
            Ok(report::abel_image_json(&abel_image(&host, &p)?))
        }
        Command::Fibers { graph, per_component } => {
            let host = load(graph)?;
            let points = sample_points(&host, *per_component);
            let fibers = abel_fibers(&host, &points)?;
            Ok(report::fibers_report(&host, &fibers))
        }
        Command::ClassGroup { graph } => Ok(report::class_group_report(&load(graph)?)),
        Command::Balanced { graph, degree, base } => {
            let host = load(graph)?;
            report::balanced_report(&host, *degree, base_index(&host, base.as_deref())?)
        }
        Command::Vine { graph, degree, a } => report::vine_report(&load(graph)?, *degree, *a),
        Command::Corpus(args) => corpus(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(value) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            };
            println!("{}", text.expect("JSON values serialize"));
            let failed = matches!(cli.command, Command::Corpus(_)) && value["passed"] == false;
            if failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvariantViolation(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
