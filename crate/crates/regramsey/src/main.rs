//! Command-line front end exposing each pipeline stage on its own:
//! degree-sequence realization, equitable coloring, the triangle-free
//! process, the regularizer, patch graphs, verification, and end-to-end
//! construction.
//!
//! Exit codes: 0 success, 1 infeasible realization or failed verification
//! predicates, 2 construction failure or bad parameters, 3 I/O error.

use clap::{Parser, Subcommand, ValueEnum};
use regramsey::blowup::h_kr;
use regramsey::coloring::equitable_color;
use regramsey::degrees::{gale_ryser_check, realize_bipartite, DegreeSequence};
use regramsey::io::{emit, parse_auto, write_edge_list, GraphFormat};
use regramsey::pipeline::{construct, PipelineConfig, DEFAULT_ALPHA_BUDGET};
use regramsey::process::{run_process, ForbiddenPattern};
use regramsey::regularize::regularize;
use regramsey::verify::{certify, AlphaMode, CertParams};
use regramsey::Graph;
use std::cmp::Reverse;
use std::fmt::Write as _;
use std::fs;
use std::io::{ErrorKind, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "regramsey",
    version,
    about = "Regular triangle-free graphs with small independence number"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    /// graph6 text
    G6,
    /// `u v` edge list with a `# n=` header
    Edges,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::G6 => GraphFormat::Graph6,
            FormatArg::Edges => GraphFormat::EdgeList,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlphaArg {
    /// Branch-and-bound, exact within the node budget
    Exact,
    /// Seeded greedy lower bound only
    Greedy,
}

impl From<AlphaArg> for AlphaMode {
    fn from(a: AlphaArg) -> AlphaMode {
        match a {
            AlphaArg::Exact => AlphaMode::Exact,
            AlphaArg::Greedy => AlphaMode::Greedy,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PatternArg {
    /// Forbid triangles
    #[value(name = "K3")]
    K3,
}

#[derive(Subcommand)]
enum Command {
    /// Build a regular triangle-free graph on n vertices with a certificate
    Construct {
        /// Target number of vertices
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Serialization for the graph itself
        #[arg(long, value_enum, default_value = "g6")]
        format: FormatArg,
        /// Write the graph here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON certificate here
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "exact")]
        alpha: AlphaArg,
        /// Node-expansion budget for the exact independence search
        #[arg(long, default_value_t = DEFAULT_ALPHA_BUDGET)]
        budget: u64,
        /// Construction attempts before the edgeless fallback
        #[arg(long, default_value_t = 8)]
        retries: usize,
    },
    /// Run the random maximal H-free process and print the final graph
    Process {
        #[arg(long)]
        n: usize,
        /// Forbidden pattern (only K3 is exposed here)
        #[arg(long, value_enum, default_value = "K3")]
        h: PatternArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the per-step trajectory CSV here
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Realize a bipartite graph with the given degree sequences
    ///
    /// Prints one `LEFT RIGHT` pair per line (0-based positions in the
    /// input lists), or `INFEASIBLE s=<witness>` with exit code 1, where
    /// the witness is the first violated dominance prefix length and 0
    /// means the two sums differ.
    Realize {
        /// Comma-separated left degrees, e.g. "3,2,2"
        #[arg(long)]
        left: String,
        /// Comma-separated right degrees
        #[arg(long)]
        right: String,
    },
    /// Equitably color a graph, printing `vertex color` lines
    Color {
        /// Graph file, edge list or graph6
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of color classes
        #[arg(long)]
        colors: usize,
    },
    /// Double a graph into a regular triangle-free one via the bipartite gadget
    Regularize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Degree slack; the output is (d+Δ)-regular
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; a .g6 extension selects graph6, anything else edge list
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the patch graph H_(k,r): r-regular triangle-free on k vertices
    Hkr {
        /// Order, a positive multiple of 5
        #[arg(long)]
        k: usize,
        /// Target degree, even and at most 2k/5
        #[arg(long)]
        r: usize,
        /// Output file; a .g6 extension selects graph6, anything else edge list
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute a certificate for a serialized graph
    ///
    /// Exits 0 only when the graph is regular and triangle-free.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        alpha: AlphaArg,
        #[arg(long, default_value_t = DEFAULT_ALPHA_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Construction(String),
    #[error("{0}")]
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Construction(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_auto(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn format_for(path: &Path) -> GraphFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

fn parse_degrees(raw: &str) -> Result<Vec<usize>, Failure> {
    raw.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad degree list {raw:?}: {e}")))
}

/// Input positions sorted by descending degree (stable, so ties keep
/// input order), paired with the sorted values.
fn sorted_degrees(values: &[usize]) -> Result<(Vec<usize>, DegreeSequence), Failure> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| Reverse(values[i]));
    let sorted: Vec<usize> = order.iter().map(|&i| values[i]).collect();
    let seq = DegreeSequence::from_descending(sorted)
        .map_err(|e| Failure::Usage(format!("bad degree sequence: {e}")))?;
    Ok((order, seq))
}

/// Writes to stdout, treating a closed pipe as success so shell pipelines
/// like `| head` do not turn into panics.
fn print_out(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            panic!("failed writing to stdout: {e}");
        }
    }
}

fn cmd_realize(left: &str, right: &str) -> Result<u8, Failure> {
    let (left_pos, left_seq) = sorted_degrees(&parse_degrees(left)?)?;
    let (right_pos, right_seq) = sorted_degrees(&parse_degrees(right)?)?;
    if let Err(infeasible) = gale_ryser_check(&left_seq, &right_seq) {
        print_out(&format!("INFEASIBLE s={}\n", infeasible.witness()));
        return Ok(1);
    }
    let bip = realize_bipartite(&left_seq, &right_seq)
        .expect("sequence pair passed the feasibility check");
    let mut lines = String::new();
    for (i, j) in bip.edges() {
        writeln!(lines, "{} {}", left_pos[i], right_pos[j]).unwrap();
    }
    print_out(&lines);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Construct {
            n,
            seed,
            format,
            out,
            certificate,
            alpha,
            budget,
            retries,
        } => {
            let cfg = PipelineConfig {
                seed,
                max_retries: retries.max(1),
                alpha_mode: alpha.into(),
                alpha_budget: budget,
                format: format.into(),
                ..PipelineConfig::default()
            };
            let (graph, cert) =
                construct(n, &cfg).map_err(|e| Failure::Construction(e.to_string()))?;
            let text = emit(&graph, cfg.format);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print_out(&text),
            }
            if let Some(path) = certificate {
                write_file(&path, &cert.to_json())?;
            }
            Ok(0)
        }
        Command::Process { n, h, seed, stats } => {
            let PatternArg::K3 = h;
            let result = run_process(n, &ForbiddenPattern::K3, seed);
            if let Some(path) = stats {
                write_file(&path, &result.trajectory_csv())?;
            }
            print_out(&write_edge_list(&result.final_graph));
            Ok(0)
        }
        Command::Realize { left, right } => cmd_realize(&left, &right),
        Command::Color { input, colors } => {
            let g = read_graph(&input)?;
            let coloring =
                equitable_color(&g, colors, 0).map_err(|e| Failure::Construction(e.to_string()))?;
            let mut lines = String::new();
            for v in 0..g.n() {
                writeln!(lines, "{v} {}", coloring.color_of(v)).unwrap();
            }
            print_out(&lines);
            Ok(0)
        }
        Command::Regularize {
            input,
            d,
            seed,
            out,
        } => {
            let g = read_graph(&input)?;
            let doubled =
                regularize(&g, d, seed).map_err(|e| Failure::Construction(e.to_string()))?;
            write_file(&out, &emit(&doubled, format_for(&out)))?;
            Ok(0)
        }
        Command::Hkr { k, r, out } => {
            let g = h_kr(k, r).map_err(|e| Failure::Construction(e.to_string()))?;
            write_file(&out, &emit(&g, format_for(&out)))?;
            Ok(0)
        }
        Command::Verify {
            input,
            alpha,
            budget,
        } => {
            let g = read_graph(&input)?;
            let cert = certify(&g, CertParams::default(), alpha.into(), budget);
            print_out(&cert.to_json());
            Ok(if cert.regular && cert.triangle_free {
                0
            } else {
                1
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
