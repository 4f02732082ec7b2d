use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cycletrace::format::{face_lines, ordering_line, rotation_lines};
use cycletrace::{
    check_eden_conditions, construct_fcp_ordering_traced, find_identity_ordering, fixtures,
    genus_of, has_fcp_ordering, identity_ordering_feasible, is_full_cyclic_ordering,
    is_upper_embeddable, max_genus_bruteforce, parse_graph, parse_ordering, parse_rotation,
    permutation_of_ordering, rotation_from_ordering, trace_faces, verify_eden12_fixture, Budget,
    EdgeOrdering, Error, Multigraph, RotationSystem,
};

const BUDGET_ENV: &str = "CYCLETRACE_BUDGET";

#[derive(Parser)]
#[command(
    name = "cycletrace",
    version,
    about = "Edge orderings of connected multigraphs, their transposition products, and the embeddings they induce"
)]
struct Cli {
    /// Output style: `human` prose or `machine` tab-separated key/value records
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Cap on brute-force scans over rotation systems
    /// (default: $CYCLETRACE_BUDGET or 10000000)
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Worker threads for parallel scans; 0 or absent = all cores
    /// (no effect when built without the `parallel` feature)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// A graph argument: a file path, or `@name` for an installed fixture.
type GraphArg = String;

#[derive(Subcommand)]
enum Command {
    /// Cycle rank β = |E| − |V| + 1 of a connected multigraph
    Betti { graph: GraphArg },

    /// Transposition product of an edge ordering, in cycle notation
    Perm {
        graph: GraphArg,
        #[command(flatten)]
        ordering: OrderingArgs,
    },

    /// Faces of the embedding induced by an ordering or a rotation system
    Faces {
        graph: GraphArg,
        #[command(flatten)]
        ordering: OrderingArgs,
        /// Rotation-system file (`rot <vertex>: <e> ...` lines)
        #[arg(long, conflicts_with_all = ["order", "order_file"])]
        rotation: Option<PathBuf>,
        /// Also write the faces as a Graphviz digraph, darts colored by face
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
    },

    /// Genus of the embedding induced by an ordering or a rotation system
    Genus {
        graph: GraphArg,
        #[command(flatten)]
        ordering: OrderingArgs,
        #[arg(long, conflicts_with_all = ["order", "order_file"])]
        rotation: Option<PathBuf>,
    },

    /// Rotation system induced by an edge ordering (canonical cut)
    #[command(name = "rotation-of")]
    RotationOf {
        graph: GraphArg,
        #[command(flatten)]
        ordering: OrderingArgs,
    },

    /// Decide whether any ordering multiplies to a single cycle on all vertices
    #[command(name = "decide-fcp")]
    DecideFcp { graph: GraphArg },

    /// Construct an ordering whose product is a full cycle, if one exists
    #[command(name = "construct-fcp")]
    ConstructFcp { graph: GraphArg },

    /// Maximum genus by exhaustive rotation-system scan, with witness
    #[command(name = "max-genus")]
    MaxGenus { graph: GraphArg },

    /// Decide upper embeddability; prints the witness spanning tree
    #[command(name = "upper-embeddable")]
    UpperEmbeddable { graph: GraphArg },

    /// Trail map and closed-trail conditions of an identity ordering
    #[command(name = "eden-check")]
    EdenCheck {
        graph: GraphArg,
        #[command(flatten)]
        ordering: OrderingArgs,
    },

    /// Search for an ordering whose product is the identity permutation
    #[command(name = "find-identity")]
    FindIdentity { graph: GraphArg },

    /// Check the bundled 12-vertex counterexample end to end
    #[command(name = "verify-eden12")]
    VerifyEden12,
}

#[derive(clap::Args)]
struct OrderingArgs {
    /// Edge ordering as a comma-separated label list
    #[arg(long, value_delimiter = ',', value_name = "e1,e2,...")]
    order: Option<Vec<String>>,
    /// Edge ordering file (a single `order <e> <e> ...` line)
    #[arg(long, conflicts_with = "order", value_name = "PATH")]
    order_file: Option<PathBuf>,
}

/// A failed invocation: message for stderr plus the process exit code
/// (1 = input error, 2 = budget exceeded).
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: format!("{}: {e}", e.name()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = resolve_budget(cli.budget)?;
    configure_jobs(cli.jobs);
    let mut out = Out {
        machine: cli.format == Format::Machine,
    };
    match cli.command {
        Command::Betti { graph } => {
            let g = load_graph(&graph)?;
            out.kv("betti", g.betti()?);
        }
        Command::Perm { graph, ordering } => {
            let g = load_graph(&graph)?;
            let w = require_ordering(ordering)?;
            let pi = permutation_of_ordering(&g, &w)?;
            out.kv("pi", &pi);
            out.kv("orbit_count", pi.orbit_count());
            out.kv("full_cyclic", pi.is_full_cycle());
            out.kv("identity", pi.is_identity());
        }
        Command::Faces {
            graph,
            ordering,
            rotation,
            emit_dot,
        } => {
            let g = load_graph(&graph)?;
            let rho = embedding_source(&g, ordering.order, ordering.order_file, rotation)?;
            let trace = trace_faces(&g, &rho)?;
            for line in face_lines(&g, &trace) {
                out.raw(&line);
            }
            out.kv("face_count", trace.face_count());
            if let Some(path) = emit_dot {
                write_dot(&path, &g, &trace)?;
                out.kv("dot", path.display());
            }
        }
        Command::Genus {
            graph,
            ordering,
            rotation,
        } => {
            let g = load_graph(&graph)?;
            let rho = embedding_source(&g, ordering.order, ordering.order_file, rotation)?;
            let trace = trace_faces(&g, &rho)?;
            out.kv("genus", genus_of(&g, &rho)?);
            out.kv("face_count", trace.face_count());
        }
        Command::RotationOf { graph, ordering } => {
            let g = load_graph(&graph)?;
            let w = require_ordering(ordering)?;
            let rho = rotation_from_ordering(&g, &w)?;
            for line in rotation_lines(&g, &rho) {
                out.raw(&line);
            }
        }
        Command::DecideFcp { graph } => {
            let g = load_graph(&graph)?;
            report_fcp_decision(&mut out, &g)?;
        }
        Command::ConstructFcp { graph } => {
            let g = load_graph(&graph)?;
            match construct_fcp_ordering_traced(&g, budget)? {
                None => report_fcp_decision(&mut out, &g)?,
                Some(c) => {
                    out.kv("fcp", true);
                    out.raw(&ordering_line(&c.ordering));
                    out.kv("full_cyclic", is_full_cyclic_ordering(&g, &c.ordering)?);
                    out.kv("smoothing_steps", c.steps.len());
                    out.kv(
                        "orbit_counts",
                        c.steps
                            .iter()
                            .map(|s| s.orbit_count.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                }
            }
        }
        Command::MaxGenus { graph } => {
            let g = load_graph(&graph)?;
            let r = max_genus_bruteforce(&g, budget)?;
            out.kv("gamma_max", r.gamma_max);
            out.kv("face_count", r.face_count);
            for line in rotation_lines(&g, &r.witness) {
                out.raw(&line);
            }
        }
        Command::UpperEmbeddable { graph } => {
            let g = load_graph(&graph)?;
            match is_upper_embeddable(&g)? {
                Some(tree) => {
                    out.kv("upper_embeddable", true);
                    out.kv("witness_tree", tree.edges().join(" "));
                }
                None => out.kv("upper_embeddable", false),
            }
        }
        Command::EdenCheck { graph, ordering } => {
            let g = load_graph(&graph)?;
            let w = require_ordering(ordering)?;
            let report = check_eden_conditions(&g, &w)?;
            for (v, trail) in &report.trails {
                out.raw(&format!("trail {v}: {}", trail.edges.join(" ")));
            }
            out.kv("edge_count_even", report.edge_count_even);
            out.kv("trails_are_closed", report.trails_are_closed);
            out.kv("bijective", report.bijective);
            out.kv(
                "every_vertex_on_own_trail",
                report.every_vertex_on_own_trail,
            );
            out.kv("total_edge_occurrences", report.total_edge_occurrences);
            out.kv(
                "total_is_twice_edge_count",
                report.total_is_twice_edge_count,
            );
            out.kv("each_edge_on_two_trails", report.each_edge_on_two_trails);
            out.kv("all_conditions_hold", report.all_conditions_hold());
        }
        Command::FindIdentity { graph } => {
            let g = load_graph(&graph)?;
            match find_identity_ordering(&g, budget)? {
                Some(w) => {
                    out.kv("identity_ordering_exists", true);
                    out.raw(&ordering_line(&w));
                    out.kv("pi", permutation_of_ordering(&g, &w)?);
                }
                None => {
                    out.kv("identity_ordering_exists", false);
                    let reason = if g.edge_count() % 2 == 1 {
                        "odd_edge_count"
                    } else if !identity_ordering_feasible(&g)? {
                        "euler_bound"
                    } else {
                        "search_exhausted"
                    };
                    out.kv("reason", reason);
                    if reason == "euler_bound" {
                        out.kv("edge_count", g.edge_count());
                        out.kv("required_edge_count", 2 * g.vertex_count() - 2);
                    }
                }
            }
        }
        Command::VerifyEden12 => {
            let report = verify_eden12_fixture()?;
            for (v, trail) in &report.trails {
                out.raw(&format!("trail {v}: {}", trail.edges.join(" ")));
            }
            for &(name, ok) in &report.checks {
                out.kv(name, if ok { "pass" } else { "fail" });
            }
            out.kv("edge_count", report.edge_count);
            out.kv("required_edge_count", report.required_edge_count);
            out.kv("identity_ordering_exists", false);
            out.kv(
                "all_checks",
                if report.all_passed() { "pass" } else { "fail" },
            );
        }
    }
    Ok(())
}

fn report_fcp_decision(out: &mut Out, g: &Multigraph) -> Result<(), Failure> {
    if has_fcp_ordering(g)? {
        out.kv("fcp", true);
        let tree = is_upper_embeddable(g)?.expect("decision was positive");
        out.kv("witness_tree", tree.edges().join(" "));
    } else {
        out.kv("fcp", false);
        let reason = if g.betti()? % 2 == 1 {
            "odd_betti"
        } else {
            "no_even_cotree_spanning_tree"
        };
        out.kv("reason", reason);
    }
    Ok(())
}

struct Out {
    machine: bool,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            println!("{key}\t{value}");
        } else {
            println!("{key} {value}");
        }
    }

    /// Lines already in one of the text formats (order/rot/face/trail);
    /// identical in both output modes so they always reparse.
    fn raw(&mut self, line: &str) {
        println!("{line}");
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<Budget, Failure> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(BUDGET_ENV) {
            Ok(raw) => raw.parse::<u64>().map_err(|_| {
                Failure::input(format!(
                    "InvalidBudget: {BUDGET_ENV}=`{raw}` is not an integer"
                ))
            })?,
            Err(_) => Budget::DEFAULT_LIMIT,
        },
    };
    if value == 0 {
        return Err(Failure::input("InvalidBudget: budget must be positive"));
    }
    Ok(Budget::new(value))
}

#[cfg(feature = "parallel")]
fn configure_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        if n > 0 {
            // Ignore failure: the global pool can only be set once per
            // process, and results do not depend on worker count.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_jobs(_jobs: Option<usize>) {}

fn load_graph(arg: &str) -> Result<Multigraph, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(name) => fixtures::source(name)
            .ok_or_else(|| {
                Failure::input(format!(
                    "UnknownFixture: `{name}` (available: {})",
                    fixtures::NAMES.join(", ")
                ))
            })?
            .to_string(),
        None => fs::read_to_string(arg)
            .map_err(|e| Failure::input(format!("IoError: cannot read `{arg}`: {e}")))?,
    };
    Ok(parse_graph(&text)?)
}

fn require_ordering(args: OrderingArgs) -> Result<EdgeOrdering, Failure> {
    load_ordering(args.order, args.order_file)?
        .ok_or_else(|| Failure::input("MissingOrdering: provide --order or --order-file"))
}

fn load_ordering(
    order: Option<Vec<String>>,
    order_file: Option<PathBuf>,
) -> Result<Option<EdgeOrdering>, Failure> {
    match (order, order_file) {
        (Some(labels), None) => Ok(Some(EdgeOrdering::new(labels))),
        (None, Some(path)) => {
            let text = fs::read_to_string(&path).map_err(|e| {
                Failure::input(format!("IoError: cannot read `{}`: {e}", path.display()))
            })?;
            Ok(Some(parse_ordering(&text)?))
        }
        (None, None) => Ok(None),
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting ordering flags"),
    }
}

fn embedding_source(
    g: &Multigraph,
    order: Option<Vec<String>>,
    order_file: Option<PathBuf>,
    rotation: Option<PathBuf>,
) -> Result<RotationSystem, Failure> {
    if let Some(path) = rotation {
        let text = fs::read_to_string(&path).map_err(|e| {
            Failure::input(format!("IoError: cannot read `{}`: {e}", path.display()))
        })?;
        return Ok(parse_rotation(&text, g)?);
    }
    match load_ordering(order, order_file)? {
        Some(w) => Ok(rotation_from_ordering(g, &w)?),
        None => Err(Failure::input(
            "MissingEmbedding: provide --order, --order-file, or --rotation",
        )),
    }
}

/// Face-colored dart export: each dart is a directed edge, colored by the
/// index of the face whose boundary walk it lies on.
fn write_dot(path: &Path, g: &Multigraph, trace: &cycletrace::FaceTrace) -> Result<(), Failure> {
    const PALETTE: [&str; 10] = [
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
        "#bcbd22", "#17becf",
    ];
    let mut dot = String::from("digraph faces {\n");
    for v in 0..g.vertex_count() {
        dot.push_str(&format!("  \"{}\";\n", g.vertex_label(v)));
    }
    for k in 0..trace.face_count() {
        let color = PALETTE[k % PALETTE.len()];
        for d in trace.face_darts(g, k) {
            dot.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{} f{}\", color=\"{}\"];\n",
                d.source, d.target, d.edge, k, color
            ));
        }
    }
    dot.push_str("}\n");
    fs::write(path, dot)
        .map_err(|e| Failure::input(format!("IoError: cannot write `{}`: {e}", path.display())))
}
