//! Command-line front end: compute interior polynomials and HOMFLY data,
//! and run the theorem-verification suites.
//!
//! Exit codes: 0 success, 1 failed verification, 2 parse error,
//! 3 pipeline disagreement, 4 size cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use intpoly::bigraph::{parse_graph, GraphError};
use intpoly::ehrhart::{interior_polynomial_via_ehrhart, interior_signed_via_ehrhart};
use intpoly::homfly::{
    homfly, median_diagram, morton_exponent, parse_diagram, parse_embedded_graph,
    seifert_analyze, top_coefficient, DiagramError,
};
use intpoly::interior::{
    interior_recursive, interior_signed, interior_signed_skein, InteriorError,
};
use intpoly::poly::IntPoly;
use intpoly::verify::run_suite;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_SIZE_CAP: u8 = 4;

/// Subset-expansion size the signed computation refuses to exceed.
const MAX_NEGATIVE_EDGES: usize = 20;

#[derive(Parser)]
#[command(name = "intpoly", version, about = "Interior polynomials of signed bipartite graphs, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Recursion,
    Ehrhart,
    Skein,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Interior polynomial of a graph file (I' unsigned, I+ with --signed).
    Interior {
        graph_file: PathBuf,
        /// Compute the signed polynomial I+ instead of forgetting signs.
        #[arg(long)]
        signed: bool,
        /// Computation route; `both` cross-checks the routes and fails on
        /// disagreement.
        #[arg(long, value_enum, default_value_t = Pipeline::Recursion)]
        pipeline: Pipeline,
    },
    /// Run a verification suite: mirror | reciprocity | subgraph | hull |
    /// flype | mutation | homfly | tutte | all.
    Verify {
        suite: String,
        /// Edge budget for the exhaustive graph family.
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Seed for the randomized instances.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// HOMFLY polynomial, top coefficient, and Seifert data of a diagram
    /// (PD code text, or a graph file with rot: lines for the median
    /// construction).
    Homfly { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Interior { graph_file, signed, pipeline } => cmd_interior(&graph_file, signed, pipeline),
        Command::Verify { suite, max_edges, seed } => cmd_verify(&suite, max_edges, seed),
        Command::Homfly { file } => cmd_homfly(&file),
    }
}

fn read_file(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_PARSE)
    })
}

fn graph_exit(e: GraphError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        GraphError::CanonicalSizeCap { .. } => ExitCode::from(EXIT_SIZE_CAP),
        _ => ExitCode::from(EXIT_PARSE),
    }
}

fn interior_exit(e: InteriorError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        InteriorError::TooManyEdges { .. } => ExitCode::from(EXIT_SIZE_CAP),
        _ => ExitCode::from(EXIT_PARSE),
    }
}

fn diagram_exit(e: DiagramError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        DiagramError::TooManyCrossings { .. } => ExitCode::from(EXIT_SIZE_CAP),
        _ => ExitCode::from(EXIT_PARSE),
    }
}

fn cmd_interior(path: &PathBuf, signed: bool, pipeline: Pipeline) -> ExitCode {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => return graph_exit(e),
    };
    if signed && g.n_negative() > MAX_NEGATIVE_EDGES {
        eprintln!(
            "error: {} negative edges exceed the subset-expansion cap {}",
            g.n_negative(),
            MAX_NEGATIVE_EDGES
        );
        return ExitCode::from(EXIT_SIZE_CAP);
    }
    // The unsigned polynomial is the signed one of the all-positive view.
    let unsigned_view = intpoly::family::with_sign_pattern(&g, 0);
    let mut routes: Vec<(&str, IntPoly)> = Vec::new();
    let want = |p: Pipeline, routes: &mut Vec<(&str, IntPoly)>| -> Result<(), ExitCode> {
        let value = match (signed, p) {
            (false, Pipeline::Recursion) => interior_recursive(&g).map_err(interior_exit)?,
            (false, Pipeline::Ehrhart) => interior_polynomial_via_ehrhart(&g),
            (false, Pipeline::Skein) => interior_signed_skein(&unsigned_view),
            (true, Pipeline::Recursion) => interior_signed(&g),
            (true, Pipeline::Ehrhart) => interior_signed_via_ehrhart(&g),
            (true, Pipeline::Skein) => interior_signed_skein(&g),
            (_, Pipeline::Both) => unreachable!("expanded by caller"),
        };
        let name = match p {
            Pipeline::Recursion => "recursion",
            Pipeline::Ehrhart => "ehrhart",
            Pipeline::Skein => "skein",
            Pipeline::Both => unreachable!(),
        };
        routes.push((name, value));
        Ok(())
    };
    let selected: Vec<Pipeline> = match pipeline {
        Pipeline::Both if signed => vec![Pipeline::Recursion, Pipeline::Ehrhart, Pipeline::Skein],
        Pipeline::Both => vec![Pipeline::Recursion, Pipeline::Ehrhart],
        one => vec![one],
    };
    for p in selected {
        if let Err(code) = want(p, &mut routes) {
            return code;
        }
    }
    let (first_name, first) = &routes[0];
    for (name, value) in &routes[1..] {
        if value != first {
            eprintln!("error: pipeline disagreement: {first_name} gives {first}, {name} gives {value}");
            return ExitCode::from(EXIT_DISAGREE);
        }
    }
    println!("interior: {first}");
    println!("machine {}", first.to_machine());
    if routes.len() > 1 {
        let names: Vec<&str> = routes.iter().map(|(n, _)| *n).collect();
        println!("agreement: {}", names.join(" = "));
    }
    ExitCode::SUCCESS
}

fn cmd_verify(suite: &str, max_edges: usize, seed: u64) -> ExitCode {
    match run_suite(suite, max_edges, seed) {
        None => {
            eprintln!("error: unknown suite {suite:?}");
            ExitCode::from(EXIT_PARSE)
        }
        Some(report) => {
            print!("{}", report.render());
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
    }
}

fn cmd_homfly(path: &PathBuf) -> ExitCode {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let is_pd = text
        .lines()
        .map(|l| l.trim())
        .any(|l| l.starts_with('X') || l.starts_with("loops:"));
    let diagram = if is_pd {
        match parse_diagram(&text) {
            Ok(d) => d,
            Err(e) => return diagram_exit(e),
        }
    } else {
        let pe = match parse_embedded_graph(&text) {
            Ok(pe) => pe,
            Err(e) => return diagram_exit(e),
        };
        match median_diagram(&pe) {
            Ok(d) => d,
            Err(e) => return diagram_exit(e),
        }
    };
    let p = match homfly(&diagram) {
        Ok(p) => p,
        Err(e) => return diagram_exit(e),
    };
    let top = match top_coefficient(&diagram) {
        Ok(t) => t,
        Err(e) => return diagram_exit(e),
    };
    let data = seifert_analyze(&diagram);
    println!("homfly: {p}");
    println!("machine {}", p.to_machine());
    println!("top: {top}");
    println!("machine {}", top.to_machine());
    println!("crossings: {}", diagram.n_crossings());
    println!("seifert-circles: {}", data.circles);
    println!("writhe: {}", data.writhe);
    println!("z-bound: {}", morton_exponent(&diagram));
    ExitCode::SUCCESS
}
