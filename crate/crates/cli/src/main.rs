use clap::{Parser, Subcommand};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};
use treewidth_cli::{emit_td, parse_gr, parse_td, td_from_parsed};
use treewidth_core::improve::{solve, Budget, SolveOptions};
use treewidth_core::set::VertexSet;
use treewidth_core::td::TreeDecomposition;

#[derive(Parser)]
#[command(name = "twh", version, about = "Treewidth upper-bound solver for PACE 2017 graph files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a .gr graph (file or stdin) and write a .td decomposition to stdout
    Solve {
        /// Input .gr file; stdin when omitted
        input: Option<PathBuf>,
        /// Wall-clock budget in seconds
        #[arg(long, default_value_t = 1800)]
        timeout: u64,
        /// Random seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print each committed width improvement to stderr
        #[arg(long)]
        trace: bool,
        /// Replace the wall-clock budget by an improvement-iteration count
        /// (reproducible runs)
        #[arg(long, hide = true)]
        det_iters: Option<u64>,
    },
    /// Check a .td decomposition against its .gr graph
    Validate {
        /// The .gr graph file
        graph: PathBuf,
        /// The .td decomposition file
        td: PathBuf,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve {
            input,
            timeout,
            seed,
            trace,
            det_iters,
        } => run_solve(input, timeout, seed, trace, det_iters),
        Command::Validate { graph, td } => run_validate(graph, td),
    }
}

fn read_input(input: Option<PathBuf>) -> std::io::Result<String> {
    match input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn run_solve(
    input: Option<PathBuf>,
    timeout: u64,
    seed: u64,
    trace: bool,
    det_iters: Option<u64>,
) -> ExitCode {
    let start = Instant::now();
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let parsed = match parse_gr(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };

    let cancel = Arc::new(AtomicBool::new(false));
    {
        let cancel = cancel.clone();
        // A second signal falls back to the default handler and kills us;
        // the first one just asks the solver to wrap up.
        let _ = ctrlc::set_handler(move || {
            cancel.store(true, std::sync::atomic::Ordering::Relaxed);
        });
    }
    let budget = match det_iters {
        Some(n) => Budget {
            max_iterations: Some(n),
            cancel: Some(cancel),
            ..Budget::default()
        },
        None => Budget {
            deadline: Some(start + Duration::from_secs(timeout)),
            cancel: Some(cancel),
            ..Budget::default()
        },
    };

    let n = parsed.graph.n();
    let solution = solve(&parsed.graph, &SolveOptions { seed, budget }, |w| {
        if trace {
            eprintln!("[{:9.3}s] width ({}, {})", start.elapsed().as_secs_f64(), w.k, w.f);
        }
    });
    let td = if solution.td.bags.is_empty() {
        // Empty graph still gets a one-bag decomposition on file.
        TreeDecomposition {
            bags: vec![VertexSet::empty(n)],
            edges: vec![],
        }
    } else {
        solution.td
    };
    if td.validate(&parsed.graph).is_err() {
        eprintln!("error: internal invariant violation: produced decomposition does not validate");
        return ExitCode::FAILURE;
    }
    print!("{}", emit_td(&td, &parsed.labels, n));
    ExitCode::SUCCESS
}

fn run_validate(graph: PathBuf, td: PathBuf) -> ExitCode {
    let gtext = match std::fs::read_to_string(&graph) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", graph.display());
            return ExitCode::FAILURE;
        }
    };
    let ttext = match std::fs::read_to_string(&td) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", td.display());
            return ExitCode::FAILURE;
        }
    };
    let parsed_g = match parse_gr(&gtext) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", graph.display());
            return ExitCode::FAILURE;
        }
    };
    let parsed_td = match parse_td(&ttext) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", td.display());
            return ExitCode::FAILURE;
        }
    };
    if parsed_td.n != parsed_g.graph.n() {
        eprintln!(
            "invalid: decomposition is for {} vertices, graph has {}",
            parsed_td.n,
            parsed_g.graph.n()
        );
        return ExitCode::FAILURE;
    }
    let decomposition = td_from_parsed(&parsed_td, parsed_g.graph.n());
    let actual_max = decomposition.bags.iter().map(|b| b.card()).max().unwrap_or(0);
    if actual_max != parsed_td.max_bag {
        eprintln!(
            "invalid: header claims max bag size {}, bags say {}",
            parsed_td.max_bag, actual_max
        );
        return ExitCode::FAILURE;
    }
    match decomposition.validate(&parsed_g.graph) {
        Ok(w) => {
            println!("valid, width ({}, {})", w.k, w.f);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            ExitCode::FAILURE
        }
    }
}
