//! `graphhom`: Kauffman families, link invariants, Khovanov and knot Floer
//! homology of links and embedded graphs.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphhom::graph_homology::Options;
use graphhom::grid::GridLimits;
use graphhom::kauffman::DEFAULT_ASSIGNMENT_CAP;
use graphhom::khovanov::{Coeffs, DEFAULT_CROSSING_CAP};

use commands::{Output, Rendered};
use input::CliResult;

#[derive(Parser)]
#[command(name = "graphhom", version, about = "Homology of links and embedded graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffArg {
    Z,
    F2,
}

impl From<CoeffArg> for Coeffs {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Z => Coeffs::Z,
            CoeffArg::F2 => Coeffs::F2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram file for structural errors.
    Validate { file: String },
    /// Link family of a graph diagram (`-` reads stdin).
    Family {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ASSIGNMENT_CAP)]
        max_assignments: u128,
    },
    /// Jones, Alexander, Conway, determinant of a link.
    Invariants { file: String },
    /// Khovanov homology of a link.
    Khovanov {
        file: String,
        #[arg(long, value_enum, default_value = "z")]
        coeffs: CoeffArg,
        /// Compare the graded Euler characteristic with the Jones polynomial.
        #[arg(long)]
        check_euler: bool,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        max_crossings: usize,
    },
    /// Knot Floer homology (hat) of a link or grid diagram.
    Floer {
        file: String,
        #[arg(long, default_value_t = 8)]
        max_grid: usize,
    },
    /// Floer-Kauffman and Khovanov-Kauffman homology of a graph.
    GraphHomology {
        file: String,
        #[arg(long)]
        floer: bool,
        #[arg(long)]
        khovanov: bool,
        #[arg(long, value_enum, default_value = "z")]
        coeffs: CoeffArg,
        #[arg(long, default_value_t = 8)]
        max_grid: usize,
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        max_crossings: usize,
        /// Print Poincaré polynomials and verdicts only.
        #[arg(long)]
        summary: bool,
        /// Weight members by multiplicity.
        #[arg(long)]
        multiset: bool,
    },
    /// Apply seeded random diagram moves.
    Moves {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Comma-separated move kinds.
        #[arg(long, default_value = "R1,R2,R3,R4,R5")]
        kinds: String,
        #[arg(long)]
        max_crossings: Option<usize>,
    },
    /// Built-in census summary, or golden-file regression over a corpus directory.
    Census {
        dir: Option<String>,
        /// Rewrite the golden files.
        #[arg(long)]
        bless: bool,
        #[arg(long, default_value_t = 8)]
        max_grid: usize,
    },
}

fn run(cli: Cli) -> CliResult<Output> {
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Family { file, max_assignments } => commands::family(&file, max_assignments),
        Command::Invariants { file } => commands::invariants(&file),
        Command::Khovanov { file, coeffs, check_euler, max_crossings } => {
            commands::khovanov(&file, coeffs.into(), check_euler, max_crossings)
        }
        Command::Floer { file, max_grid } => commands::floer(&file, &GridLimits::from_env(max_grid)),
        Command::GraphHomology { file, floer, khovanov, coeffs, max_grid, max_crossings, summary, multiset } => {
            let both = !floer && !khovanov;
            let opts = Options {
                floer: floer || both,
                khovanov: khovanov || both,
                coeffs: coeffs.into(),
                grid: GridLimits::from_env(max_grid),
                max_crossings,
                multiset,
                ..Options::default()
            };
            commands::graph_homology_cmd(&file, &opts, summary)
        }
        Command::Moves { file, seed, count, kinds, max_crossings } => {
            commands::moves(&file, seed, count, &commands::parse_kinds(&kinds)?, max_crossings)
        }
        Command::Census { dir, bless, max_grid } => {
            let opts = Options { grid: GridLimits::from_env(max_grid), ..Options::default() };
            commands::census_cmd(dir.as_deref(), bless, &opts)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(input::EXIT_INPUT as u8);
        }
    }
    match run(cli) {
        Ok(out) => {
            let text = match &out.body {
                Rendered::Json(v) => commands::render_json(v),
                Rendered::Text(t) => t.clone(),
            };
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
