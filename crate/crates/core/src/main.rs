use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moduli_topology::report::{Format, InvariantReport};
use moduli_topology::verify::{run_suites, GridBounds, Suite};
use moduli_topology::{Error, ModuliParams};

/// Exact topological invariants of vortex moduli spaces over a Riemann surface.
#[derive(Parser)]
#[command(name = "moduli-topology", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, Euler characteristic, Betti (and optionally Hodge) numbers.
    Invariants {
        #[arg(short = 'g', long = "genus")]
        genus: u32,
        #[arg(short = 'N', long = "rank")]
        rank: u32,
        #[arg(short = 'D', long = "deg-E", allow_hyphen_values = true)]
        deg_e: i64,
        #[arg(short = 'd', long = "deg-L", allow_hyphen_values = true)]
        deg_l: i64,
        /// Stabilization count K (defaults to a safe value).
        #[arg(long = "K")]
        k: Option<i64>,
        /// Also compute the Hodge numbers.
        #[arg(long)]
        hodge: bool,
        #[arg(long, default_value = "table", value_parser = parse_format)]
        format: Format,
    },
    /// Sweep a parameter grid and check the invariant identities.
    Verify {
        /// all, euler, betti, hodge, km, macdonald, pushforward or spectral.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_genus: u32,
        #[arg(long, default_value_t = 3)]
        max_rank: u32,
        #[arg(long, default_value_t = 10)]
        max_dim: i64,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

const EXIT_PROPERTY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

fn fail(err: Error) -> ExitCode {
    match err {
        Error::Consistency { check, left, right } => {
            eprintln!("internal consistency failure in {check}");
            eprintln!("  first route:  {left}");
            eprintln!("  second route: {right}");
            ExitCode::from(EXIT_CONSISTENCY)
        }
        other => {
            eprintln!("error: {other}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(EXIT_USAGE);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Invariants {
            genus,
            rank,
            deg_e,
            deg_l,
            k,
            hodge,
            format,
        } => {
            let params = match ModuliParams::new(genus, rank, deg_e, deg_l) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let params = match k
                .map(|k| params.with_stabilization(k))
                .unwrap_or(Ok(params))
            {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            match InvariantReport::compute(&params, hodge) {
                Ok(report) => {
                    print!("{}", report.render(format));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Verify {
            suite,
            max_genus,
            max_rank,
            max_dim,
        } => {
            if max_genus < 1 || max_rank < 1 || max_dim < 0 {
                eprintln!("error: grid bounds must be positive");
                return ExitCode::from(EXIT_USAGE);
            }
            let bounds = GridBounds {
                max_genus,
                max_rank,
                max_dim,
            };
            let suites = match Suite::parse_selection(&suite) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let reports = run_suites(&suites, &bounds);
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().all(|r| r.ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_PROPERTY)
            }
        }
    }
}
