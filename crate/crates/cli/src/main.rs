use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use kdiv::bfile::write_bfile;
use kdiv::report::render;
use kdiv::suites::DEFAULT_BUDGET;
use kdiv::{run_suite, Format, GridSpec, RunConfig, Span, Suite, SuiteError};
use kdiv_core::counting::{count_formula, sequence, unified_formula};
use kdiv_core::geometry::statistic_x;
use kdiv_core::path::{enumerate_family, parse_path};
use kdiv_core::rotation::orbit;
use kdiv_core::{FamilyParams, GeneralParams, MarkedPath};

/// Exact counts and exhaustive checks for lattice paths counted by
/// (j/n)·C(kn, n+j).
#[derive(Parser)]
#[command(name = "kdiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print (j/n)·C(kn, n+j)
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
    },
    /// Print ((ad-bc)/(an+b))·C(an+b, cn+d)
    CountGeneral {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// Print the counts for n = 1..=n-max, one per line
    Seq {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n_max: u32,
        /// Emit "n value" lines (OEIS b-file)
        #[arg(long)]
        bfile: bool,
    },
    /// List the paths of P(n,k,j) in U < D order
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Print the statistic X of a marked path
    Stat {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        mark: u32,
    },
    /// List the rotation class of a path, starting from its least member
    Orbit {
        #[arg(long)]
        path: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        j: u32,
    },
    /// Run a verification suite; ranges are N, LO..HI or LO..=HI
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<Span>,
        #[arg(long)]
        k: Option<Span>,
        #[arg(long)]
        j: Option<Span>,
        #[arg(long)]
        a: Option<Span>,
        #[arg(long)]
        b: Option<Span>,
        #[arg(long)]
        c: Option<Span>,
        #[arg(long)]
        d: Option<Span>,
        /// Largest family size to enumerate
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Disable parallel enumeration
        #[arg(long)]
        serial: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] kdiv_core::Error),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn run(command: Command) -> Result<bool, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Count { n, k, j } => {
            writeln!(out, "{}", count_formula(&FamilyParams::new(n, k, j)?)?)?;
        }
        Command::CountGeneral { a, b, c, d, n } => {
            writeln!(out, "{}", unified_formula(&GeneralParams::new(a, b, c, d, n)?)?)?;
        }
        Command::Seq { k, j, n_max, bfile } => {
            let terms = sequence(k, j, n_max)?;
            if bfile {
                write_bfile(&mut out, &terms)?;
            } else {
                for (_, value) in &terms {
                    writeln!(out, "{value}")?;
                }
            }
        }
        Command::Enumerate { n, k, j, limit } => {
            let params = FamilyParams::new(n, k, j)?;
            let limit = limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
            for path in enumerate_family(&params)?.take(limit) {
                writeln!(out, "{path}")?;
            }
        }
        Command::Stat {
            path,
            n,
            k,
            j,
            mark,
        } => {
            let params = FamilyParams::new(n, k, j)?;
            let marked = MarkedPath::new(parse_path(&path)?, mark, &params)?;
            writeln!(out, "{}", statistic_x(&marked, &params)?)?;
        }
        Command::Orbit { path, n, k, j } => {
            let params = FamilyParams::new(n, k, j)?;
            for member in orbit(&parse_path(&path)?, &params)?.members() {
                writeln!(out, "{member}")?;
            }
        }
        Command::Verify {
            suite,
            n,
            k,
            j,
            a,
            b,
            c,
            d,
            budget,
            serial,
            format,
        } => {
            let grid = GridSpec { n, k, j, a, b, c, d };
            let cfg = RunConfig {
                budget,
                parallel: !serial,
            };
            let reports = run_suite(suite, &grid, &cfg)?;
            out.write_all(render(&reports, format).as_bytes())?;
            out.flush()?;
            return Ok(reports.iter().all(|r| r.passed()));
        }
    }
    out.flush()?;
    Ok(true)
}
