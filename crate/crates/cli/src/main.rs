use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use laguerre_dd::base_block::{Case, CaseSpec};
use laguerre_dd_cli::commands::{self, CliError, Outcome, RunConfig};

#[derive(Parser)]
#[command(name = "laguerre-dd", version, about = "Divisible designs from the Laguerre line over dual numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the orbit design of a case over GF(p^n).
    Construct {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Subfield degree; must divide n.
        #[arg(long, default_value_t = 1)]
        i: u32,
        /// One of i, ii, iii, iv, v (or v_<variant>).
        #[arg(long)]
        case: String,
        /// generic, harmonic, equianharmonic or superharmonic (case v).
        #[arg(long)]
        variant: Option<String>,
        /// long or short (case v).
        #[arg(long)]
        block: Option<String>,
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Where to write the design document.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Verify the design after building it.
        #[arg(long)]
        check: bool,
    },
    /// Verify a design document at t and t-1.
    Verify {
        path: PathBuf,
        /// Also check that the projective group acts transitively by automorphisms.
        #[arg(long)]
        check: bool,
    },
    /// Print parameter rows for every subfield degree and case.
    Table {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Measure stabilisers and lambda_3 where feasible.
        #[arg(long)]
        check: bool,
    },
    /// Compare case (i) with the conic series (odd q).
    CompareConic {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        i: u32,
    },
    /// Run the property suite for every q up to max-q.
    Selfcheck {
        #[arg(long, default_value_t = 5)]
        max_q: u32,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Construct {
            p,
            n,
            i,
            case,
            variant,
            block,
            t,
            out: path,
            check,
        } => {
            let case = Case::parse(&case, variant.as_deref(), block.as_deref()).map_err(CliError::Config)?;
            let cfg = RunConfig {
                p,
                n,
                spec: CaseSpec { case, i },
                t,
                out: path,
                verify: check,
            };
            Ok(commands::cmd_construct(&cfg, out)?.1)
        }
        Command::Verify { path, check } => Ok(commands::cmd_verify(&path, check, out)?.1),
        Command::Table { p, n, check } => {
            commands::cmd_table(p, n, check, out)?;
            Ok(Outcome::Pass)
        }
        Command::CompareConic { p, n, i } => {
            let cmp = commands::cmd_compare_conic(p, n, i, out)?;
            Ok(if cmp.equal() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Selfcheck { max_q } => Ok(commands::cmd_selfcheck(max_q, out)?.1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(outcome) => outcome.exit_code(),
        Err(CliError::NotApplicable(_)) => 2,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
