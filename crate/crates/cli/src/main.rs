use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use crdsa_cli::fixtures::{load, Loaded};
use crdsa_cli::{commands, suite, CliError, Output};

/// Exact checks for core regular double Stone algebras and their
/// bitopological duals.
///
/// Exit status: 0 when the check passes, 1 when it fails, 2 on usage or
/// I/O errors.
#[derive(Parser)]
#[command(name = "crdsa", version)]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra-level operations on a fixture or a JSON algebra.
    Alg {
        #[command(subcommand)]
        op: AlgOp,
    },
    /// The subalgebra of C_3^n whose center is a given Boolean subuniverse.
    Embed {
        #[arg(long, value_name = "N")]
        power: usize,
        /// {0,1}-words of the center, comma separated or repeated.
        #[arg(
            long = "center",
            value_name = "WORDS",
            value_delimiter = ',',
            required = true
        )]
        center: Vec<String>,
    },
    /// The prime-filter spectrum as a bitopological space.
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Include the filters, Φ+ and the pairwise separation report.
        #[arg(long)]
        details: bool,
    },
    /// The six conditions for a space's base to carry a CRDSA.
    CheckBase {
        #[arg(long, value_name = "FILE")]
        space: PathBuf,
    },
    /// Whether a point map induces a CRDSA homomorphism between bases.
    CheckMap {
        #[arg(long, value_name = "FILE")]
        space_x: PathBuf,
        #[arg(long, value_name = "FILE")]
        space_y: PathBuf,
        /// `{"map": [...]}` sending point i of X to map[i] of Y.
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Run the full verification suite.
    Verify {
        /// Largest power of C_3 checked exhaustively (1 to 3).
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum AlgOp {
    /// All subuniverses, or with --crdsa-only the CRDSA report for C_3^n.
    Subalgebras {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        crdsa_only: bool,
    },
    /// The four-condition primality check.
    Primal {
        #[command(flatten)]
        source: Source,
        /// Mal'cev term over v0, v1, v2; defaults to the fixture's witness.
        #[arg(long, value_name = "TERM")]
        malcev: Option<String>,
        /// Majority term; without it the lattice reduct is checked.
        #[arg(long, value_name = "TERM")]
        majority: Option<String>,
    },
    /// The CRDSA axioms.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Center, dense and dually dense elements, core, and decomposition.
    Center {
        #[command(flatten)]
        source: Source,
    },
    /// The operation tables as JSON.
    Show {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args)]
struct Source {
    /// c3, z3, c4, c3pow:<n>, c2pow:<n> or chain:<n>.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["algebra", "power"])]
    fixture: Option<String>,
    /// An algebra in the `{"carrier", "signature", "tables"}` format.
    #[arg(long, value_name = "FILE", conflicts_with = "power")]
    algebra: Option<PathBuf>,
    /// Shorthand for --fixture c3pow:<n>.
    #[arg(long, value_name = "N")]
    power: Option<usize>,
}

impl Source {
    fn load(&self) -> Result<Loaded, CliError> {
        let pow = self.power.map(|n| format!("c3pow:{n}"));
        load(
            self.fixture.as_deref().or(pow.as_deref()),
            self.algebra.as_deref(),
        )
    }
}

fn dispatch(command: Command, out: Option<&Path>) -> Result<Output, CliError> {
    match command {
        Command::Alg { op } => match op {
            AlgOp::Subalgebras { source, crdsa_only } => {
                commands::subalgebras(&source.load()?, crdsa_only)
            }
            AlgOp::Primal {
                source,
                malcev,
                majority,
            } => commands::primal(&source.load()?, malcev.as_deref(), majority.as_deref()),
            AlgOp::Validate { source } => commands::validate(&source.load()?),
            AlgOp::Center { source } => commands::center(&source.load()?),
            AlgOp::Show { source } => commands::show(&source.load()?),
        },
        Command::Embed { power, center } => commands::embed(power, &center),
        Command::Spectrum { source, details } => commands::spectrum(&source.load()?, details),
        Command::CheckBase { space } => commands::check_base(&space),
        Command::CheckMap {
            space_x,
            space_y,
            map,
        } => commands::check_map(&space_x, &space_y, &map),
        Command::Verify { max_n } => {
            let report = suite::run_suite(max_n, out)?;
            eprintln!("{} of {} checks passed", report.passed, report.checks.len());
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| c.verdict == suite::Verdict::Fail)
                .map(|c| c.id.as_str())
                .collect();
            let reason = format!("failed checks: {}", failed.join(", "));
            let json = serde_json::to_value(&report).expect("serializable report");
            Ok(Output::verdict(json, report.all_passed(), || reason))
        }
    }
}

fn emit(output: &Output, out: Option<&Path>, written: bool) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&output.json).expect("serializable output") + "\n";
    match out {
        Some(_) if written => Ok(()),
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.as_deref();
    let written = matches!(cli.command, Command::Verify { .. });
    let result = dispatch(cli.command, out).and_then(|o| emit(&o, out, written).map(|()| o));
    match result {
        Ok(o) if o.passed => ExitCode::SUCCESS,
        Ok(o) => {
            eprintln!("check failed: {}", o.reason.unwrap_or_default());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("crdsa: {e}");
            ExitCode::from(2)
        }
    }
}
