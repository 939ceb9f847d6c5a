//! Command-line front end.
//!
//! Exit codes: 0 on success (and certification success), 2 when a set was
//! processed but is not certified, 1 on any input or usage error.

use clap::{Parser, Subcommand};
use loccert::report::{render_report, render_sweep, ReportOptions};
use loccert::{build_family, parse_set, render_grid, report_for, write_set, FamilyTag, StateSet};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_NOT_CERTIFIED: u8 = 2;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(
    name = "loccert",
    about = "Build families of orthogonal product states and certify their local indistinguishability",
    long_about = "Builds the bipartite/even/tripartite/odd families of orthogonal product \
                  states with exact integer amplitudes, and certifies per party that every \
                  orthogonality-preserving measurement operator is trivial (a scalar multiple \
                  of the identity), by exact rational kernel computation.\n\n\
                  Exit codes: 0 success / certified, 2 processed but not certified, 1 errors."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family and write it in the state-set text format
    Generate {
        /// Family to build: bipartite | even | tripartite | odd
        #[arg(long)]
        family: FamilyTag,
        /// Party dimensions, e.g. --dims 4 7
        #[arg(long, num_args = 1.., required = true)]
        dims: Vec<usize>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a set: built inline from a family or loaded from a file
    Certify {
        /// State-set file to certify
        #[arg(long = "in", conflicts_with_all = ["family", "dims"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "dims")]
        family: Option<FamilyTag>,
        #[arg(long, num_args = 1.., requires = "family")]
        dims: Vec<usize>,
        /// Write the report here as well as to stdout
        #[arg(long)]
        report: Option<PathBuf>,
        /// Tolerance of the floating singular-value rank oracle
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also audit witnesses with the exact principal-minor check
        #[arg(long)]
        audit: bool,
    },
    /// Render the occupancy grid(s) of a 2- or 3-party set
    Render {
        #[arg(long = "in", conflicts_with_all = ["family", "dims"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "dims")]
        family: Option<FamilyTag>,
        #[arg(long, num_args = 1.., requires = "family")]
        dims: Vec<usize>,
    },
    /// Certify every shape of a family over a dimension range
    Sweep {
        #[arg(long)]
        family: FamilyTag,
        /// Party count (only needed for even/odd families)
        #[arg(long, default_value_t = 0)]
        parties: usize,
        #[arg(long, default_value_t = 4)]
        min_dim: usize,
        #[arg(long)]
        max_dim: usize,
        /// Only equal-dimension shapes
        #[arg(long)]
        equal: bool,
        /// Refuse shapes whose full tensor dimension exceeds this
        #[arg(long, default_value_t = 2_000_000)]
        max_cells: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        audit: bool,
    },
}

fn load_or_build(
    input: &Option<PathBuf>,
    family: &Option<FamilyTag>,
    dims: &[usize],
) -> loccert::Result<StateSet> {
    match (input, family) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            parse_set(&text)
        }
        (None, Some(f)) => build_family(*f, dims),
        (None, None) => Err(loccert::Error::InvalidParameter(
            "provide either --in FILE or --family ... --dims ...".into(),
        )),
    }
}

fn run() -> Result<u8, loccert::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { family, dims, out } => {
            let set = build_family(family, &dims)?;
            let formula = loccert::expected_count(family, &dims)
                .expect("generated families always have a count formula");
            let text = write_set(&set);
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)?;
                    println!(
                        "wrote {} states ({} family on {:?}, count formula gives {}) to {}",
                        set.len(),
                        family,
                        dims,
                        formula,
                        path.display()
                    );
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Certify {
            input,
            family,
            dims,
            report,
            tol,
            audit,
        } => {
            let set = load_or_build(&input, &family, &dims)?;
            let opts = ReportOptions { tol, audit };
            let (rep, verdict) = report_for(&set, opts)?;
            let text = render_report(&rep, &verdict);
            print!("{text}");
            if let Some(path) = report {
                std::fs::write(path, &text)?;
            }
            Ok(if rep.certified { 0 } else { EXIT_NOT_CERTIFIED })
        }
        Command::Render {
            input,
            family,
            dims,
        } => {
            let set = load_or_build(&input, &family, &dims)?;
            print!("{}", render_grid(&set)?);
            Ok(0)
        }
        Command::Sweep {
            family,
            parties,
            min_dim,
            max_dim,
            equal,
            max_cells,
            report,
            tol,
            audit,
        } => {
            let opts = ReportOptions { tol, audit };
            let rows = loccert::sweep(family, parties, min_dim, max_dim, equal, max_cells, opts)?;
            let text = render_sweep(&rows);
            print!("{text}");
            if let Some(path) = report {
                let mut full = text.clone();
                full.push_str("--- report (json) ---\n");
                full.push_str(&serde_json::to_string_pretty(&rows).expect("rows serialize"));
                full.push('\n');
                std::fs::write(path, full)?;
            }
            Ok(if rows.iter().all(|r| r.report.certified) {
                0
            } else {
                EXIT_NOT_CERTIFIED
            })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
