//! `latpoly`: constructions, symmetry groups, equivalence tests, the
//! symmetric family of prescribed cardinality, and the planar census.
//! Every command prints one JSON `CommandResult` (or CSV for `census --out
//! csv`) and exits 0 ok, 2 invalid input, 3 construction failure, 4
//! resource cap.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use output::{CommandResult, Status};

#[derive(Parser)]
#[command(name = "latpoly", version, about = "Exact computations on convex lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the explicit families.
    Construct(ConstructArgs),
    /// Unimodular symmetry group of a polytope.
    Group {
        /// Polytope JSON file, or `-` for stdin.
        file: String,
        /// Also compute the orthogonal subgroup.
        #[arg(long)]
        orthogonal: bool,
    },
    /// Decide unimodular equivalence, with a witness map.
    Equiv { file1: String, file2: String },
    /// Canonical class label as a hex string.
    Canon { file: String },
    /// Centrally symmetric family with prescribed number of lattice points.
    Theorem1(Theorem1Args),
    /// Count planar equivalence classes over a range of values.
    Census(CensusArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Ball,
    #[value(name = "K")]
    K,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    #[value(name = "Q")]
    Q,
    #[value(name = "H")]
    H,
    #[value(name = "Hprime")]
    HPrime,
}

#[derive(Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(short = 'd', long = "dim")]
    pub dim: usize,
    /// Ball radius.
    #[arg(short = 'm', long)]
    pub m: Option<i64>,
    /// Ball norm exponent: a positive integer or `inf`.
    #[arg(long)]
    pub rho: Option<String>,
    /// Paraboloid radius.
    #[arg(short = 'r', long)]
    pub r: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Subsets {
    All,
    Sample,
}

#[derive(Args)]
pub struct Theorem1Args {
    #[arg(short = 'd', long = "dim")]
    pub dim: usize,
    #[arg(short = 'w', long)]
    pub w: u64,
    #[arg(long, value_enum, default_value = "all")]
    pub subsets: Subsets,
    /// Number of subsets drawn with `--subsets sample`.
    #[arg(long, default_value_t = 64)]
    pub limit: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include every member polytope in the payload.
    #[arg(long)]
    pub members: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CensusStatistic {
    /// Classes by normalized volume.
    V,
    /// Centrally symmetric classes by normalized volume.
    VStar,
    /// Classes by number of lattice points.
    Kappa,
    /// Centrally symmetric classes by number of lattice points.
    KappaStar,
    /// Classes with interior lattice points, by number of lattice points.
    KappaPrime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
pub struct CensusArgs {
    #[arg(value_enum)]
    pub statistic: CensusStatistic,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long)]
    pub range: String,
    #[arg(long)]
    pub odd_only: bool,
    #[arg(long, conflicts_with = "odd_only")]
    pub even_only: bool,
    /// First search box `N`; grown automatically until the count is stable.
    #[arg(long = "box")]
    pub search_box: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let result = CommandResult::invalid_usage(e.render().to_string(), Cli::command().render_usage().to_string());
            emit(&format!("{}\n", result.to_json()));
            return result.status.exit_code();
        }
    };
    let (result, text) = match cli.command {
        Command::Construct(a) => (commands::construct(&a), None),
        Command::Group { file, orthogonal } => (commands::group(&file, orthogonal), None),
        Command::Equiv { file1, file2 } => (commands::equiv(&file1, &file2), None),
        Command::Canon { file } => (commands::canon(&file), None),
        Command::Theorem1(a) => (commands::theorem1(&a), None),
        Command::Census(a) => {
            let (result, csv) = commands::census(&a);
            let text = (a.out == OutFormat::Csv).then_some(csv);
            (result, text)
        }
    };
    match text {
        Some(csv) => emit(&csv),
        None => emit(&format!("{}\n", result.to_json())),
    }
    if result.status != Status::Ok {
        let detail = result.payload.get("error").and_then(|e| e.as_str()).unwrap_or("");
        eprintln!("latpoly: {}: {detail}", result.status.name());
    }
    result.status.exit_code()
}

/// A closed stdout (e.g. piped into `head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
