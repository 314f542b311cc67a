mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ekr_core::extremal::{SearchBudget, SearchMode};
use ekr_core::sampler::WeightScheme;
use report::Status;

pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "ekr",
    version,
    about = "Exact EKR checks for unions of length-2 paths and k-claws"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Directory for reports when --output is not given; files are named
    /// after the command.
    #[arg(long, env = "EKR_OUT_DIR", global = true)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Count (and optionally list) independent r-sets, split by centre count.
    Enumerate(EnumerateArgs),
    /// Compress an intersecting family until it is shifted.
    Shift(ShiftArgs),
    /// Check the interval-family bound on the circle for good permutations.
    Lemma23(Lemma23Args),
    /// Monte Carlo check of the stratum sampler.
    Sample(SampleArgs),
    /// Exact law of the stratum sampler.
    Distribution(DistributionArgs),
    /// Largest intersecting family of independent r-sets against the largest star.
    Ekr(EkrArgs),
    /// EKR verdicts over a range of n and r.
    Scan(ScanArgs),
    /// Largest intersecting family of independent sets of size at most r.
    Chvatal(ChvatalArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate(_) => "enumerate",
            Command::Shift(_) => "shift",
            Command::Lemma23(_) => "lemma23",
            Command::Sample(_) => "sample",
            Command::Distribution(_) => "distribution",
            Command::Ekr(_) => "ekr",
            Command::Scan(_) => "scan",
            Command::Chvatal(_) => "chvatal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindArg {
    P3,
    Claw,
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = KindArg::P3)]
    pub kind: KindArg,
    /// Leaves per claw (claw kind only).
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct BudgetArgs {
    /// Largest family the exact search accepts.
    #[arg(long, default_value_t = 2000)]
    pub max_members: usize,
    /// Search nodes before giving up.
    #[arg(long, default_value_t = 100_000_000)]
    pub max_nodes: u64,
}

impl BudgetArgs {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_members: self.max_members,
            max_nodes: self.max_nodes,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Full,
    ShiftedReduced,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => SearchMode::Full,
            ModeArg::ShiftedReduced => SearchMode::ShiftedReduced,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeArg {
    Exact,
    Factorial,
}

impl From<SchemeArg> for WeightScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Exact => WeightScheme::Exact,
            SchemeArg::Factorial => WeightScheme::Factorial,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub r: usize,
    /// Only this centre count (path union only).
    #[arg(long)]
    pub s: Option<usize>,
    /// Include the sets themselves in the report.
    #[arg(long)]
    pub members: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ShiftArgs {
    #[arg(long)]
    pub n: usize,
    /// JSON file holding an array of sets, each an array of 1-based vertex ids.
    #[arg(long, conflicts_with_all = ["r"])]
    pub family: Option<PathBuf>,
    /// Set size of a random intersecting family (used without --family).
    #[arg(long, required_unless_present = "family")]
    pub r: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct Lemma23Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub u: usize,
    /// Offset of the intervals; shifts the table rows without changing the family.
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    /// `identity`, `random`, or a comma-separated arrangement of 1..=2n.
    #[arg(long, default_value = "identity")]
    pub sigma: String,
    /// Number of random permutations.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 100_000)]
    pub draws: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Allowed deviation from uniform, in standard errors.
    #[arg(long, default_value_t = 5.0)]
    pub tolerance: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct DistributionArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, value_enum, default_value_t = SchemeArg::Exact)]
    pub scheme: SchemeArg,
}

#[derive(Args, Debug, Serialize)]
pub struct EkrArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_r: usize,
    /// Comma-separated kinds: `p3`, or `clawK` for k-claws.
    #[arg(long, value_delimiter = ',', default_value = "p3")]
    pub kinds: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ChvatalArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub r: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Process exit statuses.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PRECONDITION: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const VERIFICATION: u8 = 5;
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::PASS
            });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(exit::USAGE);
        }
    }
    let code =
        match commands::run(&cli).and_then(|rep| report::emit(&cli, &rep).map(|()| rep.status)) {
            Ok(Status::Pass) => exit::PASS,
            Ok(Status::Fail) => exit::VERIFICATION,
            Ok(Status::Incomplete) => exit::BUDGET,
            Err(e) => {
                eprintln!("error: {e:#}");
                classify(&e)
            }
        };
    ExitCode::from(code)
}

fn classify(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<ekr_core::Error>() {
        Some(ekr_core::Error::Budget { .. }) => exit::BUDGET,
        Some(_) => exit::PRECONDITION,
        None if e.downcast_ref::<commands::Usage>().is_some() => exit::USAGE,
        None => exit::IO,
    }
}
