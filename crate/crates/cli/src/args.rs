//! Flag definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tiergov_core::engine::DepthWeights;

#[derive(Debug, Parser)]
#[command(
    name = "tiergov",
    version,
    about = "Tier-aware AI governance harmonization engine"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Start the evaluation service (same as the `serve` subcommand).
    #[arg(long)]
    pub serve: bool,

    /// Port for --serve.
    #[arg(long, default_value_t = 8787)]
    pub port: u16,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,

    /// Depth weights w_d,w_r,w_s (must sum to 1).
    #[arg(long, global = true, value_name = "W_D,W_R,W_S", value_parser = parse_weights)]
    pub weights: Option<DepthWeights>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate descriptors and write reports.
    Validate(ValidateArgs),
    /// Serve the evaluation API on the loopback interface.
    Serve {
        #[arg(long, default_value_t = 8787)]
        port: u16,
    },
    /// Check the catalog and list every integrity diagnostic.
    CheckCatalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Html,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Md => "md",
            Format::Html => "html",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Descriptor files.
    #[arg(value_name = "DESCRIPTOR")]
    pub descriptors: Vec<PathBuf>,

    /// Evaluate the four bundled scenarios.
    #[arg(long)]
    pub all_scenarios: bool,

    /// Output formats; repeat the flag or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "json")]
    pub format: Vec<Format>,

    /// Output directory.
    #[arg(long, default_value = "reports", value_name = "DIR")]
    pub out: PathBuf,

    /// Prebuilt UI bundle manifest to inline into HTML output.
    #[arg(long, value_name = "PATH")]
    pub ui_bundle: Option<PathBuf>,
}

fn parse_weights(s: &str) -> Result<DepthWeights, String> {
    s.parse()
        .map_err(|e: tiergov_core::EngineError| e.to_string())
}
