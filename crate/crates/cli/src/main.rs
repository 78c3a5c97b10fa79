//! `hqa`: evaluate the analysability of a hybrid quantum-classical project.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hqa_core::cli::{run, CliInvocation, OutputFormat};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Both,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
            Format::Both => OutputFormat::Both,
        }
    }
}

/// Measure circuits (.qasm) and classical sources of a project and rate its
/// analysability on a 0-100 scale and five levels.
///
/// Exit codes: 0 success, 1 quality gate failed, 2 usage or config error,
/// 3 nothing to evaluate.
#[derive(Debug, Parser)]
#[command(name = "hqa", version)]
struct Args {
    /// Project root directory.
    project_root: PathBuf,

    /// JSON model configuration; omitted keys keep the defaults.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Destination file. Text defaults to stdout, JSON to ./analysability.json.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Inline user-defined gates before measuring.
    #[arg(long)]
    expand_gates: bool,

    /// Exit with code 1 when the analysability level is below this value.
    #[arg(long, value_name = "1-5", value_parser = clap::value_parser!(u8).range(1..=5))]
    fail_below_level: Option<u8>,
}

fn main() {
    let args = Args::parse();
    let invocation = CliInvocation {
        project_root: args.project_root,
        config_path: args.config,
        output_path: args.output,
        format: args.format.into(),
        expand_gates: args.expand_gates,
        fail_below_level: args.fail_below_level,
    };
    std::process::exit(run(&invocation));
}
