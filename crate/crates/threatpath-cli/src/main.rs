use std::path::PathBuf;

use clap::{Parser, Subcommand};

use threatpath_cli::{cmd_analyze, cmd_prefixes, cmd_trace, cmd_validate};
use threatpath_cli::{AnalyzeArgs, PrefixesArgs, TraceArgs};

#[derive(Parser)]
#[command(
    name = "threatpath",
    version,
    about = "Threat-path analysis for publish/subscribe vehicle architectures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a system model document
    Validate {
        /// Model JSON file
        model: PathBuf,
    },
    /// Run the analysis pipeline and emit a JSON report
    Analyze {
        /// Model JSON file
        #[arg(long)]
        model: PathBuf,
        /// Safety (hazards and loss scenarios) JSON file
        #[arg(long)]
        safety: Option<PathBuf>,
        /// Intruder profile: outsider, insider, or both
        #[arg(long, default_value = "both")]
        profile: String,
        /// Asset topics: "auto" (loss-scenario messages) or a comma-separated list
        #[arg(long, default_value = "auto")]
        assets: String,
        /// Write the report to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-run the naive reference evaluator and fail on any difference
        #[arg(long)]
        self_check: bool,
        /// Augment explicit information flows with flows derived from allocations
        #[arg(long)]
        derive_flows: bool,
        /// Omit wall-clock timings so output is reproducible byte for byte
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the loss-scenario traceability matrix from a report
    Trace {
        /// Report JSON file produced by `analyze`
        #[arg(long)]
        report: PathBuf,
        /// Restrict the matrix to one loss scenario id
        #[arg(long)]
        loss: Option<String>,
        /// Exit with code 1 when any displayed row is a gap
        #[arg(long)]
        fail_on_gap: bool,
    },
    /// Print per-entry path groups and placement hints from a report
    Prefixes {
        /// Report JSON file produced by `analyze`
        #[arg(long)]
        report: PathBuf,
        /// Show insider entry groups instead of outsider ones
        #[arg(long)]
        insider: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    let code = match cli.command {
        Command::Validate { model } => cmd_validate(&model, &mut out, &mut err),
        Command::Analyze {
            model,
            safety,
            profile,
            assets,
            out: out_path,
            self_check,
            derive_flows,
            no_timings,
        } => cmd_analyze(
            &AnalyzeArgs {
                model,
                safety,
                profile,
                assets,
                out: out_path,
                self_check,
                derive_flows,
                no_timings,
            },
            &mut out,
            &mut err,
        ),
        Command::Trace {
            report,
            loss,
            fail_on_gap,
        } => cmd_trace(
            &TraceArgs {
                report,
                loss,
                fail_on_gap,
            },
            &mut out,
            &mut err,
        ),
        Command::Prefixes { report, insider } => {
            cmd_prefixes(&PrefixesArgs { report, insider }, &mut out, &mut err)
        }
    };
    std::process::exit(code);
}
