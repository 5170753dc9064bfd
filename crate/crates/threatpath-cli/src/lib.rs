//! Command implementations behind the `threatpath` binary.
//!
//! Each command takes parsed arguments plus output writers and returns a
//! process exit code, so integration tests can drive commands in-process and
//! capture their output byte for byte.
//!
//! Exit codes:
//! - `0` — success;
//! - `1` — the input is well-formed but violates a domain rule (model
//!   validation failure, safety reference or ASIL mismatch, or a traceability
//!   gap under `--fail-on-gap`);
//! - `2` — the input cannot be used at all (missing file, JSON syntax error,
//!   unsupported schema version, unknown asset topic, bad flag value);
//! - `3` — an internal invariant broke (engine/oracle self-check mismatch).

use std::io::Write;
use std::path::{Path, PathBuf};

use threatpath::analysis::{group_by_entry, placement_hints};
use threatpath::model::ModelError;
use threatpath::pipeline::{build_report, AssetSelector, PipelineError, PipelineOptions};
use threatpath::report::{ProfileSelection, Report};
use threatpath::safety::SafetyError;
use threatpath::validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Arguments of `threatpath analyze`.
#[derive(Debug, Clone)]
pub struct AnalyzeArgs {
    pub model: PathBuf,
    pub safety: Option<PathBuf>,
    /// "outsider", "insider", or "both".
    pub profile: String,
    /// "auto" or a comma-separated topic list.
    pub assets: String,
    /// Write the report here instead of stdout.
    pub out: Option<PathBuf>,
    pub self_check: bool,
    pub derive_flows: bool,
    /// Omit wall-clock timings, making the report reproducible byte for byte.
    pub no_timings: bool,
}

/// Arguments of `threatpath trace`.
#[derive(Debug, Clone)]
pub struct TraceArgs {
    pub report: PathBuf,
    /// Restrict the matrix to one loss scenario.
    pub loss: Option<String>,
    /// Exit with code 1 when any displayed row is a gap.
    pub fail_on_gap: bool,
}

/// Arguments of `threatpath prefixes`.
#[derive(Debug, Clone)]
pub struct PrefixesArgs {
    pub report: PathBuf,
    /// Show insider entry groups instead of outsider ones.
    pub insider: bool,
}

fn read_file(path: &Path, err: &mut dyn Write) -> Result<Vec<u8>, i32> {
    std::fs::read(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read '{}': {e}", path.display());
        EXIT_INPUT
    })
}

fn load_report(path: &Path, err: &mut dyn Write) -> Result<Report, i32> {
    let bytes = read_file(path, err)?;
    Report::from_json(&bytes).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })
}

/// Renders rows as space-aligned columns, two spaces between columns.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut text = String::new();
    let push_row = |cells: Vec<String>, text: &mut String| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        text.push_str(line.trim_end());
        text.push('\n');
    };
    push_row(header.iter().map(|h| h.to_string()).collect(), &mut text);
    for row in rows {
        push_row(row.clone(), &mut text);
    }
    text
}

/// `threatpath validate <MODEL>`: parse and validate a model document.
pub fn cmd_validate(model_path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let bytes = match read_file(model_path, err) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let model = match threatpath::model::parse_model(&bytes) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let violations = validate(&model);
    if violations.is_empty() {
        let _ = writeln!(
            out,
            "ok: {} topics, {} components, {} ecus, {} networks, {} publics, {} channels",
            model.topics.len(),
            model.components.len(),
            model.ecus.len(),
            model.networks.len(),
            model.publics.len(),
            model.channels.len()
        );
        return EXIT_OK;
    }
    for v in &violations {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(err, "error: model has {} violation(s)", violations.len());
    EXIT_VIOLATION
}

fn parse_profile(text: &str) -> Option<ProfileSelection> {
    match text {
        "outsider" => Some(ProfileSelection::Outsider),
        "insider" => Some(ProfileSelection::Insider),
        "both" => Some(ProfileSelection::Both),
        _ => None,
    }
}

fn parse_assets(text: &str) -> AssetSelector {
    if text == "auto" {
        return AssetSelector::Auto;
    }
    AssetSelector::Explicit(
        text.split(',')
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect(),
    )
}

fn pipeline_exit_code(err: &PipelineError) -> i32 {
    match err {
        // A structurally broken document cannot be analyzed at all; a
        // well-formed document that breaks domain invariants is a violation.
        PipelineError::Model(ModelError::Invalid(_)) => EXIT_VIOLATION,
        PipelineError::Model(_) => EXIT_INPUT,
        PipelineError::Safety(SafetyError::Parse(_))
        | PipelineError::Safety(SafetyError::SchemaVersion(_)) => EXIT_INPUT,
        PipelineError::Safety(_) => EXIT_VIOLATION,
        PipelineError::UnknownAssetTopic(_) => EXIT_INPUT,
        PipelineError::SelfCheck { .. } => EXIT_INTERNAL,
    }
}

/// `threatpath analyze`: run the full pipeline and emit the JSON report.
pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(profile) = parse_profile(&args.profile) else {
        let _ = writeln!(
            err,
            "error: unknown profile '{}' (expected outsider, insider, or both)",
            args.profile
        );
        return EXIT_INPUT;
    };
    let model_bytes = match read_file(&args.model, err) {
        Ok(b) => b,
        Err(code) => return code,
    };
    let safety_bytes = match &args.safety {
        Some(path) => match read_file(path, err) {
            Ok(b) => Some(b),
            Err(code) => return code,
        },
        None => None,
    };

    let options = PipelineOptions {
        profile,
        assets: parse_assets(&args.assets),
        derive_flows: args.derive_flows,
        self_check: args.self_check,
        timings: !args.no_timings,
    };
    let report = match build_report(&model_bytes, safety_bytes.as_deref(), &options) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return pipeline_exit_code(&e);
        }
    };

    let bytes = report.to_json_bytes();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &bytes) {
                let _ = writeln!(err, "error: cannot write '{}': {e}", path.display());
                return EXIT_INPUT;
            }
            let _ = writeln!(
                out,
                "report written to {}: {} paths ({} outsider, {} insider)",
                path.display(),
                report.paths.total,
                report.paths.outsider.len(),
                report.paths.insider.len()
            );
        }
        None => {
            let _ = out.write_all(&bytes);
        }
    }
    EXIT_OK
}

/// `threatpath trace`: print the loss-scenario traceability matrix.
pub fn cmd_trace(args: &TraceArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report = match load_report(&args.report, err) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let rows: Vec<_> = match &args.loss {
        Some(id) => {
            let filtered: Vec<_> = report
                .trace_matrix
                .rows
                .iter()
                .filter(|r| &r.loss_scenario_id == id)
                .collect();
            if filtered.is_empty() {
                let _ = writeln!(err, "error: report has no loss scenario '{id}'");
                return EXIT_INPUT;
            }
            filtered
        }
        None => report.trace_matrix.rows.iter().collect(),
    };

    let table_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.loss_scenario_id.clone(),
                r.asset_ids.len().to_string(),
                r.damage_ids.len().to_string(),
                r.threat_ids.len().to_string(),
                r.attack_path_count.to_string(),
                if r.gap {
                    "yes".to_string()
                } else {
                    "-".to_string()
                },
            ]
        })
        .collect();
    let _ = write!(
        out,
        "{}",
        render_table(
            &["SCENARIO", "ASSETS", "DAMAGES", "THREATS", "PATHS", "GAP"],
            &table_rows
        )
    );

    let gaps = rows.iter().filter(|r| r.gap).count();
    if gaps > 0 {
        let _ = writeln!(out, "{gaps} gap(s) found");
        if args.fail_on_gap {
            return EXIT_VIOLATION;
        }
    }
    EXIT_OK
}

/// `threatpath prefixes`: print per-entry path groups with their longest
/// common element prefix, plus merged placement hints.
pub fn cmd_prefixes(args: &PrefixesArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report = match load_report(&args.report, err) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let paths = if args.insider {
        &report.paths.insider
    } else {
        &report.paths.outsider
    };
    let groups = group_by_entry(paths);
    let group_rows: Vec<Vec<String>> = groups
        .iter()
        .map(|g| {
            vec![
                g.entry.clone(),
                g.path_count.to_string(),
                g.common_prefix.join(" > "),
            ]
        })
        .collect();
    let _ = write!(
        out,
        "{}",
        render_table(&["ENTRY", "PATHS", "COMMON PREFIX"], &group_rows)
    );

    let hints = placement_hints(&groups);
    if !hints.is_empty() {
        let _ = writeln!(out);
        let hint_rows: Vec<Vec<String>> = hints
            .iter()
            .map(|h| {
                vec![
                    h.element.clone(),
                    h.covered_path_count.to_string(),
                    h.entries.join(", "),
                ]
            })
            .collect();
        let _ = write!(
            out,
            "{}",
            render_table(&["PLACEMENT", "COVERED PATHS", "ENTRIES"], &hint_rows)
        );
    }
    EXIT_OK
}
