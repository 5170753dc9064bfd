//! End-to-end orchestration: raw model/safety documents in, complete
//! [`Report`] out. This is what the command-line frontend calls.

use std::collections::BTreeSet;
use std::time::Instant;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{group_by_entry, placement_hints, summarize, PhaseTimings};
use crate::engine::{self, Intruder};
use crate::model::{derive_information_flows, load_model, to_facts, ElementId, ModelError};
use crate::paths::{enumerate_insider_paths, enumerate_outsider_paths, AttackPath};
use crate::report::{
    AnalysisSection, EngineRunReport, EngineSection, PathsSection, ProfileSelection, Report,
    TaraSection, REPORT_SCHEMA_VERSION,
};
use crate::safety::{load_safety, SafetyError, SafetyModel};
use crate::tara::{
    auto_asset_topics, check_traceability, derive_assets, derive_damage_scenarios,
    derive_threat_scenarios, FailureModeMap,
};

/// How the set of asset topics is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssetSelector {
    /// The messages of the safety model's loss scenarios.
    Auto,
    /// An explicit topic list; every topic must exist in the model.
    Explicit(Vec<ElementId>),
}

/// Pipeline configuration.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub profile: ProfileSelection,
    pub assets: AssetSelector,
    /// Augment explicit information flows with flows derived from
    /// allocations before compiling facts.
    pub derive_flows: bool,
    /// Re-run the naive reference evaluator and compare against the engine.
    pub self_check: bool,
    /// Attach wall-clock phase timings to the summary.
    pub timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            profile: ProfileSelection::Both,
            assets: AssetSelector::Auto,
            derive_flows: false,
            self_check: false,
            timings: false,
        }
    }
}

/// Pipeline failures, ordered from input problems to internal ones.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Safety(#[from] SafetyError),
    #[error("asset topic '{0}' does not exist in the model")]
    UnknownAssetTopic(ElementId),
    /// The engine and the reference evaluator disagreed; this is a bug, not
    /// an input problem.
    #[error("self-check failed for {intruder}: {detail}")]
    SelfCheck { intruder: Intruder, detail: String },
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn millis_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Runs the full pipeline: load and validate, compile facts, evaluate the
/// engine per selected profile, enumerate paths, derive TARA artifacts, and
/// assemble the report.
pub fn build_report(
    model_bytes: &[u8],
    safety_bytes: Option<&[u8]>,
    options: &PipelineOptions,
) -> Result<Report, PipelineError> {
    let t_total = Instant::now();

    // Load phase.
    let t_load = Instant::now();
    let mut model = load_model(model_bytes)?;
    let mut derived_flows_used = false;
    if options.derive_flows {
        let existing: BTreeSet<(&str, &str, &str)> = model
            .information_flows
            .iter()
            .map(|f| (f.ecu.as_str(), f.entry_port.as_str(), f.topic.as_str()))
            .collect();
        let fresh: Vec<_> = derive_information_flows(&model)?
            .into_iter()
            .filter(|f| {
                !existing.contains(&(f.ecu.as_str(), f.entry_port.as_str(), f.topic.as_str()))
            })
            .collect();
        model.information_flows.extend(fresh);
        derived_flows_used = true;
    }
    let facts = to_facts(&model)?;
    let safety = match safety_bytes {
        Some(bytes) => load_safety(bytes, &model)?,
        None => SafetyModel::default(),
    };

    let (asset_topics, assets_selector) = match &options.assets {
        AssetSelector::Auto => (auto_asset_topics(&safety), "auto"),
        AssetSelector::Explicit(topics) => {
            let known: BTreeSet<&str> = model.topics.iter().map(|t| t.id.as_str()).collect();
            for topic in topics {
                if !known.contains(topic.as_str()) {
                    return Err(PipelineError::UnknownAssetTopic(topic.clone()));
                }
            }
            (topics.iter().cloned().collect(), "explicit")
        }
    };
    let load_ms = millis_since(t_load);

    // Engine phase.
    let t_engine = Instant::now();
    let mut runs: Vec<engine::ReachRun> = Vec::new();
    for intruder in [Intruder::Outsider, Intruder::Insider] {
        if options.profile.includes(intruder) {
            let run = engine::run(&facts, intruder);
            if options.self_check {
                engine::self_check(&facts, &run)
                    .map_err(|detail| PipelineError::SelfCheck { intruder, detail })?;
            }
            runs.push(run);
        }
    }
    let outsider_run = runs.iter().find(|r| r.intruder == Intruder::Outsider);
    let insider_run = runs.iter().find(|r| r.intruder == Intruder::Insider);
    let engine_ms = millis_since(t_engine);

    // Path phase.
    let t_paths = Instant::now();
    let outsider_paths: Vec<AttackPath> = outsider_run
        .map(|run| enumerate_outsider_paths(&facts, run, &asset_topics))
        .unwrap_or_default();
    let insider_paths: Vec<AttackPath> = insider_run
        .map(|run| enumerate_insider_paths(&facts, run, &asset_topics))
        .unwrap_or_default();
    let mut all_paths: Vec<AttackPath> =
        Vec::with_capacity(outsider_paths.len() + insider_paths.len());
    all_paths.extend(outsider_paths.iter().cloned());
    all_paths.extend(insider_paths.iter().cloned());
    all_paths.sort();
    let paths_ms = millis_since(t_paths);

    // TARA and analysis phase.
    let t_analysis = Instant::now();
    let failure_map = FailureModeMap::default();
    let tara_assets = derive_assets(&model, &safety, &failure_map);
    let damage_scenarios = derive_damage_scenarios(&safety);
    let threat_scenarios = derive_threat_scenarios(&tara_assets, &safety, &damage_scenarios);
    let trace_matrix = check_traceability(
        &safety,
        &tara_assets,
        &damage_scenarios,
        &threat_scenarios,
        &all_paths,
    );
    let entry_groups = group_by_entry(&all_paths);
    let hints = placement_hints(&entry_groups);
    let analysis_ms = millis_since(t_analysis);

    let timings = options.timings.then(|| PhaseTimings {
        load_ms,
        engine_ms,
        paths_ms,
        analysis_ms,
        total_ms: millis_since(t_total),
    });
    let summary = summarize(&all_paths, timings);

    Ok(Report {
        schema: REPORT_SCHEMA_VERSION,
        model_digest: digest(model_bytes),
        safety_digest: safety_bytes.map(digest),
        profile: options.profile,
        assets_selector: assets_selector.to_string(),
        asset_topics: asset_topics.into_iter().collect(),
        derived_flows_used,
        tara: TaraSection {
            hazards: safety.hazards.clone(),
            assets: tara_assets,
            damage_scenarios,
            threat_scenarios,
        },
        engine: EngineSection {
            outsider: outsider_run.map(EngineRunReport::from_run),
            insider: insider_run.map(EngineRunReport::from_run),
        },
        paths: PathsSection {
            total: outsider_paths.len() + insider_paths.len(),
            outsider: outsider_paths,
            insider: insider_paths,
        },
        analysis: AnalysisSection {
            entry_groups,
            placement_hints: hints,
            summary,
        },
        trace_matrix,
    })
}
