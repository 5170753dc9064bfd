//! The serializable analysis report: everything the pipeline computes, in a
//! stable JSON form.
//!
//! Determinism contract: building a report twice from the same inputs with
//! timings disabled yields byte-identical JSON. All collections are sorted
//! before they land here, and the only non-deterministic field (timings) is
//! omitted entirely when absent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{EntryGroup, PlacementHint, Summary};
use crate::engine::{Intruder, ReachRun};
use crate::model::ElementId;
use crate::paths::AttackPath;
use crate::safety::Hazard;
use crate::tara::{Asset, DamageScenario, ThreatScenario, TraceMatrix};

/// Report document schema version.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Which intruder models a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSelection {
    Outsider,
    Insider,
    Both,
}

impl ProfileSelection {
    pub fn includes(self, intruder: Intruder) -> bool {
        match self {
            ProfileSelection::Outsider => intruder == Intruder::Outsider,
            ProfileSelection::Insider => intruder == Intruder::Insider,
            ProfileSelection::Both => true,
        }
    }
}

impl std::fmt::Display for ProfileSelection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProfileSelection::Outsider => f.write_str("outsider"),
            ProfileSelection::Insider => f.write_str("insider"),
            ProfileSelection::Both => f.write_str("both"),
        }
    }
}

/// Condensed engine result for one intruder run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineRunReport {
    pub wrt_count: usize,
    pub rd_count: usize,
    /// Reached ports, sorted.
    pub reach: Vec<ElementId>,
    /// Attacked topics, sorted.
    pub attacks: Vec<ElementId>,
    /// Fixpoint rounds until stable.
    pub rounds: usize,
}

impl EngineRunReport {
    pub fn from_run(run: &ReachRun) -> Self {
        EngineRunReport {
            wrt_count: run.flows.wrt.len(),
            rd_count: run.flows.rd.len(),
            reach: run.reach.keys().cloned().collect(),
            attacks: run.attacks.keys().cloned().collect(),
            rounds: run.rounds,
        }
    }
}

/// Engine results per profile; absent profiles were not evaluated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outsider: Option<EngineRunReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub insider: Option<EngineRunReport>,
}

/// The TARA artifacts derived from the safety analysis.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaraSection {
    pub hazards: Vec<Hazard>,
    pub assets: Vec<Asset>,
    pub damage_scenarios: Vec<DamageScenario>,
    pub threat_scenarios: Vec<ThreatScenario>,
}

/// Enumerated attack paths per profile, canonically sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathsSection {
    pub outsider: Vec<AttackPath>,
    pub insider: Vec<AttackPath>,
    pub total: usize,
}

/// Path post-processing results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub entry_groups: Vec<EntryGroup>,
    pub placement_hints: Vec<PlacementHint>,
    pub summary: Summary,
}

/// The complete analysis report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    /// "sha256:<hex>" over the raw model document.
    pub model_digest: String,
    /// "sha256:<hex>" over the raw safety document, when one was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub safety_digest: Option<String>,
    pub profile: ProfileSelection,
    /// "auto" or "explicit".
    pub assets_selector: String,
    /// The asset topics the enumeration targeted, sorted.
    pub asset_topics: Vec<ElementId>,
    /// Whether information flows were augmented with derived flows.
    pub derived_flows_used: bool,
    pub tara: TaraSection,
    pub engine: EngineSection,
    pub paths: PathsSection,
    pub analysis: AnalysisSection,
    pub trace_matrix: TraceMatrix,
}

/// Errors raised while reading a report document.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported report schema version {0} (expected {REPORT_SCHEMA_VERSION})")]
    SchemaVersion(u32),
}

impl Report {
    /// Serializes to pretty-printed UTF-8 JSON with a trailing newline.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serialization");
        bytes.push(b'\n');
        bytes
    }

    /// Parses a report document, checking the schema version.
    pub fn from_json(bytes: &[u8]) -> Result<Report, ReportError> {
        let report: Report = serde_json::from_slice(bytes)?;
        if report.schema != REPORT_SCHEMA_VERSION {
            return Err(ReportError::SchemaVersion(report.schema));
        }
        Ok(report)
    }
}
