//! HARA/STPA safety artifacts: hazards with S/E/C risk ratings, loss
//! scenarios, and ASIL computation.
//!
//! The ASIL determination matrix is stored as an explicit 4x5x4 lookup table
//! (severity x exposure x controllability) so it is auditable cell by cell.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ElementId, SystemModel};

// ---------------------------------------------------------------------------
// Risk rating enums
// ---------------------------------------------------------------------------

/// Severity class S0 (no injuries) to S3 (life-threatening injuries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Severity {
    S0,
    S1,
    S2,
    S3,
}

/// Probability-of-exposure class E0 (incredible) to E4 (high probability).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exposure {
    E0,
    E1,
    E2,
    E3,
    E4,
}

/// Controllability class C0 (controllable in general) to C3 (difficult or
/// uncontrollable).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Controllability {
    C0,
    C1,
    C2,
    C3,
}

/// Automotive safety integrity level; QM means quality management only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Asil {
    QM,
    A,
    B,
    C,
    D,
}

impl fmt::Display for Asil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Asil::QM => "QM",
            Asil::A => "A",
            Asil::B => "B",
            Asil::C => "C",
            Asil::D => "D",
        };
        f.write_str(s)
    }
}

/// The ASIL determination matrix, indexed `[severity][exposure][controllability]`.
///
/// Transcribed once from the ISO 26262-3 risk table and reviewed: S0 and E0
/// rows are uniformly QM (the standard assigns no ASIL below S1/E1); C0
/// columns are QM (controllable in general); the remaining cells follow the
/// published table, ending at (S3, E4, C3) = D.
pub const ASIL_TABLE: [[[Asil; 4]; 5]; 4] = {
    use Asil::{A, B, C, D, QM};
    [
        // S0: no ASIL regardless of exposure/controllability.
        [[QM; 4]; 5],
        // S1
        [
            [QM, QM, QM, QM], // E0
            [QM, QM, QM, QM], // E1
            [QM, QM, QM, QM], // E2
            [QM, QM, QM, A],  // E3
            [QM, QM, A, B],   // E4
        ],
        // S2
        [
            [QM, QM, QM, QM], // E0
            [QM, QM, QM, QM], // E1
            [QM, QM, QM, A],  // E2
            [QM, QM, A, B],   // E3
            [QM, A, B, C],    // E4
        ],
        // S3
        [
            [QM, QM, QM, QM], // E0
            [QM, QM, QM, A],  // E1
            [QM, QM, A, B],   // E2
            [QM, A, B, C],    // E3
            [QM, B, C, D],    // E4
        ],
    ]
};

/// Computes the ASIL for a hazard's severity/exposure/controllability rating.
/// Total, deterministic, and monotone non-decreasing in each argument.
pub fn compute_asil(
    severity: Severity,
    exposure: Exposure,
    controllability: Controllability,
) -> Asil {
    ASIL_TABLE[severity as usize][exposure as usize][controllability as usize]
}

// ---------------------------------------------------------------------------
// Safety artifacts
// ---------------------------------------------------------------------------

/// How the message named in a loss scenario fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureMode {
    /// Wrong value delivered.
    Erroneous,
    /// Message no longer delivered.
    Loss,
    /// Single expected delivery missing.
    Omission,
    /// Delivered after its deadline.
    Late,
    /// Delivered before it is valid.
    Early,
}

impl fmt::Display for FailureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureMode::Erroneous => "erroneous",
            FailureMode::Loss => "loss",
            FailureMode::Omission => "omission",
            FailureMode::Late => "late",
            FailureMode::Early => "early",
        };
        f.write_str(s)
    }
}

/// A hazard from HARA with its risk rating and computed ASIL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hazard {
    pub id: ElementId,
    pub description: String,
    pub severity: Severity,
    pub exposure: Exposure,
    pub controllability: Controllability,
    /// Always equals `compute_asil(severity, exposure, controllability)`.
    pub asil: Asil,
}

/// An STPA loss scenario: a source component provides a message to a target
/// component in a failing way, leading to one or more hazards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossScenario {
    pub id: ElementId,
    pub hazard_ids: Vec<ElementId>,
    pub source: ElementId,
    pub target: ElementId,
    pub message: ElementId,
    pub failure_mode: FailureMode,
    pub description: String,
}

/// The safety model: hazards plus the loss scenarios referencing them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SafetyModel {
    pub hazards: Vec<Hazard>,
    pub loss_scenarios: Vec<LossScenario>,
}

impl SafetyModel {
    pub fn hazard(&self, id: &str) -> Option<&Hazard> {
        self.hazards.iter().find(|h| h.id == id)
    }
}

// ---------------------------------------------------------------------------
// Document form and loading
// ---------------------------------------------------------------------------

/// Raw document form of a hazard; the ASIL is optional and, when present,
/// checked against the computed value.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HazardDoc {
    pub id: ElementId,
    #[serde(default)]
    pub description: String,
    pub severity: Severity,
    pub exposure: Exposure,
    pub controllability: Controllability,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asil: Option<Asil>,
}

/// Raw document form of a loss scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossScenarioDoc {
    pub id: ElementId,
    pub hazard_ids: Vec<ElementId>,
    pub source: ElementId,
    pub target: ElementId,
    pub message: ElementId,
    pub failure_mode: FailureMode,
    #[serde(default)]
    pub description: String,
}

/// Raw safety document: `hazards[]` and `loss_scenarios[]`. A `schema` key is
/// accepted for symmetry with the model file and must be 1 when present.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SafetyDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    #[serde(default)]
    pub hazards: Vec<HazardDoc>,
    #[serde(default)]
    pub loss_scenarios: Vec<LossScenarioDoc>,
}

/// Errors raised while loading a safety document.
#[derive(Debug, Error)]
pub enum SafetyError {
    #[error("safety parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported safety schema version {0} (expected 1)")]
    SchemaVersion(u32),
    #[error("duplicate hazard id '{0}'")]
    DuplicateHazard(ElementId),
    #[error("duplicate loss scenario id '{0}'")]
    DuplicateLossScenario(ElementId),
    #[error("loss scenario '{ls}' references unknown hazard '{hazard}'")]
    UnknownHazard { ls: ElementId, hazard: ElementId },
    #[error("loss scenario '{ls}' has no hazard references")]
    NoHazards { ls: ElementId },
    #[error("loss scenario '{ls}' references unknown component '{component}'")]
    UnknownComponent { ls: ElementId, component: ElementId },
    #[error("loss scenario '{ls}' references unknown topic '{topic}'")]
    UnknownTopic { ls: ElementId, topic: ElementId },
    #[error("hazard '{hazard}' declares ASIL {declared} but S/E/C rating computes to {computed}")]
    AsilMismatch {
        hazard: ElementId,
        declared: Asil,
        computed: Asil,
    },
}

/// Parses a safety document without resolving references against a model.
pub fn parse_safety(document: &[u8]) -> Result<SafetyDoc, SafetyError> {
    let doc: SafetyDoc = serde_json::from_slice(document)?;
    if let Some(v) = doc.schema {
        if v != 1 {
            return Err(SafetyError::SchemaVersion(v));
        }
    }
    Ok(doc)
}

/// Loads a safety document against a validated system model: computes hazard
/// ASILs (checking any declared value for agreement) and resolves every
/// component/topic/hazard reference.
pub fn load_safety(document: &[u8], model: &SystemModel) -> Result<SafetyModel, SafetyError> {
    let doc = parse_safety(document)?;

    let mut hazards = Vec::new();
    let mut hazard_ids = BTreeSet::new();
    for h in &doc.hazards {
        if !hazard_ids.insert(h.id.clone()) {
            return Err(SafetyError::DuplicateHazard(h.id.clone()));
        }
        let computed = compute_asil(h.severity, h.exposure, h.controllability);
        if let Some(declared) = h.asil {
            if declared != computed {
                return Err(SafetyError::AsilMismatch {
                    hazard: h.id.clone(),
                    declared,
                    computed,
                });
            }
        }
        hazards.push(Hazard {
            id: h.id.clone(),
            description: h.description.clone(),
            severity: h.severity,
            exposure: h.exposure,
            controllability: h.controllability,
            asil: computed,
        });
    }

    let components: BTreeSet<&str> = model.components.iter().map(|c| c.id.as_str()).collect();
    let topics: BTreeSet<&str> = model.topics.iter().map(|t| t.id.as_str()).collect();

    let mut loss_scenarios = Vec::new();
    let mut ls_ids = BTreeSet::new();
    for ls in &doc.loss_scenarios {
        if !ls_ids.insert(ls.id.clone()) {
            return Err(SafetyError::DuplicateLossScenario(ls.id.clone()));
        }
        if ls.hazard_ids.is_empty() {
            return Err(SafetyError::NoHazards { ls: ls.id.clone() });
        }
        for h in &ls.hazard_ids {
            if !hazard_ids.contains(h) {
                return Err(SafetyError::UnknownHazard {
                    ls: ls.id.clone(),
                    hazard: h.clone(),
                });
            }
        }
        for c in [&ls.source, &ls.target] {
            if !components.contains(c.as_str()) {
                return Err(SafetyError::UnknownComponent {
                    ls: ls.id.clone(),
                    component: c.clone(),
                });
            }
        }
        if !topics.contains(ls.message.as_str()) {
            return Err(SafetyError::UnknownTopic {
                ls: ls.id.clone(),
                topic: ls.message.clone(),
            });
        }
        loss_scenarios.push(LossScenario {
            id: ls.id.clone(),
            hazard_ids: ls.hazard_ids.clone(),
            source: ls.source.clone(),
            target: ls.target.clone(),
            message: ls.message.clone(),
            failure_mode: ls.failure_mode,
            description: ls.description.clone(),
        });
    }

    Ok(SafetyModel {
        hazards,
        loss_scenarios,
    })
}

/// All severity values in rating order.
pub const SEVERITIES: [Severity; 4] = [Severity::S0, Severity::S1, Severity::S2, Severity::S3];
/// All exposure values in rating order.
pub const EXPOSURES: [Exposure; 5] = [
    Exposure::E0,
    Exposure::E1,
    Exposure::E2,
    Exposure::E3,
    Exposure::E4,
];
/// All controllability values in rating order.
pub const CONTROLLABILITIES: [Controllability; 4] = [
    Controllability::C0,
    Controllability::C1,
    Controllability::C2,
    Controllability::C3,
];
