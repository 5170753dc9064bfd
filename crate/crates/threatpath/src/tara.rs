//! TARA derivation: security assets, damage scenarios, and threat scenarios
//! obtained from the safety analysis, plus the traceability matrix that ties
//! every loss scenario to the attack paths substantiating it.
//!
//! All identifiers are content-derived (truncated SHA-256 over the defining
//! fields), so re-deriving from the same inputs yields the same ids and
//! diffs stay stable across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::{ElementId, SystemModel};
use crate::paths::AttackPath;
use crate::safety::{FailureMode, LossScenario, SafetyModel, Severity};

// ---------------------------------------------------------------------------
// Asset model
// ---------------------------------------------------------------------------

/// What kind of thing an asset is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssetKind {
    /// A logical component (the source or target of a loss scenario).
    Function,
    /// A published message stream.
    Topic,
    /// An execution unit hosting a relevant function.
    Hardware,
}

impl fmt::Display for AssetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AssetKind::Function => "function",
            AssetKind::Topic => "topic",
            AssetKind::Hardware => "hardware",
        };
        f.write_str(s)
    }
}

/// The security property whose violation realizes the loss scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecurityProperty {
    Integrity,
    Availability,
    Confidentiality,
}

impl fmt::Display for SecurityProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SecurityProperty::Integrity => "integrity",
            SecurityProperty::Availability => "availability",
            SecurityProperty::Confidentiality => "confidentiality",
        };
        f.write_str(s)
    }
}

/// Maps each failure mode to the security property whose violation causes it.
///
/// The default maps value failures to integrity and all delivery failures to
/// availability; callers with a different failure taxonomy can override
/// individual entries. Lookups fall back to the default mapping, so the map
/// is total over [`FailureMode`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FailureModeMap {
    overrides: BTreeMap<FailureMode, SecurityProperty>,
}

impl FailureModeMap {
    pub fn with_override(mut self, mode: FailureMode, property: SecurityProperty) -> Self {
        self.overrides.insert(mode, property);
        self
    }

    /// The property violated when a message fails in the given mode.
    pub fn property(&self, mode: FailureMode) -> SecurityProperty {
        if let Some(p) = self.overrides.get(&mode) {
            return *p;
        }
        match mode {
            FailureMode::Erroneous => SecurityProperty::Integrity,
            FailureMode::Loss | FailureMode::Omission | FailureMode::Late | FailureMode::Early => {
                SecurityProperty::Availability
            }
        }
    }
}

/// A security asset: a referent (component, topic, or execution unit) paired
/// with the property that must hold for it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Asset {
    pub id: String,
    pub kind: AssetKind,
    pub referent: ElementId,
    pub property: SecurityProperty,
    /// Loss scenarios this asset was derived from, sorted.
    pub loss_scenario_ids: Vec<ElementId>,
}

// ---------------------------------------------------------------------------
// Damage and threat scenarios
// ---------------------------------------------------------------------------

/// Worst-credible outcome class of a damage scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Impact {
    Negligible,
    Moderate,
    Severe,
}

/// A damage scenario: the realization of one hazard, rated by the hazard's
/// severity and carrying its ASIL for prioritization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DamageScenario {
    pub id: String,
    pub hazard_id: ElementId,
    pub impact: Impact,
    pub asil: crate::safety::Asil,
    pub description: String,
}

/// STRIDE threat category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stride {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
}

impl fmt::Display for Stride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stride::Spoofing => "spoofing",
            Stride::Tampering => "tampering",
            Stride::Repudiation => "repudiation",
            Stride::InformationDisclosure => "information-disclosure",
            Stride::DenialOfService => "denial-of-service",
            Stride::ElevationOfPrivilege => "elevation-of-privilege",
        };
        f.write_str(s)
    }
}

/// A threat scenario: a STRIDE category applied to one asset, linked to the
/// damage scenarios it can bring about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreatScenario {
    pub id: String,
    pub asset_id: String,
    pub stride: Stride,
    /// Damage scenarios reachable through the asset's loss scenarios, sorted.
    pub damage_ids: Vec<String>,
    pub description: String,
}

// ---------------------------------------------------------------------------
// Identifier derivation
// ---------------------------------------------------------------------------

fn short_hash(input: &str) -> String {
    let digest = Sha256::digest(input.as_bytes());
    hex::encode(&digest[..6])
}

fn asset_id(kind: AssetKind, referent: &str, property: SecurityProperty) -> String {
    format!(
        "AS-{}",
        short_hash(&format!("asset|{kind}|{referent}|{property}"))
    )
}

fn damage_id(hazard_id: &str) -> String {
    format!("DS-{}", short_hash(&format!("damage|{hazard_id}")))
}

fn threat_id(asset_id: &str, stride: Stride) -> String {
    format!("TS-{}", short_hash(&format!("threat|{asset_id}|{stride}")))
}

// ---------------------------------------------------------------------------
// Derivation
// ---------------------------------------------------------------------------

/// Execution units that host any port of the given component.
fn hosting_units(model: &SystemModel, component: &str) -> BTreeSet<ElementId> {
    let mut component_ports: BTreeSet<&str> = BTreeSet::new();
    if let Some(c) = model.components.iter().find(|c| c.id == component) {
        component_ports.extend(c.pub_ports.iter().map(|p| p.port.as_str()));
        component_ports.extend(c.sub_ports.iter().map(|p| p.port.as_str()));
    }
    let mut unit_of_port: BTreeMap<&str, &str> = BTreeMap::new();
    for unit in &model.ecus {
        for port in unit.in_ports.iter().chain(unit.out_ports.iter()) {
            unit_of_port.insert(port.as_str(), unit.id.as_str());
        }
    }
    model
        .allocations
        .iter()
        .filter(|a| component_ports.contains(a.component_port.as_str()))
        .filter_map(|a| unit_of_port.get(a.platform_port.as_str()))
        .map(|unit| (*unit).to_string())
        .collect()
}

/// Derives the asset list from the loss scenarios: the source and target
/// functions, the failing message topic, and every execution unit hosting the
/// source or target, each paired with the property from the failure mode.
/// Assets arising from multiple loss scenarios are merged; the result is
/// sorted by (kind, referent, property).
pub fn derive_assets(
    model: &SystemModel,
    safety: &SafetyModel,
    map: &FailureModeMap,
) -> Vec<Asset> {
    let mut by_key: BTreeMap<(AssetKind, ElementId, SecurityProperty), Asset> = BTreeMap::new();
    for ls in &safety.loss_scenarios {
        let property = map.property(ls.failure_mode);
        let mut referents: Vec<(AssetKind, ElementId)> = vec![
            (AssetKind::Function, ls.source.clone()),
            (AssetKind::Function, ls.target.clone()),
            (AssetKind::Topic, ls.message.clone()),
        ];
        let mut hosts = hosting_units(model, &ls.source);
        hosts.extend(hosting_units(model, &ls.target));
        referents.extend(hosts.into_iter().map(|u| (AssetKind::Hardware, u)));

        for (kind, referent) in referents {
            let entry = by_key
                .entry((kind, referent.clone(), property))
                .or_insert_with(|| Asset {
                    id: asset_id(kind, &referent, property),
                    kind,
                    referent,
                    property,
                    loss_scenario_ids: Vec::new(),
                });
            if !entry.loss_scenario_ids.contains(&ls.id) {
                entry.loss_scenario_ids.push(ls.id.clone());
            }
        }
    }
    let mut assets: Vec<Asset> = by_key.into_values().collect();
    for asset in &mut assets {
        asset.loss_scenario_ids.sort();
    }
    assets
}

fn impact_of(severity: Severity) -> Impact {
    match severity {
        Severity::S0 => Impact::Negligible,
        Severity::S1 | Severity::S2 => Impact::Moderate,
        Severity::S3 => Impact::Severe,
    }
}

/// Derives one damage scenario per hazard, sorted by hazard id.
pub fn derive_damage_scenarios(safety: &SafetyModel) -> Vec<DamageScenario> {
    let mut damages: Vec<DamageScenario> = safety
        .hazards
        .iter()
        .map(|h| DamageScenario {
            id: damage_id(&h.id),
            hazard_id: h.id.clone(),
            impact: impact_of(h.severity),
            asil: h.asil,
            description: format!("Realization of hazard '{}': {}", h.id, h.description),
        })
        .collect();
    damages.sort_by(|a, b| a.hazard_id.cmp(&b.hazard_id));
    damages
}

/// STRIDE categories applicable to an asset kind/property combination.
///
/// Integrity of a function or execution unit is threatened by tampering;
/// integrity of a topic by spoofed or unauthorized publications; loss of
/// availability by denial of service regardless of kind. No combination maps
/// to information disclosure: the intruder model covers manipulation and
/// suppression of messages, not reading them.
fn stride_categories(kind: AssetKind, property: SecurityProperty) -> Vec<Stride> {
    match (kind, property) {
        (AssetKind::Function | AssetKind::Hardware, SecurityProperty::Integrity) => {
            vec![Stride::Tampering]
        }
        (AssetKind::Topic, SecurityProperty::Integrity) => {
            vec![Stride::Spoofing, Stride::ElevationOfPrivilege]
        }
        (_, SecurityProperty::Availability) => vec![Stride::DenialOfService],
        (_, SecurityProperty::Confidentiality) => Vec::new(),
    }
}

/// Derives threat scenarios for every asset, in asset order, linking each to
/// the damage scenarios of the hazards behind the asset's loss scenarios.
pub fn derive_threat_scenarios(
    assets: &[Asset],
    safety: &SafetyModel,
    damages: &[DamageScenario],
) -> Vec<ThreatScenario> {
    let damage_by_hazard: BTreeMap<&str, &str> = damages
        .iter()
        .map(|d| (d.hazard_id.as_str(), d.id.as_str()))
        .collect();
    let hazards_of_ls: BTreeMap<&str, &[ElementId]> = safety
        .loss_scenarios
        .iter()
        .map(|ls| (ls.id.as_str(), ls.hazard_ids.as_slice()))
        .collect();

    let mut threats = Vec::new();
    for asset in assets {
        let mut damage_ids: BTreeSet<String> = BTreeSet::new();
        for ls_id in &asset.loss_scenario_ids {
            if let Some(hazard_ids) = hazards_of_ls.get(ls_id.as_str()) {
                for hazard in *hazard_ids {
                    if let Some(d) = damage_by_hazard.get(hazard.as_str()) {
                        damage_ids.insert((*d).to_string());
                    }
                }
            }
        }
        let damage_ids: Vec<String> = damage_ids.into_iter().collect();
        for stride in stride_categories(asset.kind, asset.property) {
            threats.push(ThreatScenario {
                id: threat_id(&asset.id, stride),
                asset_id: asset.id.clone(),
                stride,
                damage_ids: damage_ids.clone(),
                description: format!(
                    "{} threat against {} '{}'",
                    stride, asset.kind, asset.referent
                ),
            });
        }
    }
    threats
}

/// The topics to treat as attack targets when no explicit selection is given:
/// the messages of all loss scenarios.
pub fn auto_asset_topics(safety: &SafetyModel) -> BTreeSet<ElementId> {
    safety
        .loss_scenarios
        .iter()
        .map(|ls| ls.message.clone())
        .collect()
}

// ---------------------------------------------------------------------------
// Traceability
// ---------------------------------------------------------------------------

/// One traceability row: a loss scenario and everything derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub loss_scenario_id: ElementId,
    pub asset_ids: Vec<String>,
    pub damage_ids: Vec<String>,
    pub threat_ids: Vec<String>,
    pub attack_path_count: usize,
    /// True when any derived column is empty or no attack path substantiates
    /// the scenario.
    pub gap: bool,
}

/// The loss-scenario-to-attack-path traceability matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceMatrix {
    pub rows: Vec<TraceRow>,
}

impl TraceMatrix {
    pub fn has_gap(&self) -> bool {
        self.rows.iter().any(|r| r.gap)
    }
}

/// An attack path substantiates a loss scenario when it attacks the
/// scenario's message topic, or when either end of its element trace is the
/// scenario's source or target function.
fn path_substantiates(path: &AttackPath, ls: &LossScenario) -> bool {
    if path.affected_topic == ls.message {
        return true;
    }
    [path.elements.first(), path.elements.last()]
        .into_iter()
        .flatten()
        .any(|e| *e == ls.source || *e == ls.target)
}

/// Builds the traceability matrix: one row per loss scenario (in document
/// order), flagging rows with an empty column or no substantiating path.
pub fn check_traceability(
    safety: &SafetyModel,
    assets: &[Asset],
    damages: &[DamageScenario],
    threats: &[ThreatScenario],
    paths: &[AttackPath],
) -> TraceMatrix {
    let damage_by_hazard: BTreeMap<&str, &str> = damages
        .iter()
        .map(|d| (d.hazard_id.as_str(), d.id.as_str()))
        .collect();

    let mut rows = Vec::new();
    for ls in &safety.loss_scenarios {
        let asset_ids: Vec<String> = assets
            .iter()
            .filter(|a| a.loss_scenario_ids.contains(&ls.id))
            .map(|a| a.id.clone())
            .collect();
        let damage_ids: Vec<String> = ls
            .hazard_ids
            .iter()
            .filter_map(|h| damage_by_hazard.get(h.as_str()))
            .map(|d| (*d).to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let threat_ids: Vec<String> = threats
            .iter()
            .filter(|t| asset_ids.contains(&t.asset_id))
            .map(|t| t.id.clone())
            .collect();
        let attack_path_count = paths.iter().filter(|p| path_substantiates(p, ls)).count();
        let gap = asset_ids.is_empty()
            || damage_ids.is_empty()
            || threat_ids.is_empty()
            || attack_path_count == 0;
        rows.push(TraceRow {
            loss_scenario_id: ls.id.clone(),
            asset_ids,
            damage_ids,
            threat_ids,
            attack_path_count,
            gap,
        });
    }
    TraceMatrix { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Intruder;
    use crate::model::load_model;
    use crate::safety::{load_safety, Asil};

    fn planner_model() -> SystemModel {
        load_model(
            br#"{
                "schema": 1,
                "topics": [{"id": "trajectory"}],
                "ecus": [{"id": "MCU", "in_ports": ["mcu_i1"], "out_ports": ["mcu_o1"]}],
                "components": [
                    {"id": "planning", "pub_ports": [{"port": "pl_o", "topic": "trajectory"}]},
                    {"id": "control", "sub_ports": [{"port": "ct_i", "topic": "trajectory"}]}
                ],
                "allocations": [
                    {"component_port": "pl_o", "platform_port": "mcu_o1"},
                    {"component_port": "ct_i", "platform_port": "mcu_i1"}
                ]
            }"#,
        )
        .unwrap()
    }

    fn planner_safety(model: &SystemModel, failure_mode: &str) -> SafetyModel {
        let doc = format!(
            r#"{{
                "hazards": [{{
                    "id": "HZ1",
                    "description": "unintended distance to other objects",
                    "severity": "S3", "exposure": "E4", "controllability": "C3"
                }}],
                "loss_scenarios": [{{
                    "id": "LS1", "hazard_ids": ["HZ1"],
                    "source": "planning", "target": "control",
                    "message": "trajectory", "failure_mode": "{failure_mode}"
                }}]
            }}"#
        );
        load_safety(doc.as_bytes(), model).unwrap()
    }

    #[test]
    fn erroneous_trajectory_scenario_yields_integrity_assets_and_threats() {
        let model = planner_model();
        let safety = planner_safety(&model, "erroneous");
        let map = FailureModeMap::default();

        let assets = derive_assets(&model, &safety, &map);
        let summary: Vec<(AssetKind, &str)> = assets
            .iter()
            .map(|a| (a.kind, a.referent.as_str()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (AssetKind::Function, "control"),
                (AssetKind::Function, "planning"),
                (AssetKind::Topic, "trajectory"),
                (AssetKind::Hardware, "MCU"),
            ]
        );
        assert!(assets
            .iter()
            .all(|a| a.property == SecurityProperty::Integrity));
        assert!(assets.iter().all(|a| a.loss_scenario_ids == ["LS1"]));

        let damages = derive_damage_scenarios(&safety);
        assert_eq!(damages.len(), 1);
        assert_eq!(damages[0].impact, Impact::Severe);
        assert_eq!(damages[0].asil, Asil::D);

        let threats = derive_threat_scenarios(&assets, &safety, &damages);
        let mut strides: Vec<Stride> = threats.iter().map(|t| t.stride).collect();
        strides.sort();
        assert_eq!(
            strides,
            vec![
                Stride::Spoofing,
                Stride::Tampering,
                Stride::Tampering,
                Stride::Tampering,
                Stride::ElevationOfPrivilege,
            ]
        );
        assert!(threats
            .iter()
            .all(|t| t.damage_ids == [damages[0].id.clone()]));
    }

    #[test]
    fn delivery_failures_map_to_availability_and_denial_of_service() {
        let model = planner_model();
        let safety = planner_safety(&model, "loss");
        let map = FailureModeMap::default();

        let assets = derive_assets(&model, &safety, &map);
        assert!(assets
            .iter()
            .all(|a| a.property == SecurityProperty::Availability));

        let damages = derive_damage_scenarios(&safety);
        let threats = derive_threat_scenarios(&assets, &safety, &damages);
        assert_eq!(threats.len(), assets.len());
        assert!(threats.iter().all(|t| t.stride == Stride::DenialOfService));
    }

    #[test]
    fn default_map_never_produces_confidentiality() {
        let map = FailureModeMap::default();
        for mode in [
            FailureMode::Erroneous,
            FailureMode::Loss,
            FailureMode::Omission,
            FailureMode::Late,
            FailureMode::Early,
        ] {
            assert_ne!(map.property(mode), SecurityProperty::Confidentiality);
        }
    }

    #[test]
    fn map_overrides_take_effect() {
        let map =
            FailureModeMap::default().with_override(FailureMode::Late, SecurityProperty::Integrity);
        assert_eq!(map.property(FailureMode::Late), SecurityProperty::Integrity);
        assert_eq!(
            map.property(FailureMode::Early),
            SecurityProperty::Availability
        );
    }

    #[test]
    fn ids_are_stable_across_derivations() {
        let model = planner_model();
        let safety = planner_safety(&model, "erroneous");
        let map = FailureModeMap::default();

        let a1 = derive_assets(&model, &safety, &map);
        let a2 = derive_assets(&model, &safety, &map);
        assert_eq!(a1, a2);
        for asset in &a1 {
            assert!(asset.id.starts_with("AS-"));
            assert_eq!(asset.id.len(), 15);
            assert!(asset.id[3..].bytes().all(|b| b.is_ascii_hexdigit()));
        }
        let d1 = derive_damage_scenarios(&safety);
        assert!(d1
            .iter()
            .all(|d| d.id.starts_with("DS-") && d.id.len() == 15));
        let t1 = derive_threat_scenarios(&a1, &safety, &d1);
        assert!(t1
            .iter()
            .all(|t| t.id.starts_with("TS-") && t.id.len() == 15));
    }

    #[test]
    fn shared_assets_merge_loss_scenario_links() {
        let model = load_model(
            br#"{
                "schema": 1,
                "topics": [{"id": "trajectory"}, {"id": "pose"}],
                "components": [
                    {"id": "planning",
                     "pub_ports": [{"port": "pl_o", "topic": "trajectory"}],
                     "sub_ports": [{"port": "pl_i", "topic": "pose"}]},
                    {"id": "control", "sub_ports": [{"port": "ct_i", "topic": "trajectory"}]},
                    {"id": "localization", "pub_ports": [{"port": "lo_o", "topic": "pose"}]}
                ]
            }"#,
        )
        .unwrap();
        let doc = br#"{
            "hazards": [
                {"id": "HZ1", "severity": "S3", "exposure": "E4", "controllability": "C3"},
                {"id": "HZ2", "severity": "S2", "exposure": "E3", "controllability": "C2"}
            ],
            "loss_scenarios": [
                {"id": "LS1", "hazard_ids": ["HZ1"], "source": "planning", "target": "control",
                 "message": "trajectory", "failure_mode": "erroneous"},
                {"id": "LS2", "hazard_ids": ["HZ2"], "source": "localization", "target": "planning",
                 "message": "pose", "failure_mode": "erroneous"}
            ]
        }"#;
        let safety = load_safety(doc, &model).unwrap();
        let assets = derive_assets(&model, &safety, &FailureModeMap::default());

        let planning = assets
            .iter()
            .find(|a| a.kind == AssetKind::Function && a.referent == "planning")
            .unwrap();
        assert_eq!(planning.loss_scenario_ids, vec!["LS1", "LS2"]);

        // The merged asset's threats link to both hazards' damage scenarios.
        let damages = derive_damage_scenarios(&safety);
        let threats = derive_threat_scenarios(&assets, &safety, &damages);
        let planning_threat = threats.iter().find(|t| t.asset_id == planning.id).unwrap();
        assert_eq!(planning_threat.damage_ids.len(), 2);
    }

    fn sample_path(affected_topic: &str, elements: &[&str]) -> AttackPath {
        AttackPath {
            intruder: Intruder::Insider,
            entry: elements.first().unwrap_or(&"e").to_string(),
            elements: elements.iter().map(|e| e.to_string()).collect(),
            affected_topic: affected_topic.to_string(),
            steps: Vec::new(),
            asset_topic: affected_topic.to_string(),
        }
    }

    #[test]
    fn traceability_counts_paths_by_topic_or_endpoint() {
        let model = planner_model();
        let safety = planner_safety(&model, "erroneous");
        let map = FailureModeMap::default();
        let assets = derive_assets(&model, &safety, &map);
        let damages = derive_damage_scenarios(&safety);
        let threats = derive_threat_scenarios(&assets, &safety, &damages);

        let paths = vec![
            // Attacks the scenario's message directly.
            sample_path("trajectory", &["routing", "planning"]),
            // Different topic, but ends at the scenario's target function.
            sample_path("pose", &["localization", "control"]),
            // Unrelated on both counts.
            sample_path("pose", &["localization", "prediction"]),
        ];
        let matrix = check_traceability(&safety, &assets, &damages, &threats, &paths);
        assert_eq!(matrix.rows.len(), 1);
        let row = &matrix.rows[0];
        assert_eq!(row.attack_path_count, 2);
        assert!(!row.gap);
        assert!(!matrix.has_gap());
        assert_eq!(row.asset_ids.len(), 4);
        assert_eq!(row.damage_ids.len(), 1);
        assert_eq!(row.threat_ids.len(), 5);
    }

    #[test]
    fn unsubstantiated_scenario_is_a_gap() {
        let model = planner_model();
        let safety = planner_safety(&model, "erroneous");
        let map = FailureModeMap::default();
        let assets = derive_assets(&model, &safety, &map);
        let damages = derive_damage_scenarios(&safety);
        let threats = derive_threat_scenarios(&assets, &safety, &damages);

        let matrix = check_traceability(&safety, &assets, &damages, &threats, &[]);
        assert_eq!(matrix.rows[0].attack_path_count, 0);
        assert!(matrix.rows[0].gap);
        assert!(matrix.has_gap());
    }

    #[test]
    fn auto_asset_topics_are_the_loss_scenario_messages() {
        let model = planner_model();
        let safety = planner_safety(&model, "erroneous");
        let topics = auto_asset_topics(&safety);
        assert_eq!(topics.into_iter().collect::<Vec<_>>(), vec!["trajectory"]);
    }
}
