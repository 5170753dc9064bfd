//! Architecture data model: typed elements, validation, and compilation to the
//! ground-fact base consumed by the inference engine.
//!
//! The model distinguishes two id namespaces: *element* names (topics,
//! components, execution units, networks, public elements) and *port* names.
//! Ports are global and unique — every port id belongs to exactly one element,
//! in exactly one direction/role — because the inference rules reference ports
//! without qualification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of a model element or port: a non-empty, case-sensitive string,
/// unique within its namespace.
pub type ElementId = String;

/// Supported model document schema version.
pub const SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Element types
// ---------------------------------------------------------------------------

/// A named message channel of the publish/subscribe middleware.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Topic {
    pub id: ElementId,
    /// Whether the topic is protected by a cryptographic primitive.
    #[serde(default)]
    pub protected: bool,
}

/// A (port, topic) binding on a logical component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicPort {
    pub port: ElementId,
    pub topic: ElementId,
}

/// A software component that publishes and subscribes to topics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogicalComponent {
    pub id: ElementId,
    #[serde(default)]
    pub pub_ports: Vec<TopicPort>,
    #[serde(default)]
    pub sub_ports: Vec<TopicPort>,
}

/// A hardware compute node (ECU) hosting allocated components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExecutionUnit {
    pub id: ElementId,
    #[serde(default)]
    pub in_ports: Vec<ElementId>,
    #[serde(default)]
    pub out_ports: Vec<ElementId>,
}

/// A network interface (bus, switch, point-to-point link).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkInterface {
    pub id: ElementId,
    #[serde(default)]
    pub in_ports: Vec<ElementId>,
    #[serde(default)]
    pub out_ports: Vec<ElementId>,
}

/// An interface outside the system boundary (sensor, T-Box, Bluetooth, ...).
/// Public elements only have out-ports in this model; a bidirectional interface
/// is modeled as a public out-port plus a channel into a network in-port.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicElement {
    pub id: ElementId,
    #[serde(default)]
    pub out_ports: Vec<ElementId>,
}

/// A directed transmission between two platform ports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Channel {
    pub from_port: ElementId,
    pub to_port: ElementId,
}

/// Deployment of a component port onto an execution-unit port.
/// Pub ports allocate to ECU out-ports, sub ports to ECU in-ports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Allocation {
    pub component_port: ElementId,
    pub platform_port: ElementId,
}

/// Declares that `topic` is published within `ecu` through an information flow
/// originating at the ECU in-port `entry_port`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InformationFlow {
    pub ecu: ElementId,
    pub entry_port: ElementId,
    pub topic: ElementId,
}

/// The architecture as typed element collections.
///
/// The JSON document form requires `"schema": 1`; all collections default to
/// empty. A model is only meaningful once [`validate`] returns no violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemModel {
    pub schema: u32,
    #[serde(default)]
    pub topics: Vec<Topic>,
    #[serde(default)]
    pub components: Vec<LogicalComponent>,
    #[serde(default)]
    pub ecus: Vec<ExecutionUnit>,
    #[serde(default)]
    pub networks: Vec<NetworkInterface>,
    #[serde(default)]
    pub publics: Vec<PublicElement>,
    #[serde(default)]
    pub channels: Vec<Channel>,
    #[serde(default)]
    pub allocations: Vec<Allocation>,
    #[serde(default)]
    pub information_flows: Vec<InformationFlow>,
}

impl Default for SystemModel {
    fn default() -> Self {
        Self {
            schema: SCHEMA_VERSION,
            topics: Vec::new(),
            components: Vec::new(),
            ecus: Vec::new(),
            networks: Vec::new(),
            publics: Vec::new(),
            channels: Vec::new(),
            allocations: Vec::new(),
            information_flows: Vec::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// Errors and violations
// ---------------------------------------------------------------------------

/// Errors raised while loading or compiling a model.
#[derive(Debug, Error)]
pub enum ModelError {
    /// The document is not well-formed (bad JSON, unknown field, wrong type).
    #[error("model parse error: {0}")]
    Parse(#[from] serde_json::Error),
    /// The document declares an unsupported schema version.
    #[error("unsupported model schema version {0} (expected {SCHEMA_VERSION})")]
    SchemaVersion(u32),
    /// The model violates structural invariants (includes dangling references).
    #[error("invalid model: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(violations: &[Violation]) -> String {
    let mut out = String::new();
    for (i, v) in violations.iter().take(5).enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(&v.to_string());
    }
    if violations.len() > 5 {
        out.push_str(&format!("; ... ({} total)", violations.len()));
    }
    out
}

/// A single invariant violation found by [`validate`]. Violations are data,
/// not errors: callers decide whether to fail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// Id of the offending element or port (empty when no id is involved).
    pub element: ElementId,
    /// Stable, kebab-case rule name.
    pub rule: String,
    /// Human-readable description naming the ids involved.
    pub message: String,
}

impl Violation {
    fn new(element: impl Into<String>, rule: &str, message: impl Into<String>) -> Self {
        Self {
            element: element.into(),
            rule: rule.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: [{}] {}", self.element, self.rule, self.message)
    }
}

// ---------------------------------------------------------------------------
// Ground atoms
// ---------------------------------------------------------------------------

/// A ground atom over the seventeen predicates of the intruder model.
/// Input atoms (this enum) form stratum 0; the engine derives `wrt`, `rd`,
/// `reach`, and `attack` judgments from them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// ECU and one of its input ports.
    Ecui(ElementId, ElementId),
    /// ECU and one of its output ports.
    Ecuo(ElementId, ElementId),
    /// Network interface and one of its input ports.
    Neti(ElementId, ElementId),
    /// Network interface and one of its output ports.
    Neto(ElementId, ElementId),
    /// Channel from an output port to an input port.
    Ch(ElementId, ElementId),
    /// Component and one of its input (subscriber) ports.
    Cpi(ElementId, ElementId),
    /// Component and one of its output (publisher) ports.
    Cpo(ElementId, ElementId),
    /// Component port allocated to a platform port.
    Alloc(ElementId, ElementId),
    /// Component publishes a topic through an output port.
    Pub(ElementId, ElementId, ElementId),
    /// Component subscribes to a topic through an input port.
    Sub(ElementId, ElementId, ElementId),
    /// Topic published within an ECU through a flow from an in-port.
    If(ElementId, ElementId, ElementId),
    /// Topic protected by a cryptographic primitive.
    Pro(ElementId),
    /// Public element and one of its output ports.
    Public(ElementId, ElementId),
}

impl Atom {
    /// Predicate name as used in the textual dump format.
    pub fn pred(&self) -> &'static str {
        match self {
            Atom::Ecui(..) => "ecui",
            Atom::Ecuo(..) => "ecuo",
            Atom::Neti(..) => "neti",
            Atom::Neto(..) => "neto",
            Atom::Ch(..) => "ch",
            Atom::Cpi(..) => "cpi",
            Atom::Cpo(..) => "cpo",
            Atom::Alloc(..) => "alloc",
            Atom::Pub(..) => "pub",
            Atom::Sub(..) => "sub",
            Atom::If(..) => "if",
            Atom::Pro(..) => "pro",
            Atom::Public(..) => "public",
        }
    }

    /// Arguments in declaration order.
    pub fn args(&self) -> Vec<&ElementId> {
        match self {
            Atom::Pro(a) => vec![a],
            Atom::Ecui(a, b)
            | Atom::Ecuo(a, b)
            | Atom::Neti(a, b)
            | Atom::Neto(a, b)
            | Atom::Ch(a, b)
            | Atom::Cpi(a, b)
            | Atom::Cpo(a, b)
            | Atom::Alloc(a, b)
            | Atom::Public(a, b) => vec![a, b],
            Atom::Pub(a, b, c) | Atom::Sub(a, b, c) | Atom::If(a, b, c) => vec![a, b, c],
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.args().into_iter().map(String::as_str).collect();
        write!(f, "{}({})", self.pred(), args.join(","))
    }
}

/// The architecture as a set of ground atoms (set semantics, no duplicates).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactBase {
    pub atoms: BTreeSet<Atom>,
}

impl FactBase {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    /// Renders the fact base one atom per line, lexicographically sorted.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Port/element index (validation helper, shared with later stages)
// ---------------------------------------------------------------------------

/// What role a port id plays in the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PortRole {
    EcuIn,
    EcuOut,
    NetIn,
    NetOut,
    CompPub,
    CompSub,
    PublicOut,
}

/// Resolved port table: port id -> (owning element, role). Only well-formed
/// on models where every port id is unique.
pub(crate) fn port_table(model: &SystemModel) -> BTreeMap<&str, (&str, PortRole)> {
    let mut table = BTreeMap::new();
    for e in &model.ecus {
        for p in &e.in_ports {
            table.insert(p.as_str(), (e.id.as_str(), PortRole::EcuIn));
        }
        for p in &e.out_ports {
            table.insert(p.as_str(), (e.id.as_str(), PortRole::EcuOut));
        }
    }
    for n in &model.networks {
        for p in &n.in_ports {
            table.insert(p.as_str(), (n.id.as_str(), PortRole::NetIn));
        }
        for p in &n.out_ports {
            table.insert(p.as_str(), (n.id.as_str(), PortRole::NetOut));
        }
    }
    for c in &model.components {
        for tp in &c.pub_ports {
            table.insert(tp.port.as_str(), (c.id.as_str(), PortRole::CompPub));
        }
        for tp in &c.sub_ports {
            table.insert(tp.port.as_str(), (c.id.as_str(), PortRole::CompSub));
        }
    }
    for p in &model.publics {
        for po in &p.out_ports {
            table.insert(po.as_str(), (p.id.as_str(), PortRole::PublicOut));
        }
    }
    table
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Parses a model document without validating cross-references.
///
/// Fails on malformed JSON, unknown fields, wrong types, and unsupported
/// schema versions. Use [`validate`] to obtain the violation list, or
/// [`load_model`] for parse-and-validate in one step.
pub fn parse_model(document: &[u8]) -> Result<SystemModel, ModelError> {
    let model: SystemModel = serde_json::from_slice(document)?;
    if model.schema != SCHEMA_VERSION {
        return Err(ModelError::SchemaVersion(model.schema));
    }
    Ok(model)
}

/// Loads a model document and fails atomically on any schema error or
/// invariant violation (including dangling references).
pub fn load_model(document: &[u8]) -> Result<SystemModel, ModelError> {
    let model = parse_model(document)?;
    let violations = validate(&model);
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(ModelError::Invalid(violations))
    }
}

/// Checks every structural invariant and returns all violations, sorted by
/// (element id, rule name, message). An empty list means the model is
/// well-formed.
pub fn validate(model: &SystemModel) -> Vec<Violation> {
    let mut out = Vec::new();

    if model.schema != SCHEMA_VERSION {
        out.push(Violation::new(
            "",
            "schema-version",
            format!(
                "schema version {} is not supported (expected {})",
                model.schema, SCHEMA_VERSION
            ),
        ));
    }

    // Element namespace: topics, components, ECUs, networks, publics.
    let mut elements: BTreeMap<&str, &'static str> = BTreeMap::new();
    let element_decls = model
        .topics
        .iter()
        .map(|t| (t.id.as_str(), "topic"))
        .chain(
            model
                .components
                .iter()
                .map(|c| (c.id.as_str(), "component")),
        )
        .chain(model.ecus.iter().map(|e| (e.id.as_str(), "ecu")))
        .chain(model.networks.iter().map(|n| (n.id.as_str(), "network")))
        .chain(model.publics.iter().map(|p| (p.id.as_str(), "public")));
    for (id, kind) in element_decls {
        if id.is_empty() {
            out.push(Violation::new(
                id,
                "empty-id",
                format!("{kind} with empty id"),
            ));
        } else if let Some(prev) = elements.get(id) {
            out.push(Violation::new(
                id,
                "duplicate-element-id",
                format!("element id '{id}' declared as both {prev} and {kind}"),
            ));
        } else {
            elements.insert(id, kind);
        }
    }

    let topics: BTreeSet<&str> = model.topics.iter().map(|t| t.id.as_str()).collect();

    // Port namespace: every port id appears exactly once across all lists.
    let mut ports: BTreeMap<&str, (&str, PortRole)> = BTreeMap::new();
    let port_decls = model
        .ecus
        .iter()
        .flat_map(|e| {
            e.in_ports
                .iter()
                .map(move |p| (p.as_str(), e.id.as_str(), PortRole::EcuIn))
                .chain(
                    e.out_ports
                        .iter()
                        .map(move |p| (p.as_str(), e.id.as_str(), PortRole::EcuOut)),
                )
        })
        .chain(model.networks.iter().flat_map(|n| {
            n.in_ports
                .iter()
                .map(move |p| (p.as_str(), n.id.as_str(), PortRole::NetIn))
                .chain(
                    n.out_ports
                        .iter()
                        .map(move |p| (p.as_str(), n.id.as_str(), PortRole::NetOut)),
                )
        }))
        .chain(model.components.iter().flat_map(|c| {
            c.pub_ports
                .iter()
                .map(move |tp| (tp.port.as_str(), c.id.as_str(), PortRole::CompPub))
                .chain(
                    c.sub_ports
                        .iter()
                        .map(move |tp| (tp.port.as_str(), c.id.as_str(), PortRole::CompSub)),
                )
        }))
        .chain(model.publics.iter().flat_map(|p| {
            p.out_ports
                .iter()
                .map(move |po| (po.as_str(), p.id.as_str(), PortRole::PublicOut))
        }));
    for (port, owner, role) in port_decls {
        if port.is_empty() {
            out.push(Violation::new(
                owner,
                "empty-id",
                format!("port of '{owner}' has empty id"),
            ));
        } else if let Some((prev_owner, _)) = ports.get(port) {
            out.push(Violation::new(
                port,
                "duplicate-port-id",
                format!("port '{port}' declared by both '{prev_owner}' and '{owner}'"),
            ));
        } else {
            ports.insert(port, (owner, role));
        }
    }

    // Topic references on component ports.
    for c in &model.components {
        for tp in c.pub_ports.iter().chain(c.sub_ports.iter()) {
            if !topics.contains(tp.topic.as_str()) {
                out.push(Violation::new(
                    c.id.clone(),
                    "unknown-topic",
                    format!(
                        "component '{}' references undeclared topic '{}'",
                        c.id, tp.topic
                    ),
                ));
            }
        }
    }

    // Channel endpoints and shapes. Exactly five directed shapes are legal,
    // mirroring the flow rules: public-out -> net-in, ecu-in -> ecu-out within
    // one ECU, net-in -> net-out within one network, ecu-out -> net-in, and
    // net-out -> ecu-in.
    for chan in &model.channels {
        let from = ports.get(chan.from_port.as_str());
        let to = ports.get(chan.to_port.as_str());
        if from.is_none() {
            out.push(Violation::new(
                chan.from_port.clone(),
                "unknown-port",
                format!("channel references undeclared port '{}'", chan.from_port),
            ));
        }
        if to.is_none() {
            out.push(Violation::new(
                chan.to_port.clone(),
                "unknown-port",
                format!("channel references undeclared port '{}'", chan.to_port),
            ));
        }
        let (Some(&(from_owner, from_role)), Some(&(to_owner, to_role))) = (from, to) else {
            continue;
        };
        let ok = match (from_role, to_role) {
            (PortRole::PublicOut, PortRole::NetIn) => true,
            (PortRole::EcuIn, PortRole::EcuOut) => from_owner == to_owner,
            (PortRole::NetIn, PortRole::NetOut) => from_owner == to_owner,
            (PortRole::EcuOut, PortRole::NetIn) => true,
            (PortRole::NetOut, PortRole::EcuIn) => true,
            _ => false,
        };
        if !ok {
            out.push(Violation::new(
                chan.from_port.clone(),
                "channel-shape",
                format!(
                    "channel '{}' -> '{}' matches no transmission rule shape",
                    chan.from_port, chan.to_port
                ),
            ));
        }
    }

    // Allocation direction: component pub ports to ECU out-ports, sub ports to
    // ECU in-ports.
    for alloc in &model.allocations {
        let comp = ports.get(alloc.component_port.as_str());
        let plat = ports.get(alloc.platform_port.as_str());
        if comp.is_none() {
            out.push(Violation::new(
                alloc.component_port.clone(),
                "unknown-port",
                format!(
                    "allocation references undeclared component port '{}'",
                    alloc.component_port
                ),
            ));
        }
        if plat.is_none() {
            out.push(Violation::new(
                alloc.platform_port.clone(),
                "unknown-port",
                format!(
                    "allocation references undeclared platform port '{}'",
                    alloc.platform_port
                ),
            ));
        }
        let (Some(&(_, comp_role)), Some(&(_, plat_role))) = (comp, plat) else {
            continue;
        };
        let ok = matches!(
            (comp_role, plat_role),
            (PortRole::CompPub, PortRole::EcuOut) | (PortRole::CompSub, PortRole::EcuIn)
        );
        if !ok {
            out.push(Violation::new(
                alloc.component_port.clone(),
                "allocation-direction",
                format!(
                    "allocation '{}' -> '{}' must map a pub port to an ECU out-port or a sub port to an ECU in-port",
                    alloc.component_port, alloc.platform_port
                ),
            ));
        }
    }

    // Information flows: entry port is an in-port of the named ECU; topic exists.
    let ecu_ids: BTreeSet<&str> = model.ecus.iter().map(|e| e.id.as_str()).collect();
    for flow in &model.information_flows {
        if !ecu_ids.contains(flow.ecu.as_str()) {
            out.push(Violation::new(
                flow.ecu.clone(),
                "unknown-ecu",
                format!("information flow references undeclared ECU '{}'", flow.ecu),
            ));
        } else {
            let is_entry = matches!(
                ports.get(flow.entry_port.as_str()),
                Some(&(owner, PortRole::EcuIn)) if owner == flow.ecu
            );
            if !is_entry {
                out.push(Violation::new(
                    flow.entry_port.clone(),
                    "flow-entry-port",
                    format!(
                        "information flow entry port '{}' is not an in-port of ECU '{}'",
                        flow.entry_port, flow.ecu
                    ),
                ));
            }
        }
        if !topics.contains(flow.topic.as_str()) {
            out.push(Violation::new(
                flow.topic.clone(),
                "unknown-topic",
                format!(
                    "information flow references undeclared topic '{}'",
                    flow.topic
                ),
            ));
        }
    }

    // Exact duplicates collapse under set semantics in the fact base, which
    // would silently drop model features; report them instead.
    dedup_check(&model.channels, "duplicate-channel", &mut out, |c| {
        (
            c.from_port.clone(),
            format!("channel '{}' -> '{}'", c.from_port, c.to_port),
        )
    });
    dedup_check(&model.allocations, "duplicate-allocation", &mut out, |a| {
        (
            a.component_port.clone(),
            format!("allocation '{}' -> '{}'", a.component_port, a.platform_port),
        )
    });
    dedup_check(&model.information_flows, "duplicate-flow", &mut out, |f| {
        (
            f.entry_port.clone(),
            format!(
                "information flow ({}, {}, {})",
                f.ecu, f.entry_port, f.topic
            ),
        )
    });

    out.sort();
    out.dedup();
    out
}

fn dedup_check<T: Ord + Clone>(
    items: &[T],
    rule: &str,
    out: &mut Vec<Violation>,
    describe: impl Fn(&T) -> (ElementId, String),
) {
    let mut seen = BTreeSet::new();
    for item in items {
        if !seen.insert(item.clone()) {
            let (element, what) = describe(item);
            out.push(Violation::new(
                element,
                rule,
                format!("{what} declared twice"),
            ));
        }
    }
}

/// Compiles a validated model to its ground-fact base: exactly one atom per
/// model feature. Fails if the model has validation violations.
pub fn to_facts(model: &SystemModel) -> Result<FactBase, ModelError> {
    let violations = validate(model);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }

    let mut atoms = BTreeSet::new();
    for t in &model.topics {
        if t.protected {
            atoms.insert(Atom::Pro(t.id.clone()));
        }
    }
    for c in &model.components {
        for tp in &c.pub_ports {
            atoms.insert(Atom::Cpo(c.id.clone(), tp.port.clone()));
            atoms.insert(Atom::Pub(c.id.clone(), tp.port.clone(), tp.topic.clone()));
        }
        for tp in &c.sub_ports {
            atoms.insert(Atom::Cpi(c.id.clone(), tp.port.clone()));
            atoms.insert(Atom::Sub(c.id.clone(), tp.port.clone(), tp.topic.clone()));
        }
    }
    for e in &model.ecus {
        for p in &e.in_ports {
            atoms.insert(Atom::Ecui(e.id.clone(), p.clone()));
        }
        for p in &e.out_ports {
            atoms.insert(Atom::Ecuo(e.id.clone(), p.clone()));
        }
    }
    for n in &model.networks {
        for p in &n.in_ports {
            atoms.insert(Atom::Neti(n.id.clone(), p.clone()));
        }
        for p in &n.out_ports {
            atoms.insert(Atom::Neto(n.id.clone(), p.clone()));
        }
    }
    for p in &model.publics {
        for po in &p.out_ports {
            atoms.insert(Atom::Public(p.id.clone(), po.clone()));
        }
    }
    for chan in &model.channels {
        atoms.insert(Atom::Ch(chan.from_port.clone(), chan.to_port.clone()));
    }
    for alloc in &model.allocations {
        atoms.insert(Atom::Alloc(
            alloc.component_port.clone(),
            alloc.platform_port.clone(),
        ));
    }
    for flow in &model.information_flows {
        atoms.insert(Atom::If(
            flow.ecu.clone(),
            flow.entry_port.clone(),
            flow.topic.clone(),
        ));
    }

    Ok(FactBase { atoms })
}

/// Derives information flows as a conservative over-approximation: for every
/// ECU in-port that carries subscribed data (has at least one allocated sub
/// port) and every topic published by any component allocated to that ECU,
/// emits a flow. Intended as an opt-in substitute when explicit flows are
/// absent; reports flag its use.
pub fn derive_information_flows(model: &SystemModel) -> Result<Vec<InformationFlow>, ModelError> {
    let violations = validate(model);
    if !violations.is_empty() {
        return Err(ModelError::Invalid(violations));
    }

    let ports = port_table(model);
    // Component port -> owning component (sub and pub roles).
    let comp_of_port: BTreeMap<&str, &str> = ports
        .iter()
        .filter(|(_, (_, role))| matches!(role, PortRole::CompPub | PortRole::CompSub))
        .map(|(port, (owner, _))| (*port, *owner))
        .collect();
    // Topics published per component.
    let mut pubs_of_comp: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for c in &model.components {
        for tp in &c.pub_ports {
            pubs_of_comp
                .entry(c.id.as_str())
                .or_default()
                .insert(tp.topic.as_str());
        }
    }

    // ECU -> components allocated to it (via any port), and
    // ECU in-port -> whether some sub port is allocated there.
    let mut comps_on_ecu: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let mut carries_sub: BTreeSet<&str> = BTreeSet::new();
    for alloc in &model.allocations {
        let Some(&(ecu, plat_role)) = ports.get(alloc.platform_port.as_str()) else {
            continue;
        };
        let Some(&comp) = comp_of_port.get(alloc.component_port.as_str()) else {
            continue;
        };
        comps_on_ecu.entry(ecu).or_default().insert(comp);
        if plat_role == PortRole::EcuIn {
            carries_sub.insert(alloc.platform_port.as_str());
        }
    }

    let mut flows = BTreeSet::new();
    for e in &model.ecus {
        let Some(comps) = comps_on_ecu.get(e.id.as_str()) else {
            continue;
        };
        let published: BTreeSet<&str> = comps
            .iter()
            .filter_map(|c| pubs_of_comp.get(c))
            .flatten()
            .copied()
            .collect();
        if published.is_empty() {
            continue;
        }
        for p in &e.in_ports {
            if !carries_sub.contains(p.as_str()) {
                continue;
            }
            for tp in &published {
                flows.insert(InformationFlow {
                    ecu: e.id.clone(),
                    entry_port: p.clone(),
                    topic: (*tp).to_string(),
                });
            }
        }
    }

    Ok(flows.into_iter().collect())
}
