//! Threat analysis for publish/subscribe (service-oriented) vehicle architectures.
//!
//! The library takes an architecture model (topics, components, execution units,
//! networks, public elements, channels, allocations, information flows) plus a
//! safety model (hazards with S/E/C ratings, loss scenarios), and produces:
//!
//! - security artifacts derived from the safety artifacts: assets, damage
//!   scenarios with impact ratings, STRIDE threat scenarios ([`tara`]);
//! - the least model of a stratified intruder-rule system: write/read flows,
//!   outsider/insider reachability, and attack judgments ([`engine`]);
//! - concrete attack paths from intruder entry points to asset topics, with an
//!   independent brute-force oracle for testing ([`paths`]);
//! - per-entry grouping, common-prefix extraction, and countermeasure placement
//!   hints over the path set ([`analysis`]);
//! - a deterministic machine-readable report tying everything together with a
//!   traceability matrix back to the loss scenarios ([`report`], [`pipeline`]).
//!
//! All derived outputs are canonically ordered, so repeated runs on identical
//! inputs are byte-identical.

pub mod analysis;
pub mod engine;
pub mod gen;
pub mod model;
pub mod paths;
pub mod pipeline;
pub mod report;
pub mod safety;
pub mod tara;

pub use model::{
    derive_information_flows, load_model, to_facts, validate, ElementId, FactBase, SystemModel,
};
pub use safety::{compute_asil, load_safety, Asil, SafetyModel};
