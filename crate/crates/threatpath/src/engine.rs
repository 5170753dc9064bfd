//! The intruder-model inference engine.
//!
//! Evaluates a fixed, stratified rule set over the ground facts of a system
//! model and returns the least model: derived write/read flows between ports,
//! the set of ports the intruder can influence, and the set of attacked
//! topics. Every derived atom carries the rule that produced it and the
//! premises it was produced from, so a result can be replayed and audited.
//!
//! Two intruder models are supported:
//!
//! * **Outsider** — starts at the out-ports of public elements and spreads
//!   along channels through networks and execution units; attacks are
//!   established through in-ECU information flows.
//! * **Insider** — controls some logical component, so every publisher
//!   out-port is a potential start; unprotected topics with a reachable
//!   publisher and subscriber are attacked.
//!
//! Strata: input atoms (stratum 0), `wrt`/`rd` (stratum 1, non-recursive),
//! `reach` (stratum 2, recursive), `attack` (stratum 3). The only negated
//! premise, `not pro(t)`, refers to stratum 0, so negation is stratified and
//! the least model is unique.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{Atom, ElementId, FactBase};

// ---------------------------------------------------------------------------
// Intruder profiles and rule names
// ---------------------------------------------------------------------------

/// Which intruder model a run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Intruder {
    Outsider,
    Insider,
}

impl fmt::Display for Intruder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intruder::Outsider => f.write_str("outsider"),
            Intruder::Insider => f.write_str("insider"),
        }
    }
}

/// Rule names, used in derivations and the debug dump.
pub mod rules {
    /// wrt(eo,ni): an allocated publisher's ECU out-port writes to a
    /// channel-connected network in-port.
    pub const WRT_ECU_TO_NET: &str = "wrt-ecu-to-net";
    /// wrt(ei,eo): an ECU-internal channel from in-port to out-port.
    pub const WRT_INTRA_ECU: &str = "wrt-intra-ecu";
    /// wrt(ni,no): a network-internal channel from in-port to out-port.
    pub const WRT_INTRA_NET: &str = "wrt-intra-net";
    /// wrt(po,ni): a public element's out-port writes to a network in-port.
    pub const WRT_PUBLIC_TO_NET: &str = "wrt-public-to-net";
    /// rd(ci,co): a subscriber in-port reads any publisher out-port on the
    /// same topic.
    pub const RD_TOPIC: &str = "rd-topic";
    /// rd(ei,no): an allocated subscriber's ECU in-port reads from a
    /// channel-connected network out-port.
    pub const RD_NET_TO_ECU: &str = "rd-net-to-ecu";
    /// reach(po): a public element's out-port is an outsider entry.
    pub const REACH_PUBLIC_ENTRY: &str = "reach-public-entry";
    /// reach(co): every publisher out-port is an insider start.
    pub const REACH_PUBLISHER: &str = "reach-publisher";
    /// reach(p2): influence propagates along a write flow.
    pub const REACH_VIA_WRITE: &str = "reach-via-write";
    /// reach(p2): influence propagates backward along a read flow.
    pub const REACH_VIA_READ: &str = "reach-via-read";
    /// reach(ci): a component with a reached out-port has its reading
    /// in-ports reached (the insider controls the component's environment).
    pub const REACH_COMPONENT_FEEDBACK: &str = "reach-component-feedback";
    /// attack(tp): a reached ECU entry port carries the topic.
    pub const ATTACK_VIA_ENTRY: &str = "attack-via-entry";
    /// attack(tp): an unprotected topic whose publisher out-port and
    /// subscriber in-port are both reached.
    pub const ATTACK_VIA_PUBSUB: &str = "attack-via-pubsub";
}

/// Rules enabled for the outsider intruder.
pub const OUTSIDER_RULES: &[&str] = &[
    rules::WRT_ECU_TO_NET,
    rules::WRT_INTRA_ECU,
    rules::WRT_INTRA_NET,
    rules::WRT_PUBLIC_TO_NET,
    rules::RD_TOPIC,
    rules::RD_NET_TO_ECU,
    rules::REACH_PUBLIC_ENTRY,
    rules::REACH_VIA_WRITE,
    rules::REACH_VIA_READ,
    rules::ATTACK_VIA_ENTRY,
];

/// Rules enabled for the insider intruder.
pub const INSIDER_RULES: &[&str] = &[
    rules::RD_TOPIC,
    rules::REACH_PUBLISHER,
    rules::REACH_COMPONENT_FEEDBACK,
    rules::ATTACK_VIA_PUBSUB,
];

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

/// Provenance of one derived atom: the rule and the premises it fired on.
/// Premises are canonical atom text ("pub(c,o,t)", "reach(p)"); the single
/// negative premise form is rendered "not pro(t)".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: &'static str,
    pub premises: Vec<String>,
}

/// Derived write/read flows between ports, keyed by the port pair.
/// `wrt(a,b)` means data at `a` is propagated to `b`; `rd(a,b)` means `a`
/// reads data from `b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowSet {
    pub wrt: BTreeMap<(ElementId, ElementId), Derivation>,
    pub rd: BTreeMap<(ElementId, ElementId), Derivation>,
}

/// The least model of one intruder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachRun {
    pub intruder: Intruder,
    pub flows: FlowSet,
    /// Ports the intruder can influence, with the first derivation found.
    pub reach: BTreeMap<ElementId, Derivation>,
    /// Topics the intruder can attack.
    pub attacks: BTreeMap<ElementId, Derivation>,
    /// Fixpoint rounds until the reach set stabilized.
    pub rounds: usize,
}

fn wrt_text(a: &str, b: &str) -> String {
    format!("wrt({a},{b})")
}

fn rd_text(a: &str, b: &str) -> String {
    format!("rd({a},{b})")
}

fn reach_text(p: &str) -> String {
    format!("reach({p})")
}

fn attack_text(t: &str) -> String {
    format!("attack({t})")
}

// ---------------------------------------------------------------------------
// Indexed view over the fact base
// ---------------------------------------------------------------------------

/// Per-predicate buckets and lookup indices. All vectors preserve the sorted
/// order of the underlying fact base, which makes evaluation deterministic.
struct View<'a> {
    ch: Vec<(&'a str, &'a str)>,
    cpi: Vec<(&'a str, &'a str)>,
    cpo: Vec<(&'a str, &'a str)>,
    pubs: Vec<(&'a str, &'a str, &'a str)>,
    subs: Vec<(&'a str, &'a str, &'a str)>,
    iff: Vec<(&'a str, &'a str, &'a str)>,
    public: Vec<(&'a str, &'a str)>,
    pro: BTreeSet<&'a str>,
    alloc: BTreeMap<&'a str, Vec<&'a str>>,
    ecu_of_in: BTreeMap<&'a str, &'a str>,
    ecu_of_out: BTreeMap<&'a str, &'a str>,
    net_of_in: BTreeMap<&'a str, &'a str>,
    net_of_out: BTreeMap<&'a str, &'a str>,
    public_of_port: BTreeMap<&'a str, &'a str>,
    ch_from: BTreeMap<&'a str, Vec<&'a str>>,
    ch_to: BTreeMap<&'a str, Vec<&'a str>>,
    pubs_by_topic: BTreeMap<&'a str, Vec<(&'a str, &'a str)>>,
    subs_by_comp: BTreeMap<&'a str, Vec<(&'a str, &'a str)>>,
    comp_topic_of_pub_port: BTreeMap<&'a str, (&'a str, &'a str)>,
}

impl<'a> View<'a> {
    fn build(facts: &'a FactBase) -> Self {
        let mut v = View {
            ch: Vec::new(),
            cpi: Vec::new(),
            cpo: Vec::new(),
            pubs: Vec::new(),
            subs: Vec::new(),
            iff: Vec::new(),
            public: Vec::new(),
            pro: BTreeSet::new(),
            alloc: BTreeMap::new(),
            ecu_of_in: BTreeMap::new(),
            ecu_of_out: BTreeMap::new(),
            net_of_in: BTreeMap::new(),
            net_of_out: BTreeMap::new(),
            public_of_port: BTreeMap::new(),
            ch_from: BTreeMap::new(),
            ch_to: BTreeMap::new(),
            pubs_by_topic: BTreeMap::new(),
            subs_by_comp: BTreeMap::new(),
            comp_topic_of_pub_port: BTreeMap::new(),
        };
        for atom in &facts.atoms {
            match atom {
                Atom::Ecui(e, p) => {
                    v.ecu_of_in.insert(p, e);
                }
                Atom::Ecuo(e, p) => {
                    v.ecu_of_out.insert(p, e);
                }
                Atom::Neti(n, p) => {
                    v.net_of_in.insert(p, n);
                }
                Atom::Neto(n, p) => {
                    v.net_of_out.insert(p, n);
                }
                Atom::Ch(f, t) => {
                    v.ch.push((f, t));
                    v.ch_from.entry(f).or_default().push(t);
                    v.ch_to.entry(t).or_default().push(f);
                }
                Atom::Cpi(c, p) => v.cpi.push((c, p)),
                Atom::Cpo(c, p) => v.cpo.push((c, p)),
                Atom::Alloc(cp, pp) => v.alloc.entry(cp).or_default().push(pp),
                Atom::Pub(c, co, tp) => {
                    v.pubs.push((c, co, tp));
                    v.pubs_by_topic.entry(tp).or_default().push((c, co));
                    v.comp_topic_of_pub_port.insert(co, (c, tp));
                }
                Atom::Sub(c, ci, tp) => {
                    v.subs.push((c, ci, tp));
                    v.subs_by_comp.entry(c).or_default().push((ci, tp));
                }
                Atom::If(e, p, tp) => v.iff.push((e, p, tp)),
                Atom::Pro(tp) => {
                    v.pro.insert(tp);
                }
                Atom::Public(el, po) => {
                    v.public.push((el, po));
                    v.public_of_port.insert(po, el);
                }
            }
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Stratum 1: write/read flows
// ---------------------------------------------------------------------------

fn derive_flows(view: &View<'_>, intruder: Intruder) -> FlowSet {
    let mut flows = FlowSet::default();

    if intruder == Intruder::Outsider {
        // wrt-ecu-to-net: cpo(c,co), alloc(co,eo), ecuo(ecu,eo), neti(net,ni),
        // ch(eo,ni) => wrt(eo,ni).
        for (c, co) in &view.cpo {
            let Some(platform_ports) = view.alloc.get(co) else {
                continue;
            };
            for eo in platform_ports {
                let Some(ecu) = view.ecu_of_out.get(eo) else {
                    continue;
                };
                for ni in view.ch_from.get(eo).into_iter().flatten() {
                    let Some(net) = view.net_of_in.get(ni) else {
                        continue;
                    };
                    flows
                        .wrt
                        .entry((eo.to_string(), ni.to_string()))
                        .or_insert_with(|| Derivation {
                            rule: rules::WRT_ECU_TO_NET,
                            premises: vec![
                                format!("cpo({c},{co})"),
                                format!("alloc({co},{eo})"),
                                format!("ecuo({ecu},{eo})"),
                                format!("neti({net},{ni})"),
                                format!("ch({eo},{ni})"),
                            ],
                        });
                }
            }
        }

        // wrt-intra-ecu: ecui(ecu,ei), ecuo(ecu,eo), ch(ei,eo) => wrt(ei,eo).
        // wrt-intra-net: neti(net,ni), neto(net,no), ch(ni,no) => wrt(ni,no).
        // wrt-public-to-net: public(el,po), neti(net,ni), ch(po,ni) => wrt(po,ni).
        for (from, to) in &view.ch {
            if let (Some(e1), Some(e2)) = (view.ecu_of_in.get(from), view.ecu_of_out.get(to)) {
                if e1 == e2 {
                    flows
                        .wrt
                        .entry((from.to_string(), to.to_string()))
                        .or_insert_with(|| Derivation {
                            rule: rules::WRT_INTRA_ECU,
                            premises: vec![
                                format!("ecui({e1},{from})"),
                                format!("ecuo({e1},{to})"),
                                format!("ch({from},{to})"),
                            ],
                        });
                }
            }
            if let (Some(n1), Some(n2)) = (view.net_of_in.get(from), view.net_of_out.get(to)) {
                if n1 == n2 {
                    flows
                        .wrt
                        .entry((from.to_string(), to.to_string()))
                        .or_insert_with(|| Derivation {
                            rule: rules::WRT_INTRA_NET,
                            premises: vec![
                                format!("neti({n1},{from})"),
                                format!("neto({n1},{to})"),
                                format!("ch({from},{to})"),
                            ],
                        });
                }
            }
            if let (Some(el), Some(net)) = (view.public_of_port.get(from), view.net_of_in.get(to)) {
                flows
                    .wrt
                    .entry((from.to_string(), to.to_string()))
                    .or_insert_with(|| Derivation {
                        rule: rules::WRT_PUBLIC_TO_NET,
                        premises: vec![
                            format!("public({el},{from})"),
                            format!("neti({net},{to})"),
                            format!("ch({from},{to})"),
                        ],
                    });
            }
        }

        // rd-net-to-ecu: cpi(c,ci), alloc(ci,ei), ecui(ecu,ei), neto(net,no),
        // ch(no,ei) => rd(ei,no).
        for (c, ci) in &view.cpi {
            let Some(platform_ports) = view.alloc.get(ci) else {
                continue;
            };
            for ei in platform_ports {
                let Some(ecu) = view.ecu_of_in.get(ei) else {
                    continue;
                };
                for no in view.ch_to.get(ei).into_iter().flatten() {
                    let Some(net) = view.net_of_out.get(no) else {
                        continue;
                    };
                    flows
                        .rd
                        .entry((ei.to_string(), no.to_string()))
                        .or_insert_with(|| Derivation {
                            rule: rules::RD_NET_TO_ECU,
                            premises: vec![
                                format!("cpi({c},{ci})"),
                                format!("alloc({ci},{ei})"),
                                format!("ecui({ecu},{ei})"),
                                format!("neto({net},{no})"),
                                format!("ch({no},{ei})"),
                            ],
                        });
                }
            }
        }
    }

    // rd-topic (both intruders): sub(c1,ci,tp), pub(c2,co,tp) => rd(ci,co).
    for (c1, ci, tp) in &view.subs {
        for (c2, co) in view.pubs_by_topic.get(tp).into_iter().flatten() {
            flows
                .rd
                .entry((ci.to_string(), co.to_string()))
                .or_insert_with(|| Derivation {
                    rule: rules::RD_TOPIC,
                    premises: vec![
                        format!("sub({c1},{ci},{tp})"),
                        format!("pub({c2},{co},{tp})"),
                    ],
                });
        }
    }

    flows
}

// ---------------------------------------------------------------------------
// Stratum 2: reach fixpoint
// ---------------------------------------------------------------------------

fn compute_reach(
    view: &View<'_>,
    flows: &FlowSet,
    intruder: Intruder,
) -> (BTreeMap<ElementId, Derivation>, usize) {
    let mut reach: BTreeMap<ElementId, Derivation> = BTreeMap::new();
    let mut frontier: Vec<ElementId> = Vec::new();

    // Base stratum-2 facts.
    match intruder {
        Intruder::Outsider => {
            for (el, po) in &view.public {
                if !reach.contains_key(*po) {
                    reach.insert(
                        po.to_string(),
                        Derivation {
                            rule: rules::REACH_PUBLIC_ENTRY,
                            premises: vec![format!("public({el},{po})")],
                        },
                    );
                    frontier.push(po.to_string());
                }
            }
        }
        Intruder::Insider => {
            for (c, co, tp) in &view.pubs {
                if !reach.contains_key(*co) {
                    reach.insert(
                        co.to_string(),
                        Derivation {
                            rule: rules::REACH_PUBLISHER,
                            premises: vec![format!("pub({c},{co},{tp})")],
                        },
                    );
                    frontier.push(co.to_string());
                }
            }
        }
    }

    // Successor indices for the semi-naive step: each recursive rule has
    // exactly one reach premise, so newly reached ports drive all new work.
    let mut wrt_from: BTreeMap<&str, Vec<&(ElementId, ElementId)>> = BTreeMap::new();
    for key in flows.wrt.keys() {
        wrt_from.entry(key.0.as_str()).or_default().push(key);
    }
    let mut rd_readers_of: BTreeMap<&str, Vec<&(ElementId, ElementId)>> = BTreeMap::new();
    for key in flows.rd.keys() {
        rd_readers_of.entry(key.1.as_str()).or_default().push(key);
    }

    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        let mut next: BTreeMap<ElementId, Derivation> = BTreeMap::new();
        for p in &frontier {
            match intruder {
                Intruder::Outsider => {
                    // reach-via-write: wrt(p1,p2), reach(p1) => reach(p2).
                    for (p1, p2) in wrt_from.get(p.as_str()).into_iter().flatten().copied() {
                        if !reach.contains_key(p2) && !next.contains_key(p2) {
                            next.insert(
                                p2.clone(),
                                Derivation {
                                    rule: rules::REACH_VIA_WRITE,
                                    premises: vec![wrt_text(p1, p2), reach_text(p1)],
                                },
                            );
                        }
                    }
                    // reach-via-read: rd(p2,p1), reach(p1) => reach(p2).
                    for (p2, p1) in rd_readers_of.get(p.as_str()).into_iter().flatten().copied() {
                        if !reach.contains_key(p2) && !next.contains_key(p2) {
                            next.insert(
                                p2.clone(),
                                Derivation {
                                    rule: rules::REACH_VIA_READ,
                                    premises: vec![rd_text(p2, p1), reach_text(p1)],
                                },
                            );
                        }
                    }
                }
                Intruder::Insider => {
                    // reach-component-feedback: pub(c,co,tp), sub(c,ci,tp1),
                    // pub(c1,co1,tp1), rd(ci,co1), reach(co) => reach(ci).
                    let Some((c, tp)) = view.comp_topic_of_pub_port.get(p.as_str()) else {
                        continue;
                    };
                    for (ci, tp1) in view.subs_by_comp.get(c).into_iter().flatten() {
                        if reach.contains_key(*ci) || next.contains_key(*ci) {
                            continue;
                        }
                        let Some((c1, co1)) =
                            view.pubs_by_topic.get(tp1).and_then(|pubs| pubs.first())
                        else {
                            continue;
                        };
                        if !flows.rd.contains_key(&(ci.to_string(), co1.to_string())) {
                            continue;
                        }
                        next.insert(
                            ci.to_string(),
                            Derivation {
                                rule: rules::REACH_COMPONENT_FEEDBACK,
                                premises: vec![
                                    format!("pub({c},{p},{tp})"),
                                    format!("sub({c},{ci},{tp1})"),
                                    format!("pub({c1},{co1},{tp1})"),
                                    rd_text(ci, co1),
                                    reach_text(p),
                                ],
                            },
                        );
                    }
                }
            }
        }
        frontier = next.keys().cloned().collect();
        reach.extend(next);
    }

    (reach, rounds)
}

// ---------------------------------------------------------------------------
// Stratum 3: attacks
// ---------------------------------------------------------------------------

fn compute_attacks(
    view: &View<'_>,
    reach: &BTreeMap<ElementId, Derivation>,
    intruder: Intruder,
) -> BTreeMap<ElementId, Derivation> {
    let mut attacks: BTreeMap<ElementId, Derivation> = BTreeMap::new();
    match intruder {
        Intruder::Outsider => {
            // attack-via-entry: if(ecu,p,tp), reach(p) => attack(tp).
            for (ecu, p, tp) in &view.iff {
                if reach.contains_key(*p) && !attacks.contains_key(*tp) {
                    attacks.insert(
                        tp.to_string(),
                        Derivation {
                            rule: rules::ATTACK_VIA_ENTRY,
                            premises: vec![format!("if({ecu},{p},{tp})"), reach_text(p)],
                        },
                    );
                }
            }
        }
        Intruder::Insider => {
            // attack-via-pubsub: sub(c1,ci,tp), pub(c,co,tp), not pro(tp),
            // reach(ci), reach(co) => attack(tp).
            for (c1, ci, tp) in &view.subs {
                if attacks.contains_key(*tp) || view.pro.contains(tp) || !reach.contains_key(*ci) {
                    continue;
                }
                for (c, co) in view.pubs_by_topic.get(tp).into_iter().flatten() {
                    if reach.contains_key(*co) {
                        attacks.insert(
                            tp.to_string(),
                            Derivation {
                                rule: rules::ATTACK_VIA_PUBSUB,
                                premises: vec![
                                    format!("sub({c1},{ci},{tp})"),
                                    format!("pub({c},{co},{tp})"),
                                    format!("not pro({tp})"),
                                    reach_text(ci),
                                    reach_text(co),
                                ],
                            },
                        );
                        break;
                    }
                }
            }
        }
    }
    attacks
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Evaluates the full rule set for one intruder over the given facts and
/// returns the least model with per-atom provenance. Deterministic: equal
/// inputs produce equal results, including derivation choices.
pub fn run(facts: &FactBase, intruder: Intruder) -> ReachRun {
    let view = View::build(facts);
    let flows = derive_flows(&view, intruder);
    let (reach, rounds) = compute_reach(&view, &flows, intruder);
    let attacks = compute_attacks(&view, &reach, intruder);
    ReachRun {
        intruder,
        flows,
        reach,
        attacks,
        rounds,
    }
}

impl ReachRun {
    /// Renders every derived atom as one line, lexicographically sorted:
    /// `atom <- rule[premise, premise, ...]`.
    pub fn debug_dump(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        for ((a, b), d) in &self.flows.wrt {
            lines.push(format!(
                "{} <- {}[{}]",
                wrt_text(a, b),
                d.rule,
                d.premises.join(", ")
            ));
        }
        for ((a, b), d) in &self.flows.rd {
            lines.push(format!(
                "{} <- {}[{}]",
                rd_text(a, b),
                d.rule,
                d.premises.join(", ")
            ));
        }
        for (p, d) in &self.reach {
            lines.push(format!(
                "{} <- {}[{}]",
                reach_text(p),
                d.rule,
                d.premises.join(", ")
            ));
        }
        for (t, d) in &self.attacks {
            lines.push(format!(
                "{} <- {}[{}]",
                attack_text(t),
                d.rule,
                d.premises.join(", ")
            ));
        }
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    /// Replays every derivation against the inputs and the run itself:
    /// each premise must be an input atom, a derived atom of this run, or a
    /// `not pro(t)` premise with `pro(t)` absent from the inputs. Returns the
    /// first inconsistency found.
    pub fn replay_check(&self, facts: &FactBase) -> Result<(), String> {
        let inputs: BTreeSet<String> = facts.atoms.iter().map(|a| a.to_string()).collect();
        let mut derived: BTreeSet<String> = BTreeSet::new();
        derived.extend(self.flows.wrt.keys().map(|(a, b)| wrt_text(a, b)));
        derived.extend(self.flows.rd.keys().map(|(a, b)| rd_text(a, b)));
        derived.extend(self.reach.keys().map(|p| reach_text(p)));
        derived.extend(self.attacks.keys().map(|t| attack_text(t)));

        let enabled: &[&str] = match self.intruder {
            Intruder::Outsider => OUTSIDER_RULES,
            Intruder::Insider => INSIDER_RULES,
        };
        let all: Vec<(&str, &Derivation)> = self
            .flows
            .wrt
            .values()
            .chain(self.flows.rd.values())
            .chain(self.reach.values())
            .chain(self.attacks.values())
            .map(|d| (d.rule, d))
            .collect();
        for (rule, derivation) in all {
            if !enabled.contains(&rule) {
                return Err(format!(
                    "rule '{rule}' is not enabled for {}",
                    self.intruder
                ));
            }
            for premise in &derivation.premises {
                if let Some(negated) = premise.strip_prefix("not ") {
                    if inputs.contains(negated) {
                        return Err(format!("negative premise '{premise}' holds in the input"));
                    }
                } else if !inputs.contains(premise) && !derived.contains(premise) {
                    return Err(format!("premise '{premise}' is neither input nor derived"));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Naive reference evaluator
// ---------------------------------------------------------------------------

/// Result of the reference evaluator: plain sets, no provenance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NaiveResult {
    pub wrt: BTreeSet<(ElementId, ElementId)>,
    pub rd: BTreeSet<(ElementId, ElementId)>,
    pub reach: BTreeSet<ElementId>,
    pub attacks: BTreeSet<ElementId>,
}

/// Independent reference implementation: re-evaluates every rule by
/// exhaustive scans over the raw fact vectors until nothing changes. Shares
/// no indexing or evaluation machinery with [`run`]; used as the oracle in
/// self-checks and randomized equivalence tests.
pub fn naive_run(facts: &FactBase, intruder: Intruder) -> NaiveResult {
    let mut ecui: Vec<(String, String)> = Vec::new();
    let mut ecuo: Vec<(String, String)> = Vec::new();
    let mut neti: Vec<(String, String)> = Vec::new();
    let mut neto: Vec<(String, String)> = Vec::new();
    let mut ch: Vec<(String, String)> = Vec::new();
    let mut cpi: Vec<(String, String)> = Vec::new();
    let mut cpo: Vec<(String, String)> = Vec::new();
    let mut alloc: Vec<(String, String)> = Vec::new();
    let mut pubs: Vec<(String, String, String)> = Vec::new();
    let mut subs: Vec<(String, String, String)> = Vec::new();
    let mut iff: Vec<(String, String, String)> = Vec::new();
    let mut pro: Vec<String> = Vec::new();
    let mut public: Vec<(String, String)> = Vec::new();
    for atom in &facts.atoms {
        match atom.clone() {
            Atom::Ecui(a, b) => ecui.push((a, b)),
            Atom::Ecuo(a, b) => ecuo.push((a, b)),
            Atom::Neti(a, b) => neti.push((a, b)),
            Atom::Neto(a, b) => neto.push((a, b)),
            Atom::Ch(a, b) => ch.push((a, b)),
            Atom::Cpi(a, b) => cpi.push((a, b)),
            Atom::Cpo(a, b) => cpo.push((a, b)),
            Atom::Alloc(a, b) => alloc.push((a, b)),
            Atom::Pub(a, b, c) => pubs.push((a, b, c)),
            Atom::Sub(a, b, c) => subs.push((a, b, c)),
            Atom::If(a, b, c) => iff.push((a, b, c)),
            Atom::Pro(a) => pro.push(a),
            Atom::Public(a, b) => public.push((a, b)),
        }
    }
    let outsider = intruder == Intruder::Outsider;
    let insider = intruder == Intruder::Insider;

    let mut r = NaiveResult::default();
    loop {
        let before = (r.wrt.len(), r.rd.len(), r.reach.len(), r.attacks.len());
        let mut add_reach: Vec<String> = Vec::new();

        if outsider {
            for (_c, co) in &cpo {
                for (acp, app) in &alloc {
                    if acp != co {
                        continue;
                    }
                    for (_ecu, eo) in &ecuo {
                        if eo != app {
                            continue;
                        }
                        for (_net, ni) in &neti {
                            for (f, t) in &ch {
                                if f == eo && t == ni {
                                    r.wrt.insert((eo.clone(), ni.clone()));
                                }
                            }
                        }
                    }
                }
            }
            for (e1, ei) in &ecui {
                for (e2, eo) in &ecuo {
                    if e1 != e2 {
                        continue;
                    }
                    for (f, t) in &ch {
                        if f == ei && t == eo {
                            r.wrt.insert((ei.clone(), eo.clone()));
                        }
                    }
                }
            }
            for (n1, ni) in &neti {
                for (n2, no) in &neto {
                    if n1 != n2 {
                        continue;
                    }
                    for (f, t) in &ch {
                        if f == ni && t == no {
                            r.wrt.insert((ni.clone(), no.clone()));
                        }
                    }
                }
            }
            for (_el, po) in &public {
                for (_net, ni) in &neti {
                    for (f, t) in &ch {
                        if f == po && t == ni {
                            r.wrt.insert((po.clone(), ni.clone()));
                        }
                    }
                }
            }
            for (_c, ci) in &cpi {
                for (acp, app) in &alloc {
                    if acp != ci {
                        continue;
                    }
                    for (_ecu, ei) in &ecui {
                        if ei != app {
                            continue;
                        }
                        for (_net, no) in &neto {
                            for (f, t) in &ch {
                                if f == no && t == ei {
                                    r.rd.insert((ei.clone(), no.clone()));
                                }
                            }
                        }
                    }
                }
            }
        }
        for (_c1, ci, tp) in &subs {
            for (_c2, co, tp2) in &pubs {
                if tp == tp2 {
                    r.rd.insert((ci.clone(), co.clone()));
                }
            }
        }

        if outsider {
            for (_el, po) in &public {
                add_reach.push(po.clone());
            }
            for (p1, p2) in &r.wrt {
                if r.reach.contains(p1) {
                    add_reach.push(p2.clone());
                }
            }
            for (p2, p1) in &r.rd {
                if r.reach.contains(p1) {
                    add_reach.push(p2.clone());
                }
            }
        }
        if insider {
            for (_c, co, _tp) in &pubs {
                add_reach.push(co.clone());
            }
            for (c, co, _tp) in &pubs {
                if !r.reach.contains(co) {
                    continue;
                }
                for (c2, ci, tp1) in &subs {
                    if c2 != c {
                        continue;
                    }
                    for (_c1, co1, tp2) in &pubs {
                        if tp2 == tp1 && r.rd.contains(&(ci.clone(), co1.clone())) {
                            add_reach.push(ci.clone());
                        }
                    }
                }
            }
        }
        r.reach.extend(add_reach);

        if outsider {
            for (_ecu, p, tp) in &iff {
                if r.reach.contains(p) {
                    r.attacks.insert(tp.clone());
                }
            }
        }
        if insider {
            for (_c1, ci, tp) in &subs {
                if pro.contains(tp) || !r.reach.contains(ci) {
                    continue;
                }
                for (_c, co, tp2) in &pubs {
                    if tp2 == tp && r.reach.contains(co) {
                        r.attacks.insert(tp.clone());
                    }
                }
            }
        }

        if (r.wrt.len(), r.rd.len(), r.reach.len(), r.attacks.len()) == before {
            break;
        }
    }
    r
}

/// Compares an engine run against the reference evaluator, returning a
/// description of the first difference.
pub fn self_check(facts: &FactBase, run: &ReachRun) -> Result<(), String> {
    let naive = naive_run(facts, run.intruder);
    let engine_wrt: BTreeSet<_> = run.flows.wrt.keys().cloned().collect();
    if engine_wrt != naive.wrt {
        return Err(format!(
            "wrt sets differ ({} engine vs {} reference)",
            engine_wrt.len(),
            naive.wrt.len()
        ));
    }
    let engine_rd: BTreeSet<_> = run.flows.rd.keys().cloned().collect();
    if engine_rd != naive.rd {
        return Err(format!(
            "rd sets differ ({} engine vs {} reference)",
            engine_rd.len(),
            naive.rd.len()
        ));
    }
    let engine_reach: BTreeSet<_> = run.reach.keys().cloned().collect();
    if engine_reach != naive.reach {
        return Err(format!(
            "reach sets differ ({} engine vs {} reference)",
            engine_reach.len(),
            naive.reach.len()
        ));
    }
    let engine_attacks: BTreeSet<_> = run.attacks.keys().cloned().collect();
    if engine_attacks != naive.attacks {
        return Err(format!(
            "attack sets differ ({} engine vs {} reference)",
            engine_attacks.len(),
            naive.attacks.len()
        ));
    }
    Ok(())
}
