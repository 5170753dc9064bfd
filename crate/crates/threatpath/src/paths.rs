//! Attack-path enumeration on top of the engine's least model, and an
//! independent exhaustive oracle used to cross-check it.
//!
//! A path always targets an asset topic: either the attacked topic itself or
//! the nearest asset it can influence through the publish/subscribe dataflow.
//! Outsider paths are port walks from a public element to the ECU entry port
//! carrying the attacked topic; insider paths are publisher/subscriber
//! component pairs extended by the component chain that realizes the asset.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{naive_run, Intruder, ReachRun};
use crate::model::{Atom, ElementId, FactBase};

// ---------------------------------------------------------------------------
// Attack paths
// ---------------------------------------------------------------------------

/// One attack path. Identity is `(intruder, entry, steps, affected_topic)`;
/// the remaining fields are derived projections kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackPath {
    /// Which intruder model produced the path.
    pub intruder: Intruder,
    /// Where the attack starts: a public element (outsider) or the
    /// compromised publishing component (insider).
    pub entry: ElementId,
    /// Architecture elements traversed, consecutive duplicates collapsed.
    pub elements: Vec<ElementId>,
    /// The attacked topic.
    pub affected_topic: ElementId,
    /// Port-level witness: the full port walk (outsider) or the reached
    /// publisher/subscriber port pair (insider).
    pub steps: Vec<ElementId>,
    /// The asset topic the attack ultimately degrades.
    pub asset_topic: ElementId,
}

impl AttackPath {
    fn sort_key(
        &self,
    ) -> (
        Intruder,
        &ElementId,
        &Vec<ElementId>,
        &ElementId,
        &Vec<ElementId>,
        &ElementId,
    ) {
        (
            self.intruder,
            &self.entry,
            &self.elements,
            &self.affected_topic,
            &self.steps,
            &self.asset_topic,
        )
    }
}

/// Canonical order: (intruder, entry, elements, affected_topic, steps,
/// asset_topic). Enumeration results are always sorted by this order.
impl Ord for AttackPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for AttackPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// Topic influence relation
// ---------------------------------------------------------------------------

/// The one-step topic influence relation: `t1` influences `t2` when some
/// component subscribes `t1` and publishes `t2`. Queries close it reflexively
/// and transitively.
#[derive(Debug, Clone, Default)]
pub struct InfluenceRelation {
    step: BTreeMap<ElementId, BTreeSet<ElementId>>,
}

impl InfluenceRelation {
    pub fn from_facts(facts: &FactBase) -> Self {
        let mut subs_by_comp: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        let mut pubs_by_comp: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for atom in &facts.atoms {
            match atom {
                Atom::Sub(c, _, tp) => {
                    subs_by_comp.entry(c).or_default().insert(tp);
                }
                Atom::Pub(c, _, tp) => {
                    pubs_by_comp.entry(c).or_default().insert(tp);
                }
                _ => {}
            }
        }
        let mut step: BTreeMap<ElementId, BTreeSet<ElementId>> = BTreeMap::new();
        for (c, consumed) in &subs_by_comp {
            let Some(published) = pubs_by_comp.get(c) else {
                continue;
            };
            for t1 in consumed {
                for t2 in published {
                    step.entry(t1.to_string())
                        .or_default()
                        .insert(t2.to_string());
                }
            }
        }
        InfluenceRelation { step }
    }

    /// Reflexive-transitive influence query.
    pub fn influences(&self, from: &str, to: &str) -> bool {
        if from == to {
            return true;
        }
        let mut visited: BTreeSet<&str> = BTreeSet::new();
        let mut frontier: Vec<&str> = vec![from];
        while let Some(t) = frontier.pop() {
            for next in self.step.get(t).into_iter().flatten() {
                if next == to {
                    return true;
                }
                if visited.insert(next) {
                    frontier.push(next);
                }
            }
        }
        false
    }

    /// The asset topic closest to `from` in influence steps; `from` itself
    /// when it is an asset. Ties at the same distance resolve to the
    /// lexicographically smallest topic.
    pub fn nearest_asset(&self, from: &str, assets: &BTreeSet<ElementId>) -> Option<ElementId> {
        if assets.contains(from) {
            return Some(from.to_string());
        }
        let mut visited: BTreeSet<&str> = BTreeSet::new();
        visited.insert(from);
        let mut level: BTreeSet<&str> = BTreeSet::new();
        level.insert(from);
        loop {
            let mut next: BTreeSet<&str> = BTreeSet::new();
            for t in &level {
                for n in self.step.get(*t).into_iter().flatten() {
                    if !visited.contains(n.as_str()) {
                        next.insert(n);
                    }
                }
            }
            if next.is_empty() {
                return None;
            }
            if let Some(hit) = next.iter().find(|t| assets.contains(**t)) {
                return Some(hit.to_string());
            }
            visited.extend(next.iter().copied());
            level = next;
        }
    }
}

// ---------------------------------------------------------------------------
// Element projection
// ---------------------------------------------------------------------------

fn collapse_consecutive(items: Vec<ElementId>) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = Vec::with_capacity(items.len());
    for item in items {
        if out.last() != Some(&item) {
            out.push(item);
        }
    }
    out
}

/// Projects a port walk to the owning architecture elements, collapsing
/// consecutive duplicates. Ports without an owner project to themselves.
pub fn project_elements(facts: &FactBase, ports: &[ElementId]) -> Vec<ElementId> {
    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for atom in &facts.atoms {
        match atom {
            Atom::Ecui(e, p)
            | Atom::Ecuo(e, p)
            | Atom::Neti(e, p)
            | Atom::Neto(e, p)
            | Atom::Cpi(e, p)
            | Atom::Cpo(e, p)
            | Atom::Public(e, p) => {
                owner.insert(p, e);
            }
            _ => {}
        }
    }
    collapse_consecutive(
        ports
            .iter()
            .map(|p| {
                owner
                    .get(p.as_str())
                    .map_or_else(|| p.clone(), |e| (*e).to_string())
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Outsider enumeration
// ---------------------------------------------------------------------------

/// The flow-graph edges of a run: `p1 -> p2` when `wrt(p1,p2)` or `rd(p2,p1)`.
pub fn flow_edges(run: &ReachRun) -> BTreeSet<(ElementId, ElementId)> {
    let mut edges: BTreeSet<(ElementId, ElementId)> = BTreeSet::new();
    for (p1, p2) in run.flows.wrt.keys() {
        edges.insert((p1.clone(), p2.clone()));
    }
    for (p2, p1) in run.flows.rd.keys() {
        edges.insert((p1.clone(), p2.clone()));
    }
    edges
}

fn backward_simple_paths(
    target: &str,
    rev: &BTreeMap<&str, Vec<&str>>,
    sources: &BTreeSet<&str>,
    path: &mut Vec<ElementId>,
    on_path: &mut BTreeSet<ElementId>,
    out: &mut Vec<Vec<ElementId>>,
) {
    if sources.contains(target) {
        let mut found = path.clone();
        found.reverse();
        out.push(found);
    }
    for prev in rev.get(target).into_iter().flatten() {
        if on_path.contains(*prev) {
            continue;
        }
        path.push(prev.to_string());
        on_path.insert(prev.to_string());
        backward_simple_paths(prev, rev, sources, path, on_path, out);
        on_path.remove(*prev);
        path.pop();
    }
}

/// Enumerates outsider attack paths: for every information-flow entry port
/// the intruder reaches whose topic influences an asset, every simple port
/// walk from a public element to that port (walking only reached ports).
/// Returns a deduplicated, canonically sorted list.
pub fn enumerate_outsider_paths(
    facts: &FactBase,
    run: &ReachRun,
    assets: &BTreeSet<ElementId>,
) -> Vec<AttackPath> {
    assert_eq!(run.intruder, Intruder::Outsider, "outsider run required");
    let influence = InfluenceRelation::from_facts(facts);

    // Reverse flow graph restricted to reached ports.
    let edges = flow_edges(run);
    let mut rev: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (p1, p2) in &edges {
        if run.reach.contains_key(p1) && run.reach.contains_key(p2) {
            rev.entry(p2.as_str()).or_default().push(p1.as_str());
        }
    }
    let mut sources: BTreeSet<&str> = BTreeSet::new();
    let mut public_of_port: BTreeMap<&str, &str> = BTreeMap::new();
    for atom in &facts.atoms {
        if let Atom::Public(el, po) = atom {
            if run.reach.contains_key(po) {
                sources.insert(po.as_str());
                public_of_port.insert(po.as_str(), el.as_str());
            }
        }
    }

    let mut paths: BTreeSet<AttackPath> = BTreeSet::new();
    for atom in &facts.atoms {
        let Atom::If(_ecu, port, topic) = atom else {
            continue;
        };
        if !run.reach.contains_key(port) {
            continue;
        }
        let Some(asset_topic) = influence.nearest_asset(topic, assets) else {
            continue;
        };
        let mut walks: Vec<Vec<ElementId>> = Vec::new();
        let mut path = vec![port.clone()];
        let mut on_path: BTreeSet<ElementId> = BTreeSet::new();
        on_path.insert(port.clone());
        backward_simple_paths(port, &rev, &sources, &mut path, &mut on_path, &mut walks);
        for steps in walks {
            let entry = public_of_port
                .get(steps[0].as_str())
                .map_or_else(|| steps[0].clone(), |el| (*el).to_string());
            paths.insert(AttackPath {
                intruder: Intruder::Outsider,
                entry,
                elements: project_elements(facts, &steps),
                affected_topic: topic.clone(),
                steps,
                asset_topic: asset_topic.clone(),
            });
        }
    }
    paths.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Insider enumeration
// ---------------------------------------------------------------------------

/// The component chain from `start` to the nearest component that publishes
/// an asset topic, following "subscribes what the previous component
/// publishes" edges. Returns the chain (including both ends) and the asset:
/// the shortest chain, ties resolved by chain lexicographic order, then by
/// asset topic. When the attacked topic is itself an asset the chain is just
/// `[start]`.
fn nearest_asset_chain(
    start: &str,
    attacked_topic: &str,
    assets: &BTreeSet<ElementId>,
    pubs_of_comp: &BTreeMap<&str, BTreeSet<&str>>,
    subs_of_topic: &BTreeMap<&str, BTreeSet<&str>>,
) -> Option<(Vec<ElementId>, ElementId)> {
    if assets.contains(attacked_topic) {
        return Some((vec![start.to_string()], attacked_topic.to_string()));
    }
    let mut visited: BTreeSet<&str> = BTreeSet::new();
    visited.insert(start);
    let mut level: Vec<(Vec<ElementId>, &str)> = vec![(vec![start.to_string()], start)];
    loop {
        // Goal test in chain order: the first hit is the lexicographic
        // minimum among the shortest candidates.
        for (chain, comp) in &level {
            if let Some(asset) = pubs_of_comp
                .get(comp)
                .into_iter()
                .flatten()
                .find(|t| assets.contains(**t))
            {
                return Some((chain.clone(), (*asset).to_string()));
            }
        }
        let mut discovered: BTreeSet<&str> = BTreeSet::new();
        let mut next: Vec<(Vec<ElementId>, &str)> = Vec::new();
        for (chain, comp) in &level {
            for topic in pubs_of_comp.get(comp).into_iter().flatten() {
                for succ in subs_of_topic.get(topic).into_iter().flatten() {
                    if visited.contains(*succ) || discovered.contains(*succ) {
                        continue;
                    }
                    discovered.insert(succ);
                    let mut extended = chain.clone();
                    extended.push((*succ).to_string());
                    next.push((extended, succ));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        visited.extend(discovered);
        next.sort();
        level = next;
    }
}

/// Enumerates insider attack paths: for every attacked topic, every
/// publisher/subscriber component pair with reached witness ports whose
/// subscriber can realize an asset. Returns a deduplicated, canonically
/// sorted list.
pub fn enumerate_insider_paths(
    facts: &FactBase,
    run: &ReachRun,
    assets: &BTreeSet<ElementId>,
) -> Vec<AttackPath> {
    assert_eq!(run.intruder, Intruder::Insider, "insider run required");

    let mut pubs_of_comp: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    let mut subs_of_topic: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    // Reached witness ports per (component, topic), smallest first.
    let mut pub_port: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    let mut sub_port: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    for atom in &facts.atoms {
        match atom {
            Atom::Pub(c, co, tp) => {
                pubs_of_comp.entry(c).or_default().insert(tp);
                if run.reach.contains_key(co) {
                    pub_port.entry((c, tp)).or_insert(co);
                }
            }
            Atom::Sub(c, ci, tp) => {
                subs_of_topic.entry(tp).or_default().insert(c);
                if run.reach.contains_key(ci) {
                    sub_port.entry((c, tp)).or_insert(ci);
                }
            }
            _ => {}
        }
    }

    let mut paths: BTreeSet<AttackPath> = BTreeSet::new();
    for topic in run.attacks.keys() {
        let publishers: Vec<(&str, &str)> = pub_port
            .iter()
            .filter(|((_, tp), _)| *tp == topic.as_str())
            .map(|((c, _), co)| (*c, *co))
            .collect();
        let subscribers: Vec<(&str, &str)> = sub_port
            .iter()
            .filter(|((_, tp), _)| *tp == topic.as_str())
            .map(|((c, _), ci)| (*c, *ci))
            .collect();
        for (c_pub, co) in &publishers {
            for (c_sub, ci) in &subscribers {
                let Some((chain, asset_topic)) =
                    nearest_asset_chain(c_sub, topic, assets, &pubs_of_comp, &subs_of_topic)
                else {
                    continue;
                };
                let mut elements = vec![c_pub.to_string()];
                elements.extend(chain);
                paths.insert(AttackPath {
                    intruder: Intruder::Insider,
                    entry: c_pub.to_string(),
                    elements: collapse_consecutive(elements),
                    affected_topic: topic.clone(),
                    steps: vec![co.to_string(), ci.to_string()],
                    asset_topic,
                });
            }
        }
    }
    paths.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

/// Errors from the exhaustive path oracle.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("path oracle budget of {budget} extensions exceeded")]
    BudgetExceeded { budget: usize },
}

struct Budget {
    used: usize,
    limit: usize,
}

impl Budget {
    fn spend(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.limit {
            return Err(OracleError::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Enumerates attack paths by brute force on top of the naive reference
/// evaluator: forward depth-first walks over the full flow graph (outsider)
/// and level-by-level chain enumeration without a parent tree (insider).
/// Shares no traversal machinery with the engine-side enumerators; `budget`
/// caps the number of path extensions considered.
pub fn oracle_enumerate(
    facts: &FactBase,
    intruder: Intruder,
    assets: &BTreeSet<ElementId>,
    budget: usize,
) -> Result<BTreeSet<AttackPath>, OracleError> {
    let mut budget = Budget {
        used: 0,
        limit: budget,
    };
    match intruder {
        Intruder::Outsider => oracle_outsider(facts, assets, &mut budget),
        Intruder::Insider => oracle_insider(facts, assets, &mut budget),
    }
}

/// Topic influence edges, rebuilt from raw pub/sub facts.
fn oracle_topic_edges(facts: &FactBase) -> BTreeMap<String, BTreeSet<String>> {
    let mut consumed: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut published: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for atom in &facts.atoms {
        match atom {
            Atom::Sub(c, _, tp) => {
                consumed.entry(c.clone()).or_default().insert(tp.clone());
            }
            Atom::Pub(c, _, tp) => {
                published.entry(c.clone()).or_default().insert(tp.clone());
            }
            _ => {}
        }
    }
    let mut edges: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (c, ins) in &consumed {
        for t1 in ins {
            for t2 in published.get(c).into_iter().flatten() {
                edges.entry(t1.clone()).or_default().insert(t2.clone());
            }
        }
    }
    edges
}

fn oracle_nearest_topic(
    from: &str,
    assets: &BTreeSet<ElementId>,
    edges: &BTreeMap<String, BTreeSet<String>>,
) -> Option<String> {
    if assets.contains(from) {
        return Some(from.to_string());
    }
    let mut visited: BTreeSet<String> = BTreeSet::new();
    visited.insert(from.to_string());
    let mut level: BTreeSet<String> = visited.clone();
    loop {
        let mut next: BTreeSet<String> = BTreeSet::new();
        for t in &level {
            for n in edges.get(t).into_iter().flatten() {
                if !visited.contains(n) {
                    next.insert(n.clone());
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        if let Some(hit) = next.iter().find(|t| assets.contains(*t)) {
            return Some(hit.clone());
        }
        visited.extend(next.iter().cloned());
        level = next;
    }
}

fn oracle_outsider(
    facts: &FactBase,
    assets: &BTreeSet<ElementId>,
    budget: &mut Budget,
) -> Result<BTreeSet<AttackPath>, OracleError> {
    let naive = naive_run(facts, Intruder::Outsider);
    let topic_edges = oracle_topic_edges(facts);

    // Forward flow graph restricted to reached ports.
    let mut fwd: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (p1, p2) in &naive.wrt {
        if naive.reach.contains(p1) && naive.reach.contains(p2) {
            fwd.entry(p1.clone()).or_default().insert(p2.clone());
        }
    }
    for (p2, p1) in &naive.rd {
        if naive.reach.contains(p1) && naive.reach.contains(p2) {
            fwd.entry(p1.clone()).or_default().insert(p2.clone());
        }
    }

    let mut if_by_port: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut publics: Vec<(&str, &str)> = Vec::new();
    for atom in &facts.atoms {
        match atom {
            Atom::If(_, p, tp) => if_by_port.entry(p).or_default().push(tp),
            Atom::Public(el, po) => publics.push((el, po)),
            _ => {}
        }
    }

    // Read-only context shared by every recursive step of the walk.
    struct WalkCtx<'a> {
        facts: &'a FactBase,
        fwd: &'a BTreeMap<String, BTreeSet<String>>,
        if_by_port: &'a BTreeMap<&'a str, Vec<&'a str>>,
        assets: &'a BTreeSet<ElementId>,
        topic_edges: &'a BTreeMap<String, BTreeSet<String>>,
    }

    fn walk(
        ctx: &WalkCtx<'_>,
        node: &str,
        entry: &str,
        path: &mut Vec<ElementId>,
        out: &mut BTreeSet<AttackPath>,
        budget: &mut Budget,
    ) -> Result<(), OracleError> {
        for topic in ctx.if_by_port.get(node).into_iter().flatten() {
            if let Some(asset_topic) = oracle_nearest_topic(topic, ctx.assets, ctx.topic_edges) {
                out.insert(AttackPath {
                    intruder: Intruder::Outsider,
                    entry: entry.to_string(),
                    elements: project_elements(ctx.facts, path),
                    affected_topic: (*topic).to_string(),
                    steps: path.clone(),
                    asset_topic,
                });
            }
        }
        for next in ctx.fwd.get(node).into_iter().flatten() {
            if path.contains(next) {
                continue;
            }
            budget.spend()?;
            path.push(next.clone());
            walk(ctx, next, entry, path, out, budget)?;
            path.pop();
        }
        Ok(())
    }

    let ctx = WalkCtx {
        facts,
        fwd: &fwd,
        if_by_port: &if_by_port,
        assets,
        topic_edges: &topic_edges,
    };
    let mut out = BTreeSet::new();
    for (el, po) in publics {
        if !naive.reach.contains(po) {
            continue;
        }
        let mut path = vec![po.to_string()];
        walk(&ctx, po, el, &mut path, &mut out, budget)?;
    }
    Ok(out)
}

fn oracle_insider(
    facts: &FactBase,
    assets: &BTreeSet<ElementId>,
    budget: &mut Budget,
) -> Result<BTreeSet<AttackPath>, OracleError> {
    let naive = naive_run(facts, Intruder::Insider);

    let mut pubs_of_comp: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut subs_of_topic: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut pub_port: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut sub_port: BTreeMap<(String, String), String> = BTreeMap::new();
    for atom in &facts.atoms {
        match atom {
            Atom::Pub(c, co, tp) => {
                pubs_of_comp
                    .entry(c.clone())
                    .or_default()
                    .insert(tp.clone());
                if naive.reach.contains(co) {
                    pub_port
                        .entry((c.clone(), tp.clone()))
                        .or_insert_with(|| co.clone());
                }
            }
            Atom::Sub(c, ci, tp) => {
                subs_of_topic
                    .entry(tp.clone())
                    .or_default()
                    .insert(c.clone());
                if naive.reach.contains(ci) {
                    sub_port
                        .entry((c.clone(), tp.clone()))
                        .or_insert_with(|| ci.clone());
                }
            }
            _ => {}
        }
    }

    // All simple component chains of increasing length, no parent tree: the
    // first length with a chain ending at an asset publisher wins, minimized
    // by (chain, asset).
    let chain_for = |start: &str,
                     attacked: &str,
                     budget: &mut Budget|
     -> Result<Option<(Vec<String>, String)>, OracleError> {
        if assets.contains(attacked) {
            return Ok(Some((vec![start.to_string()], attacked.to_string())));
        }
        let mut chains: Vec<Vec<String>> = vec![vec![start.to_string()]];
        loop {
            let mut candidates: Vec<(Vec<String>, String)> = Vec::new();
            for chain in &chains {
                let end = chain.last().unwrap();
                for t in pubs_of_comp.get(end).into_iter().flatten() {
                    if assets.contains(t) {
                        candidates.push((chain.clone(), t.clone()));
                    }
                }
            }
            if let Some(best) = candidates.into_iter().min() {
                return Ok(Some(best));
            }
            let mut next: Vec<Vec<String>> = Vec::new();
            for chain in &chains {
                let end = chain.last().unwrap();
                for t in pubs_of_comp.get(end).into_iter().flatten() {
                    for succ in subs_of_topic.get(t).into_iter().flatten() {
                        if chain.contains(succ) {
                            continue;
                        }
                        budget.spend()?;
                        let mut extended = chain.clone();
                        extended.push(succ.clone());
                        next.push(extended);
                    }
                }
            }
            if next.is_empty() {
                return Ok(None);
            }
            next.sort();
            next.dedup();
            chains = next;
        }
    };

    let mut out = BTreeSet::new();
    for topic in &naive.attacks {
        for ((c_pub, tp), co) in &pub_port {
            if tp != topic {
                continue;
            }
            for ((c_sub, tp2), ci) in &sub_port {
                if tp2 != topic {
                    continue;
                }
                let Some((chain, asset_topic)) = chain_for(c_sub, topic, budget)? else {
                    continue;
                };
                let mut elements = vec![c_pub.clone()];
                elements.extend(chain);
                out.insert(AttackPath {
                    intruder: Intruder::Insider,
                    entry: c_pub.clone(),
                    elements: collapse_consecutive(elements),
                    affected_topic: topic.clone(),
                    steps: vec![co.clone(), ci.clone()],
                    asset_topic,
                });
            }
        }
    }
    Ok(out)
}
