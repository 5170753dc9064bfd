//! Post-processing of enumerated attack paths: grouping by entry, shared
//! path prefixes, and countermeasure placement hints.
//!
//! The placement logic rests on one observation: all paths of an entry share
//! the longest common prefix of their element traces, so a countermeasure on
//! the prefix-terminal element cuts every path of that entry at once. Entries
//! whose prefixes end at the same element merge into a single hint.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::ElementId;
use crate::paths::AttackPath;

// ---------------------------------------------------------------------------
// Entry groups
// ---------------------------------------------------------------------------

/// All paths of one entry and the element prefix they share.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryGroup {
    pub entry: ElementId,
    pub path_count: usize,
    /// Longest common prefix of the element traces; never empty, since every
    /// path of an entry starts at the entry's element.
    pub common_prefix: Vec<ElementId>,
}

fn longest_common_prefix(traces: &[&Vec<ElementId>]) -> Vec<ElementId> {
    let Some(first) = traces.first() else {
        return Vec::new();
    };
    let mut len = first.len();
    for trace in &traces[1..] {
        let mut common = 0;
        while common < len && common < trace.len() && first[common] == trace[common] {
            common += 1;
        }
        len = common;
    }
    first[..len].to_vec()
}

/// Groups paths by entry, ordered by entry id.
pub fn group_by_entry(paths: &[AttackPath]) -> Vec<EntryGroup> {
    let mut by_entry: BTreeMap<&ElementId, Vec<&Vec<ElementId>>> = BTreeMap::new();
    for path in paths {
        by_entry
            .entry(&path.entry)
            .or_default()
            .push(&path.elements);
    }
    by_entry
        .into_iter()
        .map(|(entry, traces)| EntryGroup {
            entry: entry.clone(),
            path_count: traces.len(),
            common_prefix: longest_common_prefix(&traces),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Placement hints
// ---------------------------------------------------------------------------

/// A suggested countermeasure location: the element where the common
/// prefixes of one or more entries end, with the number of paths a measure
/// placed there would cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementHint {
    pub element: ElementId,
    pub covered_path_count: usize,
    /// Entries whose paths are covered, sorted.
    pub entries: Vec<ElementId>,
}

/// Merges entry groups by their prefix-terminal element, sorted by covered
/// path count descending, then element id. Every path belongs to exactly one
/// hint, so the covered counts sum to the total path count.
pub fn placement_hints(groups: &[EntryGroup]) -> Vec<PlacementHint> {
    let mut by_element: BTreeMap<&ElementId, (usize, Vec<ElementId>)> = BTreeMap::new();
    for group in groups {
        let Some(terminal) = group.common_prefix.last() else {
            continue;
        };
        let slot = by_element.entry(terminal).or_default();
        slot.0 += group.path_count;
        slot.1.push(group.entry.clone());
    }
    let mut hints: Vec<PlacementHint> = by_element
        .into_iter()
        .map(|(element, (covered_path_count, mut entries))| {
            entries.sort();
            PlacementHint {
                element: element.clone(),
                covered_path_count,
                entries,
            }
        })
        .collect();
    hints.sort_by(|a, b| {
        b.covered_path_count
            .cmp(&a.covered_path_count)
            .then_with(|| a.element.cmp(&b.element))
    });
    hints
}

// ---------------------------------------------------------------------------
// Summary
// ---------------------------------------------------------------------------

/// Wall-clock milliseconds per pipeline phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub load_ms: f64,
    pub engine_ms: f64,
    pub paths_ms: f64,
    pub analysis_ms: f64,
    pub total_ms: f64,
}

/// Headline numbers over an enumeration result.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total_paths: usize,
    pub outsider_paths: usize,
    pub insider_paths: usize,
    pub entry_count: usize,
    pub affected_topic_count: usize,
    pub asset_topic_count: usize,
    pub longest_steps: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
}

/// Summarizes a path set; `timings` is attached verbatim when given, so two
/// runs over the same input without timings serialize identically.
pub fn summarize(paths: &[AttackPath], timings: Option<PhaseTimings>) -> Summary {
    use crate::engine::Intruder;
    let outsider_paths = paths
        .iter()
        .filter(|p| p.intruder == Intruder::Outsider)
        .count();
    let entries: std::collections::BTreeSet<&ElementId> = paths.iter().map(|p| &p.entry).collect();
    let affected: std::collections::BTreeSet<&ElementId> =
        paths.iter().map(|p| &p.affected_topic).collect();
    let assets: std::collections::BTreeSet<&ElementId> =
        paths.iter().map(|p| &p.asset_topic).collect();
    Summary {
        total_paths: paths.len(),
        outsider_paths,
        insider_paths: paths.len() - outsider_paths,
        entry_count: entries.len(),
        affected_topic_count: affected.len(),
        asset_topic_count: assets.len(),
        longest_steps: paths.iter().map(|p| p.steps.len()).max().unwrap_or(0),
        timings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Intruder;

    fn path(entry: &str, elements: &[&str], topic: &str) -> AttackPath {
        AttackPath {
            intruder: Intruder::Outsider,
            entry: entry.to_string(),
            elements: elements.iter().map(|e| e.to_string()).collect(),
            affected_topic: topic.to_string(),
            steps: vec![format!("{entry}_port"), format!("{topic}_port")],
            asset_topic: topic.to_string(),
        }
    }

    #[test]
    fn groups_are_ordered_by_entry_with_maximal_prefixes() {
        let paths = vec![
            path("Camera", &["Camera", "SwitchA", "ECU1"], "t1"),
            path("Camera", &["Camera", "SwitchA", "ECU2"], "t2"),
            path("Antenna", &["Antenna", "SwitchB"], "t3"),
        ];
        let groups = group_by_entry(&paths);
        assert_eq!(groups.len(), 2);
        assert_eq!(groups[0].entry, "Antenna");
        assert_eq!(groups[0].path_count, 1);
        assert_eq!(groups[0].common_prefix, vec!["Antenna", "SwitchB"]);
        assert_eq!(groups[1].entry, "Camera");
        assert_eq!(groups[1].path_count, 2);
        // Maximal: one element longer is no longer common.
        assert_eq!(groups[1].common_prefix, vec!["Camera", "SwitchA"]);
    }

    #[test]
    fn hints_merge_entries_sharing_a_prefix_terminal() {
        // Two sensors with 21 paths each, both funneled through the same
        // switch: one hint at the switch covering all 42 paths.
        let mut paths = Vec::new();
        for i in 0..21 {
            paths.push(path("SensorA", &["SensorA", "Switch"], &format!("a{i}")));
            paths.push(path("SensorB", &["SensorB", "Switch"], &format!("b{i}")));
        }
        paths.push(path("Modem", &["Modem", "Gateway"], "x"));

        let groups = group_by_entry(&paths);
        assert_eq!(groups.len(), 3);
        assert!(groups.iter().all(|g| g.common_prefix.last().is_some()));

        let hints = placement_hints(&groups);
        assert_eq!(hints.len(), 2);
        assert_eq!(hints[0].element, "Switch");
        assert_eq!(hints[0].covered_path_count, 42);
        assert_eq!(hints[0].entries, vec!["SensorA", "SensorB"]);
        assert_eq!(hints[1].element, "Gateway");
        assert_eq!(hints[1].covered_path_count, 1);

        // Hints partition the path set.
        let covered: usize = hints.iter().map(|h| h.covered_path_count).sum();
        assert_eq!(covered, paths.len());
    }

    #[test]
    fn hints_sort_by_coverage_then_element() {
        let paths = vec![
            path("A", &["A", "X"], "t1"),
            path("B", &["B", "Y"], "t2"),
            path("C", &["C", "Y"], "t3"),
        ];
        let hints = placement_hints(&group_by_entry(&paths));
        assert_eq!(hints.len(), 2);
        assert_eq!(hints[0].element, "Y");
        assert_eq!(hints[0].covered_path_count, 2);
        assert_eq!(hints[1].element, "X");
    }

    #[test]
    fn summary_counts_distinct_dimensions() {
        let mut paths = vec![
            path("A", &["A", "X"], "t1"),
            path("A", &["A", "Y"], "t2"),
            path("B", &["B", "X"], "t1"),
        ];
        paths[2].intruder = Intruder::Insider;
        let summary = summarize(&paths, None);
        assert_eq!(summary.total_paths, 3);
        assert_eq!(summary.outsider_paths, 2);
        assert_eq!(summary.insider_paths, 1);
        assert_eq!(summary.entry_count, 2);
        assert_eq!(summary.affected_topic_count, 2);
        assert_eq!(summary.asset_topic_count, 2);
        assert_eq!(summary.longest_steps, 2);
        assert!(summary.timings.is_none());
    }

    #[test]
    fn empty_path_set_summarizes_to_zeros() {
        let summary = summarize(&[], None);
        assert_eq!(summary, Summary::default());
        assert!(group_by_entry(&[]).is_empty());
        assert!(placement_hints(&[]).is_empty());
    }
}
