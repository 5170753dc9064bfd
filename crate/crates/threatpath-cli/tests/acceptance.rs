//! End-to-end acceptance gate.
//!
//! Nine golden criteria covering the whole stack: walkthrough fixtures for
//! both intruder profiles, the risk-rating table, asset derivation, randomized
//! engine/oracle equivalence, metamorphic mutation invariants, frozen counts
//! on the bundled vehicle-scale fixture, byte-level determinism, and
//! traceability completeness. Each test prints one `acceptance criterion N:
//! PASS`/`FAIL` line; run with `--nocapture` to see them all.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use threatpath::engine::{naive_run, run, Intruder};
use threatpath::model::SystemModel;
use threatpath::paths::{
    enumerate_insider_paths, enumerate_outsider_paths, oracle_enumerate, AttackPath, OracleError,
};
use threatpath::pipeline::{build_report, AssetSelector, PipelineOptions};
use threatpath::report::ProfileSelection;
use threatpath::safety::{Asil, Controllability, Exposure, Severity};
use threatpath::tara::{
    derive_assets, derive_damage_scenarios, derive_threat_scenarios, AssetKind, FailureModeMap,
    SecurityProperty, Stride,
};
use threatpath::{compute_asil, gen, load_model, load_safety, to_facts, validate};
use threatpath_cli::{cmd_analyze, cmd_trace, AnalyzeArgs, TraceArgs, EXIT_OK, EXIT_VIOLATION};

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

/// Runs one criterion body and prints its verdict line. Panics (and thus
/// fails the test) after printing FAIL, so the verdict is visible even when
/// an assertion inside the body trips.
fn criterion<F>(number: u32, name: &str, body: F)
where
    F: FnOnce() + std::panic::UnwindSafe,
{
    let result = std::panic::catch_unwind(body);
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance criterion {number} ({name}): {verdict}");
    if let Err(cause) = result {
        std::panic::resume_unwind(cause);
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn load_model_fixture(name: &str) -> SystemModel {
    let bytes = std::fs::read(fixture(name)).expect("fixture readable");
    load_model(&bytes).expect("fixture loads")
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn port_count(model: &SystemModel) -> usize {
    model
        .components
        .iter()
        .map(|c| c.pub_ports.len() + c.sub_ports.len())
        .sum::<usize>()
        + model
            .ecus
            .iter()
            .map(|e| e.in_ports.len() + e.out_ports.len())
            .sum::<usize>()
        + model
            .networks
            .iter()
            .map(|n| n.in_ports.len() + n.out_ports.len())
            .sum::<usize>()
        + model
            .publics
            .iter()
            .map(|p| p.out_ports.len())
            .sum::<usize>()
}

/// Both-profile engine path enumeration against a fixed asset set.
fn all_paths(model: &SystemModel, assets: &BTreeSet<String>) -> BTreeSet<AttackPath> {
    let facts = to_facts(model).expect("facts compile");
    let out_run = run(&facts, Intruder::Outsider);
    let in_run = run(&facts, Intruder::Insider);
    let mut paths: BTreeSet<AttackPath> = enumerate_outsider_paths(&facts, &out_run, assets)
        .into_iter()
        .collect();
    paths.extend(enumerate_insider_paths(&facts, &in_run, assets));
    paths
}

// ---------------------------------------------------------------------------
// 1. Outsider walkthrough fixture
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_outsider_walkthrough() {
    criterion(1, "outsider walkthrough", || {
        let model = load_model_fixture("outsider_demo.model.json");
        let facts = to_facts(&model).expect("facts compile");

        let started = Instant::now();
        let outsider = run(&facts, Intruder::Outsider);
        let assets = set(&["t_cp1", "t_cp2"]);
        let paths = enumerate_outsider_paths(&facts, &outsider, &assets);
        let elapsed = started.elapsed();

        // Exact reach set: the walk Sensor -> Network1 -> ECU1 -> Network2,
        // stopping at the unanswered Network2 input.
        let reach: BTreeSet<String> = outsider.reach.keys().cloned().collect();
        assert_eq!(reach, set(&["o1", "i1", "o2", "i2", "o3", "i4"]));
        for port in ["i3", "o4", "i5", "o5"] {
            assert!(!reach.contains(port), "{port} must stay unreached");
        }

        // One path per topic announced at the ECU1 entry port, both starting
        // at the public sensor and ending at that entry port.
        assert_eq!(paths.len(), 2, "paths: {paths:#?}");
        let topics: BTreeSet<&str> = paths.iter().map(|p| p.affected_topic.as_str()).collect();
        assert_eq!(topics, ["t_cp1", "t_cp2"].into_iter().collect());
        for path in &paths {
            assert_eq!(path.intruder, Intruder::Outsider);
            assert_eq!(path.entry, "Sensor");
            assert_eq!(path.steps, vec!["o1", "i1", "o2", "i2"]);
            assert_eq!(path.elements, vec!["Sensor", "Network1", "ECU1"]);
        }

        assert!(
            elapsed < Duration::from_millis(100),
            "walkthrough run took {elapsed:?}"
        );
    });
}

// ---------------------------------------------------------------------------
// 2. Insider walkthrough fixture
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_insider_walkthrough() {
    criterion(2, "insider walkthrough", || {
        let model = load_model_fixture("insider_demo.model.json");
        let facts = to_facts(&model).expect("facts compile");
        let insider = run(&facts, Intruder::Insider);

        // The insider reaches every publisher port and every subscriber port
        // fed by a reached publisher; the infotainment input stays out
        // because its topic's publisher feedback loop never reaches it
        // (trajectory is published by planning, whose only unprotected input
        // is reachable, but infotainment itself publishes nothing).
        let reach: BTreeSet<String> = insider.reach.keys().cloned().collect();
        for port in ["o1", "o2", "o3", "o4", "o5", "o6"] {
            assert!(
                reach.contains(port),
                "publisher port {port} must be reached"
            );
        }
        for port in ["i1", "i2", "i3", "i4", "i5", "i6", "i7"] {
            assert!(
                reach.contains(port),
                "subscriber port {port} must be reached"
            );
        }
        assert!(
            !reach.contains("i8"),
            "infotainment input must stay unreached"
        );

        // Attacked topics: exactly the two unprotected topic edges between
        // communicating components. The protected topics and the topic read
        // only by infotainment must be excluded.
        let attacks: BTreeSet<String> = insider.attacks.keys().cloned().collect();
        assert_eq!(attacks, set(&["t_route", "t_obstacles"]));
        for topic in ["t_pred", "t_pose", "t_traj", "t_tf"] {
            assert!(!attacks.contains(topic), "{topic} must not be attackable");
        }
    });
}

// ---------------------------------------------------------------------------
// 3. Risk rating table
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_risk_rating_table() {
    criterion(3, "risk rating table", || {
        const SEVERITIES: [Severity; 4] = [Severity::S0, Severity::S1, Severity::S2, Severity::S3];
        const EXPOSURES: [Exposure; 5] = [
            Exposure::E0,
            Exposure::E1,
            Exposure::E2,
            Exposure::E3,
            Exposure::E4,
        ];
        const CONTROLLABILITIES: [Controllability; 4] = [
            Controllability::C0,
            Controllability::C1,
            Controllability::C2,
            Controllability::C3,
        ];

        // Anchor cell.
        assert_eq!(
            compute_asil(Severity::S3, Exposure::E4, Controllability::C3),
            Asil::D
        );

        // The standard rating table collapses to a closed form: QM whenever
        // any class is 0, otherwise the class-index sum s+e+c maps
        // 7 -> A, 8 -> B, 9 -> C, 10 -> D, below 7 -> QM. Checking all 80
        // cells against this independent form guards the transcription.
        fn closed_form(s: usize, e: usize, c: usize) -> Asil {
            if s == 0 || e == 0 || c == 0 {
                return Asil::QM;
            }
            match s + e + c {
                7 => Asil::A,
                8 => Asil::B,
                9 => Asil::C,
                10 => Asil::D,
                _ => Asil::QM,
            }
        }

        let mut cells = 0usize;
        for sev in SEVERITIES {
            for exp in EXPOSURES {
                for con in CONTROLLABILITIES {
                    let got = compute_asil(sev, exp, con);
                    let want = closed_form(sev as usize, exp as usize, con as usize);
                    assert_eq!(got, want, "cell ({sev:?},{exp:?},{con:?})");
                    cells += 1;
                }
            }
        }
        assert_eq!(cells, 80);

        // Monotonicity along each axis: raising any one class never lowers
        // the resulting level.
        for (si, &sev) in SEVERITIES.iter().enumerate() {
            for (ei, &exp) in EXPOSURES.iter().enumerate() {
                for (ci, &con) in CONTROLLABILITIES.iter().enumerate() {
                    let here = compute_asil(sev, exp, con);
                    if si + 1 < SEVERITIES.len() {
                        assert!(compute_asil(SEVERITIES[si + 1], exp, con) >= here);
                    }
                    if ei + 1 < EXPOSURES.len() {
                        assert!(compute_asil(sev, EXPOSURES[ei + 1], con) >= here);
                    }
                    if ci + 1 < CONTROLLABILITIES.len() {
                        assert!(compute_asil(sev, exp, CONTROLLABILITIES[ci + 1]) >= here);
                    }
                }
            }
        }
    });
}

// ---------------------------------------------------------------------------
// 4. Asset derivation from a loss scenario
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_asset_derivation() {
    criterion(4, "asset derivation", || {
        let model = load_model_fixture("av_platform.model.json");
        let safety_bytes =
            std::fs::read(fixture("av_platform.safety.json")).expect("safety readable");
        let safety = load_safety(&safety_bytes, &model).expect("safety loads");
        let map = FailureModeMap::default();

        let assets = derive_assets(&model, &safety, &map);
        let ls1: Vec<_> = assets
            .iter()
            .filter(|a| a.loss_scenario_ids.iter().any(|id| id == "LS1"))
            .collect();

        // Exactly: both endpoint functions, the carried topic, and the one
        // execution unit hosting both endpoints — all on integrity, because
        // the scenario's failure mode is an erroneous value.
        let got: BTreeSet<(AssetKind, &str, SecurityProperty)> = ls1
            .iter()
            .map(|a| (a.kind, a.referent.as_str(), a.property))
            .collect();
        let want: BTreeSet<(AssetKind, &str, SecurityProperty)> = [
            (AssetKind::Function, "planning", SecurityProperty::Integrity),
            (AssetKind::Function, "control", SecurityProperty::Integrity),
            (AssetKind::Topic, "trajectory", SecurityProperty::Integrity),
            (AssetKind::Hardware, "MCU", SecurityProperty::Integrity),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);

        // Threat scenarios over those assets: tampering on each function and
        // on the execution unit, spoofing on the topic, and privilege
        // elevation on the execution unit.
        let damages = derive_damage_scenarios(&safety);
        let threats = derive_threat_scenarios(&assets, &safety, &damages);
        let ls1_ids: BTreeSet<&str> = ls1.iter().map(|a| a.id.as_str()).collect();
        let mut strides: Vec<Stride> = threats
            .iter()
            .filter(|t| ls1_ids.contains(t.asset_id.as_str()))
            .map(|t| t.stride)
            .collect();
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
    });
}

// ---------------------------------------------------------------------------
// 5. Randomized engine/oracle equivalence
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_oracle_equivalence() {
    criterion(5, "randomized oracle equivalence", || {
        const REQUIRED: usize = 50;
        const MAX_SEEDS: u64 = 400;
        const BUDGET: usize = 5_000_000;

        let mut checked = 0usize;
        let mut skipped = 0usize;
        let mut seed = 0u64;

        'models: while checked < REQUIRED {
            assert!(
                seed < MAX_SEEDS,
                "only {checked} models checked after {MAX_SEEDS} seeds ({skipped} skipped)"
            );
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            seed += 1;
            let model = gen::random_model(&mut rng);
            assert!(validate(&model).is_empty(), "generated model must be valid");
            assert!(port_count(&model) <= 200, "generator must stay small");

            // Alternate between all topics and every other topic as assets,
            // so both dense and sparse asset selections are exercised.
            let assets: BTreeSet<String> = model
                .topics
                .iter()
                .enumerate()
                .filter(|(i, _)| seed % 2 == 0 || i % 2 == 0)
                .map(|(_, t)| t.id.clone())
                .collect();
            let facts = to_facts(&model).expect("facts compile");

            for intruder in [Intruder::Outsider, Intruder::Insider] {
                let engine = run(&facts, intruder);
                let naive = naive_run(&facts, intruder);

                // Flow, reach, and attack sets must agree with the
                // independent reference evaluator.
                let engine_wrt: BTreeSet<_> = engine.flows.wrt.keys().cloned().collect();
                let engine_rd: BTreeSet<_> = engine.flows.rd.keys().cloned().collect();
                let engine_reach: BTreeSet<_> = engine.reach.keys().cloned().collect();
                let engine_attacks: BTreeSet<_> = engine.attacks.keys().cloned().collect();
                assert_eq!(engine_wrt, naive.wrt, "wrt mismatch, seed {}", seed - 1);
                assert_eq!(engine_rd, naive.rd, "rd mismatch, seed {}", seed - 1);
                assert_eq!(
                    engine_reach,
                    naive.reach,
                    "reach mismatch, seed {}",
                    seed - 1
                );
                assert_eq!(
                    engine_attacks,
                    naive.attacks,
                    "attack mismatch, seed {}",
                    seed - 1
                );

                // Path sets must agree with the brute-force enumerator.
                let engine_paths: BTreeSet<AttackPath> = match intruder {
                    Intruder::Outsider => enumerate_outsider_paths(&facts, &engine, &assets),
                    Intruder::Insider => enumerate_insider_paths(&facts, &engine, &assets),
                }
                .into_iter()
                .collect();
                match oracle_enumerate(&facts, intruder, &assets, BUDGET) {
                    Ok(oracle_paths) => {
                        assert_eq!(
                            engine_paths,
                            oracle_paths,
                            "path mismatch, seed {} {intruder:?}",
                            seed - 1
                        );
                    }
                    Err(OracleError::BudgetExceeded { .. }) => {
                        // Pathological dense instance; skip it and generate
                        // another model instead.
                        skipped += 1;
                        continue 'models;
                    }
                }
            }
            checked += 1;
        }
        assert!(checked >= REQUIRED);
    });
}

// ---------------------------------------------------------------------------
// 6. Metamorphic mutation invariants
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_mutation_invariants() {
    criterion(6, "mutation invariants", || {
        const REQUIRED: usize = 1000;
        let mut applied = 0usize;
        let mut seed = 10_000u64;

        while applied < REQUIRED {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            seed += 1;
            let model = gen::random_model(&mut rng);
            let assets: BTreeSet<String> = model.topics.iter().map(|t| t.id.clone()).collect();

            // Protecting a topic never adds a path and removes exactly the
            // insider paths attacking that topic.
            if let Some((mutated, topic)) = gen::protect_random_topic(&model, &mut rng) {
                let before = all_paths(&model, &assets);
                let after = all_paths(&mutated, &assets);
                let expected: BTreeSet<AttackPath> = before
                    .iter()
                    .filter(|p| !(p.intruder == Intruder::Insider && p.affected_topic == topic))
                    .cloned()
                    .collect();
                assert_eq!(after, expected, "protect({topic}) seed {}", seed - 1);
                applied += 1;
            }

            // Adding a channel never removes a reach atom, for either
            // profile.
            if applied < REQUIRED {
                if let Some((mutated, channel)) = gen::add_random_channel(&model, &mut rng) {
                    let facts_before = to_facts(&model).expect("facts compile");
                    let facts_after = to_facts(&mutated).expect("facts compile");
                    for intruder in [Intruder::Outsider, Intruder::Insider] {
                        let before = run(&facts_before, intruder);
                        let after = run(&facts_after, intruder);
                        for port in before.reach.keys() {
                            assert!(
                                after.reach.contains_key(port),
                                "reach({port}) lost after adding {}->{} seed {}",
                                channel.from_port,
                                channel.to_port,
                                seed - 1
                            );
                        }
                    }
                    applied += 1;
                }
            }
        }
        assert!(applied >= REQUIRED);
    });
}

// ---------------------------------------------------------------------------
// 7. Vehicle-scale fixture: frozen counts and runtime bound
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_platform_fixture_counts() {
    criterion(7, "platform fixture counts", || {
        let model_bytes = std::fs::read(fixture("av_platform.model.json")).expect("model bytes");
        let safety_bytes = std::fs::read(fixture("av_platform.safety.json")).expect("safety bytes");
        let options = PipelineOptions {
            profile: ProfileSelection::Both,
            assets: AssetSelector::Auto,
            derive_flows: false,
            self_check: false,
            timings: false,
        };

        let started = Instant::now();
        let report = build_report(&model_bytes, Some(&safety_bytes), &options).expect("report");
        let elapsed = started.elapsed();
        assert!(
            elapsed < Duration::from_secs(2),
            "full analysis took {elapsed:?}"
        );

        // Frozen values, recorded from the brute-force oracle when the
        // fixture was created.
        assert_eq!(report.paths.outsider.len(), 106);
        assert_eq!(report.paths.insider.len(), 24);
        assert_eq!(report.paths.total, 130);

        let mut per_entry: BTreeMap<&str, usize> = BTreeMap::new();
        for path in &report.paths.outsider {
            *per_entry.entry(path.entry.as_str()).or_default() += 1;
        }
        let expected_entries: BTreeMap<&str, usize> = [
            ("Bluetooth", 9),
            ("Front Left Camera", 19),
            ("Front Radar", 6),
            ("Front Right Camera", 22),
            ("GPS", 22),
            ("LiDAR", 6),
            ("Rear Radar", 6),
            ("T-Box", 16),
        ]
        .into_iter()
        .collect();
        assert_eq!(per_entry, expected_entries);

        let mut per_topic: BTreeMap<&str, usize> = BTreeMap::new();
        for path in &report.paths.insider {
            *per_topic.entry(path.affected_topic.as_str()).or_default() += 1;
        }
        let expected_topics: BTreeMap<&str, usize> = [
            ("camera_front_left", 2),
            ("camera_front_right", 1),
            ("chassis_state", 3),
            ("control_cmd", 2),
            ("gnss_pose", 1),
            ("obstacles", 2),
            ("pose", 5),
            ("prediction_obstacles", 1),
            ("relative_map", 1),
            ("routing_request", 1),
            ("routing_response", 1),
            ("traffic_light_status", 2),
            ("trajectory", 1),
            ("v2x_traffic_light", 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(per_topic, expected_topics);

        let outsider = report.engine.outsider.as_ref().expect("outsider run");
        assert_eq!(
            (
                outsider.wrt_count,
                outsider.rd_count,
                outsider.reach.len(),
                outsider.attacks.len(),
                outsider.rounds
            ),
            (56, 39, 65, 16, 20)
        );
        let insider = report.engine.insider.as_ref().expect("insider run");
        assert_eq!(
            (
                insider.wrt_count,
                insider.rd_count,
                insider.reach.len(),
                insider.attacks.len(),
                insider.rounds
            ),
            (0, 25, 41, 14, 2)
        );

        // Re-derive the path sets with the brute-force oracle to confirm the
        // frozen values are still what the oracle computes today.
        let model = load_model_fixture("av_platform.model.json");
        let facts = to_facts(&model).expect("facts compile");
        let assets: BTreeSet<String> = report.asset_topics.iter().cloned().collect();
        let oracle_out = oracle_enumerate(&facts, Intruder::Outsider, &assets, 50_000_000)
            .expect("outsider oracle within budget");
        let oracle_in = oracle_enumerate(&facts, Intruder::Insider, &assets, 50_000_000)
            .expect("insider oracle within budget");
        let engine_out: BTreeSet<AttackPath> = report.paths.outsider.iter().cloned().collect();
        let engine_in: BTreeSet<AttackPath> = report.paths.insider.iter().cloned().collect();
        assert_eq!(engine_out, oracle_out);
        assert_eq!(engine_in, oracle_in);
    });
}

// ---------------------------------------------------------------------------
// 8. Byte-level determinism
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_determinism() {
    criterion(8, "determinism", || {
        let args = AnalyzeArgs {
            model: fixture("av_platform.model.json"),
            safety: Some(fixture("av_platform.safety.json")),
            profile: "both".to_string(),
            assets: "auto".to_string(),
            out: None,
            self_check: false,
            derive_flows: false,
            no_timings: true,
        };

        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut err = Vec::new();
        assert_eq!(cmd_analyze(&args, &mut first, &mut err), EXIT_OK);
        assert_eq!(cmd_analyze(&args, &mut second, &mut err), EXIT_OK);
        assert!(!first.is_empty());
        assert_eq!(first, second, "consecutive runs must be byte-identical");
    });
}

// ---------------------------------------------------------------------------
// 9. Traceability completeness and gap detection
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_traceability() {
    criterion(9, "traceability", || {
        let model_bytes = std::fs::read(fixture("av_platform.model.json")).expect("model bytes");
        let safety_bytes = std::fs::read(fixture("av_platform.safety.json")).expect("safety bytes");
        let options = PipelineOptions {
            profile: ProfileSelection::Both,
            assets: AssetSelector::Auto,
            derive_flows: false,
            self_check: false,
            timings: false,
        };
        let report = build_report(&model_bytes, Some(&safety_bytes), &options).expect("report");

        // Every loss scenario row carries assets, damage, and threats.
        assert_eq!(report.trace_matrix.rows.len(), 9);
        for row in &report.trace_matrix.rows {
            assert!(
                !row.asset_ids.is_empty(),
                "{} has no assets",
                row.loss_scenario_id
            );
            assert!(
                !row.damage_ids.is_empty(),
                "{} has no damage scenarios",
                row.loss_scenario_id
            );
            assert!(
                !row.threat_ids.is_empty(),
                "{} has no threat scenarios",
                row.loss_scenario_id
            );
        }

        // The isolated diagnostics scenario is the single gap: fully traced
        // on the safety side but with no attack path reaching its topic.
        for row in &report.trace_matrix.rows {
            if row.loss_scenario_id == "LS9" {
                assert_eq!(row.attack_path_count, 0);
                assert!(row.gap, "LS9 must be flagged as a gap");
            } else {
                assert!(row.attack_path_count > 0, "{}", row.loss_scenario_id);
                assert!(!row.gap, "{} must not be a gap", row.loss_scenario_id);
            }
        }

        // Gap mode exits with the violation code.
        let dir = tempfile::tempdir().expect("tempdir");
        let report_path = dir.path().join("report.json");
        std::fs::write(&report_path, report.to_json_bytes()).expect("write report");
        let trace = TraceArgs {
            report: report_path,
            loss: None,
            fail_on_gap: true,
        };
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(cmd_trace(&trace, &mut out, &mut err), EXIT_VIOLATION);
    });
}
