//! Random system-model generation for randomized equivalence and
//! metamorphic testing.
//!
//! Models are built constructively so that every reference resolves and every
//! channel has a legal shape: [`crate::model::validate`] returns no
//! violations for any generated model. Generation is fully driven by the
//! caller's RNG, so a seeded RNG reproduces the same model.

use rand::Rng;

use std::collections::BTreeSet;

use crate::model::{
    Allocation, Channel, ExecutionUnit, InformationFlow, LogicalComponent, NetworkInterface,
    PublicElement, SystemModel, Topic, TopicPort,
};

fn pick<'a, T, R: Rng>(rng: &mut R, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// Generates a random, always-valid system model: a handful of topics,
/// components, ECUs, networks, and public elements, wired with legal-shape
/// channels, partial allocations (occasionally multi-allocated), and
/// information flows (the derivable ones plus random extras).
pub fn random_model<R: Rng>(rng: &mut R) -> SystemModel {
    let mut model = SystemModel::default();

    // Topics; roughly one in six is protected.
    let topic_count = rng.gen_range(3..=8);
    for t in 0..topic_count {
        model.topics.push(Topic {
            id: format!("t{t}"),
            protected: rng.gen_ratio(1, 6),
        });
    }
    let topic_ids: Vec<String> = model.topics.iter().map(|t| t.id.clone()).collect();

    // Components with publisher/subscriber ports. The first component always
    // publishes and the second always subscribes, so the pub/sub fabric is
    // never empty.
    let comp_count = rng.gen_range(2..=6);
    for c in 0..comp_count {
        let mut comp = LogicalComponent {
            id: format!("comp{c}"),
            pub_ports: Vec::new(),
            sub_ports: Vec::new(),
        };
        let pub_count = if c == 0 {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(0..=2)
        };
        for p in 0..pub_count {
            comp.pub_ports.push(TopicPort {
                port: format!("c{c}_pub{p}"),
                topic: pick(rng, &topic_ids).clone(),
            });
        }
        let sub_count = if c == 1 {
            rng.gen_range(1..=2)
        } else {
            rng.gen_range(0..=2)
        };
        for s in 0..sub_count {
            comp.sub_ports.push(TopicPort {
                port: format!("c{c}_sub{s}"),
                topic: pick(rng, &topic_ids).clone(),
            });
        }
        model.components.push(comp);
    }

    // Platform: ECUs and network interfaces.
    let ecu_count = rng.gen_range(1..=3);
    for e in 0..ecu_count {
        model.ecus.push(ExecutionUnit {
            id: format!("ecu{e}"),
            in_ports: (0..rng.gen_range(1..=3))
                .map(|p| format!("ecu{e}_in{p}"))
                .collect(),
            out_ports: (0..rng.gen_range(1..=3))
                .map(|p| format!("ecu{e}_out{p}"))
                .collect(),
        });
    }
    let net_count = rng.gen_range(1..=3);
    for n in 0..net_count {
        model.networks.push(NetworkInterface {
            id: format!("net{n}"),
            in_ports: (0..rng.gen_range(1..=3))
                .map(|p| format!("net{n}_in{p}"))
                .collect(),
            out_ports: (0..rng.gen_range(1..=3))
                .map(|p| format!("net{n}_out{p}"))
                .collect(),
        });
    }
    for u in 0..rng.gen_range(0..=2u32) {
        model.publics.push(PublicElement {
            id: format!("public{u}"),
            out_ports: (0..rng.gen_range(1..=2))
                .map(|p| format!("public{u}_out{p}"))
                .collect(),
        });
    }

    let ecu_ins: Vec<String> = model
        .ecus
        .iter()
        .flat_map(|e| e.in_ports.iter().cloned())
        .collect();
    let ecu_outs: Vec<String> = model
        .ecus
        .iter()
        .flat_map(|e| e.out_ports.iter().cloned())
        .collect();
    let net_ins: Vec<String> = model
        .networks
        .iter()
        .flat_map(|n| n.in_ports.iter().cloned())
        .collect();
    let net_outs: Vec<String> = model
        .networks
        .iter()
        .flat_map(|n| n.out_ports.iter().cloned())
        .collect();

    // Channels, legal shapes only, deduplicated.
    let mut channels: BTreeSet<(String, String)> = BTreeSet::new();
    for public in &model.publics {
        for po in &public.out_ports {
            if rng.gen_ratio(4, 5) {
                channels.insert((po.clone(), pick(rng, &net_ins).clone()));
            }
        }
    }
    for ecu in &model.ecus {
        for ei in &ecu.in_ports {
            for eo in &ecu.out_ports {
                if rng.gen_ratio(1, 2) {
                    channels.insert((ei.clone(), eo.clone()));
                }
            }
        }
    }
    for net in &model.networks {
        for ni in &net.in_ports {
            for no in &net.out_ports {
                if rng.gen_ratio(3, 5) {
                    channels.insert((ni.clone(), no.clone()));
                }
            }
        }
    }
    for eo in &ecu_outs {
        if rng.gen_ratio(3, 5) {
            channels.insert((eo.clone(), pick(rng, &net_ins).clone()));
        }
    }
    for no in &net_outs {
        if rng.gen_ratio(3, 5) {
            channels.insert((no.clone(), pick(rng, &ecu_ins).clone()));
        }
    }
    model.channels = channels
        .into_iter()
        .map(|(from_port, to_port)| Channel { from_port, to_port })
        .collect();

    // Allocations: pub ports to ECU out-ports, sub ports to ECU in-ports.
    // A small fraction of pub ports is allocated twice.
    let mut allocations: BTreeSet<(String, String)> = BTreeSet::new();
    for comp in &model.components {
        for tp in &comp.pub_ports {
            if rng.gen_ratio(7, 10) {
                allocations.insert((tp.port.clone(), pick(rng, &ecu_outs).clone()));
                if rng.gen_ratio(1, 10) {
                    allocations.insert((tp.port.clone(), pick(rng, &ecu_outs).clone()));
                }
            }
        }
        for tp in &comp.sub_ports {
            if rng.gen_ratio(7, 10) {
                allocations.insert((tp.port.clone(), pick(rng, &ecu_ins).clone()));
            }
        }
    }
    model.allocations = allocations
        .into_iter()
        .map(|(component_port, platform_port)| Allocation {
            component_port,
            platform_port,
        })
        .collect();

    // Information flows: everything derivable from the allocations, plus a
    // few random entries.
    let mut flows: BTreeSet<(String, String, String)> =
        crate::model::derive_information_flows(&model)
            .expect("generated model must validate")
            .into_iter()
            .map(|f| (f.ecu, f.entry_port, f.topic))
            .collect();
    for ecu in &model.ecus {
        for ei in &ecu.in_ports {
            if rng.gen_ratio(1, 4) {
                flows.insert((ecu.id.clone(), ei.clone(), pick(rng, &topic_ids).clone()));
            }
        }
    }
    model.information_flows = flows
        .into_iter()
        .map(|(ecu, entry_port, topic)| InformationFlow {
            ecu,
            entry_port,
            topic,
        })
        .collect();

    model
}

/// Marks one random unprotected topic as protected. Returns the mutated
/// model and the topic id, or `None` when every topic is already protected.
pub fn protect_random_topic<R: Rng>(
    model: &SystemModel,
    rng: &mut R,
) -> Option<(SystemModel, String)> {
    let unprotected: Vec<usize> = model
        .topics
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.protected)
        .map(|(i, _)| i)
        .collect();
    if unprotected.is_empty() {
        return None;
    }
    let index = *pick(rng, &unprotected);
    let mut mutated = model.clone();
    mutated.topics[index].protected = true;
    let topic = mutated.topics[index].id.clone();
    Some((mutated, topic))
}

/// Adds one random legal-shape channel that is not yet present. Returns the
/// mutated model and the new channel, or `None` when the model is saturated.
pub fn add_random_channel<R: Rng>(
    model: &SystemModel,
    rng: &mut R,
) -> Option<(SystemModel, Channel)> {
    let existing: BTreeSet<(&str, &str)> = model
        .channels
        .iter()
        .map(|c| (c.from_port.as_str(), c.to_port.as_str()))
        .collect();

    let net_ins: Vec<&String> = model
        .networks
        .iter()
        .flat_map(|n| n.in_ports.iter())
        .collect();
    let ecu_ins: Vec<&String> = model.ecus.iter().flat_map(|e| e.in_ports.iter()).collect();

    let mut candidates: Vec<(String, String)> = Vec::new();
    let mut push = |from: &str, to: &str| {
        if !existing.contains(&(from, to)) {
            candidates.push((from.to_string(), to.to_string()));
        }
    };
    for public in &model.publics {
        for po in &public.out_ports {
            for ni in &net_ins {
                push(po, ni);
            }
        }
    }
    for ecu in &model.ecus {
        for ei in &ecu.in_ports {
            for eo in &ecu.out_ports {
                push(ei, eo);
            }
        }
        for eo in &ecu.out_ports {
            for ni in &net_ins {
                push(eo, ni);
            }
        }
    }
    for net in &model.networks {
        for ni in &net.in_ports {
            for no in &net.out_ports {
                push(ni, no);
            }
        }
        for no in &net.out_ports {
            for ei in &ecu_ins {
                push(no, ei);
            }
        }
    }
    if candidates.is_empty() {
        return None;
    }
    let (from_port, to_port) = pick(rng, &candidates).clone();
    let mut mutated = model.clone();
    let channel = Channel { from_port, to_port };
    mutated.channels.push(channel.clone());
    Some((mutated, channel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{to_facts, validate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_models_always_validate() {
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = random_model(&mut rng);
            let violations = validate(&model);
            assert!(violations.is_empty(), "seed {seed}: {violations:?}");
            assert!(to_facts(&model).is_ok());
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let a = random_model(&mut ChaCha8Rng::seed_from_u64(7));
        let b = random_model(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        let c = random_model(&mut ChaCha8Rng::seed_from_u64(8));
        assert_ne!(a, c);
    }

    #[test]
    fn generated_models_stay_small() {
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = random_model(&mut rng);
            let ports = model
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
                + model
                    .components
                    .iter()
                    .map(|c| c.pub_ports.len() + c.sub_ports.len())
                    .sum::<usize>();
            assert!(ports <= 200, "seed {seed} produced {ports} ports");
        }
    }

    #[test]
    fn protect_mutation_keeps_validity_and_flips_one_topic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let model = random_model(&mut rng);
        let before = model.topics.iter().filter(|t| t.protected).count();
        if let Some((mutated, topic)) = protect_random_topic(&model, &mut rng) {
            assert!(validate(&mutated).is_empty());
            let after = mutated.topics.iter().filter(|t| t.protected).count();
            assert_eq!(after, before + 1);
            assert!(mutated.topics.iter().any(|t| t.id == topic && t.protected));
        }
    }

    #[test]
    fn channel_mutation_keeps_validity_and_adds_one_channel() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let model = random_model(&mut rng);
        if let Some((mutated, channel)) = add_random_channel(&model, &mut rng) {
            assert!(validate(&mutated).is_empty(), "added {channel:?}");
            assert_eq!(mutated.channels.len(), model.channels.len() + 1);
        }
    }
}
