//! Fuzzes the architecture-model decoder end to end: parse, validate, and —
//! for models that survive validation — compile to facts and run both
//! intruder profiles with the provenance replay check as an embedded
//! invariant.

#![no_main]

use libfuzzer_sys::fuzz_target;
use threatpath::engine::{run, Intruder};
use threatpath::model::parse_model;
use threatpath::{to_facts, validate};

fuzz_target!(|data: &[u8]| {
    let Ok(model) = parse_model(data) else {
        return;
    };
    if !validate(&model).is_empty() {
        return;
    }
    let facts = to_facts(&model).expect("validated models must compile");
    for intruder in [Intruder::Outsider, Intruder::Insider] {
        let result = run(&facts, intruder);
        result
            .replay_check(&facts)
            .expect("derivations must replay");
    }
});
