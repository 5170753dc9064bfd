//! Fuzzes the safety-model decoder: raw parsing plus resolution against a
//! small host architecture, so reference and rating validation run too.

#![no_main]

use libfuzzer_sys::fuzz_target;
use threatpath::model::parse_model;
use threatpath::safety::{load_safety, parse_safety};

const HOST_MODEL: &[u8] = br#"{
  "schema": 1,
  "topics": [{"id": "t"}],
  "components": [
    {"id": "a", "pub_ports": [{"port": "a_o", "topic": "t"}]},
    {"id": "b", "sub_ports": [{"port": "b_i", "topic": "t"}]}
  ]
}"#;

fuzz_target!(|data: &[u8]| {
    if parse_safety(data).is_err() {
        return;
    }
    let model = parse_model(HOST_MODEL).expect("embedded host model parses");
    let _ = load_safety(data, &model);
});
