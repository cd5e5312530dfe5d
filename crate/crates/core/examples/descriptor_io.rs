//! Parse, validate and combine descriptors.
//!
//!     cargo run --example descriptor_io

use reeb_bubble::reeb_descriptor::{connected_sum_descriptors, parse, to_json, validate};

const GOOD: &str = r#"{
  "n": 3,
  "base": { "handles": [{ "sphere": 1 }] },
  "records": [{ "kind": "M", "spheres": [{ "dim": 1, "coefficients": { "nu1": 2 } }] }]
}"#;

// two problems: a 2-sphere is too big for n = 3, and nu2 does not exist
const BAD: &str = r#"{
  "n": 3,
  "base": { "handles": [{ "sphere": 1 }] },
  "records": [{ "kind": "S", "spheres": [{ "dim": 2 }, { "dim": 1, "coefficients": { "nu2": 1 } }] }]
}"#;

fn main() {
    let d = parse(GOOD).expect("well-formed");
    assert!(validate(&d).is_empty());
    println!("valid descriptor, n = {}", d.n);

    let bad = parse(BAD).expect("well-formed JSON");
    for v in validate(&bad) {
        println!("violation at {v}");
    }

    match parse(r#"{"n": 3, "base": {"handles": []}, "records": [], "extra": 1}"#) {
        Err(e) => println!("schema error: {e}"),
        Ok(_) => unreachable!(),
    }

    let sum = connected_sum_descriptors(&d, &d).expect("same n");
    println!("connected sum:\n{}", to_json(&sum));
}
