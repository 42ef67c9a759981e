//! Instance files: generate a random instance, serialize it canonically,
//! hash it, and read it back. The canonical form (sorted keys, "p/q"
//! rational strings) makes the digest stable across formatting variants.
//!
//! Run with: cargo run --example instance_files

use stochopt::hardgen::{random_instance, RandomParams};
use stochopt::io::{instance_digest, instance_to_string, parse_instance, Instance};

fn main() -> stochopt::Result<()> {
    let params = RandomParams {
        n: 3,
        m: 2,
        seed: 42,
        ..Default::default()
    };
    let instance = Instance::Single(random_instance(&params)?);
    let text = instance_to_string(&instance);
    println!("canonical serialization:\n{text}");
    println!("digest: {}", instance_digest(&instance));

    let back = parse_instance(&text)?;
    assert_eq!(back, instance);
    println!("round trip: exact match");

    // Inputs may use any mix of integers, decimals and "p/q" strings; they
    // parse exactly and normalize to the same canonical form.
    let noisy = r#"{
        "type": "single", "n": 2, "m": 2, "budget": 10, "kappa": 2,
        "eps": [0.5, "1/2"],
        "d": [1, "2"],
        "a": [[3, 1], [0, 4]],
        "c": [["1", 2.0], [2, "4"]]
    }"#;
    let parsed = parse_instance(noisy)?;
    println!(
        "mixed-format input normalizes to digest {}",
        instance_digest(&parsed)
    );
    Ok(())
}
