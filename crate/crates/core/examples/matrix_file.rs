//! Matrix JSON files: write a sampled matrix, read it back bit-exactly and
//! see how a tampered entry is rejected.

use kreinval::harness::{matrix_to_json, parse_matrix, read_matrix, write_matrix};
use kreinval::model::Signature;
use kreinval::sampling::{instance_rng, sample_admissible, SamplerConfig};

fn main() -> kreinval::Result<()> {
    let a = sample_admissible(Signature::new(1, 1)?, &SamplerConfig::default(), &mut instance_rng(6, 0))?.matrix;
    let path = std::env::temp_dir().join("kreinval_example_matrix.json");
    write_matrix(&path, &a)?;
    println!("{}", std::fs::read_to_string(&path)?);
    assert_eq!(read_matrix(&path)?, a);
    println!("round trip exact");

    let mut value: serde_json::Value = serde_json::from_str(&matrix_to_json(&a)).expect("valid json");
    value["entries"][0][1][0] = serde_json::json!(42.0);
    match parse_matrix(&value.to_string()) {
        Ok(_) => println!("tampered file accepted?"),
        Err(e) => println!("tampered file rejected: {e}"),
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
