//! Two-tuple refinements `Σ λ_{i_h + j_h − h}(A+B) ≥ Σ λ_{i_h}(A) + Σ λ_{j_h}(B)`.

use kreinval::checks::{check_thompson_freede, TOL_CHECK};
use kreinval::model::Signature;
use kreinval::sampling::{instance_rng, sample_admissible, SamplerConfig};

fn main() -> kreinval::Result<()> {
    let sig = Signature::new(3, 3)?;
    let cfg = SamplerConfig::default();
    let mut worst = f64::INFINITY;
    let mut cases = 0;
    for i in 0..50 {
        let mut rng = instance_rng(3, i);
        let a = sample_admissible(sig, &cfg, &mut rng)?.matrix;
        let b = sample_admissible(sig, &cfg, &mut rng)?.matrix;
        let r = check_thompson_freede(&a, &b, TOL_CHECK)?;
        if !r.passed {
            println!("violation on instance {i}:\n{}", serde_json::to_string_pretty(&r).expect("report serializes"));
        }
        cases += r.cases.len();
        worst = worst.min(r.worst_margin.unwrap_or(f64::INFINITY));
    }
    println!("{cases} tuple pairs over 50 instances, worst margin {worst:.3e}");
    Ok(())
}
