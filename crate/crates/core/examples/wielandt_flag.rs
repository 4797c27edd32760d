//! Flags of positive subspaces: subordinate frames on the eigenflag never
//! exceed the tuple sum, and ascent on random flags reaches it.

use kreinval::checks::{ascend_subordinate, check_wielandt_flag, WielandtOptions};
use kreinval::model::{IndexTuple, Signature};
use kreinval::sampling::{instance_rng, sample_admissible, sample_flag, SamplerConfig};
use kreinval::spectral::{check_admissible, REALITY_TOL};

fn main() -> kreinval::Result<()> {
    let sig = Signature::new(3, 1)?;
    let cfg = SamplerConfig::default();
    let mut rng = instance_rng(4, 0);
    let a = sample_admissible(sig, &cfg, &mut rng)?.matrix;
    let spec = check_admissible(&a, REALITY_TOL)?;
    let tuple = IndexTuple::new(vec![1, 3], sig.p())?;
    let target: f64 = tuple.indices().iter().map(|&i| spec.lambda(i)).sum();
    println!("tuple {tuple}, target sum {target:.6}");

    for f in 0..5 {
        let flag = sample_flag(sig, &tuple, &cfg, &mut rng)?;
        let out = ascend_subordinate(&a, &flag, 200, 1e-12, 3, &mut rng)?;
        println!("flag {f}: ascent {:.6} after {} sweeps (gap {:+.2e})", out.value, out.iterations, out.value - target);
    }

    let report = check_wielandt_flag(&a, &tuple, &WielandtOptions::default(), &cfg, &mut rng)?;
    println!(
        "report: {} hard cases, soft success {:.1}%, passed {}",
        report.hard_cases().count(),
        100.0 * report.soft_success_rate.unwrap_or(1.0),
        report.passed
    );
    Ok(())
}
