//! Variational characterizations on one admissible matrix: one-sided
//! Rayleigh bounds, min-max over positive subspaces and Ky Fan sums.

use kreinval::checks::{check_courant_fischer, check_ky_fan, check_rayleigh_bounds, CheckReport, VariationalOptions};
use kreinval::model::Signature;
use kreinval::sampling::{instance_rng, sample_admissible, SamplerConfig};

fn show(r: &CheckReport) {
    println!(
        "{:<16} {} cases, worst margin {:.2e}, {}",
        r.check_name,
        r.cases.len(),
        r.worst_margin.unwrap_or(f64::NAN),
        if r.passed { "pass" } else { "FAIL" }
    );
}

fn main() -> kreinval::Result<()> {
    let cfg = SamplerConfig::default();
    let mut rng = instance_rng(1, 0);
    let a = sample_admissible(Signature::new(3, 2)?, &cfg, &mut rng)?.matrix;
    let opts = VariationalOptions {
        n_samples: 500,
        ..Default::default()
    };
    show(&check_rayleigh_bounds(&a, &opts, &mut rng)?);
    let cf = check_courant_fischer(&a, &opts, &cfg, &mut rng)?;
    show(&cf);
    for (key, value) in &cf.diagnostics {
        println!("  {key}: {value:.4}");
    }
    for k in 1..=3 {
        show(&check_ky_fan(&a, k, &opts, &cfg, &mut rng)?);
    }
    Ok(())
}
