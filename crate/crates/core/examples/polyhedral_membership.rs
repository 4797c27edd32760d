//! Momentum regions as vertex/generator data: decide membership with the
//! simplex solver, print the certificate and export the region as JSON.

use kreinval::model::{AdmissibleSpectrum, PseudoHermitianMatrix};
use kreinval::polyhedral::{build_region, check_diag_membership, check_sum_membership, lp_feasible, TOL_LP};
use kreinval::sampling::{instance_rng, sample_admissible, SamplerConfig};

fn main() -> kreinval::Result<()> {
    let spec = AdmissibleSpectrum::new(vec![2.0], vec![0.0])?;
    let region = build_region(&spec)?;
    for point in [[2.5, -0.5], [2.5, -0.4], [1.5, 0.5]] {
        let out = lp_feasible(&region, &point, TOL_LP)?;
        match &out.certificate {
            Some(c) if out.feasible => println!("{point:?}: inside, t = {:?}, s = {:?}", c.t, c.s),
            _ => println!("{point:?}: outside, gap {:.3}", out.gap),
        }
    }

    let spec = AdmissibleSpectrum::new(vec![1.0, 3.0], vec![-1.0])?;
    println!("{}", serde_json::to_string_pretty(&build_region(&spec)?).expect("region serializes"));

    let mut rng = instance_rng(5, 0);
    let cfg = SamplerConfig::default();
    let sig = spec.signature();
    let a: PseudoHermitianMatrix = sample_admissible(sig, &cfg, &mut rng)?.matrix;
    let b = sample_admissible(sig, &cfg, &mut rng)?.matrix;
    for r in [check_diag_membership(&a, TOL_LP)?, check_sum_membership(&a, &b, TOL_LP)?] {
        println!("{}: passed {}, diagnostics {:?}", r.check_name, r.passed, r.diagnostics);
    }
    Ok(())
}
