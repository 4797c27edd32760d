//! Sum inequalities for a random admissible pair: trace identity, Weyl and
//! Lidskii-Wielandt tuple sums.

use kreinval::checks::{check_lidskii_wielandt, check_trace_identity, check_weyl, sum_spectra, TOL_CHECK};
use kreinval::model::Signature;
use kreinval::sampling::{instance_rng, sample_admissible, SamplerConfig};

fn main() -> kreinval::Result<()> {
    let sig = Signature::new(3, 2)?;
    let cfg = SamplerConfig::default();
    let mut rng = instance_rng(2, 0);
    let a = sample_admissible(sig, &cfg, &mut rng)?.matrix;
    let b = sample_admissible(sig, &cfg, &mut rng)?.matrix;
    let s = sum_spectra(&a, &b)?;
    println!("lambda(A) {:?}\nlambda(B) {:?}\nlambda(C) {:?}", s.a.lambdas(), s.b.lambdas(), s.c.lambdas());
    println!("gap(C) = {:.4} >= gap(A) + gap(B) = {:.4}", s.c.gap(), s.a.gap() + s.b.gap());

    println!("trace passed: {}", check_trace_identity(&a, &b, 1e-9)?.passed);
    println!("weyl passed: {}", check_weyl(&a, &b, TOL_CHECK)?.passed);
    let lw = check_lidskii_wielandt(&a, &b, 3, TOL_CHECK)?;
    for case in lw.cases.iter().filter(|c| !c.case_id.ends_with("swapped")) {
        println!("{:<22} {:>9.5} {} {:>9.5}", case.case_id, case.lhs, case.relation, case.rhs);
    }
    Ok(())
}
