//! Plant a spectrum behind a random pseudo-unitary and recover it.

use kreinval::geometry::{classify, TOL_NULL};
use kreinval::model::{AdmissibleSpectrum, Signature};
use kreinval::sampling::{instance_rng, plant, sample_pseudo_unitary, SamplerConfig};
use kreinval::spectral::{admissible_decomposition, REALITY_TOL};

fn main() -> kreinval::Result<()> {
    let sig = Signature::new(3, 2)?;
    let planted_spec = AdmissibleSpectrum::new(vec![1.0, 2.5, 4.0], vec![0.5, -1.0])?;
    let mut rng = instance_rng(7, 0);
    let u = sample_pseudo_unitary(sig, &SamplerConfig::default(), &mut rng)?;
    let planted = plant(&planted_spec, &u)?;
    println!("cond(U) = {:.3}", planted.cond());

    let d = admissible_decomposition(&planted.matrix, REALITY_TOL)?;
    println!("lambda (ascending)  {:?}", d.spectrum.lambdas());
    println!("mu (descending)     {:?}", d.spectrum.mus());
    println!("gap lambda_1 - mu_1 {:.6}", d.spectrum.gap());
    println!("canonical vector    {:?}", d.spectrum.canonical_vector());
    for k in 1..=sig.p() {
        let v = classify(&d.v(k), sig, TOL_NULL)?;
        println!("v_{k}: {:?}, <v, v> = {:+.3}", v.cone_class, v.self_pairing);
    }
    for l in 1..=sig.q() {
        let w = classify(&d.w(l), sig, TOL_NULL)?;
        println!("w_{l}: {:?}, <w, w> = {:+.3}", w.cone_class, w.self_pairing);
    }
    Ok(())
}
