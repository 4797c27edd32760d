use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use kreinval::checks::{check_lidskii_wielandt, check_weyl, sum_spectra, TOL_CHECK};
use kreinval::geometry::pair;
use kreinval::harness::{matrix_to_json, parse_matrix};
use kreinval::model::{
    canonical_diagonal, AdmissibleSpectrum, ComplexVector, PseudoHermitianMatrix, Signature,
};
use kreinval::polyhedral::{build_region, canonical_order, check_sum_membership, lp_feasible, TOL_LP};
use kreinval::sampling::{
    instance_rng, sample_admissible, sample_pseudo_unitary, sample_spectrum, SampleRng, SamplerConfig,
};
use kreinval::spectral::{check_admissible, REALITY_TOL};

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=3, 0usize..=3).prop_map(|(p, q)| Signature::new(p, q).unwrap())
}

fn indefinite_signature() -> impl Strategy<Value = Signature> {
    (1usize..=3, 1usize..=3).prop_map(|(p, q)| Signature::new(p, q).unwrap())
}

fn pair_of(sig: Signature, seed: u64) -> (PseudoHermitianMatrix, PseudoHermitianMatrix, SampleRng) {
    let cfg = SamplerConfig::default();
    let mut rng = instance_rng(seed, 0);
    let a = sample_admissible(sig, &cfg, &mut rng).unwrap().matrix;
    let b = sample_admissible(sig, &cfg, &mut rng).unwrap().matrix;
    (a, b, rng)
}

fn close(x: &AdmissibleSpectrum, y: &AdmissibleSpectrum, tol: f64) -> bool {
    x.max_abs_diff(y).is_some_and(|d| d <= tol)
}

fn random_vector(n: usize, rng: &mut SampleRng) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn spectrum_is_conjugation_invariant(sig in signature(), seed in any::<u64>()) {
        let (a, _, mut rng) = pair_of(sig, seed);
        let u = sample_pseudo_unitary(sig, &SamplerConfig::default(), &mut rng).unwrap();
        let before = check_admissible(&a, REALITY_TOL).unwrap();
        let after = check_admissible(&a.conjugated(&u).unwrap(), REALITY_TOL).unwrap();
        let cond = u.condition_number();
        prop_assert!(close(&before, &after, 1e-8 * cond * cond * a.norm_max().max(1.0)));
    }

    #[test]
    fn spectrum_shifts_with_identity(sig in signature(), seed in any::<u64>(), c in -5.0f64..5.0) {
        let (a, _, _) = pair_of(sig, seed);
        let s = check_admissible(&a, REALITY_TOL).unwrap();
        let shifted = check_admissible(&a.shifted(c), REALITY_TOL).unwrap();
        prop_assert!(close(&s.shifted(c), &shifted, 1e-9));
    }

    #[test]
    fn positive_scaling_scales_spectrum(sig in signature(), seed in any::<u64>(), c in 0.1f64..4.0) {
        let (a, _, _) = pair_of(sig, seed);
        let s = check_admissible(&a, REALITY_TOL).unwrap();
        let scaled = check_admissible(&a.scaled(c), REALITY_TOL).unwrap();
        let expected = AdmissibleSpectrum::new(
            s.lambdas().iter().map(|x| c * x).collect(),
            s.mus().iter().map(|x| c * x).collect(),
        ).unwrap();
        prop_assert!(close(&expected, &scaled, 1e-9 * c.max(1.0)));
    }

    #[test]
    fn pairing_is_preserved_by_pseudo_unitaries(sig in signature(), seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 1);
        let u = sample_pseudo_unitary(sig, &SamplerConfig::default(), &mut rng).unwrap();
        let z = random_vector(sig.n(), &mut rng);
        let w = random_vector(sig.n(), &mut rng);
        let before = pair(&z, &w, sig).unwrap();
        let after = pair(&(u.matrix() * &z), &(u.matrix() * &w), sig).unwrap();
        let cond = u.condition_number();
        prop_assert!((before - after).norm() <= 1e-10 * cond * cond);
    }

    #[test]
    fn sum_gap_is_superadditive(sig in indefinite_signature(), seed in any::<u64>()) {
        let (a, b, _) = pair_of(sig, seed);
        let s = sum_spectra(&a, &b).unwrap();
        prop_assert!(s.c.gap() >= s.a.gap() + s.b.gap() - TOL_CHECK);
    }

    #[test]
    fn single_index_lidskii_matches_weyl(sig in signature(), seed in any::<u64>()) {
        let (a, b, _) = pair_of(sig, seed);
        let lw = check_lidskii_wielandt(&a, &b, 1, TOL_CHECK).unwrap();
        let weyl = check_weyl(&a, &b, TOL_CHECK).unwrap();
        for k in 1..=sig.p() {
            for tag in ["", " swapped"] {
                let x = lw.case(&format!("lambda i=({k}){tag}")).unwrap();
                let y = weyl.case(&format!("lambda k={k}{tag}")).unwrap();
                prop_assert_eq!(x.lhs, y.lhs);
                prop_assert!((x.rhs - y.rhs).abs() <= 1e-14 * (1.0 + y.rhs.abs()));
            }
        }
        prop_assert!(lw.passed && weyl.passed);
    }

    #[test]
    fn definite_signature_matches_hermitian_solver(p in 1usize..=4, seed in any::<u64>()) {
        let sig = Signature::new(p, 0).unwrap();
        let (a, _, _) = pair_of(sig, seed);
        let mut oracle: Vec<f64> = a.matrix().clone().symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        let s = check_admissible(&a, REALITY_TOL).unwrap();
        for (x, y) in s.lambdas().iter().zip(&oracle) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn membership_survives_translation(sig in indefinite_signature(), seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 2);
        let cfg = SamplerConfig::default();
        let spec = sample_spectrum(sig, &cfg, &mut rng);
        let region = build_region(&spec).unwrap();
        let shift: Vec<f64> = (0..sig.n()).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
        let moved = region.translated(&shift).unwrap();
        let t: Vec<f64> = {
            let raw: Vec<f64> = region.vertices.iter().map(|_| rng.random::<f64>()).collect();
            let total: f64 = raw.iter().sum();
            raw.iter().map(|x| x / total).collect()
        };
        let s: Vec<f64> = region.generators.iter().map(|_| rng.random::<f64>()).collect();
        let inside = region.combine(&t, &s);
        let outside: Vec<f64> = inside.iter().enumerate().map(|(i, x)| if i == 0 { x - 1.0 } else { *x }).collect();
        for point in [inside, outside] {
            let there: Vec<f64> = point.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let here = lp_feasible(&region, &point, TOL_LP).unwrap().feasible;
            prop_assert_eq!(here, lp_feasible(&moved, &there, TOL_LP).unwrap().feasible);
        }
    }

    #[test]
    fn certificates_reconstruct_the_point(sig in indefinite_signature(), seed in any::<u64>()) {
        let (a, _, _) = pair_of(sig, seed);
        let spec = check_admissible(&a, REALITY_TOL).unwrap();
        let region = build_region(&spec).unwrap();
        let point = canonical_order(sig, &a.diagonal());
        let out = lp_feasible(&region, &point, TOL_LP).unwrap();
        prop_assert!(out.feasible);
        let cert = out.certificate.unwrap();
        prop_assert!(cert.t.iter().all(|&x| x >= -TOL_LP) && cert.s.iter().all(|&x| x >= -TOL_LP));
        prop_assert!((cert.t.iter().sum::<f64>() - 1.0).abs() <= TOL_LP);
        let recon = region.combine(&cert.t, &cert.s);
        let err = recon.iter().zip(&point).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        prop_assert!(err <= TOL_LP && (err - cert.residual).abs() <= 1e-15);
    }

    #[test]
    fn positive_block_of_diagonal_dominates_lambdas(sig in indefinite_signature(), seed in any::<u64>()) {
        let (a, _, _) = pair_of(sig, seed);
        let spec = check_admissible(&a, REALITY_TOL).unwrap();
        let diag = a.diagonal();
        let lam_sum: f64 = diag[..sig.p()].iter().sum();
        prop_assert!(lam_sum >= spec.lambdas().iter().sum::<f64>() - TOL_CHECK);
        let mu_sum: f64 = diag[sig.p()..].iter().sum();
        prop_assert!(mu_sum <= spec.mus().iter().sum::<f64>() + TOL_CHECK);
    }

    #[test]
    fn sum_membership_agrees_with_lidskii(sig in signature(), seed in any::<u64>()) {
        let (a, b, _) = pair_of(sig, seed);
        let member = check_sum_membership(&a, &b, TOL_LP).unwrap();
        let lw = check_lidskii_wielandt(&a, &b, sig.p().max(sig.q()), TOL_CHECK).unwrap();
        prop_assert!(member.passed);
        prop_assert!(lw.passed);
    }

    #[test]
    fn diagonal_of_canonical_matrix_is_a_vertex(sig in signature(), seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 3);
        let spec = sample_spectrum(sig, &SamplerConfig::default(), &mut rng);
        let d = canonical_diagonal(&spec);
        let region = build_region(&spec).unwrap();
        let out = lp_feasible(&region, &canonical_order(sig, &d.diagonal()), TOL_LP).unwrap();
        prop_assert!(out.feasible);
        prop_assert!(out.certificate.unwrap().s.iter().sum::<f64>() <= TOL_LP);
    }

    #[test]
    fn matrix_json_round_trips(sig in signature(), seed in any::<u64>()) {
        let (a, _, _) = pair_of(sig, seed);
        prop_assert_eq!(parse_matrix(&matrix_to_json(&a)).unwrap(), a);
    }
}
