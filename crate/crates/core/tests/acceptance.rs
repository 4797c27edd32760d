//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::time::Instant;

use kreinval::checks::{
    check_courant_fischer, check_ky_fan, check_lidskii_wielandt, check_planted_recovery,
    check_rayleigh_bounds, check_thompson_freede, check_trace_identity, check_weyl,
    check_wielandt_flag, CheckReport, VariationalOptions, WielandtOptions,
};
use kreinval::harness::{run_collect, run_suite, OutputFormat, ReportRecord, Suite, SuiteConfig, SUMMARY_FILE};
use kreinval::minkowski::{check_reverse_triangle, sample_future_timelike};
use kreinval::model::{AdmissibleSpectrum, IndexTuple, PseudoHermitianMatrix, Signature};
use kreinval::polyhedral::{build_region, check_diag_membership, check_sum_membership, lp_feasible};
use kreinval::sampling::{instance_rng, sample_admissible, PlantedAdmissible, SamplerConfig};

const SIGNATURES: [(usize, usize); 5] = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)];
const SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).expect("nonempty signature")
}

fn planted(s: Signature, seed: u64, index: u64) -> (PlantedAdmissible, PlantedAdmissible) {
    let cfg = SamplerConfig::default();
    let mut rng = instance_rng(seed, index);
    let a = sample_admissible(s, &cfg, &mut rng).expect("sampling succeeds");
    let b = sample_admissible(s, &cfg, &mut rng).expect("sampling succeeds");
    (a, b)
}

/// Fails with the first failing case of the first failing report.
fn all_pass<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Result<(usize, f64), String> {
    let mut cases = 0;
    let mut worst = f64::INFINITY;
    for r in reports {
        if let Some(reason) = &r.failure {
            return Err(format!("{} did not run: {reason}", r.check_name));
        }
        for c in r.hard_cases() {
            cases += 1;
            worst = worst.min(c.margin);
            if !c.passed() {
                return Err(format!(
                    "{} {} in ({},{}): {} {:?} {} (margin {:.3e}, tol {:.1e})",
                    r.check_name, c.case_id, r.instance.p, r.instance.q, c.lhs, c.relation, c.rhs, c.margin, c.tol
                ));
            }
        }
    }
    Ok((cases, worst))
}

fn structural_round_trip() -> Outcome {
    let start = Instant::now();
    let mut worst_ratio = 0.0f64;
    for (p, q) in SIGNATURES {
        for i in 0..200 {
            let (a, _) = planted(sig(p, q), SEED, i);
            let r = check_planted_recovery(&a, 1e-8).map_err(|e| e.to_string())?;
            all_pass([&r])?;
            let cond2 = a.cond() * a.cond();
            for c in r.hard_cases().filter(|c| c.case_id.starts_with("lambda") || c.case_id.starts_with("mu")) {
                worst_ratio = worst_ratio.max((c.lhs - c.rhs).abs() / cond2);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 10.0 {
        return Err(format!("took {secs:.2}s"));
    }
    Ok(format!("1000 instances, max error / cond² {worst_ratio:.2e}, {secs:.2}s"))
}

fn variational_reports<F>(instances: u64, mut f: F) -> Result<(usize, f64), String>
where
    F: FnMut(&PseudoHermitianMatrix, &mut kreinval::sampling::SampleRng) -> kreinval::Result<Vec<CheckReport>>,
{
    let mut total = 0;
    let mut worst = f64::INFINITY;
    for (p, q) in SIGNATURES {
        for i in 0..instances {
            let (a, _) = planted(sig(p, q), SEED ^ 0x5EED, i);
            let mut rng = instance_rng(SEED ^ 0xB0B, i);
            let reports = f(&a.matrix, &mut rng).map_err(|e| e.to_string())?;
            let (n, w) = all_pass(&reports)?;
            total += n;
            worst = worst.min(w);
        }
    }
    Ok((total, worst))
}

fn opts(n_samples: usize) -> VariationalOptions {
    VariationalOptions {
        n_samples,
        tol: 1e-8,
        witness_tol: 1e-9,
    }
}

fn rayleigh_bounds() -> Outcome {
    let (n, w) = variational_reports(10, |a, rng| Ok(vec![check_rayleigh_bounds(a, &opts(1000), rng)?]))?;
    Ok(format!("{n} cases over 1000 cone vectors each, worst margin {w:.2e}"))
}

fn courant_fischer() -> Outcome {
    let cfg = SamplerConfig::default();
    let (n, w) = variational_reports(10, |a, rng| Ok(vec![check_courant_fischer(a, &opts(500), &cfg, rng)?]))?;
    Ok(format!("{n} cases over 500 subspaces each, worst margin {w:.2e}"))
}

fn ky_fan() -> Outcome {
    let cfg = SamplerConfig::default();
    let (n, w) = variational_reports(10, |a, rng| {
        (1..=a.signature().p()).map(|k| check_ky_fan(a, k, &opts(200), &cfg, rng)).collect()
    })?;
    Ok(format!("{n} cases over 200 frames each, worst margin {w:.2e}"))
}

fn sum_inequalities() -> Outcome {
    let mut total = 0;
    for (p, q) in SIGNATURES.into_iter().chain([(4, 4)]) {
        for i in 0..100 {
            let (a, b) = planted(sig(p, q), SEED ^ 0x5u64, i);
            let (a, b) = (&a.matrix, &b.matrix);
            let reports = [
                check_trace_identity(a, b, 1e-9),
                check_weyl(a, b, 1e-8),
                check_lidskii_wielandt(a, b, 4, 1e-8),
            ]
            .into_iter()
            .collect::<kreinval::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
            total += all_pass(&reports)?.0;
        }
    }
    Ok(format!("{total} cases, 100 pairs per signature"))
}

fn thompson_freede() -> Outcome {
    let mut total = 0;
    for (p, q) in SIGNATURES.into_iter().chain([(4, 4)]) {
        for i in 0..100 {
            let (a, b) = planted(sig(p, q), SEED ^ 0x6u64, i);
            let r = check_thompson_freede(&a.matrix, &b.matrix, 1e-8).map_err(|e| e.to_string())?;
            if let Err(msg) = all_pass([&r]) {
                let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("counterexample.json");
                let artifact = serde_json::json!({
                    "a": kreinval::harness::MatrixFile::from_matrix(&a.matrix),
                    "b": kreinval::harness::MatrixFile::from_matrix(&b.matrix),
                    "report": r,
                });
                std::fs::write(&path, artifact.to_string()).map_err(|e| e.to_string())?;
                return Err(format!("{msg}; saved to {}", path.display()));
            }
            total += r.cases.len();
        }
    }
    Ok(format!("{total} cases, 100 pairs per signature"))
}

fn wielandt_flags() -> Outcome {
    let cfg = SamplerConfig::default();
    let wopts = WielandtOptions::default();
    let mut hard = 0;
    let mut worst_rate = 1.0f64;
    let mut check = |a: &PseudoHermitianMatrix, tuple: &IndexTuple, stream: u64| -> Result<(), String> {
        let mut rng = instance_rng(SEED ^ 0x7, stream);
        let r = check_wielandt_flag(a, tuple, &wopts, &cfg, &mut rng).map_err(|e| e.to_string())?;
        hard += all_pass([&r])?.0;
        let rate = r.soft_success_rate.unwrap_or(1.0);
        worst_rate = worst_rate.min(rate);
        if rate < 0.95 {
            return Err(format!("tuple {tuple} in {}: ascent success {:.1}%", a.signature(), 100.0 * rate));
        }
        Ok(())
    };
    let (a, _) = planted(sig(2, 1), SEED ^ 0x71, 0);
    check(&a.matrix, &IndexTuple::new(vec![1, 2], 2).expect("valid tuple"), 0)?;
    let mut stream = 1;
    for (p, q) in SIGNATURES {
        for i in 0..3 {
            let (a, _) = planted(sig(p, q), SEED ^ 0x72, i);
            for tuple in IndexTuple::enumerate(p, p) {
                check(&a.matrix, &tuple, stream)?;
                stream += 1;
            }
        }
    }
    Ok(format!("{hard} hard cases, worst per-tuple ascent success {:.1}%", 100.0 * worst_rate))
}

fn polyhedral_membership() -> Outcome {
    let mut total = 0;
    let mut worst_residual = 0.0f64;
    for (p, q) in SIGNATURES {
        for i in 0..100 {
            let (a, b) = planted(sig(p, q), SEED ^ 0x8, i);
            let reports = [
                check_diag_membership(&a.matrix, 1e-9),
                check_diag_membership(&b.matrix, 1e-9),
                check_sum_membership(&a.matrix, &b.matrix, 1e-9),
            ]
            .into_iter()
            .collect::<kreinval::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
            total += all_pass(&reports)?.0;
            for c in reports.iter().flat_map(|r| &r.cases) {
                if c.case_id.ends_with("residual") {
                    worst_residual = worst_residual.max(c.lhs);
                }
            }
        }
    }
    let spec = AdmissibleSpectrum::new(vec![2.0], vec![0.0]).map_err(|e| e.to_string())?;
    let region = build_region(&spec).map_err(|e| e.to_string())?;
    let decide = |x: [f64; 2]| lp_feasible(&region, &x, 1e-9).map_err(|e| e.to_string());
    let feasible = decide([2.5, -0.5])?;
    let s = feasible.certificate.as_ref().map_or(f64::NAN, |c| c.s[0]);
    if !feasible.feasible || (s - 0.5).abs() > 1e-9 {
        return Err(format!("(2.5, -0.5) should be feasible with s = 0.5, got {feasible:?}"));
    }
    if decide([2.5, -0.4])?.feasible {
        return Err("(2.5, -0.4) should fail the coordinate sum".into());
    }
    if decide([1.5, 0.5])?.feasible {
        return Err("(1.5, 0.5) needs a negative cone weight".into());
    }
    Ok(format!("{total} cases, max certificate residual {worst_residual:.1e}, 3 closed-form points decided"))
}

fn minkowski() -> Outcome {
    let mut rng = instance_rng(SEED, 9);
    let mut worst = f64::INFINITY;
    for _ in 0..1000 {
        let a = sample_future_timelike(&mut rng);
        let b = sample_future_timelike(&mut rng);
        let r = check_reverse_triangle(a, b, 1e-10).map_err(|e| e.to_string())?;
        worst = worst.min(all_pass([&r])?.1);
    }
    Ok(format!("1000 pairs, worst margin {worst:.2e}"))
}

/// Eigenvalues of a Hermitian matrix, ascending.
fn hermitian_eigenvalues(a: &PseudoHermitianMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = a.matrix().clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `x` majorized by `y`: equal sums and dominated partial sums of the
/// descending rearrangements.
fn majorized(x: &[f64], y: &[f64], tol: f64) -> bool {
    let desc = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (x, y) = (desc(x), desc(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in x.iter().zip(&y) {
        sx += a;
        sy += b;
        if sx > sy + tol {
            return false;
        }
    }
    (sx - sy).abs() <= tol
}

/// Recomputes every case of a definite-signature run from a plain
/// Hermitian eigensolver and classical formulas.
fn hermitian_degeneration() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut compared = 0usize;
    for p in 1..=4 {
        let cfg = SuiteConfig {
            p,
            q: 0,
            instances: 3,
            seed: Some(SEED),
            ..Default::default()
        };
        let (_, records) = run_collect(&cfg).map_err(|e| e.to_string())?;
        // Position of each record within its (instance, suite) group: the
        // structural and diagonal reports come as A, then B.
        let mut position = std::collections::BTreeMap::new();
        for rec in &records {
            all_pass([&rec.report])?;
            let slot = position.entry((rec.instance, rec.suite)).or_insert(0usize);
            let first = *slot == 0;
            *slot += 1;
            let mut rng = instance_rng(SEED, rec.instance);
            let a = sample_admissible(sig(p, 0), &cfg.sampler, &mut rng).map_err(|e| e.to_string())?;
            let b = sample_admissible(sig(p, 0), &cfg.sampler, &mut rng).map_err(|e| e.to_string())?;
            let (a, b) = (a.matrix, b.matrix);
            let c = a.try_add(&b).map_err(|e| e.to_string())?;
            let (la, lb, lc) = (hermitian_eigenvalues(&a), hermitian_eigenvalues(&b), hermitian_eigenvalues(&c));
            let sum = |v: &[f64], idx: &[usize]| idx.iter().map(|&i| v[i - 1]).sum::<f64>();
            let head = |m: usize| (1..=m).collect::<Vec<_>>();
            let agree = |what: &str, got: f64, want: f64| -> Result<(), String> {
                if (got - want).abs() > TOL {
                    Err(format!("{} instance {} {what}: {got} vs oracle {want}", rec.suite, rec.instance))
                } else {
                    Ok(())
                }
            };
            for case in &rec.report.cases {
                let id = case.case_id.as_str();
                let swapped = id.ends_with("swapped");
                let (x, y) = if swapped { (&lb, &la) } else { (&la, &lb) };
                let (lhs, rhs) = match rec.suite {
                    Suite::Structural => {
                        if !id.starts_with("lambda") {
                            continue;
                        }
                        let own = if first { &la } else { &lb };
                        (Some(sum(own, &case.indices)), None)
                    }
                    Suite::Trace => match id {
                        "spectral sum" => (Some(lc.iter().sum()), Some(la.iter().sum::<f64>() + lb.iter().sum::<f64>())),
                        _ => (Some(lc.iter().sum()), None),
                    },
                    Suite::Weyl => (Some(sum(&lc, &case.indices)), Some(sum(x, &case.indices) + y[0])),
                    Suite::Lidskii => (
                        Some(sum(&lc, &case.indices)),
                        Some(sum(x, &case.indices) + sum(y, &head(case.indices.len()))),
                    ),
                    Suite::ThompsonFreede => {
                        let merged: Vec<usize> =
                            case.indices.iter().zip(&case.partner).enumerate().map(|(h, (i, j))| i + j - h - 1).collect();
                        (Some(sum(&lc, &merged)), Some(sum(&la, &case.indices) + sum(&lb, &case.partner)))
                    }
                    Suite::CourantFischer | Suite::KyFan | Suite::Wielandt => {
                        if id.starts_with("trace consistency") {
                            continue;
                        }
                        let target = sum(&la, &case.indices);
                        let exact = matches!(case.relation, kreinval::checks::Relation::Eq);
                        (exact.then_some(target), Some(target))
                    }
                    Suite::Polyhedral => {
                        if id.ends_with("residual") || id == "lambda block sum" {
                            continue;
                        }
                        let expected = match (rec.report.check_name.as_str(), id) {
                            ("diag_membership", _) => {
                                let (own, own_ev) = if first { (&a, &la) } else { (&b, &lb) };
                                majorized(&own.diagonal(), own_ev, TOL)
                            }
                            (_, "A + S_B") => majorized(&diff_desc(&lc, &la), &lb, TOL),
                            _ => majorized(&diff_desc(&lc, &lb), &la, TOL),
                        };
                        if expected != case.passed() {
                            return Err(format!("polyhedral {id}: LP says {}, majorization says {expected}", case.passed()));
                        }
                        compared += 1;
                        continue;
                    }
                };
                if let Some(l) = lhs {
                    agree(&format!("{id} lhs"), case.lhs, l)?;
                }
                if let Some(r) = rhs {
                    agree(&format!("{id} rhs"), case.rhs, r)?;
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} cases matched the Hermitian oracle, signatures (1..4, 0)"))
}

fn diff_desc(c: &[f64], a: &[f64]) -> Vec<f64> {
    c.iter().rev().zip(a.iter().rev()).map(|(x, y)| x - y).collect()
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for format in [OutputFormat::Json, OutputFormat::Csv] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let dir = tmp.path().join(format!("{format:?}-{run}"));
            let cfg = SuiteConfig {
                p: 2,
                q: 2,
                instances: 6,
                seed: Some(SEED),
                out: Some(dir.clone()),
                format,
                ..Default::default()
            };
            run_suite(&cfg).map_err(|e| e.to_string())?;
            let report = std::fs::read(kreinval::harness::reports_path(&dir, format)).map_err(|e| e.to_string())?;
            let summary = std::fs::read(dir.join(SUMMARY_FILE)).map_err(|e| e.to_string())?;
            outputs.push((report, summary));
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{format:?} outputs differ between identical runs"));
        }
        compared += outputs[0].0.len() + outputs[0].1.len();
    }
    let parsed: Vec<ReportRecord> = {
        let cfg = SuiteConfig {
            p: 2,
            q: 1,
            instances: 2,
            seed: Some(SEED),
            ..Default::default()
        };
        let (_, a) = run_collect(&cfg).map_err(|e| e.to_string())?;
        let (_, b) = run_collect(&cfg).map_err(|e| e.to_string())?;
        if a != b {
            return Err("in-memory records differ".into());
        }
        a
    };
    Ok(format!("{compared} bytes identical across runs, {} in-memory records equal", parsed.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("structural round trip", structural_round_trip),
        ("one-sided Rayleigh bounds", rayleigh_bounds),
        ("Courant-Fischer", courant_fischer),
        ("Ky Fan", ky_fan),
        ("Weyl, Lidskii-Wielandt and trace", sum_inequalities),
        ("Thompson-Freede", thompson_freede),
        ("flag statements and interlacing", wielandt_flags),
        ("polyhedral membership", polyhedral_membership),
        ("Minkowski cross-check", minkowski),
        ("Hermitian degeneration", hermitian_degeneration),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", n + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", n + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
