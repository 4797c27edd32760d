//! Inequalities relating the spectra of `A`, `B` and `C = A + B`.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;

use super::{CheckReport, Relation, ReportBuilder};
use crate::error::{Error, Result};
use crate::model::{AdmissibleSpectrum, IndexTuple, PseudoHermitianMatrix};
use crate::sampling::instance_rng;
use crate::spectral::{check_admissible, REALITY_TOL};

/// Spectra of both summands and of their sum.
#[derive(Clone, Debug)]
pub struct SumSpectra {
    pub a: AdmissibleSpectrum,
    pub b: AdmissibleSpectrum,
    pub c: AdmissibleSpectrum,
}

/// Spectra of `A`, `B` and `A + B`. Failure of the summands propagates
/// unchanged; failure of the sum is wrapped in [`Error::NotAdmissibleSum`].
pub fn sum_spectra(a: &PseudoHermitianMatrix, b: &PseudoHermitianMatrix) -> Result<SumSpectra> {
    let sa = check_admissible(a, REALITY_TOL)?;
    let sb = check_admissible(b, REALITY_TOL)?;
    let c = a.try_add(b)?;
    let sc = check_admissible(&c, REALITY_TOL).map_err(|e| Error::NotAdmissibleSum(Box::new(e)))?;
    Ok(SumSpectra { a: sa, b: sb, c: sc })
}

/// Runs `body` on the sum spectra, turning an inadmissible sum into a
/// failed report instead of an error.
fn with_sum(
    name: &str,
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    body: impl FnOnce(&SumSpectra, &mut ReportBuilder),
) -> Result<CheckReport> {
    let sig = a.signature();
    match sum_spectra(a, b) {
        Ok(s) => {
            let mut builder = ReportBuilder::new(name, sig);
            body(&s, &mut builder);
            Ok(builder.finish())
        }
        Err(e @ Error::NotAdmissibleSum(_)) => Ok(CheckReport::failed(name, sig, e.to_string())),
        Err(e) => Err(e),
    }
}

/// `Σλ(C) + Σμ(C) = Σλ(A) + Σμ(A) + Σλ(B) + Σμ(B)`, also against `tr C`.
/// `rel_tol` is scaled by the total absolute spectral mass.
pub fn check_trace_identity(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    rel_tol: f64,
) -> Result<CheckReport> {
    let trace_c: f64 = a.try_add(b)?.matrix().diagonal().iter().map(|z| z.re).sum();
    with_sum("trace", a, b, |s, r| {
        let mass: f64 = [&s.a, &s.b, &s.c]
            .iter()
            .flat_map(|sp| sp.lambdas().iter().chain(sp.mus()))
            .map(|x| x.abs())
            .sum();
        let tol = rel_tol * mass.max(1.0);
        r.hard("spectral sum", vec![], s.c.total(), Relation::Eq, s.a.total() + s.b.total(), tol);
        r.hard("matrix trace", vec![], s.c.total(), Relation::Eq, trace_c, tol);
    })
}

/// `λ_k(C) ≥ λ_k(A) + λ_1(B)` and `μ_ℓ(C) ≤ μ_ℓ(A) + μ_1(B)`, in both
/// orders of the summands.
pub fn check_weyl(a: &PseudoHermitianMatrix, b: &PseudoHermitianMatrix, tol: f64) -> Result<CheckReport> {
    with_sum("weyl", a, b, |s, r| {
        for (tag, x, y) in [("", &s.a, &s.b), (" swapped", &s.b, &s.a)] {
            for k in 1..=x.lambdas().len() {
                r.hard(
                    format!("lambda k={k}{tag}"),
                    vec![k],
                    s.c.lambda(k),
                    Relation::Ge,
                    x.lambda(k) + y.lambda(1),
                    tol,
                );
            }
            for l in 1..=x.mus().len() {
                r.hard(
                    format!("mu l={l}{tag}"),
                    vec![l],
                    s.c.mu(l),
                    Relation::Le,
                    x.mu(l) + y.mu(1),
                    tol,
                );
            }
        }
    })
}

/// Which index tuples a multi-index check visits: every tuple when the
/// block size is at most `exhaustive_up_to`, otherwise `sample_count`
/// distinct tuples drawn from a generator seeded by `seed`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TupleSelection {
    pub exhaustive_up_to: usize,
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for TupleSelection {
    fn default() -> Self {
        TupleSelection {
            exhaustive_up_to: 4,
            sample_count: 200,
            seed: 0,
        }
    }
}

impl TupleSelection {
    /// Tuples of size at most `max_m` with entries in `1..=bound`.
    pub fn tuples(&self, bound: usize, max_m: usize) -> Vec<IndexTuple> {
        self.tuples_on_stream(bound, max_m, 0)
    }

    fn tuples_on_stream(&self, bound: usize, max_m: usize, stream: u64) -> Vec<IndexTuple> {
        let max_m = max_m.min(bound);
        if max_m == 0 {
            return Vec::new();
        }
        if bound <= self.exhaustive_up_to {
            return IndexTuple::enumerate(bound, max_m);
        }
        let mut rng = instance_rng(self.seed, stream);
        let mut seen = BTreeSet::new();
        for _ in 0..self.sample_count * 20 {
            if seen.len() == self.sample_count {
                break;
            }
            seen.insert(random_tuple(bound, rng.random_range(1..=max_m), &mut rng));
        }
        seen.into_iter().collect()
    }

    fn tuple_pairs(&self, bound: usize, stream: u64) -> Vec<(IndexTuple, IndexTuple)> {
        let admissible = |i: &IndexTuple, j: &IndexTuple| i.last() + j.last() <= i.len() + bound;
        if bound <= self.exhaustive_up_to {
            let mut out = Vec::new();
            for m in 1..=bound {
                let all = IndexTuple::enumerate_exact(bound, m);
                for i in &all {
                    for j in &all {
                        if admissible(i, j) {
                            out.push((i.clone(), j.clone()));
                        }
                    }
                }
            }
            return out;
        }
        let mut rng = instance_rng(self.seed, stream);
        let mut seen = BTreeSet::new();
        for _ in 0..self.sample_count * 50 {
            if seen.len() == self.sample_count {
                break;
            }
            let m = rng.random_range(1..=bound);
            let i = random_tuple(bound, m, &mut rng);
            let j = random_tuple(bound, m, &mut rng);
            if admissible(&i, &j) {
                seen.insert((i, j));
            }
        }
        seen.into_iter().collect()
    }
}

fn random_tuple<R: Rng + ?Sized>(bound: usize, m: usize, rng: &mut R) -> IndexTuple {
    let mut idx: Vec<usize> = sample(rng, bound, m).into_iter().map(|i| i + 1).collect();
    idx.sort_unstable();
    IndexTuple::new(idx, bound).expect("sampled tuple is valid")
}

fn sum_at(values: impl Fn(usize) -> f64, idx: &[usize]) -> f64 {
    idx.iter().map(|&i| values(i)).sum()
}

pub fn check_lidskii_wielandt(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    max_m: usize,
    tol: f64,
) -> Result<CheckReport> {
    check_lidskii_wielandt_with(a, b, max_m, tol, &TupleSelection::default())
}

/// `Σ_k λ_{i_k}(C) ≥ Σ_k λ_{i_k}(A) + Σ_{k≤m} λ_k(B)` for tuples with
/// `m ≤ max_m`, the dual `μ` statement, and both with `A`, `B` swapped.
pub fn check_lidskii_wielandt_with(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    max_m: usize,
    tol: f64,
    selection: &TupleSelection,
) -> Result<CheckReport> {
    let sig = a.signature();
    let lambda_tuples = selection.tuples_on_stream(sig.p(), max_m, 0);
    let mu_tuples = selection.tuples_on_stream(sig.q(), max_m, 1);
    with_sum("lidskii_wielandt", a, b, |s, r| {
        for (tag, x, y) in [("", &s.a, &s.b), (" swapped", &s.b, &s.a)] {
            for t in &lambda_tuples {
                let i = t.indices();
                let head: Vec<usize> = (1..=i.len()).collect();
                r.hard(
                    format!("lambda i={t}{tag}"),
                    i.to_vec(),
                    sum_at(|k| s.c.lambda(k), i),
                    Relation::Ge,
                    sum_at(|k| x.lambda(k), i) + sum_at(|k| y.lambda(k), &head),
                    tol,
                );
            }
            for t in &mu_tuples {
                let i = t.indices();
                let head: Vec<usize> = (1..=i.len()).collect();
                r.hard(
                    format!("mu i={t}{tag}"),
                    i.to_vec(),
                    sum_at(|k| s.c.mu(k), i),
                    Relation::Le,
                    sum_at(|k| x.mu(k), i) + sum_at(|k| y.mu(k), &head),
                    tol,
                );
            }
        }
    })
}

pub fn check_thompson_freede(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    tol: f64,
) -> Result<CheckReport> {
    check_thompson_freede_with(a, b, tol, &TupleSelection::default())
}

/// `Σ_h λ_{i_h+j_h−h}(C) ≥ Σ_h λ_{i_h}(A) + Σ_h λ_{j_h}(B)` whenever
/// `i_m + j_m ≤ m + p`, and the `μ` analogue with `q` and `≤`.
pub fn check_thompson_freede_with(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    tol: f64,
    selection: &TupleSelection,
) -> Result<CheckReport> {
    let sig = a.signature();
    let lambda_pairs = selection.tuple_pairs(sig.p(), 2);
    let mu_pairs = selection.tuple_pairs(sig.q(), 3);
    let merged = |i: &IndexTuple, j: &IndexTuple| -> Vec<usize> {
        i.indices()
            .iter()
            .zip(j.indices())
            .enumerate()
            .map(|(h, (&ih, &jh))| ih + jh - (h + 1))
            .collect()
    };
    with_sum("thompson_freede", a, b, |s, r| {
        for (i, j) in &lambda_pairs {
            let ij = merged(i, j);
            r.push(
                format!("lambda i={i} j={j}"),
                i.indices().to_vec(),
                j.indices().to_vec(),
                sum_at(|k| s.c.lambda(k), &ij),
                Relation::Ge,
                sum_at(|k| s.a.lambda(k), i.indices()) + sum_at(|k| s.b.lambda(k), j.indices()),
                tol,
                true,
            );
        }
        for (i, j) in &mu_pairs {
            let ij = merged(i, j);
            r.push(
                format!("mu i={i} j={j}"),
                i.indices().to_vec(),
                j.indices().to_vec(),
                sum_at(|k| s.c.mu(k), &ij),
                Relation::Le,
                sum_at(|k| s.a.mu(k), i.indices()) + sum_at(|k| s.b.mu(k), j.indices()),
                tol,
                true,
            );
        }
    })
}
