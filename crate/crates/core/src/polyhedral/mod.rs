//! The region `𝒮 = Π + 𝒞` attached to an admissible spectrum: `Π` is the
//! convex hull of the `S_p × S_q` orbit of the canonical vector and `𝒞` is
//! the cone spanned by `e_i − e_j`, `i` in the λ-block, `j` in the μ-block.
//!
//! Points use canonical coordinate order: λ-block descending, then μ-block
//! descending.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::checks::{CheckReport, Relation, ReportBuilder};
use crate::error::{Error, Result};
use crate::model::{AdmissibleSpectrum, PseudoHermitianMatrix, Signature};
use crate::spectral::{check_admissible, REALITY_TOL};

mod simplex;

pub use simplex::{phase_one, PhaseOne};

/// Largest `p!·q!` for which the orbit is enumerated.
pub const DEFAULT_VERTEX_CAP: usize = 40320;
pub const TOL_LP: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyhedralRegion {
    pub signature: Signature,
    pub base_point: Vec<f64>,
    pub vertices: Vec<Vec<f64>>,
    pub generators: Vec<Vec<f64>>,
}

fn distinct_permutations(values: &[f64]) -> Vec<Vec<f64>> {
    let mut seen = HashSet::new();
    values
        .iter()
        .copied()
        .permutations(values.len())
        .filter(|perm| seen.insert(perm.iter().map(|x| x.to_bits()).collect::<Vec<_>>()))
        .collect()
}

fn factorial(k: usize) -> Option<usize> {
    (1..=k).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

pub fn build_region(spec: &AdmissibleSpectrum) -> Result<PolyhedralRegion> {
    build_region_with_cap(spec, DEFAULT_VERTEX_CAP)
}

pub fn build_region_with_cap(spec: &AdmissibleSpectrum, cap: usize) -> Result<PolyhedralRegion> {
    let sig = spec.signature();
    let (p, q) = (sig.p(), sig.q());
    let count = factorial(p).zip(factorial(q)).and_then(|(a, b)| a.checked_mul(b));
    match count {
        Some(c) if c <= cap => {}
        _ => {
            return Err(Error::RegionTooLarge {
                count: count.unwrap_or(usize::MAX),
                cap,
            })
        }
    }
    let base = spec.canonical_vector();
    let lam = distinct_permutations(&base[..p]);
    let mu = distinct_permutations(&base[p..]);
    let vertices = lam
        .iter()
        .cartesian_product(&mu)
        .map(|(l, m)| l.iter().chain(m).copied().collect())
        .collect();
    let n = sig.n();
    let generators = (0..p)
        .cartesian_product(p..n)
        .map(|(i, j)| {
            let mut g = vec![0.0; n];
            g[i] = 1.0;
            g[j] = -1.0;
            g
        })
        .collect();
    Ok(PolyhedralRegion {
        signature: sig,
        base_point: base,
        vertices,
        generators,
    })
}

impl PolyhedralRegion {
    pub fn dim(&self) -> usize {
        self.base_point.len()
    }

    /// The region moved by `shift`.
    pub fn translated(&self, shift: &[f64]) -> Result<Self> {
        self.check_len(shift)?;
        let add = |v: &Vec<f64>| v.iter().zip(shift).map(|(a, b)| a + b).collect();
        Ok(PolyhedralRegion {
            signature: self.signature,
            base_point: add(&self.base_point),
            vertices: self.vertices.iter().map(add).collect(),
            generators: self.generators.clone(),
        })
    }

    fn check_len(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("point of length {}", self.dim()),
                actual: format!("length {}", point.len()),
            });
        }
        Ok(())
    }

    /// `Σ t_k w_k + Σ s_g c_g`.
    pub fn combine(&self, t: &[f64], s: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (w, &tk) in self.vertices.iter().zip(t) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += tk * x;
            }
        }
        for (c, &sg) in self.generators.iter().zip(s) {
            for (o, x) in out.iter_mut().zip(c) {
                *o += sg * x;
            }
        }
        out
    }
}

/// Convex weights on the vertices and cone weights on the generators that
/// reproduce the query point up to `residual` (max norm).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpOutcome {
    pub feasible: bool,
    /// Phase-I optimum, or the coordinate-sum mismatch when the pre-check
    /// already rules the point out.
    pub gap: f64,
    pub certificate: Option<Certificate>,
}

pub fn lp_feasible(region: &PolyhedralRegion, point: &[f64], tol: f64) -> Result<LpOutcome> {
    region.check_len(point)?;
    let sum_gap = (point.iter().sum::<f64>() - region.base_point.iter().sum::<f64>()).abs();
    if sum_gap > tol {
        return Ok(LpOutcome {
            feasible: false,
            gap: sum_gap,
            certificate: None,
        });
    }
    let nv = region.vertices.len();
    let columns: Vec<&Vec<f64>> = region.vertices.iter().chain(&region.generators).collect();
    let mut rows: Vec<Vec<f64>> = (0..region.dim())
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    rows.push((0..columns.len()).map(|j| if j < nv { 1.0 } else { 0.0 }).collect());
    let mut rhs = point.to_vec();
    rhs.push(1.0);
    let sol = phase_one(&rows, &rhs)?;
    if sol.objective > tol {
        return Ok(LpOutcome {
            feasible: false,
            gap: sol.objective,
            certificate: None,
        });
    }
    let (t, s) = sol.x.split_at(nv);
    let recon = region.combine(t, s);
    let residual = recon
        .iter()
        .zip(point)
        .map(|(a, b)| (a - b).abs())
        .chain(std::iter::once((t.iter().sum::<f64>() - 1.0).abs()))
        .fold(0.0, f64::max);
    Ok(LpOutcome {
        feasible: residual <= tol,
        gap: sol.objective,
        certificate: Some(Certificate {
            t: t.to_vec(),
            s: s.to_vec(),
            residual,
        }),
    })
}

/// Sorts each block descending, giving canonical coordinate order.
pub fn canonical_order(sig: Signature, values: &[f64]) -> Vec<f64> {
    let mut lam = values[..sig.p()].to_vec();
    let mut mu = values[sig.p()..].to_vec();
    lam.sort_by(|a, b| b.total_cmp(a));
    mu.sort_by(|a, b| b.total_cmp(a));
    lam.into_iter().chain(mu).collect()
}

fn membership_case(r: &mut ReportBuilder, id: &str, outcome: &LpOutcome, tol: f64) {
    r.hard(id, vec![], outcome.gap, Relation::Le, 0.0, tol);
    if let Some(cert) = &outcome.certificate {
        r.hard(format!("{id} residual"), vec![], cert.residual, Relation::Le, 0.0, tol);
        r.diagnostic(format!("{id} cone weight"), cert.s.iter().sum());
    }
}

/// The diagonal of `A`, in canonical order, lies in the region of its own
/// spectrum.
pub fn check_diag_membership(a: &PseudoHermitianMatrix, tol: f64) -> Result<CheckReport> {
    let sig = a.signature();
    let spec = check_admissible(a, REALITY_TOL)?;
    let region = build_region(&spec)?;
    let point = canonical_order(sig, &a.diagonal());
    let outcome = lp_feasible(&region, &point, tol)?;
    let mut r = ReportBuilder::new("diag_membership", sig);
    membership_case(&mut r, "diagonal", &outcome, tol);
    let lam_sum: f64 = point[..sig.p()].iter().sum();
    r.hard("lambda block sum", vec![], lam_sum, Relation::Ge, spec.lambdas().iter().sum(), tol);
    Ok(r.finish())
}

/// `spec(A + B) − vec(A) ∈ 𝒮_B` and `spec(A + B) − vec(B) ∈ 𝒮_A`.
pub fn check_sum_membership(
    a: &PseudoHermitianMatrix,
    b: &PseudoHermitianMatrix,
    tol: f64,
) -> Result<CheckReport> {
    let sig = a.signature();
    let s = match crate::checks::sum_spectra(a, b) {
        Ok(s) => s,
        Err(e @ Error::NotAdmissibleSum(_)) => {
            return Ok(CheckReport::failed("sum_membership", sig, e.to_string()))
        }
        Err(e) => return Err(e),
    };
    let c = s.c.canonical_vector();
    let mut r = ReportBuilder::new("sum_membership", sig);
    for (id, shift, region_of) in [("A + S_B", &s.a, &s.b), ("B + S_A", &s.b, &s.a)] {
        let region = build_region(region_of)?;
        let point: Vec<f64> = c.iter().zip(shift.canonical_vector()).map(|(x, y)| x - y).collect();
        let outcome = lp_feasible(&region, &point, tol)?;
        membership_case(&mut r, id, &outcome, tol);
    }
    Ok(r.finish())
}
