//! Planted round trip: the classified spectrum of `U Λ U⁻¹` recovers `Λ`.

use super::{CheckReport, Relation, ReportBuilder};
use crate::error::Result;
use crate::model::{pseudo_hermitian_residual, pseudo_unitary_residual, TOL_STRUCT};
use crate::sampling::PlantedAdmissible;
use crate::spectral::{check_admissible, REALITY_TOL};

/// Structure residuals of `A` and `U`, and planted-versus-recovered
/// eigenvalues with tolerance `tol_eig · cond(U)²`.
pub fn check_planted_recovery(planted: &PlantedAdmissible, tol_eig: f64) -> Result<CheckReport> {
    let a = &planted.matrix;
    let sig = a.signature();
    let cond = planted.cond();
    let mut r = ReportBuilder::new("structural", sig);
    let scale = a.norm_max().max(1.0);
    r.hard(
        "pseudo-hermitian residual",
        vec![],
        pseudo_hermitian_residual(a.matrix(), sig)?,
        Relation::Le,
        0.0,
        TOL_STRUCT * scale,
    );
    let u = planted.conjugator.matrix();
    r.hard(
        "pseudo-unitary residual",
        vec![],
        pseudo_unitary_residual(u, sig)?,
        Relation::Le,
        0.0,
        TOL_STRUCT * cond * cond,
    );
    r.diagnostic("cond", cond);
    let recovered = match check_admissible(a, REALITY_TOL) {
        Ok(s) => s,
        Err(e) => return Ok(CheckReport::failed("structural", sig, e.to_string())),
    };
    let tol = tol_eig * cond * cond;
    for k in 1..=sig.p() {
        r.hard(format!("lambda_{k}"), vec![k], recovered.lambda(k), Relation::Eq, planted.spectrum.lambda(k), tol);
    }
    for l in 1..=sig.q() {
        r.hard(format!("mu_{l}"), vec![l], recovered.mu(l), Relation::Eq, planted.spectrum.mu(l), tol);
    }
    Ok(r.finish())
}
