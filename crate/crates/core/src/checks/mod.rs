//! Executable checks for the eigenvalue inequalities and variational
//! identities, each producing a [`CheckReport`] with per-case margins.
//!
//! Margins are sign-adjusted so that a case passes iff `margin ≥ −tol`:
//! `lhs − rhs` for `≥`, `rhs − lhs` for `≤` and `−|lhs − rhs|` for `=`.
//! Soft cases (existential statements verified by local search) never
//! affect `passed`; they only feed `soft_success_rate`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::Signature;

mod structural;
mod sums;
mod variational;
mod wielandt;

pub use structural::check_planted_recovery;
pub use sums::{
    check_lidskii_wielandt, check_lidskii_wielandt_with, check_thompson_freede,
    check_thompson_freede_with, check_trace_identity, check_weyl, sum_spectra, SumSpectra,
    TupleSelection,
};
pub use variational::{
    check_courant_fischer, check_ky_fan, check_rayleigh_bounds, VariationalOptions,
};
pub use wielandt::{ascend_subordinate, check_wielandt_flag, AscentOutcome, WielandtOptions};

/// Default tolerance for sampled one-sided bounds and sum inequalities.
pub const TOL_CHECK: f64 = 1e-8;
/// Default tolerance for equality witnesses at analytic optimizers.
pub const TOL_WITNESS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn margin(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Ge => lhs - rhs,
            Relation::Le => rhs - lhs,
            Relation::Eq => -(lhs - rhs).abs(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "==",
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckCase {
    pub case_id: String,
    /// 1-based indices the case refers to (`k`, or the tuple `i`).
    pub indices: Vec<usize>,
    /// Second tuple for two-tuple statements.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partner: Vec<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub margin: f64,
    pub tol: f64,
    pub hard: bool,
}

impl CheckCase {
    pub fn passed(&self) -> bool {
        self.margin >= -self.tol
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub p: usize,
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub instance: InstanceDescriptor,
    pub cases: Vec<CheckCase>,
    /// Smallest margin over hard cases.
    pub worst_margin: Option<f64>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soft_success_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
}

impl CheckReport {
    pub fn with_instance(mut self, seed: u64, instance: u64) -> Self {
        self.instance.seed = Some(seed);
        self.instance.instance = Some(instance);
        self
    }

    pub fn hard_cases(&self) -> impl Iterator<Item = &CheckCase> {
        self.cases.iter().filter(|c| c.hard)
    }

    pub fn soft_cases(&self) -> impl Iterator<Item = &CheckCase> {
        self.cases.iter().filter(|c| !c.hard)
    }

    pub fn case(&self, case_id: &str) -> Option<&CheckCase> {
        self.cases.iter().find(|c| c.case_id == case_id)
    }

    /// A report for a check that could not run, e.g. because `A + B`
    /// failed admissibility. Always a failure.
    pub fn failed(name: &str, sig: Signature, reason: String) -> Self {
        CheckReport {
            check_name: name.into(),
            instance: InstanceDescriptor {
                p: sig.p(),
                q: sig.q(),
                ..Default::default()
            },
            cases: Vec::new(),
            worst_margin: None,
            passed: false,
            soft_success_rate: None,
            failure: Some(reason),
            diagnostics: BTreeMap::new(),
        }
    }
}

pub(crate) struct ReportBuilder {
    name: String,
    sig: Signature,
    cases: Vec<CheckCase>,
    diagnostics: BTreeMap<String, f64>,
}

impl ReportBuilder {
    pub(crate) fn new(name: &str, sig: Signature) -> Self {
        ReportBuilder {
            name: name.into(),
            sig,
            cases: Vec::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn push(
        &mut self,
        case_id: String,
        indices: Vec<usize>,
        partner: Vec<usize>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: f64,
        hard: bool,
    ) {
        self.cases.push(CheckCase {
            case_id,
            indices,
            partner,
            lhs,
            rhs,
            relation,
            margin: relation.margin(lhs, rhs),
            tol,
            hard,
        });
    }

    pub(crate) fn hard(
        &mut self,
        case_id: impl Into<String>,
        indices: Vec<usize>,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: f64,
    ) {
        self.push(case_id.into(), indices, Vec::new(), lhs, relation, rhs, tol, true);
    }

    pub(crate) fn diagnostic(&mut self, name: impl Into<String>, value: f64) {
        self.diagnostics.insert(name.into(), value);
    }

    pub(crate) fn finish(self) -> CheckReport {
        let worst_margin = self
            .cases
            .iter()
            .filter(|c| c.hard)
            .map(|c| c.margin)
            .reduce(f64::min);
        let passed = self.cases.iter().filter(|c| c.hard).all(CheckCase::passed)
            && self.cases.iter().all(|c| c.margin.is_finite() || !c.hard);
        let soft: Vec<&CheckCase> = self.cases.iter().filter(|c| !c.hard).collect();
        let soft_success_rate = if soft.is_empty() {
            None
        } else {
            Some(soft.iter().filter(|c| c.passed()).count() as f64 / soft.len() as f64)
        };
        CheckReport {
            check_name: self.name,
            instance: InstanceDescriptor {
                p: self.sig.p(),
                q: self.sig.q(),
                ..Default::default()
            },
            cases: self.cases,
            worst_margin,
            passed,
            soft_success_rate,
            failure: None,
            diagnostics: self.diagnostics,
        }
    }
}
