use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{OutputFormat, Suite, SuiteConfig};
use super::io::{ReportRecord, ReportSink};
use crate::checks::{
    check_courant_fischer, check_ky_fan, check_lidskii_wielandt_with, check_planted_recovery,
    check_rayleigh_bounds, check_thompson_freede_with, check_trace_identity, check_weyl,
    check_wielandt_flag, CheckReport, TupleSelection, VariationalOptions, WielandtOptions,
};
use crate::error::Result;
use crate::model::Signature;
use crate::polyhedral::{check_diag_membership, check_sum_membership};
use crate::sampling::{instance_rng, sample_admissible, PlantedAdmissible, SampleRng};

pub const REPORTS_JSON: &str = "reports.jsonl";
pub const REPORTS_CSV: &str = "reports.csv";
pub const SUMMARY_FILE: &str = "summary.json";
/// Wall time and start timestamp live here so the other files stay
/// byte-identical across runs.
pub const META_FILE: &str = "run_meta.json";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteAggregate {
    pub reports: usize,
    /// Reports that could not run (e.g. an inadmissible sum).
    pub failed_reports: usize,
    pub hard_cases: usize,
    pub hard_passes: usize,
    pub worst_margin: Option<f64>,
    pub soft_cases: usize,
    pub soft_passes: usize,
    pub soft_success_rate: Option<f64>,
    pub passed: bool,
}

impl SuiteAggregate {
    fn absorb(&mut self, report: &CheckReport) {
        self.reports += 1;
        self.failed_reports += usize::from(report.failure.is_some());
        for case in &report.cases {
            if case.hard {
                self.hard_cases += 1;
                self.hard_passes += usize::from(case.passed());
                self.worst_margin = Some(self.worst_margin.map_or(case.margin, |w| w.min(case.margin)));
            } else {
                self.soft_cases += 1;
                self.soft_passes += usize::from(case.passed());
            }
        }
    }

    fn finish(&mut self, soft_threshold: f64) {
        self.soft_success_rate =
            (self.soft_cases > 0).then(|| self.soft_passes as f64 / self.soft_cases as f64);
        self.passed = self.failed_reports == 0
            && self.hard_passes == self.hard_cases
            && self.soft_success_rate.is_none_or(|r| r >= soft_threshold);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub version: String,
    pub config: SuiteConfig,
    pub suites: BTreeMap<Suite, SuiteAggregate>,
    pub hard_failures: usize,
    pub passed: bool,
    #[serde(skip)]
    pub wall_time_seconds: f64,
}

impl RunSummary {
    /// 0 when every hard case passed and soft rates meet the threshold.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub wall_time_seconds: f64,
    pub started_unix_seconds: u64,
}

fn suite_stream_seed(seed: u64, suite: Suite) -> u64 {
    let tag = Suite::ALL.iter().position(|&s| s == suite).unwrap_or(0) as u64 + 1;
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

struct Instance {
    a: PlantedAdmissible,
    b: PlantedAdmissible,
}

fn variational_options(cfg: &SuiteConfig, n_samples: usize) -> VariationalOptions {
    VariationalOptions {
        n_samples,
        tol: cfg.tolerances.tol_check,
        witness_tol: cfg.tolerances.tol_witness,
    }
}

fn tuple_selection(cfg: &SuiteConfig, index: u64) -> TupleSelection {
    TupleSelection {
        sample_count: cfg.samples.tuple_samples,
        seed: cfg.seed() ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03),
        ..Default::default()
    }
}

fn run_one_suite(
    cfg: &SuiteConfig,
    suite: Suite,
    inst: &Instance,
    index: u64,
    rng: &mut SampleRng,
) -> Vec<Result<CheckReport>> {
    let (a, b) = (&inst.a.matrix, &inst.b.matrix);
    let t = &cfg.tolerances;
    let n = &cfg.samples;
    let sig = a.signature();
    match suite {
        Suite::Structural => vec![
            check_planted_recovery(&inst.a, t.tol_eig),
            check_planted_recovery(&inst.b, t.tol_eig),
        ],
        Suite::Trace => vec![check_trace_identity(a, b, t.tol_trace)],
        Suite::Weyl => vec![check_weyl(a, b, t.tol_check)],
        Suite::Lidskii => vec![check_lidskii_wielandt_with(
            a,
            b,
            cfg.max_m,
            t.tol_check,
            &tuple_selection(cfg, index),
        )],
        Suite::ThompsonFreede => vec![check_thompson_freede_with(a, b, t.tol_check, &tuple_selection(cfg, index))],
        Suite::CourantFischer => vec![
            check_rayleigh_bounds(a, &variational_options(cfg, n.rayleigh_vectors), rng),
            check_courant_fischer(a, &variational_options(cfg, n.cf_subspaces), &cfg.sampler, rng),
        ],
        Suite::KyFan => (1..=sig.p())
            .map(|k| check_ky_fan(a, k, &variational_options(cfg, n.ky_fan_frames), &cfg.sampler, rng))
            .collect(),
        Suite::Wielandt => {
            let opts = WielandtOptions {
                n_flags: n.flags,
                n_frames: n.frames_per_flag,
                n_ascent_flags: n.ascent_flags,
                ascent_iters: n.ascent_iters,
                n_interlace: n.interlace_subspaces,
                tol: t.tol_check,
                witness_tol: t.tol_witness,
                soft_tol: t.tol_soft,
                ..Default::default()
            };
            tuple_selection(cfg, index)
                .tuples(sig.p(), cfg.max_m)
                .iter()
                .map(|tuple| check_wielandt_flag(a, tuple, &opts, &cfg.sampler, rng))
                .collect()
        }
        Suite::Polyhedral => vec![
            check_diag_membership(a, t.tol_lp),
            check_diag_membership(b, t.tol_lp),
            check_sum_membership(a, b, t.tol_lp),
        ],
    }
}

/// All reports for one instance, in suite order. Failures to sample or to
/// run a check become failed reports rather than aborting the run.
pub fn run_instance(cfg: &SuiteConfig, sig: Signature, index: u64) -> Vec<ReportRecord> {
    let seed = cfg.seed();
    let mut rng = instance_rng(seed, index);
    let sampled = sample_admissible(sig, &cfg.sampler, &mut rng)
        .and_then(|a| Ok(Instance { a, b: sample_admissible(sig, &cfg.sampler, &mut rng)? }))
        .map_err(|e| format!("instance sampling failed: {e}"));
    let mut out = Vec::new();
    for &suite in &cfg.suites {
        let reports = match &sampled {
            Ok(inst) => {
                let mut rng = instance_rng(suite_stream_seed(seed, suite), index);
                run_one_suite(cfg, suite, inst, index, &mut rng)
            }
            Err(msg) => vec![Ok(CheckReport::failed(suite.name(), sig, msg.clone()))],
        };
        for report in reports {
            let report = report
                .unwrap_or_else(|e| CheckReport::failed(suite.name(), sig, e.to_string()))
                .with_instance(seed, index);
            out.push(ReportRecord {
                suite,
                instance: index,
                report,
            });
        }
    }
    out
}

fn dedup_suites(suites: &[Suite]) -> Vec<Suite> {
    let mut seen = Vec::new();
    for &s in suites {
        if !seen.contains(&s) {
            seen.push(s);
        }
    }
    seen
}

/// Runs every instance, handing records to `sink` in instance order.
/// Instances are computed in parallel chunks; each chunk is delivered
/// before the next starts, so long runs can be inspected mid-flight.
pub fn execute(
    cfg: &SuiteConfig,
    mut sink: impl FnMut(&ReportRecord) -> Result<()>,
) -> Result<RunSummary> {
    let start = Instant::now();
    cfg.validate()?;
    let mut cfg = cfg.clone();
    cfg.suites = dedup_suites(&cfg.suites);
    if cfg.seed.is_none() {
        cfg.seed = Some(0);
    }
    cfg.sampler.seed = cfg.seed();
    let sig = cfg.signature()?;
    let mut suites: BTreeMap<Suite, SuiteAggregate> =
        cfg.suites.iter().map(|&s| (s, SuiteAggregate::default())).collect();
    let chunk = (4 * rayon::current_num_threads()).max(1) as u64;
    let total = cfg.instances as u64;
    let mut begin = 0;
    while begin < total {
        let end = (begin + chunk).min(total);
        let batch: Vec<Vec<ReportRecord>> =
            (begin..end).into_par_iter().map(|i| run_instance(&cfg, sig, i)).collect();
        for record in batch.iter().flatten() {
            suites.get_mut(&record.suite).expect("selected suite").absorb(&record.report);
            sink(record)?;
        }
        begin = end;
    }
    let mut hard_failures = 0;
    for agg in suites.values_mut() {
        agg.finish(cfg.soft_threshold);
        hard_failures += agg.hard_cases - agg.hard_passes + agg.failed_reports;
    }
    let passed = suites.values().all(|a| a.passed);
    Ok(RunSummary {
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg,
        suites,
        hard_failures,
        passed,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs the suite and collects every record in memory.
pub fn run_collect(cfg: &SuiteConfig) -> Result<(RunSummary, Vec<ReportRecord>)> {
    let mut records = Vec::new();
    let summary = execute(cfg, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((summary, records))
}

pub fn reports_path(dir: &Path, format: OutputFormat) -> PathBuf {
    dir.join(match format {
        OutputFormat::Json => REPORTS_JSON,
        OutputFormat::Csv => REPORTS_CSV,
    })
}

/// Runs the suite; with `cfg.out` set, streams reports into that directory
/// and writes the summary and run metadata beside them. Validation happens
/// before anything touches the file system.
pub fn run_suite(cfg: &SuiteConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let Some(dir) = cfg.out.clone() else {
        return execute(cfg, |_| Ok(()));
    };
    std::fs::create_dir_all(&dir)?;
    let file = BufWriter::new(File::create(reports_path(&dir, cfg.format))?);
    let mut out = match cfg.format {
        OutputFormat::Json => ReportSink::json(file),
        OutputFormat::Csv => ReportSink::csv(file),
    };
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let mut pending = 0usize;
    let summary = execute(cfg, |record| {
        out.write(record)?;
        pending += 1;
        if pending.is_multiple_of(64) {
            out.flush()?;
        }
        Ok(())
    })?;
    out.flush()?;
    write_summary(&dir, &summary)?;
    let meta = RunMeta {
        wall_time_seconds: summary.wall_time_seconds,
        started_unix_seconds: started,
    };
    std::fs::write(dir.join(META_FILE), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(summary)
}

pub fn write_summary(dir: &Path, summary: &RunSummary) -> Result<()> {
    std::fs::write(dir.join(SUMMARY_FILE), serde_json::to_string_pretty(summary)? + "\n")?;
    Ok(())
}
