//! Batch driver: configuration, seeded suite execution and report files.

mod config;
mod io;
mod runner;

pub use config::{OutputFormat, SampleCounts, Suite, SuiteConfig, Tolerances, SEED_ENV};
pub use io::{
    matrix_to_json, parse_matrix, read_matrix, write_matrix, CsvRow, MatrixFile, ReportRecord,
    ReportSink,
};
pub use runner::{
    execute, reports_path, run_collect, run_instance, run_suite, write_summary, RunMeta,
    RunSummary, SuiteAggregate, META_FILE, REPORTS_CSV, REPORTS_JSON, SUMMARY_FILE,
};
