//! Drive the harness from code: run selected suites, stream CSV rows to
//! stdout and print the aggregate summary.

use kreinval::harness::{execute, ReportSink, Suite, SuiteConfig};

fn main() -> kreinval::Result<()> {
    let cfg = SuiteConfig {
        p: 2,
        q: 2,
        instances: 2,
        seed: Some(42),
        suites: vec![Suite::Weyl, Suite::Polyhedral],
        ..Default::default()
    };
    let mut sink = ReportSink::csv(std::io::stdout().lock());
    let summary = execute(&cfg, |record| sink.write(record))?;
    sink.flush()?;
    for (suite, agg) in &summary.suites {
        println!("{suite}: {}/{} hard cases, passed {}", agg.hard_passes, agg.hard_cases, agg.passed);
    }
    println!("exit code {}", summary.exit_code());
    Ok(())
}
