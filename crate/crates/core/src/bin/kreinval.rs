use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use kreinval::harness::{read_matrix, run_suite, OutputFormat, RunSummary, Suite, SuiteConfig, SEED_ENV};
use kreinval::spectral::{check_admissible, REALITY_TOL};

/// Seeded verification of eigenvalue inequalities for admissible
/// pseudo-Hermitian matrices. Flags override values from `--config`; the
/// seed falls back to KREINVAL_SEED, then 0.
#[derive(Parser, Debug)]
#[command(name = "kreinval", version)]
struct Cli {
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Suite to run; repeat for several. Default: all.
    #[arg(long = "suite")]
    suites: Vec<Suite>,
    /// Tolerance for one-sided bounds and sum inequalities.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    boost_scale: Option<f64>,
    #[arg(long)]
    max_m: Option<usize>,
    /// Directory for reports, summary.json and run_meta.json.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Print the classified spectrum of a matrix file and exit.
    #[arg(long, value_name = "MATRIX_JSON", conflicts_with_all = ["config", "out"])]
    inspect: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> kreinval::Result<SuiteConfig> {
    let mut cfg = match &cli.config {
        Some(path) => SuiteConfig::load(path)?,
        None => SuiteConfig::default(),
    };
    if let Some(p) = cli.p {
        cfg.p = p;
    }
    if let Some(q) = cli.q {
        cfg.q = q;
    }
    if let Some(n) = cli.instances {
        cfg.instances = n;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = Some(seed);
    }
    if !cli.suites.is_empty() {
        cfg.suites = cli.suites.clone();
    }
    if let Some(tol) = cli.tol {
        cfg.tolerances.tol_check = tol;
    }
    if let Some(b) = cli.boost_scale {
        cfg.sampler.boost_scale = b;
    }
    if let Some(m) = cli.max_m {
        cfg.max_m = m;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    cfg.resolve_seed(std::env::var(SEED_ENV).ok().as_deref())?;
    cfg.validate()?;
    Ok(cfg)
}

fn print_summary(summary: &RunSummary) {
    let cfg = &summary.config;
    println!(
        "signature ({},{})  instances {}  seed {}",
        cfg.p,
        cfg.q,
        cfg.instances,
        cfg.seed()
    );
    for (suite, agg) in &summary.suites {
        let worst = agg.worst_margin.map_or("-".into(), |w| format!("{w:.3e}"));
        let soft = agg.soft_success_rate.map_or("-".into(), |r| format!("{:.1}%", 100.0 * r));
        println!(
            "{:<16} hard {:>7}/{:<7} worst margin {:>11}  soft {:>6}  not run {:>3}  {}",
            suite.name(),
            agg.hard_passes,
            agg.hard_cases,
            worst,
            soft,
            agg.failed_reports,
            if agg.passed { "PASS" } else { "FAIL" }
        );
    }
    println!("{} in {:.2}s", if summary.passed { "PASS" } else { "FAIL" }, summary.wall_time_seconds);
}

fn inspect(path: &Path) -> kreinval::Result<bool> {
    let a = read_matrix(path)?;
    println!("signature {}", a.signature());
    match check_admissible(&a, REALITY_TOL) {
        Ok(s) => {
            println!("lambda {:?}", s.lambdas());
            println!("mu     {:?}", s.mus());
            println!("gap    {}", s.gap());
            Ok(true)
        }
        Err(e) => {
            println!("not admissible: {e}");
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.inspect {
        return match inspect(path) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let outcome = build_config(&cli).and_then(|cfg| run_suite(&cfg));
    match outcome {
        Ok(summary) => {
            print_summary(&summary);
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
