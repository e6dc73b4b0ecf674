//! Command-line front end: config ingestion, run orchestration, report
//! emission. Exit status 0 when every applicable check passes, 1 on a check
//! failure, 2 on configuration or usage errors.

use clap::{Parser, Subcommand};
use lpbm::config::{OutputFormat, RunConfig};
use lpbm::harness::{
    builtin_fixtures, check_inequality, estimate_gz_constant, selftest, sweep, CheckParams,
    CheckReport, TheoremId,
};
use lpbm::report::{emit_csv, emit_structured, to_rows, write_text, ReportMeta};
use lpbm::supconv::SValue;
use lpbm::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lpbm",
    version,
    about = "Numerical checks for Lp Brunn-Minkowski type inequalities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Override the quadrature/grid resolution.
    #[arg(long, global = true)]
    resolution: Option<usize>,

    /// Override the split-parameter grid size.
    #[arg(long, global = true)]
    lambda: Option<usize>,

    /// Write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format: csv or structured.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Multiply every tolerance by this factor.
    #[arg(long, global = true)]
    tolerance_scale: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one check per configured problem at the base parameter point.
    Check { config: PathBuf },
    /// Run the full parameter sweep of the configured problems.
    Sweep { config: PathBuf },
    /// Estimate the empirical constant over a log-concave body family.
    GzConstant { config: PathBuf },
    /// Run every registered inequality on the built-in fixture suite.
    Selftest,
}

/// Whether the curvature parameter enters the statement; sweeps only expand
/// the s grid for these problems so that row counts match |p grid|*|t grid|
/// elsewhere.
fn uses_s(id: TheoremId) -> bool {
    matches!(id, TheoremId::Bbl | TheoremId::LpBbl | TheoremId::Mfi)
}

fn init_threads() {
    if let Ok(v) = std::env::var("LPBM_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn apply_overrides(cfg: &mut RunConfig, cli: &Cli) -> Result<(), Error> {
    if let Some(r) = cli.resolution {
        if r < 16 {
            return Err(Error::Config("resolution must be at least 16".into()));
        }
        cfg.resolution = r;
    }
    if let Some(l) = cli.lambda {
        if l < 2 {
            return Err(Error::Config("lambda count must be at least 2".into()));
        }
        cfg.lambda_count = l;
    }
    if let Some(p) = &cli.out {
        cfg.out_path = Some(p.clone());
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse()?;
    }
    if let Some(ts) = cli.tolerance_scale {
        if !(ts > 0.0) {
            return Err(Error::Config("tolerance scale must be positive".into()));
        }
        cfg.tolerance_scale = ts;
    }
    Ok(())
}

fn base_params(cfg: &RunConfig) -> CheckParams {
    CheckParams {
        p: cfg.p_grid[0],
        t: cfg.t_grid[0],
        s: cfg.s_grid[0],
        lambda_count: cfg.lambda_count,
        resolution: cfg.resolution,
        tolerance_scale: cfg.tolerance_scale,
    }
}

fn print_reports(reports: &[CheckReport]) {
    for r in reports {
        let status = if !r.applicable {
            "SKIP"
        } else if r.pass {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "{status} {} p={} t={}",
            r.theorem.name(),
            r.p,
            r.t
        );
        if let Some(s) = r.s {
            line.push_str(&format!(" s={s}"));
        }
        line.push_str(&format!(
            " lhs={:.6e} rhs={:.6e} margin={:.3e} tol={:.3e}",
            r.lhs, r.rhs, r.margin, r.tolerance
        ));
        if !r.notes.is_empty() {
            line.push_str(&format!("  [{}]", r.notes));
        }
        println!("{line}");
    }
}

fn emit(reports: &[CheckReport], cfg: &RunConfig) -> Result<(), Error> {
    if let Some(path) = &cfg.out_path {
        let rows = to_rows(reports);
        let text = match cfg.format {
            OutputFormat::Csv => emit_csv(&rows),
            OutputFormat::Structured => emit_structured(&rows, ReportMeta::new(&cfg.digest)),
        };
        write_text(path, &text)?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn exit_for(reports: &[CheckReport]) -> u8 {
    let applicable: Vec<&CheckReport> = reports.iter().filter(|r| r.applicable).collect();
    if applicable.is_empty() {
        eprintln!("warning: no applicable checks in this run");
        return 0;
    }
    let failures: Vec<&&CheckReport> = applicable.iter().filter(|r| !r.pass).collect();
    if failures.is_empty() {
        0
    } else {
        for f in &failures {
            eprintln!(
                "failure: {} p={} t={} margin={:.6e} tolerance={:.6e}",
                f.theorem.name(),
                f.p,
                f.t,
                f.margin,
                f.tolerance
            );
        }
        1
    }
}

fn run_config_cmd(config: &PathBuf, cli: &Cli, full_sweep: bool) -> Result<u8, Error> {
    let mut cfg = RunConfig::from_path(config)?;
    apply_overrides(&mut cfg, cli)?;
    let base = base_params(&cfg);
    let mut reports = Vec::new();
    for &id in &cfg.problems {
        let fixture = match cfg.build_fixture(id) {
            Ok(f) => f,
            Err(e) if cfg.problems.len() > 1 => {
                // A problem-all run may lack operands for some statements.
                eprintln!("skipping {id}: {e}");
                continue;
            }
            Err(e) => return Err(e),
        };
        if full_sweep {
            let s_grid: Vec<SValue> = if uses_s(id) { cfg.s_grid.clone() } else { vec![base.s] };
            reports.extend(sweep(
                id,
                std::slice::from_ref(&fixture),
                &cfg.p_grid,
                &cfg.t_grid,
                &s_grid,
                &base,
            )?);
        } else {
            reports.push(check_inequality(id, &fixture, &base)?);
        }
    }
    print_reports(&reports);
    emit(&reports, &cfg)?;
    Ok(exit_for(&reports))
}

fn run_gz_constant(config: &PathBuf, cli: &Cli) -> Result<u8, Error> {
    let mut cfg = RunConfig::from_path(config)?;
    apply_overrides(&mut cfg, cli)?;
    let base = base_params(&cfg);
    let fixtures = if cfg.set_specs.is_some() {
        vec![cfg.build_fixture(TheoremId::GzLogconcaveC)?]
    } else {
        builtin_fixtures(TheoremId::GzLogconcaveC)
    };
    let est = estimate_gz_constant(&fixtures, &cfg.p_grid, &cfg.t_grid, &base)?;
    println!(
        "C_est = {:.9} over {} instances (witness: {})",
        est.c, est.instances, est.witness
    );
    for s in &est.skipped {
        eprintln!("skipped: {s}");
    }
    if let Some(path) = &cfg.out_path {
        let text = format!(
            "{{\n  \"c_est\": {},\n  \"instances\": {},\n  \"witness\": \"{}\"\n}}\n",
            est.c, est.instances, est.witness
        );
        write_text(path, &text)?;
        println!("summary written to {}", path.display());
    }
    if est.c.is_finite() {
        Ok(0)
    } else {
        Ok(1)
    }
}

fn run_selftest(cli: &Cli) -> Result<u8, Error> {
    let mut base = CheckParams::default();
    if let Some(r) = cli.resolution {
        base.resolution = r.max(16);
    }
    if let Some(l) = cli.lambda {
        base.lambda_count = l.max(2);
    }
    if let Some(ts) = cli.tolerance_scale {
        base.tolerance_scale = ts;
    }
    let reports = selftest(&base)?;
    print_reports(&reports);
    if let Some(path) = &cli.out {
        let rows = to_rows(&reports);
        let format = match &cli.format {
            Some(f) => f.parse()?,
            None => OutputFormat::Csv,
        };
        let text = match format {
            OutputFormat::Csv => emit_csv(&rows),
            OutputFormat::Structured => emit_structured(&rows, ReportMeta::new("selftest")),
        };
        write_text(path, &text)?;
        println!("report written to {}", path.display());
    }
    let n_pass = reports.iter().filter(|r| r.applicable && r.pass).count();
    let n_skip = reports.iter().filter(|r| !r.applicable).count();
    println!(
        "selftest: {} checks, {} passed, {} inapplicable",
        reports.len(),
        n_pass,
        n_skip
    );
    Ok(exit_for(&reports))
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Check { config } => run_config_cmd(config, &cli, false),
        Cmd::Sweep { config } => run_config_cmd(config, &cli, true),
        Cmd::GzConstant { config } => run_gz_constant(config, &cli),
        Cmd::Selftest => run_selftest(&cli),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
