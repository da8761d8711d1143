//! Verification command line for the G-crossed braided category engine.
//!
//! Loads category specifications and equivariant Frobenius algebras from
//! JSON, runs the requested construction or theorem check, and reports the
//! named residuals as text or JSON. Exit code 0 means every requested check
//! passed; 1 means at least one check failed; 2 means a usage error.

use clap::{Parser, Subcommand, ValueEnum};
use gcross_core::alphamod::{build_theta, idempotent_ptilde, z_matrix, z_matrix_oracle};
use gcross_core::centermod::{
    compare_center_theta, full_center, longo_rehren, modularity_report, trivial_algebra,
};
use gcross_core::frob::{
    check_algebra, g_cocommutativity_residual, g_commutativity_residual, FrobeniusAlgebra,
};
use gcross_core::object::{object_qdim, ObjectExpr};
use gcross_core::recouple::Engine;
use gcross_core::spec::load_spec;
use gcross_core::validate::{validate_spec, CheckResult};
use num_complex::Complex;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "gcross", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pass/fail threshold for the residual checks run by the CLI.
    #[arg(long, default_value_t = 1e-8, global = true)]
    tol: f64,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the randomized checks (gauge independence).
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Upper bound on worker threads (computations currently use one).
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Include wall-clock timings in the JSON report (timings make the
    /// report non-reproducible byte-for-byte, so they are opt-in there).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the pentagon/hexagon/action coherence of a category spec.
    Validate { spec: PathBuf },
    /// Print the alpha-induction multiplicity matrix of an algebra.
    Zmatrix { spec: PathBuf, algebra: PathBuf },
    /// Build the induced Frobenius algebra in the neutral double and check it.
    Theta { spec: PathBuf, algebra: PathBuf },
    /// Build the equivariant full center and check it.
    Center {
        spec: PathBuf,
        algebra: PathBuf,
        /// Subalgebra normalization; defaults to the dimension of the algebra.
        #[arg(long)]
        zeta: Option<f64>,
    },
    /// Compare the full center with the induced double algebra.
    Compare { spec: PathBuf, algebra: PathBuf },
    /// Report the dimension criterion for modular invariance.
    Modularity {
        spec: PathBuf,
        /// Algebra file; the trivial algebra when omitted.
        algebra: Option<PathBuf>,
    },
    /// Run the full property battery over the bundled examples.
    Propsuite {
        /// Directory holding the bundled spec and algebra files.
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
    },
}

struct Report {
    command: &'static str,
    spec: String,
    checks: Vec<CheckResult>,
    outputs: Value,
    timings: Vec<(String, f64)>,
}

impl Report {
    fn new(command: &'static str, spec: &Path) -> Self {
        Report {
            command,
            spec: spec.display().to_string(),
            checks: Vec::new(),
            outputs: json!({}),
            timings: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, residual: f64, tol: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass: residual < tol,
            residual,
        });
    }

    fn push_flag(&mut self, name: &str, pass: bool) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass,
            residual: if pass { 0.0 } else { f64::INFINITY },
        });
    }

    fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn emit(&self, format: Format, with_timings: bool) {
        match format {
            Format::Text => {
                println!("command: {}", self.command);
                println!("spec: {}", self.spec);
                for c in &self.checks {
                    println!(
                        "  [{}] {:<50} residual {:.3e}",
                        if c.pass { "pass" } else { "FAIL" },
                        c.name,
                        c.residual
                    );
                }
                if self.outputs != json!({}) {
                    println!("outputs: {}", self.outputs);
                }
                for (name, secs) in &self.timings {
                    println!("  time {name}: {secs:.3}s");
                }
                println!(
                    "result: {}",
                    if self.all_pass() { "pass" } else { "FAIL" }
                );
            }
            Format::Json => {
                let mut body = json!({
                    "command": self.command,
                    "spec": self.spec,
                    "checks": self.checks,
                    "outputs": self.outputs,
                });
                if with_timings {
                    body["timings"] = json!(self
                        .timings
                        .iter()
                        .map(|(n, s)| json!({"phase": n, "seconds": s}))
                        .collect::<Vec<_>>());
                }
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            }
        }
    }
}

fn load_engine(path: &Path) -> Result<Engine, String> {
    let spec = load_spec(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Engine::new(Arc::new(spec)))
}

fn load_algebra(engine: &Engine, path: &Path) -> Result<FrobeniusAlgebra, String> {
    FrobeniusAlgebra::load(&engine.spec, path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Validation that gates every computation command: exit 1 before any work
/// when the spec itself is incoherent.
fn gate_validation(engine: &Engine, report: &mut Report) -> bool {
    let t = Instant::now();
    let v = validate_spec(engine);
    report
        .timings
        .push(("validate".into(), t.elapsed().as_secs_f64()));
    let pass = v.all_pass();
    report.push("spec_validation", v.max_residual(), engine.spec.tol.max(1e-9));
    pass
}

fn run_validate(spec: &Path, report: &mut Report) -> Result<(), String> {
    let e = load_engine(spec)?;
    let t = Instant::now();
    let v = validate_spec(&e);
    report
        .timings
        .push(("validate".into(), t.elapsed().as_secs_f64()));
    report.checks = v.checks;
    Ok(())
}

fn run_zmatrix(spec: &Path, algebra: &Path, report: &mut Report) -> Result<(), String> {
    let e = load_engine(spec)?;
    if !gate_validation(&e, report) {
        return Ok(());
    }
    let a = load_algebra(&e, algebra)?;
    let t = Instant::now();
    let zm = z_matrix(&e, &a).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("zmatrix".into(), t.elapsed().as_secs_f64()));
    let g_count = e.spec.group.order();
    let mut grade_blocks: Vec<Vec<usize>> = vec![Vec::new(); g_count];
    for l in 0..e.spec.rank() {
        grade_blocks[e.spec.grade(l)].push(l);
    }
    report.outputs = json!({
        "rows": zm.n,
        "cols": zm.n,
        "entries": zm.entries,
        "grade_blocks": grade_blocks,
    });
    Ok(())
}

fn theta_checks(
    e: &Engine,
    a: &FrobeniusAlgebra,
    seed: u64,
    tol: f64,
    report: &mut Report,
) -> Result<(), String> {
    let t = Instant::now();
    let th = build_theta(e, a, None).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("build_theta".into(), t.elapsed().as_secs_f64()));
    let ed = Engine::new(th.ctx.double.clone());
    for c in check_algebra(&ed, &th.algebra).map_err(|err| err.to_string())? {
        report.push(&format!("theta_{}", c.name), c.residual, tol.max(1e-9));
    }
    let rc = g_commutativity_residual(&ed, &th.algebra).map_err(|err| err.to_string())?;
    let rcc = g_cocommutativity_residual(&ed, &th.algebra).map_err(|err| err.to_string())?;
    report.push("theta_g_commutativity", rc, tol);
    report.push("theta_g_cocommutativity", rcc, tol);
    let t = Instant::now();
    let regauged = build_theta(e, a, Some(seed)).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("regauge".into(), t.elapsed().as_secs_f64()));
    let drift = th
        .algebra
        .mult
        .distance(&regauged.algebra.mult)
        .max(th.algebra.comult.distance(&regauged.algebra.comult));
    report.push("theta_gauge_independence", drift, tol);
    let dim = object_qdim(&th.ctx.double, &th.algebra.carrier);
    report.outputs = json!({
        "dim_theta": dim,
        "summands": th.summands.len(),
    });
    Ok(())
}

fn run_theta(
    spec: &Path,
    algebra: &Path,
    seed: u64,
    tol: f64,
    report: &mut Report,
) -> Result<(), String> {
    let e = load_engine(spec)?;
    if !gate_validation(&e, report) {
        return Ok(());
    }
    let a = load_algebra(&e, algebra)?;
    theta_checks(&e, &a, seed, tol, report)
}

fn run_center(
    spec: &Path,
    algebra: &Path,
    zeta: Option<f64>,
    tol: f64,
    report: &mut Report,
) -> Result<(), String> {
    let e = load_engine(spec)?;
    if !gate_validation(&e, report) {
        return Ok(());
    }
    let a = load_algebra(&e, algebra)?;
    let dim_a = object_qdim(&e.spec, &a.carrier);
    let zeta = Complex::new(zeta.unwrap_or(dim_a), 0.0);
    let t = Instant::now();
    let c = full_center(&e, &a, zeta).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("full_center".into(), t.elapsed().as_secs_f64()));
    let ed = Engine::new(c.theta_lr.ctx.double.clone());
    for chk in check_algebra(&ed, &c.algebra).map_err(|err| err.to_string())? {
        report.push(&format!("center_{}", chk.name), chk.residual, tol.max(1e-9));
    }
    let rc = g_commutativity_residual(&ed, &c.algebra).map_err(|err| err.to_string())?;
    let rcc = g_cocommutativity_residual(&ed, &c.algebra).map_err(|err| err.to_string())?;
    report.push("center_g_commutativity", rc, tol);
    report.push("center_g_cocommutativity", rcc, tol);
    report.outputs = json!({
        "dim_algebra": dim_a,
        "dim_center": object_qdim(&ed.spec, &c.algebra.carrier),
        "zeta": zeta.re,
    });
    Ok(())
}

fn run_compare(spec: &Path, algebra: &Path, tol: f64, report: &mut Report) -> Result<(), String> {
    let e = load_engine(spec)?;
    if !gate_validation(&e, report) {
        return Ok(());
    }
    let a = load_algebra(&e, algebra)?;
    let t = Instant::now();
    let cmp = compare_center_theta(&e, &a).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("compare".into(), t.elapsed().as_secs_f64()));
    report.push_flag("multiplicities_equal", cmp.multiplicities_equal);
    report.push_flag("iso_found", cmp.iso_found);
    report.push("iso_residual", cmp.iso_residual, tol);
    report.outputs = json!({
        "multiplicities_equal": cmp.multiplicities_equal,
        "iso_found": cmp.iso_found,
        "iso_residual": cmp.iso_residual,
        "checks": cmp
            .checks
            .iter()
            .map(|(n, rt, rc)| json!({
                "name": n,
                "theta_residual": rt,
                "center_residual": rc,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(())
}

fn run_modularity(
    spec: &Path,
    algebra: Option<&PathBuf>,
    tol: f64,
    report: &mut Report,
) -> Result<(), String> {
    let e = load_engine(spec)?;
    if !gate_validation(&e, report) {
        return Ok(());
    }
    let a = match algebra {
        Some(p) => load_algebra(&e, p)?,
        None => trivial_algebra(&e.spec),
    };
    let t = Instant::now();
    let m = modularity_report(&e, &a).map_err(|err| err.to_string())?;
    report
        .timings
        .push(("modularity".into(), t.elapsed().as_secs_f64()));
    report.push("dimension_criterion", m.criterion_residual, tol.max(1e-9));
    if let Some((zs, zt)) = m.st_commutation {
        report.push("zs_commutation", zs, tol);
        report.push("zt_commutation", zt, tol);
    }
    report.outputs = json!({
        "dim_theta": m.dim_theta,
        "group_order": m.group_order,
        "global_dim": m.global_dim,
        "neutral_dim": m.neutral_dim,
        "modular_flag": m.modular_flag,
    });
    Ok(())
}

const BUNDLED_SPECS: [&str; 6] = [
    "trivial.json",
    "vec_z2_semion.json",
    "vec_z2_symmetric.json",
    "vec_z4.json",
    "ising_trivialG.json",
    "ising_z2crossed.json",
];

const BUNDLED_PAIRS: [(&str, &str); 4] = [
    ("ising_trivialG.json", "algebra_1.json"),
    ("ising_trivialG.json", "algebra_1psi.json"),
    ("vec_z4.json", "algebra_1_2.json"),
    ("ising_z2crossed.json", "algebra_1.json"),
];

fn run_propsuite(data_dir: &Path, seed: u64, tol: f64, report: &mut Report) -> Result<(), String> {
    // Coherence of every bundled spec.
    for name in BUNDLED_SPECS {
        let e = load_engine(&data_dir.join(name))?;
        let v = validate_spec(&e);
        report.push(
            &format!("validate/{name}"),
            v.max_residual(),
            e.spec.tol.max(1e-9),
        );
    }
    // Local projectors are idempotent on every bundled (algebra, simple).
    for (sname, aname) in BUNDLED_PAIRS {
        let e = load_engine(&data_dir.join(sname))?;
        let a = load_algebra(&e, &data_dir.join(aname))?;
        let mut worst = 0.0f64;
        for l in 0..e.spec.rank() {
            let lam = ObjectExpr::simple(l);
            let p = idempotent_ptilde(&e, &a, &lam).map_err(|err| err.to_string())?;
            let pp = p.compose(&p).map_err(|err| err.to_string())?;
            worst = worst.max(pp.distance(&p));
        }
        report.push(&format!("projector_idempotent/{sname}/{aname}"), worst, 1e-9);
    }
    // Induced double algebras and their axioms.
    for (sname, aname) in BUNDLED_PAIRS {
        let e = load_engine(&data_dir.join(sname))?;
        let a = load_algebra(&e, &data_dir.join(aname))?;
        let mut sub = Report::new("theta", &data_dir.join(sname));
        theta_checks(&e, &a, seed, tol, &mut sub)?;
        let worst = sub
            .checks
            .iter()
            .map(|c| c.residual)
            .fold(0.0, f64::max);
        report.push(&format!("theta/{sname}/{aname}"), worst, tol);
        // Multiplicity matrix against the brute-force rank oracle.
        let zm = z_matrix(&e, &a).map_err(|err| err.to_string())?;
        let oracle = z_matrix_oracle(&e, &a).map_err(|err| err.to_string())?;
        report.push_flag(&format!("zmatrix_oracle/{sname}/{aname}"), zm.entries == oracle);
    }
    // Full center versus the induced double algebra.
    for (sname, aname) in BUNDLED_PAIRS {
        let e = load_engine(&data_dir.join(sname))?;
        let a = load_algebra(&e, &data_dir.join(aname))?;
        let cmp = compare_center_theta(&e, &a).map_err(|err| err.to_string())?;
        report.push_flag(
            &format!("compare_multiplicities/{sname}/{aname}"),
            cmp.multiplicities_equal,
        );
        report.push_flag(&format!("compare_iso_found/{sname}/{aname}"), cmp.iso_found);
        report.push(&format!("compare_iso/{sname}/{aname}"), cmp.iso_residual, tol);
    }
    // Dimension criterion on every spec for the double of the trivial algebra.
    for name in BUNDLED_SPECS {
        let e = load_engine(&data_dir.join(name))?;
        let th = longo_rehren(&e).map_err(|err| err.to_string())?;
        let dim = object_qdim(&th.ctx.double, &th.algebra.carrier);
        report.push(
            &format!("dimension_criterion/{name}"),
            (dim - e.spec.global_dim()).abs(),
            1e-9,
        );
    }
    report.spec = data_dir.display().to_string();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.jobs;
    let (name, res, report) = match &cli.command {
        Command::Validate { spec } => {
            let mut r = Report::new("validate", spec);
            ("validate", run_validate(spec, &mut r), r)
        }
        Command::Zmatrix { spec, algebra } => {
            let mut r = Report::new("zmatrix", spec);
            ("zmatrix", run_zmatrix(spec, algebra, &mut r), r)
        }
        Command::Theta { spec, algebra } => {
            let mut r = Report::new("theta", spec);
            ("theta", run_theta(spec, algebra, cli.seed, cli.tol, &mut r), r)
        }
        Command::Center { spec, algebra, zeta } => {
            let mut r = Report::new("center", spec);
            ("center", run_center(spec, algebra, *zeta, cli.tol, &mut r), r)
        }
        Command::Compare { spec, algebra } => {
            let mut r = Report::new("compare", spec);
            ("compare", run_compare(spec, algebra, cli.tol, &mut r), r)
        }
        Command::Modularity { spec, algebra } => {
            let mut r = Report::new("modularity", spec);
            (
                "modularity",
                run_modularity(spec, algebra.as_ref(), cli.tol, &mut r),
                r,
            )
        }
        Command::Propsuite { data_dir } => {
            let mut r = Report::new("propsuite", data_dir);
            ("propsuite", run_propsuite(data_dir, cli.seed, cli.tol, &mut r), r)
        }
    };
    if let Err(msg) = res {
        eprintln!("{name}: {msg}");
        return ExitCode::from(2);
    }
    report.emit(cli.format, cli.timings);
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
