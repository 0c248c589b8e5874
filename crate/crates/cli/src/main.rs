//! Command-line front end for the annulus Steklov solvers.
//!
//! Exit codes: 0 success, 1 failed verification/audit, 2 usage error,
//! 3 infeasible parameters (no critical class), 4 I/O error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use annulus_core::acceptance;
use annulus_core::audit::{audit_free_boundary, Tolerances};
use annulus_core::explorer::{
    below_t1_report, default_q_grid, galerkin_perturbation_probe, scan_q,
};
use annulus_core::family::{
    build_map, density_distinct_threshold, energy, map_for_ratio, normalized_sigma1, t1, tilde_t,
    FreeBoundaryMap, RatioBranch,
};
use annulus_core::galerkin::{
    build_system, convergence_study, matrix_to_csv, solve_generalized, FourierDensity,
};
use annulus_core::mesh::{mesh_from_map, profile_csv};
use annulus_core::spectrum::assemble_spectrum;
use annulus_core::{versioned_json, Error as CoreError};

#[derive(Parser)]
#[command(
    name = "annulus",
    about = "Steklov spectra, critical densities and stretched catenoids on flat annuli",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchSide {
    /// Invert onto the ratio branch q >= 1.
    Upper,
    /// Invert onto the ratio branch q <= 1.
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum Circle {
    Inner,
    Outer,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form weighted Steklov spectrum of one annulus.
    Spectrum(SpectrumArgs),
    /// Critical classes and their free-boundary harmonic maps.
    Family(FamilyArgs),
    /// OBJ surface mesh (and CSV profile) of a stretched catenoid.
    ExportMesh(ExportMeshArgs),
    /// Free-boundary audit of a family map.
    Audit(AuditArgs),
    /// Scan of the normalized first eigenvalue over density ratios.
    Scan(ScanArgs),
    /// Galerkin perturbation probe of the normalized first eigenvalue.
    Probe(ProbeArgs),
    /// Fourier-Galerkin solve with θ-dependent densities.
    Galerkin(GalerkinArgs),
    /// The family's threshold constants.
    Constants(ConstantsArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Verify,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Conformal modulus T.
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    rho1: f64,
    #[arg(long)]
    rho2: f64,
    /// Number of positive eigenvalues to report.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Density ratio of the critical class.
    #[arg(long, conflicts_with_all = ["t", "sweep"])]
    q: Option<f64>,
    /// Conformal modulus; inverted to a ratio on the chosen branch.
    #[arg(long = "T", conflicts_with = "sweep")]
    t: Option<f64>,
    #[arg(long, value_enum, default_value = "upper")]
    branch: BranchSide,
    /// Ratio sweep start:end:step, emitted as CSV.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportMeshArgs {
    /// Density ratio of the family member to mesh.
    #[arg(long)]
    q: f64,
    /// Grid resolution along t (and along θ unless overridden).
    #[arg(long)]
    resolution: usize,
    /// Grid resolution along θ.
    #[arg(long)]
    resolution_theta: Option<usize>,
    /// OBJ output path; the CSV profile lands next to it.
    #[arg(long)]
    path: PathBuf,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 16)]
    grid_t: usize,
    #[arg(long, default_value_t = 16)]
    grid_theta: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Conformal modulus of the class to scan.
    #[arg(long = "T")]
    t: f64,
    #[arg(long, default_value_t = 1e-2)]
    q_min: f64,
    #[arg(long, default_value_t = 1e2)]
    q_max: f64,
    #[arg(long, default_value_t = 400)]
    points: usize,
    /// Profile CSV output path (omitted: profile not written).
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Verdict JSON output; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    mode: usize,
}

#[derive(Args)]
struct GalerkinArgs {
    #[arg(long = "T")]
    t: f64,
    #[arg(long)]
    rho1: f64,
    #[arg(long)]
    rho2: f64,
    /// Relative cosine perturbation amplitude applied to --circle.
    #[arg(long)]
    eps: Option<f64>,
    /// θ-frequency of the perturbation.
    #[arg(long, default_value_t = 1)]
    mode: usize,
    #[arg(long, value_enum, default_value = "inner")]
    circle: Circle,
    #[arg(long, default_value_t = 16)]
    truncation: usize,
    /// Number of eigenvalues to report.
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Comma-separated truncations for a convergence study.
    #[arg(long)]
    study: Option<String>,
    /// Write PREFIX_stiffness.csv and PREFIX_mass.csv.
    #[arg(long)]
    dump_matrices: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failure modes mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Verification,
    Infeasible(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Verification => 1,
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible(m) | CoreError::Range(m) => Failure::Infeasible(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Resolves an output path against `ANNULUS_OUTPUT_DIR` when relative.
fn resolve(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("ANNULUS_OUTPUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

/// Writes `content` to the resolved path, or stdout when no path given.
fn emit(target: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match target {
        Some(path) => {
            let full = resolve(path);
            std::fs::write(&full, content)
                .map_err(|e| Failure::Io(format!("{}: {e}", full.display())))?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn map_report(map: &FreeBoundaryMap) -> serde_json::Value {
    let ns = normalized_sigma1(map.q).expect("family member");
    json!({
        "schema_version": annulus_core::SCHEMA_VERSION,
        "q": map.q,
        "T": map.modulus(),
        "sigma1": map.sigma1,
        "c1": map.coefficients.c1,
        "c2": map.coefficients.c2,
        "k": map.coefficients.k,
        "b": map.b,
        "rho1": map.rho1,
        "rho2": map.rho2,
        "density_inner": map.density_inner,
        "density_outer": map.density_outer,
        "density_ratio": map.density_inner / map.density_outer,
        "energy": map.energy,
        "normalized_sigma1": ns,
    })
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let spectrum = assemble_spectrum(args.t, args.rho1, args.rho2, args.k)?;
    let content = match args.format {
        Format::Json => json_line(&versioned_json(&spectrum)),
        Format::Csv => spectrum.to_csv(),
    };
    emit(&args.output, &content)
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::Usage(format!(
            "sweep must be start:end:step, got {spec}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Failure::Usage(format!("bad sweep number {p}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || start <= 0.0 || end < start {
        return Err(Failure::Usage(format!("bad sweep range {spec}")));
    }
    let mut qs = Vec::new();
    let n = ((end - start) / step + 1e-9).floor() as usize;
    for i in 0..=n {
        qs.push(start + step * i as f64);
    }
    Ok(qs)
}

fn cmd_family(args: FamilyArgs) -> Result<(), Failure> {
    if let Some(spec) = &args.sweep {
        let qs = parse_sweep(spec)?;
        let mut csv = String::from("q,T_q,sigma1,c1,c2,b,normalized_sigma1,density_ratio\n");
        for q in qs {
            let map = map_for_ratio(q)?;
            let ns = normalized_sigma1(q)?;
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                q,
                map.modulus(),
                map.sigma1,
                map.coefficients.c1,
                map.coefficients.c2,
                map.b,
                ns,
                map.density_inner / map.density_outer,
            ));
        }
        return emit(&args.output, &csv);
    }
    let map = match (args.q, args.t) {
        (Some(q), None) => map_for_ratio(q)?,
        (None, Some(t)) => {
            let side = match args.branch {
                BranchSide::Upper => RatioBranch::GeqOne,
                BranchSide::Lower => RatioBranch::LeqOne,
            };
            build_map(t, side)?
        }
        _ => {
            return Err(Failure::Usage(
                "family needs exactly one of --q, --T or --sweep".to_string(),
            ))
        }
    };
    emit(&args.output, &json_line(&map_report(&map)))
}

fn cmd_export_mesh(args: ExportMeshArgs) -> Result<(), Failure> {
    let map = map_for_ratio(args.q)?;
    let n_theta = args.resolution_theta.unwrap_or(args.resolution);
    let mesh = mesh_from_map(&map, args.resolution, n_theta)?;
    let obj_path = resolve(&args.path);
    let csv_path = obj_path.with_extension("csv");
    let profile = profile_csv(&map, args.resolution)?;
    std::fs::write(&obj_path, mesh.to_obj())
        .map_err(|e| Failure::Io(format!("{}: {e}", obj_path.display())))?;
    std::fs::write(&csv_path, profile)
        .map_err(|e| Failure::Io(format!("{}: {e}", csv_path.display())))?;
    eprintln!(
        "wrote {} ({} vertices, {} faces) and {}",
        obj_path.display(),
        mesh.vertices.len(),
        mesh.faces.len(),
        csv_path.display()
    );
    Ok(())
}

fn cmd_audit(args: AuditArgs) -> Result<(), Failure> {
    let map = map_for_ratio(args.q)?;
    let report = audit_free_boundary(&map, (args.grid_t, args.grid_theta))?;
    let mut value = versioned_json(&report);
    value["q"] = json!(args.q);
    value["tolerances"] = json!(Tolerances::default());
    emit(&args.output, &json_line(&value))?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_scan(args: ScanArgs) -> Result<(), Failure> {
    if args.points < 2 {
        return Err(Failure::Usage("scan needs at least 2 points".to_string()));
    }
    let grid: Vec<f64> = if (args.q_min, args.q_max, args.points) == (1e-2, 1e2, 400) {
        default_q_grid()
    } else {
        if args.q_min <= 0.0 || args.q_max <= args.q_min {
            return Err(Failure::Usage("bad scan range".to_string()));
        }
        let (lo, hi, n) = (args.q_min.log10(), args.q_max.log10(), args.points);
        (0..n)
            .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64))
            .collect()
    };
    let profile = scan_q(args.t, &grid)?;
    if let Some(path) = &args.profile {
        emit(&Some(path.clone()), &profile.to_csv())?;
    }
    let verdict = if args.t < t1() {
        let report = below_t1_report(args.t)?;
        versioned_json(&report)
    } else {
        let top = profile.argmax_row();
        json!({
            "schema_version": annulus_core::SCHEMA_VERSION,
            "T": args.t,
            "scope": "within the rotationally symmetric family",
            "argmax_q": top.q,
            "argmax_branch": top.branch.as_str(),
            "max_sigma1_bar": top.sigma1_bar,
            "crossings": profile.crossings,
            "two_pi": 2.0 * std::f64::consts::PI,
            "exceeds_two_pi": top.sigma1_bar > 2.0 * std::f64::consts::PI,
        })
    };
    emit(&args.output, &json_line(&verdict))
}

fn cmd_probe(args: ProbeArgs) -> Result<(), Failure> {
    let delta = galerkin_perturbation_probe(args.t, args.q, args.eps, args.mode)?;
    let value = json!({
        "schema_version": annulus_core::SCHEMA_VERSION,
        "T": args.t,
        "q": args.q,
        "eps": args.eps,
        "mode": args.mode,
        "delta_sigma1_bar": delta,
    });
    emit(&None, &json_line(&value))
}

fn cmd_galerkin(args: GalerkinArgs) -> Result<(), Failure> {
    let perturb = |base: f64, apply: bool| -> Result<FourierDensity, Failure> {
        Ok(match (args.eps, apply) {
            (Some(e), true) => FourierDensity::cosine_perturbation(base, e, args.mode)?,
            _ => FourierDensity::constant(base)?,
        })
    };
    let (inner_on, outer_on) = match args.circle {
        Circle::Inner => (true, false),
        Circle::Outer => (false, true),
        Circle::Both => (true, true),
    };
    let rho_inner = perturb(args.rho1, inner_on)?;
    let rho_outer = perturb(args.rho2, outer_on)?;

    if let Some(spec) = &args.study {
        let truncations: Vec<usize> = spec
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad truncation {p}")))
            })
            .collect::<Result<_, _>>()?;
        let rows = convergence_study(&rho_inner, &rho_outer, args.t, &truncations)?;
        let value = json!({
            "schema_version": annulus_core::SCHEMA_VERSION,
            "T": args.t,
            "rows": rows,
        });
        return emit(&args.output, &json_line(&value));
    }

    let system = build_system(&rho_inner, &rho_outer, args.t, args.truncation)?;
    if let Some(prefix) = &args.dump_matrices {
        let prefix = resolve(prefix);
        let stem = prefix.to_string_lossy();
        std::fs::write(
            format!("{stem}_stiffness.csv"),
            matrix_to_csv(system.stiffness()),
        )?;
        std::fs::write(format!("{stem}_mass.csv"), matrix_to_csv(system.mass()))?;
    }
    let spec = solve_generalized(&system, args.k)?;
    let entries: Vec<serde_json::Value> = spec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, s)| json!({"index": i, "sigma": s}))
        .collect();
    let value = json!({
        "schema_version": annulus_core::SCHEMA_VERSION,
        "T": args.t,
        "truncation": system.truncation(),
        "entries": entries,
    });
    emit(&args.output, &json_line(&value))
}

fn cmd_constants(args: ConstantsArgs) -> Result<(), Failure> {
    let value = json!({
        "schema_version": annulus_core::SCHEMA_VERSION,
        "t1": t1(),
        "t2": density_distinct_threshold(),
        "tilde_t": tilde_t(),
        "catenoid_normalized_sigma1": normalized_sigma1(1.0).expect("solvable"),
        "catenoid_energy": energy(&map_for_ratio(1.0).expect("solvable"), 512).expect("points"),
        "two_pi": 2.0 * std::f64::consts::PI,
    });
    emit(&args.output, &json_line(&value))
}

fn cmd_verify() -> Result<(), Failure> {
    let start = Instant::now();
    let results = acceptance::run_all();
    let mut failed = 0;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:2}: {}", r.id, r.name);
        if !r.passed {
            failed += 1;
            for line in &r.details {
                if line.starts_with("FAILED") {
                    println!("         {line}");
                }
            }
        }
    }
    println!(
        "summary: {}/{} criteria passed in {:.2}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Family(args) => cmd_family(args),
        Command::ExportMesh(args) => cmd_export_mesh(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Probe(args) => cmd_probe(args),
        Command::Galerkin(args) => cmd_galerkin(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Verify => cmd_verify(),
    };
    match outcome {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Infeasible(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
                Failure::Verification => {}
            }
            std::process::ExitCode::from(f.code() as u8)
        }
    }
}
