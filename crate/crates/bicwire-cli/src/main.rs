//! `bicwire` — resonance poles and bound states in the continuum of a
//! radiation-driven two-impurity quantum wire.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use bicwire::bic::{self, BicKind};
use bicwire::dispersion::sweep;
use bicwire::lattice;
use bicwire::selfenergy::{xi, xi_quadrature, Sheet};
use bicwire::Error as CoreError;

use config::{dynamic_note, PartialConfig, RunConfig};
use output::{csv, f17, Sink};

const PRECEDENCE_HELP: &str = "Parameter precedence (lowest to highest): built-in defaults \
(the fig2 set) < --preset < --config file < explicit flags.\n\
Config files are TOML with the same keys as the flags \
(W, g, T1, T2, El, Eu, xD, n, sector, omega_min, omega_max, omega_steps).\n\
Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 verification failure.";

#[derive(Parser)]
#[command(
    name = "bicwire",
    version,
    about = "Resonance poles and tunable bound states in the continuum of a driven two-impurity wire",
    after_help = PRECEDENCE_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep the pole set over driving frequency; CSV/JSON of branch-tracked
    /// complex energies and decay rates, with refined Γ-zero rows included.
    Sweep(SweepArgs),
    /// Closed-form BIC predictions (static self-energy zeros and the
    /// dynamic Fano cancellation), verified against the pole equation.
    Bic(BicArgs),
    /// Cross-check predictions with the finite-lattice diagonalization
    /// oracle; nonzero exit if any check fails.
    Verify(VerifyArgs),
    /// Tabulate the wire self-energy along a line in the complex plane.
    Selfenergy(SelfenergyArgs),
}

#[derive(Args, Clone)]
struct SharedArgs {
    /// Named parameter set: fig2 | fig3 | fig4 | fig5.
    #[arg(long, global = false)]
    preset: Option<String>,
    /// TOML config file (overrides preset, overridden by flags).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Parity sector: p (antisymmetric) or s (symmetric).
    #[arg(long)]
    sector: Option<String>,
    /// Half-bandwidth of the wire continuum.
    #[arg(long = "W", allow_negative_numbers = true)]
    w: Option<f64>,
    /// Impurity-wire coupling constant.
    #[arg(long = "g", allow_negative_numbers = true)]
    g: Option<f64>,
    /// Intra-atomic optical transition strength.
    #[arg(long = "T1", allow_negative_numbers = true)]
    t1: Option<f64>,
    /// Direct (inter-atomic) optical transition strength.
    #[arg(long = "T2", allow_negative_numbers = true)]
    t2: Option<f64>,
    /// Lower impurity level.
    #[arg(long = "El", allow_negative_numbers = true)]
    e_l: Option<f64>,
    /// Upper impurity level.
    #[arg(long = "Eu", allow_negative_numbers = true)]
    e_u: Option<f64>,
    /// Donor position in lattice sites (acceptor at the mirror site).
    #[arg(long = "xD", allow_negative_numbers = true)]
    x_d: Option<f64>,
    /// Photon manifold index.
    #[arg(long = "n", allow_negative_numbers = true)]
    n: Option<f64>,
    /// Sweep range start, in Ω + E_l.
    #[arg(long, allow_negative_numbers = true)]
    omega_min: Option<f64>,
    /// Sweep range end, in Ω + E_l.
    #[arg(long, allow_negative_numbers = true)]
    omega_max: Option<f64>,
    /// Number of sweep grid points.
    #[arg(long)]
    omega_steps: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Args)]
struct BicArgs {
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Lattice sizes for the bound-state convergence scan.
    #[arg(long = "M", value_delimiter = ',', default_value = "500,1000,2000")]
    m_list: Vec<usize>,
    /// Also check the time-domain decay rate against 2Γ at this Ω + E_l.
    #[arg(long = "omega-plus-el", allow_negative_numbers = true)]
    omega_plus_el: Option<f64>,
}

#[derive(Args)]
struct SelfenergyArgs {
    #[command(flatten)]
    shared: SharedArgs,
    /// Start of the Re z grid.
    #[arg(long, default_value_t = -1.9, allow_negative_numbers = true)]
    z_min: f64,
    /// End of the Re z grid.
    #[arg(long, default_value_t = 1.9, allow_negative_numbers = true)]
    z_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 39)]
    z_steps: usize,
    /// Constant imaginary part added to every grid point (0 evaluates on
    /// the band via the boundary value from above).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    z_imag: f64,
    /// Riemann sheet for the closed form.
    #[arg(long, default_value = "first")]
    sheet: String,
    /// Append quadrature-oracle columns (needs |z_imag| > 1e-6).
    #[arg(long, default_value_t = false)]
    check_quadrature: bool,
}

/// Failures mapped to process exit codes.
enum CliError {
    /// exit 2
    Config(String),
    /// exit 3
    Solver(String),
    /// exit 4
    Verification(String),
    /// exit 1
    Io(String),
}

impl CliError {
    fn exit(self) -> ExitCode {
        let (code, prefix, msg) = match self {
            CliError::Config(m) => (2, "configuration error", m),
            CliError::Solver(m) => (3, "solver error", m),
            CliError::Verification(m) => (4, "verification failed", m),
            CliError::Io(m) => (1, "i/o error", m),
        };
        eprintln!("bicwire: {prefix}: {msg}");
        ExitCode::from(code)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Bic(a) => cmd_bic(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Selfenergy(a) => cmd_selfenergy(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.exit(),
    }
}

fn resolve(shared: &SharedArgs) -> Result<RunConfig, CliError> {
    let file = match &shared.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            Some(PartialConfig::parse_toml(&text).map_err(CliError::Config)?)
        }
        None => None,
    };
    let flags = PartialConfig {
        w: shared.w,
        g: shared.g,
        t1: shared.t1,
        t2: shared.t2,
        e_l: shared.e_l,
        e_u: shared.e_u,
        x_d: shared.x_d,
        n: shared.n,
        sector: shared.sector.clone(),
        omega_min: shared.omega_min,
        omega_max: shared.omega_max,
        omega_steps: shared.omega_steps,
    };
    RunConfig::resolve(shared.preset.as_deref(), file.as_ref(), &flags).map_err(CliError::Config)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.shared)?;
    let params = cfg.params().map_err(CliError::Config)?;
    let sector = cfg.sector().map_err(CliError::Config)?;
    let table = sweep(&params, sector, &cfg.omega_grid()).map_err(solver_err)?;

    for z in &table.zeros {
        eprintln!(
            "gamma zero at omega_plus_el = {} (gamma = {:.3e})",
            f17(z.omega_plus_el),
            z.gamma
        );
    }

    let mut sink = Sink::open(args.shared.output.as_deref())?;
    match args.shared.format {
        Format::Csv => {
            let rows = table.rows.iter().map(|r| {
                vec![
                    f17(r.omega_plus_el),
                    r.branch_id.to_string(),
                    f17(r.re_z),
                    f17(r.im_z),
                    f17(r.gamma),
                    f17(r.u_re),
                    f17(r.u_im),
                    f17(r.residual),
                ]
            });
            sink.write_all(&csv(
                "omega_plus_el,branch_id,re_z,im_z,gamma,u_re,u_im,residual",
                rows,
            ))?;
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "omega_plus_el": r.omega_plus_el,
                        "branch_id": r.branch_id,
                        "re_z": r.re_z,
                        "im_z": r.im_z,
                        "gamma": r.gamma,
                        "u_re": r.u_re,
                        "u_im": r.u_im,
                        "residual": r.residual,
                    })
                })
                .collect();
            let zeros: Vec<_> = table
                .zeros
                .iter()
                .map(|z| json!({"omega_plus_el": z.omega_plus_el, "gamma": z.gamma}))
                .collect();
            let doc = json!({"rows": rows, "zeros": zeros});
            sink.write_all(&format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).unwrap()
            ))?;
        }
    }
    Ok(())
}

fn prediction_json(
    p: &bic::BicPrediction,
    params: &bicwire::ModelParams,
    note: Option<&str>,
) -> serde_json::Value {
    json!({
        "kind": match p.kind { BicKind::Static => "static", BicKind::Dynamic => "dynamic" },
        "sector": p.sector.label(),
        "m": p.m,
        "z0": p.z0,
        "omega": p.omega,
        "omega_plus_el": p.omega_plus_el(params),
        "in_band": p.in_band,
        "residual": p.residual,
        "note": note,
    })
}

fn cmd_bic(args: BicArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.shared)?;
    let params = cfg.params().map_err(CliError::Config)?;
    let sector = cfg.sector().map_err(CliError::Config)?;
    let preds = bic::predict_all(&params, sector).map_err(solver_err)?;
    let note = dynamic_note(args.shared.preset.as_deref());

    let mut sink = Sink::open(args.shared.output.as_deref())?;
    match args.shared.format {
        Format::Json => {
            let records: Vec<_> = preds
                .iter()
                .map(|p| {
                    let n = (p.kind == BicKind::Dynamic).then_some(note).flatten();
                    prediction_json(p, &params, n)
                })
                .collect();
            sink.write_all(&format!(
                "{}\n",
                serde_json::to_string_pretty(&json!(records)).unwrap()
            ))?;
        }
        Format::Csv => {
            let rows = preds.iter().map(|p| {
                vec![
                    match p.kind {
                        BicKind::Static => "static".into(),
                        BicKind::Dynamic => "dynamic".into(),
                    },
                    p.sector.label().to_string(),
                    p.m.map(|m| m.to_string()).unwrap_or_default(),
                    f17(p.z0),
                    f17(p.omega),
                    f17(p.omega_plus_el(&params)),
                    p.in_band.to_string(),
                    f17(p.residual),
                    if p.kind == BicKind::Dynamic {
                        note.unwrap_or_default().to_string()
                    } else {
                        String::new()
                    },
                ]
            });
            sink.write_all(&csv(
                "kind,sector,m,z0,omega,omega_plus_el,in_band,residual,note",
                rows,
            ))?;
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.shared)?;
    let params = cfg.params().map_err(CliError::Config)?;
    let sector = cfg.sector().map_err(CliError::Config)?;
    if args.m_list.len() < 3 || args.m_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Config(
            "--M needs at least three strictly increasing lattice sizes".into(),
        ));
    }
    let preds = bic::predict_all(&params, sector).map_err(solver_err)?;

    let mut checks: Vec<serde_json::Value> = Vec::new();
    let mut all_passed = true;
    let mut record = |name: String,
                      passed: Option<bool>,
                      detail: String,
                      checks: &mut Vec<serde_json::Value>| {
        if passed == Some(false) {
            all_passed = false;
        }
        checks.push(json!({
            "name": name,
            "passed": passed,
            "detail": detail,
        }));
    };

    for p in &preds {
        let label = match (p.kind, p.m) {
            (BicKind::Static, Some(m)) => {
                format!("static m={m} at omega_plus_el={}", p.omega_plus_el(&params))
            }
            _ => format!("dynamic at omega_plus_el={}", p.omega_plus_el(&params)),
        };
        let rep = bic::verify_bic(p, &params).map_err(solver_err)?;
        if let Some(reason) = &rep.skipped {
            record(
                format!("{label}: pole-equation residual"),
                Some(rep.passed),
                format!(
                    "|D| = {:.3e} / {:.3e} (first/second sheet)",
                    rep.residual_first_sheet, rep.residual_second_sheet
                ),
                &mut checks,
            );
            record(
                format!("{label}: oracle scan"),
                None,
                format!("skipped: {reason}"),
                &mut checks,
            );
            continue;
        }
        record(
            format!("{label}: pole-equation residual and pole match"),
            Some(rep.passed),
            format!(
                "|D| = {:.3e} / {:.3e}; nearest BIC pole at distance {:.3e}",
                rep.residual_first_sheet,
                rep.residual_second_sheet,
                rep.matched_pole.map(|(_, d)| d).unwrap_or(f64::NAN)
            ),
            &mut checks,
        );
        let scan = lattice::bound_state_scan(&params, sector, p.omega, p.z0, &args.m_list)
            .map_err(solver_err)?;
        let ok = scan.verdict == lattice::ScanVerdict::BoundState;
        record(
            format!("{label}: discrete-weight convergence"),
            Some(ok),
            format!("verdict {:?}; ratios {:?}", scan.verdict, scan.ratios),
            &mut checks,
        );
    }

    if let Some(x) = args.omega_plus_el {
        let m = *args.m_list.iter().max().unwrap();
        let cmp = lattice::decay_comparison(&params, sector, x, m).map_err(solver_err)?;
        let ok = (0.9..=1.1).contains(&cmp.ratio);
        record(
            format!("decay rate at omega_plus_el={x} (M={m})"),
            Some(ok),
            format!(
                "fitted {:.4e} vs 2*Gamma = {:.4e} (ratio {:.3})",
                cmp.fitted.rate, cmp.pole_rate, cmp.ratio
            ),
            &mut checks,
        );
    }

    let doc = json!({
        "params": {
            "W": params.w, "g": params.g, "T1": params.t1, "T2": params.t2,
            "El": params.e_l, "Eu": params.e_u, "xD": params.x_d, "n": params.n,
            "sector": sector.label(),
        },
        "checks": checks,
        "all_passed": all_passed,
    });
    let mut sink = Sink::open(args.shared.output.as_deref())?;
    match args.shared.format {
        Format::Json => sink.write_all(&format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).unwrap()
        ))?,
        Format::Csv => {
            let rows = doc["checks"].as_array().unwrap().iter().map(|c| {
                vec![
                    c["name"].as_str().unwrap().to_string(),
                    match c["passed"] {
                        serde_json::Value::Bool(b) => b.to_string(),
                        _ => "skipped".to_string(),
                    },
                    c["detail"].as_str().unwrap().to_string().replace(',', ";"),
                ]
            });
            sink.write_all(&csv("check,passed,detail", rows))?;
        }
    }

    if all_passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            "one or more oracle checks failed (see report)".into(),
        ))
    }
}

fn cmd_selfenergy(args: SelfenergyArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.shared)?;
    let params = cfg.params().map_err(CliError::Config)?;
    let sector = cfg.sector().map_err(CliError::Config)?;
    let sheet = match args.sheet.as_str() {
        "first" => Sheet::First,
        "second" => Sheet::Second,
        other => {
            return Err(CliError::Config(format!(
                "sheet must be 'first' or 'second', got '{other}'"
            )))
        }
    };
    if args.check_quadrature && args.z_imag.abs() <= 1e-6 {
        return Err(CliError::Config(
            "--check-quadrature needs |--z-imag| > 1e-6 (the oracle integrand must stay off the band)".into(),
        ));
    }

    let grid = bicwire::presets::grid(args.z_min, args.z_max, args.z_steps);
    let mut rows: Vec<Vec<String>> = Vec::new();
    for &x in &grid {
        let z = Complex64::new(x, args.z_imag);
        let mut row = vec![f17(z.re), f17(z.im), sector.label().to_string()];
        match xi(z, sector, sheet, params.x_d, params.w) {
            Ok(val) => {
                row.push(sheet.label().to_string());
                row.push(f17(val.re));
                row.push(f17(val.im));
                if args.check_quadrature {
                    let q = xi_quadrature(z, sector, params.x_d, params.w).map_err(solver_err)?;
                    row.push(f17(q.re));
                    row.push(f17(q.im));
                    let agree = (val - q).norm() <= 1e-8 * val.norm().max(1e-30);
                    row.push(agree.to_string());
                }
            }
            Err(CoreError::BandEdge { .. }) => {
                // marked, not fatal
                row.push("band_edge".into());
                row.push("nan".into());
                row.push("nan".into());
                if args.check_quadrature {
                    row.extend(["nan".into(), "nan".into(), "false".into()]);
                }
            }
            Err(e) => return Err(solver_err(e)),
        }
        rows.push(row);
    }

    let header = if args.check_quadrature {
        "re_z,im_z,sector,sheet,re_xi,im_xi,re_xi_quad,im_xi_quad,quad_agree"
    } else {
        "re_z,im_z,sector,sheet,re_xi,im_xi"
    };
    let mut sink = Sink::open(args.shared.output.as_deref())?;
    match args.shared.format {
        Format::Csv => sink.write_all(&csv(header, rows))?,
        Format::Json => {
            let cols: Vec<&str> = header.split(',').collect();
            let records: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (k, v) in cols.iter().zip(r) {
                        obj.insert(k.to_string(), json!(v));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            sink.write_all(&format!(
                "{}\n",
                serde_json::to_string_pretty(&json!(records)).unwrap()
            ))?;
        }
    }
    Ok(())
}

fn solver_err(e: CoreError) -> CliError {
    match e {
        CoreError::SweepFailure { omega, message } => {
            CliError::Solver(format!("at omega_plus_el = {omega}: {message}"))
        }
        other => CliError::Solver(other.to_string()),
    }
}
