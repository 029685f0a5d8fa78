//! Command-line driver: builds factorizations from JSON kernel
//! specifications, verifies their exact identities, maps matrix pairs,
//! dumps float evaluations, and runs the full randomized suite.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 invalid
//! input or configuration.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use num::complex::Complex64;
use trig_darboux::bispectral::{
    bmap, build_r_s, discrete_wave, verify_difference_eigen, verify_difference_identities,
    verify_discrete_identities,
};
use trig_darboux::cm::{
    discrete_wave_cm, involution_check, is_rational_cm, is_trig_cm, rational_wave, sato_quotient,
    trig_from_rational, trig_wave,
};
use trig_darboux::darboux::{
    build_adelic, build_trig, check_grassmannian_inclusions, check_orthogonality,
    check_reversed_eigen, DarbouxTransform,
};
use trig_darboux::json as tdjson;
use trig_darboux::json::{AnyPair, KernelSpec};
use trig_darboux::multipoly::Var;
use trig_darboux::numeric::verify_shift_property;
use trig_darboux::ratfunc::RatFunc;
use trig_darboux::suite::{run_suite, RunConfig};

#[derive(Parser)]
#[command(name = "trig-darboux", version, about = "Exact factorization and matrix-pair verification tool")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Area {
    #[default]
    All,
    Differential,
    Bispectral,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a factorization from a kernel specification and report its bundle
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Re-verify the exact identities of a built factorization
    Verify {
        /// Which identity families to check
        #[arg(value_enum, default_value_t)]
        area: Area,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Report the difference-operator counterpart of a factorization
    Bispectral {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Matrix-pair operations
    Cm {
        #[command(subcommand)]
        cmd: CmCmd,
    },
    /// Evaluate a wave function on a float grid, emitting CSV
    Eval {
        /// Kernel specification file (x, z grid)
        #[arg(long, conflicts_with = "pair")]
        spec: Option<PathBuf>,
        /// Rational matrix-pair file (n, z grid)
        #[arg(long)]
        pair: Option<PathBuf>,
        /// JSON grid: an array of [a, b] float points
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full randomized verification suite
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 60)]
        trunc: usize,
        /// Number of random kernel specifications
        #[arg(long, default_value_t = 50)]
        kernels: usize,
        /// Number of random rational matrix pairs
        #[arg(long, default_value_t = 25)]
        pairs: usize,
        /// Number of mixed classifier inputs
        #[arg(long, default_value_t = 100)]
        mixed: usize,
        /// Number of contractive pairs for the shift check
        #[arg(long, default_value_t = 10)]
        contractive: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CmCmd {
    /// Test the rank-one condition of a pair
    Check {
        #[arg(long)]
        pair: PathBuf,
    },
    /// Map a rational pair to its trigonometric counterpart
    Map {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact wave function of a pair
    Wave {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the shifted-time tau quotient against the wave function
    Sato {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the transpose-swap spectral-exchange identity
    Involution {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerically verify the alternating time-shift property
    Shift {
        #[arg(long)]
        pair: PathBuf,
        #[arg(short = 'K', long, default_value_t = 60)]
        k: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure carrying the process exit code: 1 check failure, 2 input error.
struct Failure {
    code: u8,
    message: String,
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

fn check_err(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: msg.into(),
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input_err(format!("{}: invalid JSON: {e}", path.display())))
}

fn write_out(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| input_err(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn build_from_spec(path: &Path) -> Result<DarbouxTransform, Failure> {
    let v = read_json(path)?;
    let spec = tdjson::kernel_spec_from_json(&v)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    match spec {
        KernelSpec::Spectral { data, chains } => build_trig(&data, &chains),
        KernelSpec::Adelic(points) => build_adelic(&points),
    }
    .map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_pair(path: &Path) -> Result<AnyPair, Failure> {
    let v = read_json(path)?;
    tdjson::cm_pair_from_json(&v).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn checks_report(checks: &[(&str, bool)], format: Format) -> String {
    match format {
        Format::Json => {
            let mut m = serde_json::Map::new();
            for (k, v) in checks {
                m.insert((*k).to_string(), Value::Bool(*v));
            }
            serde_json::to_string_pretty(&Value::Object(m)).unwrap()
        }
        Format::Text => checks
            .iter()
            .map(|(k, v)| format!("{k:<28} {}", if *v { "pass" } else { "fail" }))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn all_pass(checks: &[(&str, bool)]) -> Result<(), Failure> {
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(check_err(format!("check failed: {name}"))),
        None => Ok(()),
    }
}

fn differential_checks(t: &DarbouxTransform) -> Result<Vec<(&'static str, bool)>, Failure> {
    let k = t.basis.len();
    let mut out = vec![("reversed-eigen", check_reversed_eigen(t))];
    out.push((
        "orthogonality",
        check_orthogonality(t, k + 1, k + 1).map_err(|e| check_err(e.to_string()))?,
    ));
    out.push((
        "span-inclusions",
        check_grassmannian_inclusions(t, k + 2).map_err(|e| check_err(e.to_string()))?,
    ));
    Ok(out)
}

fn bispectral_checks(t: &DarbouxTransform) -> Result<Vec<(&'static str, bool)>, Failure> {
    let to_check = |r: Result<bool, trig_darboux::error::Error>| r.map_err(|e| check_err(e.to_string()));
    Ok(vec![
        ("difference-identities", to_check(verify_difference_identities(t))?),
        ("difference-eigen", to_check(verify_difference_eigen(t))?),
        ("discrete-identities", to_check(verify_discrete_identities(t))?),
    ])
}

fn bispectral_report(t: &DarbouxTransform) -> Result<(Value, Vec<(&'static str, bool)>), Failure> {
    let trig = t
        .trig
        .as_ref()
        .ok_or_else(|| input_err("factorization is not trigonometric"))?;
    let checks = bispectral_checks(t)?;
    let ops = build_r_s(t).map_err(|e| check_err(e.to_string()))?;
    let sigma = discrete_wave(t).map_err(|e| check_err(e.to_string()))?;
    let mut m = serde_json::Map::new();
    m.insert("p_mapped".into(), tdjson::difference_json(&bmap(&trig.p_bar)));
    m.insert("q_mapped".into(), tdjson::difference_json(&bmap(&trig.q_bar)));
    m.insert("r".into(), tdjson::delta_json(&ops.r));
    m.insert("s".into(), tdjson::delta_json(&ops.s));
    m.insert("r_shift_monic".into(), Value::Bool(ops.r_t_monic));
    m.insert("s_shift_monic".into(), Value::Bool(ops.s_t_monic));
    m.insert("discrete_wave".into(), tdjson::ratfunc_json(&sigma));
    let mut cm = serde_json::Map::new();
    for (k, v) in &checks {
        cm.insert((*k).to_string(), Value::Bool(*v));
    }
    m.insert("checks".into(), Value::Object(cm));
    Ok((Value::Object(m), checks))
}

/// Parse a grid file: a JSON array of two-element float arrays.
fn read_grid(path: &Path) -> Result<Vec<(f64, f64)>, Failure> {
    let v = read_json(path)?;
    let arr = v
        .as_array()
        .or_else(|| v.get("points").and_then(Value::as_array))
        .ok_or_else(|| input_err("grid must be an array of [a, b] points"))?;
    arr.iter()
        .map(|p| {
            let pt = p.as_array().filter(|a| a.len() == 2);
            match pt {
                Some(a) => match (a[0].as_f64(), a[1].as_f64()) {
                    (Some(x), Some(y)) => Ok((x, y)),
                    _ => Err(input_err("grid entries must be numbers")),
                },
                None => Err(input_err("grid entries must be [a, b] pairs")),
            }
        })
        .collect()
}

/// CSV rows `a,b,re,im,status` for `rho` framed by `frame(a,b)`, with the
/// grid variables bound through `assign`.
fn eval_csv(
    rho: &RatFunc,
    grid: &[(f64, f64)],
    assign: impl Fn(f64, f64) -> BTreeMap<Var, Complex64>,
    frame: impl Fn(f64, f64) -> Complex64,
) -> String {
    let mut out = String::from("a,b,re,im,status\n");
    for &(a, b) in grid {
        match rho.eval_c64(&assign(a, b)) {
            Ok(v) => {
                let psi = frame(a, b) * v;
                out.push_str(&format!("{a},{b},{:.12e},{:.12e},ok\n", psi.re, psi.im));
            }
            Err(_) => out.push_str(&format!("{a},{b},,,pole\n")),
        }
    }
    out
}

fn cmd_build(spec: &Path, out: Option<&Path>, format: Format) -> Result<(), Failure> {
    let t = build_from_spec(spec)?;
    let mut checks = differential_checks(&t)?;
    if t.trig.is_some() {
        checks.extend(bispectral_checks(&t)?);
    }
    let content = match format {
        Format::Json => serde_json::to_string_pretty(&tdjson::bundle_json(&t, &checks)).unwrap(),
        Format::Text => checks_report(&checks, Format::Text),
    };
    write_out(out, &content)?;
    all_pass(&checks)
}

fn cmd_verify(area: Area, spec: &Path, out: Option<&Path>, format: Format) -> Result<(), Failure> {
    let t = build_from_spec(spec)?;
    let mut checks = Vec::new();
    if area != Area::Bispectral {
        checks.extend(differential_checks(&t)?);
    }
    if area != Area::Differential && t.trig.is_some() {
        checks.extend(bispectral_checks(&t)?);
    }
    if area == Area::Bispectral && t.trig.is_none() {
        return Err(input_err("factorization is not trigonometric"));
    }
    write_out(out, &checks_report(&checks, format))?;
    all_pass(&checks)
}

fn cmd_cm(cmd: &CmCmd) -> Result<(), Failure> {
    match cmd {
        CmCmd::Check { pair } => {
            // bypass the validating constructors: the point is the test itself
            let v = read_json(pair)?;
            let x = tdjson::matrix_from_json(
                v.get("X").ok_or_else(|| input_err("pair missing X"))?,
            )
            .map_err(|e| input_err(e.to_string()))?;
            let z = tdjson::matrix_from_json(
                v.get("Z").ok_or_else(|| input_err("pair missing Z"))?,
            )
            .map_err(|e| input_err(e.to_string()))?;
            let kind = v.get("kind").and_then(Value::as_str).unwrap_or("rational");
            let ok = match kind {
                "rational" => is_rational_cm(&x, &z),
                "trig" => is_trig_cm(&x, &z),
                other => return Err(input_err(format!("unknown kind {other:?}"))),
            }
            .map_err(|e| input_err(e.to_string()))?;
            println!("{}", json!({ "kind": kind, "rank_condition": ok }));
            if ok {
                Ok(())
            } else {
                Err(check_err("rank condition fails"))
            }
        }
        CmCmd::Map { pair, out } => match load_pair(pair)? {
            AnyPair::Rational(p) => {
                let t = trig_from_rational(&p).map_err(|e| check_err(e.to_string()))?;
                write_out(
                    out.as_deref(),
                    &serde_json::to_string_pretty(&tdjson::cm_pair_trig_json(&t)).unwrap(),
                )
            }
            AnyPair::Trig(_) => Err(input_err("map expects a rational pair")),
        },
        CmCmd::Wave { pair, out } => {
            let wave = match load_pair(pair)? {
                AnyPair::Rational(p) => rational_wave(&p),
                AnyPair::Trig(p) => trig_wave(&p),
            };
            write_out(
                out.as_deref(),
                &serde_json::to_string_pretty(&json!({ "wave": tdjson::ratfunc_json(&wave) }))
                    .unwrap(),
            )
        }
        CmCmd::Sato { pair, out } => {
            let p = match load_pair(pair)? {
                AnyPair::Trig(p) => p,
                AnyPair::Rational(p) => {
                    trig_from_rational(&p).map_err(|e| check_err(e.to_string()))?
                }
            };
            let q = sato_quotient(&p);
            let ok = q == trig_wave(&p);
            write_out(
                out.as_deref(),
                &serde_json::to_string_pretty(&json!({
                    "sato_quotient": tdjson::ratfunc_json(&q),
                    "matches_wave": ok,
                }))
                .unwrap(),
            )?;
            if ok {
                Ok(())
            } else {
                Err(check_err("tau quotient does not reproduce the wave"))
            }
        }
        CmCmd::Involution { pair, out } => match load_pair(pair)? {
            AnyPair::Rational(p) => {
                let ok = involution_check(&p).map_err(|e| check_err(e.to_string()))?;
                let swapped = p.involution().map_err(|e| check_err(e.to_string()))?;
                write_out(
                    out.as_deref(),
                    &serde_json::to_string_pretty(&json!({
                        "swapped": tdjson::cm_pair_rational_json(&swapped),
                        "exchange_identity": ok,
                    }))
                    .unwrap(),
                )?;
                if ok {
                    Ok(())
                } else {
                    Err(check_err("spectral-exchange identity fails"))
                }
            }
            AnyPair::Trig(_) => Err(input_err("involution expects a rational pair")),
        },
        CmCmd::Shift { pair, k, tol, out } => match load_pair(pair)? {
            AnyPair::Rational(p) => {
                let mut results = Vec::new();
                let mut ok = true;
                for n in 0..=3i64 {
                    let r = verify_shift_property(&p, n, &[], *k, *tol)
                        .map_err(|e| check_err(e.to_string()))?;
                    ok &= r;
                    results.push(json!({ "n": n, "pass": r }));
                }
                write_out(
                    out.as_deref(),
                    &serde_json::to_string_pretty(&json!({
                        "truncation": k,
                        "tolerance": tol,
                        "results": results,
                    }))
                    .unwrap(),
                )?;
                if ok {
                    Ok(())
                } else {
                    Err(check_err("shift property fails"))
                }
            }
            AnyPair::Trig(_) => Err(input_err("shift expects a rational pair")),
        },
    }
}

fn cmd_eval(
    spec: Option<&Path>,
    pair: Option<&Path>,
    grid: &Path,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let points = read_grid(grid)?;
    let csv = match (spec, pair) {
        (Some(s), None) => {
            let t = build_from_spec(s)?;
            eval_csv(
                &t.rho,
                &points,
                |x, z| {
                    BTreeMap::from([
                        (Var::X, Complex64::new(x, 0.0)),
                        (Var::U, Complex64::new((-x).exp(), 0.0)),
                        (Var::Z, Complex64::new(z, 0.0)),
                    ])
                },
                |x, z| Complex64::new(x * z, 0.0).exp(),
            )
        }
        (None, Some(p)) => {
            let sigma = match load_pair(p)? {
                AnyPair::Rational(pr) => {
                    discrete_wave_cm(&pr).map_err(|e| check_err(e.to_string()))?
                }
                AnyPair::Trig(_) => return Err(input_err("eval expects a rational pair")),
            };
            eval_csv(
                &sigma,
                &points,
                |n, z| {
                    BTreeMap::from([
                        (Var::N, Complex64::new(n, 0.0)),
                        (Var::Z, Complex64::new(z, 0.0)),
                    ])
                },
                |n, z| Complex64::new(1.0 + z, 0.0).powf(n),
            )
        }
        _ => return Err(input_err("eval needs exactly one of --spec or --pair")),
    };
    write_out(out, &csv)
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    seed: u64,
    tol: f64,
    trunc: usize,
    kernels: usize,
    pairs: usize,
    mixed: usize,
    contractive: usize,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let config = RunConfig {
        seed,
        tol,
        trunc,
        trig_corpus: kernels,
        pair_corpus: pairs,
        mixed_corpus: mixed,
        contractive_corpus: contractive,
        ..RunConfig::default()
    };
    let report = run_suite(&config).map_err(|e| input_err(e.to_string()))?;
    let content = match format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).unwrap(),
        Format::Text => report.to_text(),
    };
    write_out(out, &content)?;
    if report.all_pass() {
        Ok(())
    } else {
        Err(check_err("suite reported failures"))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Build { spec, out, format } => cmd_build(spec, out.as_deref(), *format),
        Cmd::Verify {
            area,
            spec,
            out,
            format,
        } => cmd_verify(*area, spec, out.as_deref(), *format),
        Cmd::Bispectral { spec, out } => {
            let t = build_from_spec(spec)?;
            let (report, checks) = bispectral_report(&t)?;
            write_out(
                out.as_deref(),
                &serde_json::to_string_pretty(&report).unwrap(),
            )?;
            all_pass(&checks)
        }
        Cmd::Cm { cmd } => cmd_cm(cmd),
        Cmd::Eval {
            spec,
            pair,
            grid,
            out,
        } => cmd_eval(spec.as_deref(), pair.as_deref(), grid, out.as_deref()),
        Cmd::Suite {
            seed,
            tol,
            trunc,
            kernels,
            pairs,
            mixed,
            contractive,
            out,
            format,
        } => cmd_suite(
            *seed,
            *tol,
            *trunc,
            *kernels,
            *pairs,
            *mixed,
            *contractive,
            out.as_deref(),
            *format,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
