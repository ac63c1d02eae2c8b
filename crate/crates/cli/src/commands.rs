//! Subcommand implementations. One figure, one invocation, one output file.

use crate::config::{BackendKind, OutputFormat, RadialModeArg, RunConfig};
use crate::output::{fmt_g, to_csv, to_json, Table, Value};
use crate::plot::{emit_plot_script, PlotKind};
use crate::{constants_for, UsageError};
use anyhow::{Context, Result};
use clap::ValueEnum;
use fractalqm::fractalset::{build_cantor, CantorSpec};
use fractalqm::hydrogen::{self, FractalDims, QuantumNumbers, RadialMode};
use fractalqm::measure::{gamma_dimension_trace, Staircase};
use fractalqm::oscillator::{self, OscillatorParams};
use fractalqm::Complex64;
use std::fmt::Write as _;
use std::path::Path;

fn emit_text(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_table(cfg: &RunConfig, table: &Table) -> Result<()> {
    let text = match cfg.output_format {
        OutputFormat::Csv => to_csv(table),
        OutputFormat::Json => to_json(table),
    };
    emit_text(cfg, &text)
}

fn linspace(a: f64, b: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(UsageError(format!("samples must be at least 2, got {samples}")).into());
    }
    if !(a < b) {
        return Err(UsageError(format!("sweep requires start < stop, got [{a}, {b}]")).into());
    }
    let step = (b - a) / (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| if i + 1 == samples { b } else { a + i as f64 * step })
        .collect())
}

/// Space staircase for the chosen backend. The Cantor-type backends get a
/// support spanning `[0, domain_hi]` so the staircase varies over the whole
/// sweep.
fn space_staircase(
    backend: BackendKind,
    alpha: f64,
    keep_ratio: f64,
    depth: u32,
    domain_hi: f64,
) -> Result<Staircase> {
    let s = match backend {
        BackendKind::PowerLaw => Staircase::power_law(alpha)?,
        BackendKind::CantorAnalytic => {
            let spec = CantorSpec::new(keep_ratio, 0.0, domain_hi.max(1.0))?;
            Staircase::cantor_analytic(spec, 1.0)?
        }
        BackendKind::Numeric => {
            let spec = CantorSpec::new(keep_ratio, 0.0, domain_hi.max(1.0))?;
            Staircase::numeric(build_cantor(&spec, depth)?, alpha)?
        }
    };
    Ok(s)
}

/// Alpha sweep list: explicit flag, else the backend's forced exponent
/// (analytic Cantor), else the config default.
fn resolve_alphas(
    explicit: Option<Vec<f64>>,
    backend: BackendKind,
    keep_ratio: f64,
    cfg: &RunConfig,
) -> Result<Vec<f64>> {
    match explicit {
        Some(v) if v.is_empty() => Err(UsageError("alpha list must not be empty".into()).into()),
        Some(v) => Ok(v),
        None => match backend {
            BackendKind::CantorAnalytic => {
                Ok(vec![CantorSpec::new(keep_ratio, 0.0, 1.0)?.similarity_dimension()])
            }
            _ => Ok(vec![cfg.alpha]),
        },
    }
}

fn radial_mode(mode: Option<RadialModeArg>, cfg: &RunConfig) -> RadialMode {
    match mode.unwrap_or(cfg.radial_mode) {
        RadialModeArg::Squared => RadialMode::Squared,
        RadialModeArg::PaperLiteral => RadialMode::PaperLiteral,
    }
}

pub fn dimension(
    cfg: &RunConfig,
    keep_ratio: f64,
    depth: u32,
    tol: f64,
    a: Option<f64>,
    b: Option<f64>,
) -> Result<()> {
    let spec = CantorSpec::new(keep_ratio, 0.0, 1.0)?;
    let set = build_cantor(&spec, depth)?;
    let (a, b) = (a.unwrap_or(0.0), b.unwrap_or(1.0));
    let (dim, probes) = gamma_dimension_trace(&set, a, b, tol)?;

    let mut report = String::new();
    let _ = writeln!(report, "gamma-dimension estimate: {dim:.6}");
    let _ = writeln!(
        report,
        "keep_ratio = {keep_ratio}, depth = {depth}, window = [{a}, {b}], tol = {tol}"
    );
    let _ = writeln!(
        report,
        "similarity dimension (reference): {:.6}",
        spec.similarity_dimension()
    );
    let _ = writeln!(report);
    let _ = writeln!(
        report,
        "{:>10}  {:>20}  {:>20}  classification",
        "alpha", "first_mass", "last_mass"
    );
    for p in &probes {
        let _ = writeln!(
            report,
            "{:>10.6}  {:>20}  {:>20}  {}",
            p.alpha,
            fmt_g(p.first_mass),
            fmt_g(p.last_mass),
            if p.divergent { "divergent" } else { "vanishing" }
        );
    }
    emit_text(cfg, &report)
}

#[allow(clippy::too_many_arguments)]
pub fn staircase(
    cfg: &RunConfig,
    backend: Option<BackendKind>,
    alpha: Option<f64>,
    keep_ratio: f64,
    depth: u32,
    normalization: f64,
    xmin: f64,
    xmax: f64,
    samples: usize,
) -> Result<()> {
    let backend = backend.unwrap_or(cfg.staircase_backend);
    let s = match backend {
        BackendKind::CantorAnalytic => {
            let spec = CantorSpec::new(keep_ratio, 0.0, xmax.max(1.0))?;
            Staircase::cantor_analytic(spec, normalization)?
        }
        _ => space_staircase(backend, alpha.unwrap_or(cfg.alpha), keep_ratio, depth, xmax)?,
    };
    let mut table = Table::new(vec!["x", "S"]);
    for x in linspace(xmin, xmax, samples)? {
        table.push(vec![Value::Num(x), Value::Num(s.eval(x))]);
    }
    emit_table(cfg, &table)
}

#[allow(clippy::too_many_arguments)]
pub fn hydrogen_density(
    cfg: &RunConfig,
    n: u32,
    l: u32,
    alpha: Option<Vec<f64>>,
    rmin: f64,
    rmax: f64,
    samples: usize,
    mode: Option<RadialModeArg>,
    a_nl: f64,
    backend: Option<BackendKind>,
    keep_ratio: f64,
    depth: u32,
) -> Result<()> {
    let backend = backend.unwrap_or(cfg.staircase_backend);
    let qn = QuantumNumbers::new(n, l, 0)?;
    let consts = constants_for(cfg.unit_system);
    let mode = radial_mode(mode, cfg);
    let alphas = resolve_alphas(alpha, backend, keep_ratio, cfg)?;
    let rs = linspace(rmin.max(0.0), rmax, samples)?;

    let mut table = Table::new(vec!["r", "alpha", "P"]);
    for &alpha in &alphas {
        let dims = FractalDims::spatial(alpha)?;
        let s = space_staircase(backend, alpha, keep_ratio, depth, rmax)?;
        for &r in &rs {
            let p = hydrogen::radial_density(&qn, &dims, r, &consts, a_nl, mode, &s)?;
            table.push(vec![Value::Num(r), Value::Num(alpha), Value::Num(p)]);
        }
    }
    emit_table(cfg, &table)
}

pub fn hydrogen_energies(
    cfg: &RunConfig,
    n_min: u32,
    n_max: u32,
    alpha: Option<Vec<f64>>,
    backend: Option<BackendKind>,
    keep_ratio: f64,
    depth: u32,
) -> Result<()> {
    if n_min > n_max {
        return Err(UsageError(format!("n-min {n_min} exceeds n-max {n_max}")).into());
    }
    let backend = backend.unwrap_or(cfg.staircase_backend);
    let consts = constants_for(cfg.unit_system);
    let alphas = resolve_alphas(alpha, backend, keep_ratio, cfg)?;
    // the staircase must cover the largest orbit radius
    let r_top = hydrogen::bohr_radius_level(n_max.max(1), &consts)?;

    let mut table = Table::new(vec!["n", "alpha", "E_hartree", "E_eV"]);
    for &alpha in &alphas {
        let dims = FractalDims::spatial(alpha)?;
        let s = space_staircase(backend, alpha, keep_ratio, depth, r_top)?;
        for n in n_min..=n_max {
            let e = hydrogen::energy_level(n, &dims, &consts, &s)?;
            table.push(vec![
                Value::Int(n as i64),
                Value::Num(alpha),
                Value::Num(consts.energy_to_hartree(e)),
                Value::Num(consts.energy_to_ev(e)),
            ]);
        }
    }
    emit_table(cfg, &table)
}

#[allow(clippy::too_many_arguments)]
pub fn ho_density(
    cfg: &RunConfig,
    levels: Vec<u32>,
    alpha: Option<Vec<f64>>,
    xmin: f64,
    xmax: f64,
    samples: usize,
    mass: f64,
    omega_alpha: f64,
    hbar: f64,
    backend: Option<BackendKind>,
    keep_ratio: f64,
    depth: u32,
) -> Result<()> {
    if levels.is_empty() {
        return Err(UsageError("level list must not be empty".into()).into());
    }
    let backend = backend.unwrap_or(cfg.staircase_backend);
    let params = OscillatorParams::new(mass, omega_alpha, hbar)?;
    let alphas = resolve_alphas(alpha, backend, keep_ratio, cfg)?;
    let xs = linspace(xmin, xmax, samples)?;
    let domain_hi = xmax.abs().max(xmin.abs());

    let mut table = Table::new(vec!["x", "alpha", "n", "P"]);
    for &n in &levels {
        for &alpha in &alphas {
            let dims = FractalDims::spatial(alpha)?;
            let s = space_staircase(backend, alpha, keep_ratio, depth, domain_hi)?;
            for &x in &xs {
                let p = oscillator::density(n, &dims, x, &params, &s)?;
                table.push(vec![
                    Value::Num(x),
                    Value::Num(alpha),
                    Value::Int(n as i64),
                    Value::Num(p),
                ]);
            }
        }
    }
    emit_table(cfg, &table)
}

pub fn ho_energies(
    cfg: &RunConfig,
    n_max: u32,
    omega_alphas: Vec<f64>,
    mass: f64,
    hbar: f64,
) -> Result<()> {
    if omega_alphas.is_empty() {
        return Err(UsageError("omega_alpha list must not be empty".into()).into());
    }
    let mut table = Table::new(vec!["n", "omega_alpha", "E"]);
    for &w in &omega_alphas {
        let params = OscillatorParams::new(mass, w, hbar)?;
        for n in 0..=n_max {
            table.push(vec![
                Value::Int(n as i64),
                Value::Num(w),
                Value::Num(oscillator::energy(n, &params)),
            ]);
        }
    }
    emit_table(cfg, &table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvolveSystem {
    Hydrogen,
    Ho,
}

fn parse_fields(spec: &str, what: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| UsageError(format!("invalid {what} field {f:?} in {spec:?}")).into())
        })
        .collect()
}

/// A quantum-number field must be an exact non-negative integer; `as`-cast
/// truncation would silently remap bad input onto a valid state.
fn parse_index(v: f64, name: &str, spec: &str) -> Result<u32> {
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(UsageError(format!(
            "{name} must be a non-negative integer, got {v} in {spec:?}"
        ))
        .into());
    }
    Ok(v as u32)
}

fn parse_signed_index(v: f64, name: &str, spec: &str) -> Result<i32> {
    if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
        return Err(UsageError(format!(
            "{name} must be an integer, got {v} in {spec:?}"
        ))
        .into());
    }
    Ok(v as i32)
}

#[allow(clippy::too_many_arguments)]
pub fn evolve(
    cfg: &RunConfig,
    system: EvolveSystem,
    term_specs: Vec<String>,
    alpha: Option<f64>,
    beta: Option<f64>,
    t_max: f64,
    samples: usize,
    at: String,
    mass: f64,
    omega_alpha: f64,
    hbar: f64,
) -> Result<()> {
    if term_specs.is_empty() {
        return Err(UsageError("at least one --term is required".into()).into());
    }
    let alpha = alpha.unwrap_or(cfg.alpha);
    let beta = beta.unwrap_or(cfg.beta);
    let dims = FractalDims::new(alpha, beta)?;
    // the printed evolution phases use the t^beta surrogate
    let s_space = Staircase::power_law(alpha)?;
    let s_time = Staircase::power_law(beta)?;
    let ts = linspace(0.0, t_max, samples)?;

    let mut table = Table::new(vec!["t", "re", "im", "abs2"]);
    match system {
        EvolveSystem::Hydrogen => {
            let point = {
                let f = parse_fields(&at, "--at")?;
                match f.len() {
                    1 => (f[0], 0.0, 0.0),
                    3 => (f[0], f[1], f[2]),
                    _ => {
                        return Err(UsageError(
                            "--at for hydrogen takes `r` or `r,theta,phi`".into(),
                        )
                        .into())
                    }
                }
            };
            let mut terms = Vec::new();
            for spec in &term_specs {
                let f = parse_fields(spec, "--term")?;
                let (c, rest) = match f.len() {
                    3 => (Complex64::new(f[0], f[1]), (f[2], 0.0, 0.0)),
                    5 => (Complex64::new(f[0], f[1]), (f[2], f[3], f[4])),
                    _ => {
                        return Err(UsageError(format!(
                            "--term {spec:?} must be `c_re,c_im,n` or `c_re,c_im,n,l,m`"
                        ))
                        .into())
                    }
                };
                let qn = QuantumNumbers::new(
                    parse_index(rest.0, "n", spec)?,
                    parse_index(rest.1, "l", spec)?,
                    parse_signed_index(rest.2, "m", spec)?,
                )?;
                terms.push((c, qn));
            }
            let consts = constants_for(cfg.unit_system);
            for &t in &ts {
                let v = hydrogen::evolve_superposition(
                    &terms, &dims, point, t, &consts, &s_space, &s_time,
                )?;
                table.push(vec![
                    Value::Num(t),
                    Value::Num(v.re),
                    Value::Num(v.im),
                    Value::Num(v.norm_sqr()),
                ]);
            }
        }
        EvolveSystem::Ho => {
            let f = parse_fields(&at, "--at")?;
            if f.len() != 1 {
                return Err(UsageError("--at for the oscillator takes a single x".into()).into());
            }
            let x = f[0];
            let params = OscillatorParams::new(mass, omega_alpha, hbar)?;
            let mut terms = Vec::new();
            for spec in &term_specs {
                let f = parse_fields(spec, "--term")?;
                if f.len() != 3 {
                    return Err(UsageError(format!(
                        "--term {spec:?} must be `c_re,c_im,n` for the oscillator"
                    ))
                    .into());
                }
                terms.push((Complex64::new(f[0], f[1]), parse_index(f[2], "n", spec)?));
            }
            for &t in &ts {
                let v = oscillator::evolve(&terms, &dims, x, t, &params, &s_space, &s_time)?;
                table.push(vec![
                    Value::Num(t),
                    Value::Num(v.re),
                    Value::Num(v.im),
                    Value::Num(v.norm_sqr()),
                ]);
            }
        }
    }
    emit_table(cfg, &table)
}

pub fn plot_script(cfg: &RunConfig, data: &Path, kind: PlotKind) -> Result<()> {
    let script = emit_plot_script(data, kind)?;
    emit_text(cfg, &script)
}
