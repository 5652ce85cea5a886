//! Command-line front end: argument definitions and the six commands.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::beam::{pulse_error, AveragingOptions, PulseKind, PulseTiming, TrapDistribution};
use crate::bell::{
    extract_epsilon, fit_parity, fit_sinusoid, run_bell, simulate_ramsey, PipelineMode, RamseyModel,
};
use crate::budget::{BudgetRow, ErrorBudget};
use crate::coherence::{
    envelope_moments, exact_am, semiclassical_a0, t2_rabi, t2_rabi_closed, t2_ramsey_static, ThermalDriveParams,
    ThermalSpectrum,
};
use crate::config::{dimension_of, parse_quantity, Dimension, ExperimentConfig};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "rydberg-cz", version, about = "Error budget and Bell-state simulator for a Rydberg C_Z gate")]
pub struct Cli {
    /// Configuration file; defaults to $RYDBERG_CZ_CONFIG, then the built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error budget table.
    Budget(OutArgs),
    /// Bell-state fidelity, populations and parity scan.
    Bell(BellArgs),
    /// Position-averaged Rydberg pulse errors against trap width.
    Pulse(PulseArgs),
    /// Driven (Rabi) and static (Ramsey) coherence times against temperature.
    Coherence(CoherenceArgs),
    /// One observable over a range of one configuration value.
    Sweep(SweepArgs),
    /// Sinusoid fit of measured curves; Ramsey curves are inverted for ε.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// CSV output path; a JSON mirror is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// full, no_spam or cz_only; overrides the configuration.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PulseArgs {
    /// lo:hi:n transverse widths, µm unless suffixed.
    #[arg(long, default_value = "0.16:0.16:1")]
    pub sigma_scan: String,
    /// pi or 2pi.
    #[arg(long, default_value = "2pi")]
    pub pulse: String,
    /// nominal or optimized.
    #[arg(long, default_value = "nominal")]
    pub timing: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    /// Add the 1/e root of the integral Rabi envelope next to the closed form.
    #[arg(long)]
    pub t2_compare: bool,
    /// lo:hi:n temperatures, µK unless suffixed.
    #[arg(long, default_value = "5:50:10")]
    pub temperatures: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Configuration key, section.key.
    #[arg(long)]
    pub param: String,
    /// lo:hi:n in the key's display unit unless suffixed.
    #[arg(long)]
    pub range: String,
    /// F_direct, F_experimental, C, population, or a budget row name.
    #[arg(long, default_value = "F_direct")]
    pub observable: String,
    /// Pipeline mode; overrides the configuration.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitModel {
    Ramsey,
    Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RamseyUnknown {
    /// Microwave π/2 error.
    Microwave,
    /// Extra dephasing between the pulses, with the microwave error fixed.
    Dephasing,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV with a header row; the first two columns are x (rad) and y.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub model: FitModel,
    /// Which Ramsey error is solved for.
    #[arg(long, value_enum, default_value = "microwave")]
    pub unknown: RamseyUnknown,
    /// JSON output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses and runs, printing errors to stderr; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cfg = ExperimentConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Budget(a) => cmd_budget(&cfg, a, out),
        Command::Bell(a) => cmd_bell(&cfg, a, out),
        Command::Pulse(a) => cmd_pulse(&cfg, a, out),
        Command::Coherence(a) => cmd_coherence(&cfg, a, out),
        Command::Sweep(a) => cmd_sweep(&cfg, a, out),
        Command::Fit(a) => cmd_fit(&cfg, a, out),
    }
}

/// lo:hi:n with optional unit suffixes on lo and hi; bare numbers are in the
/// display unit of `dim`. Returns SI values.
pub fn parse_range(spec: &str, dim: Dimension, what: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Usage(format!("{what}: expected lo:hi:n, got '{spec}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let bound = |s: &str| -> Result<f64> {
        let s = s.trim();
        let with_unit = if dim != Dimension::Dimensionless && s.ends_with(|c: char| c.is_ascii_digit() || c == '.') {
            format!("{s} {}", dim.display_unit())
        } else {
            s.to_string()
        };
        parse_quantity(what, dim, &with_unit).map_err(|e| Error::Usage(e.to_string()))
    };
    let lo = bound(parts[0])?;
    let hi = bound(parts[1])?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(Error::Usage(format!("{what}: n must be at least 1")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn display_factor(dim: Dimension) -> f64 {
    match dim {
        Dimension::Dimensionless | Dimension::Text => 1.0,
        _ => parse_quantity("", dim, &format!("1 {}", dim.display_unit())).unwrap_or(1.0),
    }
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// CSV to `path` with a JSON mirror, or CSV to standard output.
fn emit_table(
    out: &mut dyn Write,
    path: Option<&Path>,
    header: &[&str],
    rows: &[Vec<String>],
    json: serde_json::Value,
) -> Result<()> {
    match path {
        Some(p) => {
            write_csv(p, header, rows)?;
            write_json(&p.with_extension("json"), &json)?;
            writeln!(out, "wrote {} and {}", p.display(), p.with_extension("json").display())?;
        }
        None => out.write_all(csv_string(header, rows)?.as_bytes())?,
    }
    Ok(())
}

fn f(v: f64) -> String {
    format!("{v}")
}

/// Abscissa after unit conversion, rounded to 12 significant digits.
fn fx(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let digits = 11 - v.abs().log10().floor() as i32;
    let p = 10f64.powi(digits.clamp(0, 300));
    f((v * p).round() / p)
}

pub fn cmd_budget(cfg: &ExperimentConfig, args: &OutArgs, out: &mut dyn Write) -> Result<()> {
    let budget = cfg.budget()?;
    writeln!(out, "{:<28} {:>11}  {:<10}  formula", "error source", "epsilon", "provenance")?;
    let mut rows = Vec::new();
    for e in budget.entries() {
        let placement: Vec<String> = e.row.placement().iter().map(|s| s.to_string()).collect();
        writeln!(
            out,
            "{:<28} {:>11.4e}  {:<10}  {}",
            e.row.name(),
            e.epsilon,
            format!("{:?}", e.provenance).to_lowercase(),
            e.row.formula()
        )?;
        rows.push(vec![
            e.row.name().to_string(),
            f(e.epsilon),
            format!("{:?}", e.provenance).to_lowercase(),
            placement.join(";"),
            e.row.formula().to_string(),
            e.row.description().to_string(),
        ]);
    }
    if let Some(d) = &budget.diagnostics {
        writeln!(out)?;
        writeln!(out, "T2 Doppler            {:.3} us", d.t2_doppler * 1e6)?;
        writeln!(out, "T2 magnetic           {:.4} ms", d.t2_magnetic * 1e3)?;
        writeln!(out, "7p scattering, free   {:.4e}", d.scattering_free)?;
        writeln!(out, "crosstalk Omega'/Omega {:.4}", d.crosstalk_ratio)?;
        writeln!(out, "crosstalk amplitude   {:.4}", d.crosstalk_amplitude)?;
        writeln!(out, "escape log10 P        {:.1}", d.escape_log_probability / std::f64::consts::LN_10)?;
    }
    if let Some(p) = &args.out {
        let header = ["row", "epsilon_1", "provenance", "stages", "formula", "description"];
        write_csv(p, &header, &rows)?;
        write_json(&p.with_extension("json"), &budget)?;
        writeln!(out, "wrote {} and {}", p.display(), p.with_extension("json").display())?;
    }
    Ok(())
}

pub fn cmd_bell(cfg: &ExperimentConfig, args: &BellArgs, out: &mut dyn Write) -> Result<()> {
    let budget = cfg.budget()?;
    let mut opts = cfg.pipeline_options()?;
    if let Some(m) = &args.mode {
        opts.mode = m.parse()?;
    }
    let r = run_bell(&budget, &opts)?;
    writeln!(out, "mode             {}", r.mode)?;
    writeln!(out, "F_direct         {:.6}", r.f_direct)?;
    writeln!(out, "F_experimental   {:.6}", r.f_experimental)?;
    writeln!(out, "(P00+P11)/2      {:.6}", r.population)?;
    writeln!(out, "C                {:.6}", r.coherence)?;
    writeln!(
        out,
        "P00 P01 P10 P11  {:.5} {:.5} {:.5} {:.5}",
        r.outcomes.0[0], r.outcomes.0[1], r.outcomes.0[2], r.outcomes.0[3]
    )?;
    writeln!(out, "lost control     {:.5}", r.ledger.control)?;
    writeln!(out, "lost target      {:.5}", r.ledger.target)?;
    if let Some(p) = &args.out {
        let header = ["phi_rad", "parity_1", "p00_1", "p01_1", "p10_1", "p11_1"];
        let rows: Vec<Vec<String>> = r
            .parity
            .phi
            .iter()
            .zip(&r.parity.parity)
            .zip(&r.parity.outcomes)
            .map(|((phi, par), o)| {
                let mut row = vec![f(*phi), f(*par)];
                row.extend(o.0.iter().map(|v| f(*v)));
                row
            })
            .collect();
        let json = json!({
            "mode": r.mode,
            "f_direct": r.f_direct,
            "f_experimental": r.f_experimental,
            "population": r.population,
            "coherence": r.coherence,
            "outcomes": r.outcomes.0,
            "lost": r.ledger,
            "parity_fit": r.fit,
            "phi_rad": r.parity.phi,
            "parity": r.parity.parity,
        });
        write_csv(p, &header, &rows)?;
        write_json(&p.with_extension("json"), &json)?;
        writeln!(out, "wrote {} and {}", p.display(), p.with_extension("json").display())?;
    }
    Ok(())
}

pub fn cmd_pulse(cfg: &ExperimentConfig, args: &PulseArgs, out: &mut dyn Write) -> Result<()> {
    let geom = cfg.beam_geometry()?;
    let sigma_z = cfg.trap_distribution()?.sigma_z;
    let pulse: PulseKind = args.pulse.parse()?;
    let timing: PulseTiming = args.timing.parse()?;
    let sigmas = parse_range(&args.sigma_scan, Dimension::Length, "--sigma-scan")?;
    let opts = AveragingOptions::default();
    let reports: Vec<_> = sigmas
        .par_iter()
        .map(|&s| pulse_error(&geom, &TrapDistribution::new(s, sigma_z)?, pulse, timing, &opts))
        .collect::<Result<_>>()?;
    let header = [
        "sigma_um",
        "pulse_time_us",
        "population_error_1",
        "error_std_1",
        "error_lower_1",
        "error_upper_1",
        "phase_mean_rad",
        "phase_one_minus_cos_1",
        "phase_std_rad",
    ];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let p = &r.population;
            vec![
                fx(r.sigma * 1e6),
                fx(r.pulse_time * 1e6),
                f(p.error),
                f(p.std),
                f(p.error - p.std),
                f(p.error + p.std),
                f(r.phase.mean_phi),
                f(r.phase.one_minus_cos),
                f(r.phase.std),
            ]
        })
        .collect();
    emit_table(out, args.out.as_deref(), &header, &rows, json!({ "pulse": pulse, "timing": timing, "rows": reports }))
}

#[derive(Serialize)]
struct CoherenceRow {
    temperature: f64,
    t2_ramsey: f64,
    t2_rabi_closed: f64,
    t2_rabi_integral: Option<f64>,
    envelope_m: f64,
    envelope_semiclassical: f64,
    envelope_oracle: f64,
}

pub fn cmd_coherence(cfg: &ExperimentConfig, args: &CoherenceArgs, out: &mut dyn Write) -> Result<()> {
    let base = cfg.thermal_drive()?;
    let anchor = cfg.ramsey_anchor()?;
    let temps = parse_range(&args.temperatures, Dimension::Temperature, "--temperatures")?;
    // Envelope compared where the expansion puts the 1/e point.
    let kappa_star = ((1.0 - (-1f64).exp()) / 840.0).sqrt();
    let rows: Vec<CoherenceRow> = temps
        .par_iter()
        .map(|&t| -> Result<CoherenceRow> {
            let p = ThermalDriveParams { temperature: t, ..base };
            p.validate()?;
            let m = p.m_for_kappa(kappa_star).round().max(1.0);
            let spectrum = ThermalSpectrum::new(&p)?;
            let oracle = exact_am(&p, &spectrum, m).a_m / exact_am(&p, &spectrum, 0.0).a_m;
            Ok(CoherenceRow {
                temperature: t,
                t2_ramsey: t2_ramsey_static(t, &anchor)?,
                t2_rabi_closed: t2_rabi_closed(&p),
                t2_rabi_integral: if args.t2_compare { Some(t2_rabi(&p)?.integral_root) } else { None },
                envelope_m: m,
                envelope_semiclassical: envelope_moments(p.kappa(m))?.0,
                envelope_oracle: oracle,
            })
        })
        .collect::<Result<_>>()?;

    let t0 = base.temperature;
    let r_omega = t2_rabi_closed(&ThermalDriveParams { rabi_frequency: 2.0 * base.rabi_frequency, ..base })
        / t2_rabi_closed(&base);
    let r_temp = t2_rabi_closed(&ThermalDriveParams { temperature: 2.0 * t0, ..base }) / t2_rabi_closed(&base);
    let mut header = vec!["temperature_uK", "t2_ramsey_s", "t2_rabi_closed_s"];
    if args.t2_compare {
        header.push("t2_rabi_integral_s");
    }
    header.extend(["envelope_m_1", "envelope_semiclassical_1", "envelope_oracle_1"]);
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![fx(r.temperature * 1e6), f(r.t2_ramsey), f(r.t2_rabi_closed)];
            if let Some(x) = r.t2_rabi_integral {
                v.push(f(x));
            }
            v.extend([f(r.envelope_m), f(r.envelope_semiclassical), f(r.envelope_oracle)]);
            v
        })
        .collect();
    let json = json!({
        "a0_at_config_temperature": semiclassical_a0(&base),
        "ratio_t2_rabi_double_omega": r_omega,
        "ratio_t2_rabi_double_temperature": r_temp,
        "rows": rows,
    });
    if args.out.is_some() {
        writeln!(out, "T2 Rabi ratio at 2 Omega: {r_omega:.6}")?;
        writeln!(out, "T2 Rabi ratio at 2 T:     {r_temp:.6}")?;
    }
    emit_table(out, args.out.as_deref(), &header, &table, json)
}

fn observable(cfg: &ExperimentConfig, name: &str, mode: Option<PipelineMode>) -> Result<f64> {
    if let Ok(row) = name.parse::<BudgetRow>() {
        return Ok(cfg.budget()?.get(row));
    }
    let budget: ErrorBudget = cfg.budget()?;
    let mut opts = cfg.pipeline_options()?;
    if let Some(m) = mode {
        opts.mode = m;
    }
    let r = run_bell(&budget, &opts)?;
    match name {
        "F_direct" => Ok(r.f_direct),
        "F_experimental" => Ok(r.f_experimental),
        "C" => Ok(r.coherence),
        "population" => Ok(r.population),
        _ => unreachable!(),
    }
}

pub fn cmd_sweep(cfg: &ExperimentConfig, args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let dim = dimension_of(&args.param)
        .ok_or_else(|| Error::Usage(format!("unknown parameter '{}'", args.param)))?;
    if dim == Dimension::Text {
        return Err(Error::Usage(format!("'{}' is not numeric", args.param)));
    }
    let known = ["F_direct", "F_experimental", "C", "population"];
    if !known.contains(&args.observable.as_str()) && args.observable.parse::<BudgetRow>().is_err() {
        return Err(Error::Usage(format!(
            "unknown observable '{}'; expected F_direct, F_experimental, C, population or a budget row",
            args.observable
        )));
    }
    let mode = args.mode.as_deref().map(str::parse).transpose()?;
    let values = parse_range(&args.range, dim, "--range")?;
    let results: Vec<f64> = values
        .par_iter()
        .map(|&v| {
            let mut c = cfg.clone();
            c.set_number(&args.param, v)?;
            observable(&c, &args.observable, mode)
        })
        .collect::<Result<_>>()?;
    let scale = display_factor(dim);
    let xname = format!("{}_{}", args.param, dim.display_unit());
    let yname = format!("{}_1", args.observable);
    let rows: Vec<Vec<String>> = values
        .iter()
        .zip(&results)
        .map(|(x, y)| vec![fx(x / scale), f(*y)])
        .collect();
    let json = json!({
        "param": args.param,
        "unit": dim.display_unit(),
        "observable": args.observable,
        "values": values.iter().map(|x| x / scale).collect::<Vec<_>>(),
        "results": results,
    });
    emit_table(out, args.out.as_deref(), &[&xname, &yname], &rows, json)
}

/// Reads the first two columns of a headed CSV as numbers.
pub fn read_xy(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() < 2 {
        return Err(Error::Validation(format!("{}: need at least two columns", path.display())));
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let cell = |col: usize| -> Result<f64> {
            let raw = rec.get(col).unwrap_or("");
            raw.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                Error::Validation(format!(
                    "{}: row {row}, column {} ('{}'): '{raw}' is not a number",
                    path.display(),
                    col + 1,
                    &headers[col]
                ))
            })
        };
        x.push(cell(0)?);
        y.push(cell(1)?);
    }
    Ok((x, y))
}

pub fn cmd_fit(cfg: &ExperimentConfig, args: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let (x, y) = read_xy(&args.input)?;
    let json = match args.model {
        FitModel::Parity => {
            let fit = fit_parity(&x, &y)?;
            writeln!(out, "amplitude     {}", fit.amplitude)?;
            writeln!(out, "phase_rad     {}", fit.phase)?;
            writeln!(out, "offset        {}", fit.offset)?;
            writeln!(out, "C             {}", fit.amplitude / 2.0)?;
            writeln!(out, "rms_residual  {}", fit.rms_residual)?;
            json!({ "model": "parity", "fit": fit, "coherence": fit.amplitude / 2.0 })
        }
        FitModel::Ramsey => {
            let fit = fit_sinusoid(&x, &y, 1)?;
            let m = &cfg.physical_params()?.measured;
            let opts = cfg.pipeline_options()?;
            let base = RamseyModel {
                microwave: m.microwave,
                dephasing: 0.0,
                readout_loss: m.readout_loss,
                optical_pumping: m.optical_pumping,
                state_measurement: m.state_measurement,
                loss_map: opts.loss_map,
            };
            let unknown = args.unknown;
            let model_at = move |eps: f64| match unknown {
                RamseyUnknown::Microwave => RamseyModel { microwave: eps, ..base },
                RamseyUnknown::Dephasing => RamseyModel { dephasing: eps, ..base },
            };
            let eps = extract_epsilon(fit.amplitude, |e| simulate_ramsey(&model_at(e), &x).map(|c| c.amplitude))?;
            let curve = simulate_ramsey(&model_at(eps), &x)?;
            let resid = (curve.p1.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / x.len() as f64).sqrt();
            writeln!(out, "amplitude     {}", fit.amplitude)?;
            writeln!(out, "phase_rad     {}", fit.phase)?;
            writeln!(out, "offset        {}", fit.offset)?;
            writeln!(out, "epsilon       {eps}")?;
            writeln!(out, "rms_residual  {resid}")?;
            json!({ "model": "ramsey", "unknown": format!("{unknown:?}").to_lowercase(), "fit": fit, "epsilon": eps, "model_rms_residual": resid })
        }
    };
    if let Some(p) = &args.out {
        write_json(p, &json)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r = parse_range("5:30:6", Dimension::Temperature, "r").unwrap();
        assert_eq!(r.len(), 6);
        assert!((r[0] - 5e-6).abs() < 1e-18 && (r[5] - 30e-6).abs() < 1e-18);
        assert_eq!(parse_range("0.1um:0.3um:1", Dimension::Length, "r").unwrap(), vec![0.1e-6]);
        assert!(parse_range("1:2", Dimension::Length, "r").is_err());
        assert!(parse_range("1:2:0", Dimension::Length, "r").is_err());
        let frac = parse_range("0.55:1:2", Dimension::Dimensionless, "r").unwrap();
        assert_eq!(frac, vec![0.55, 1.0]);
    }

    #[test]
    fn display_factors() {
        assert!((display_factor(Dimension::Temperature) - 1e-6).abs() < 1e-20);
        assert_eq!(display_factor(Dimension::Dimensionless), 1.0);
    }
}
