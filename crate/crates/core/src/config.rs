//! Flat `[section]` / `key = value unit` configuration files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::beam::{BeamGeometry, TrapDistribution};
use crate::bell::PipelineOptions;
use crate::budget::{assemble_budget, ErrorBudget, MeasuredErrors, PhysicalParams};
use crate::coherence::{RamseyAnchor, ThermalDriveParams};
use crate::constants::{ATOMIC_MASS_UNIT, TWO_PI};
use crate::{Error, Result};

/// Environment variable naming the configuration used when none is given.
pub const CONFIG_ENV: &str = "RYDBERG_CZ_CONFIG";

/// The configuration shipped with the crate.
pub const DEFAULT_CONFIG: &str = include_str!("../config/default.cfg");

/// Physical dimension expected for a key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Time,
    Length,
    Temperature,
    /// Entered as f = Ω/2π in MHz, stored as Ω in rad/s.
    AngularFrequency,
    MagneticField,
    Dimensionless,
    Text,
}

impl Dimension {
    /// Unit assumed for bare numbers in sweep ranges and used in CSV headers.
    pub fn display_unit(self) -> &'static str {
        match self {
            Dimension::Time => "us",
            Dimension::Length => "um",
            Dimension::Temperature => "uK",
            Dimension::AngularFrequency => "MHz",
            Dimension::MagneticField => "uT",
            Dimension::Dimensionless | Dimension::Text => "1",
        }
    }

    /// Factor converting a value in `unit` to SI.
    fn factor(self, unit: &str) -> Option<f64> {
        match (self, unit) {
            (Dimension::Time, "s") => Some(1.0),
            (Dimension::Time, "us") => Some(1e-6),
            (Dimension::Time, "ns") => Some(1e-9),
            (Dimension::Length, "m") => Some(1.0),
            (Dimension::Length, "um") => Some(1e-6),
            (Dimension::Length, "nm") => Some(1e-9),
            (Dimension::Temperature, "K") => Some(1.0),
            (Dimension::Temperature, "uK") => Some(1e-6),
            (Dimension::AngularFrequency, "MHz") => Some(TWO_PI * 1e6),
            (Dimension::MagneticField, "T") => Some(1.0),
            (Dimension::MagneticField, "uT") => Some(1e-6),
            (Dimension::Dimensionless, "" | "1" | "dimensionless") => Some(1.0),
            _ => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Time => "time",
            Dimension::Length => "length",
            Dimension::Temperature => "temperature",
            Dimension::AngularFrequency => "frequency",
            Dimension::MagneticField => "magnetic field",
            Dimension::Dimensionless => "dimensionless number",
            Dimension::Text => "text",
        })
    }
}

const UNITS: [&str; 13] = ["s", "us", "ns", "m", "um", "nm", "K", "uK", "MHz", "T", "uT", "1", "dimensionless"];

pub const SECTIONS: [&str; 7] = ["atom", "beams", "trap", "timings", "measured_errors", "pipeline_options", "sweep"];

use Dimension::*;

/// Every accepted key with its dimension.
pub const SCHEMA: &[(&str, &str, Dimension)] = &[
    ("atom", "temperature", Temperature),
    ("atom", "mass_amu", Dimensionless),
    ("atom", "escape_distance", Length),
    ("atom", "fill_fraction", Dimensionless),
    ("beams", "lambda1", Length),
    ("beams", "lambda2", Length),
    ("beams", "rabi_frequency", AngularFrequency),
    ("beams", "blockade_shift", AngularFrequency),
    ("beams", "detuning_7p", AngularFrequency),
    ("beams", "tau_7p", Time),
    ("beams", "tau_rydberg", Time),
    ("beams", "site_spacing", Length),
    ("beams", "waist1", Length),
    ("beams", "waist2", Length),
    ("beams", "crosstalk_rabi_frequency", AngularFrequency),
    ("beams", "crosstalk_stark_shift", AngularFrequency),
    ("beams", "magnetic_noise", MagneticField),
    ("beams", "g_rydberg_mj", Dimensionless),
    ("beams", "g_ground_mf", Dimensionless),
    ("beams", "pulse_waist1", Length),
    ("beams", "pulse_waist2", Length),
    ("beams", "pulse_rabi_frequency", AngularFrequency),
    ("beams", "stark_coefficient1", AngularFrequency),
    ("beams", "stark_coefficient2", AngularFrequency),
    ("trap", "sigma", Length),
    ("trap", "sigma_z", Length),
    ("trap", "light_shift_fraction", Dimensionless),
    ("trap", "ramsey_t2", Time),
    ("trap", "ramsey_temperature", Temperature),
    ("trap", "frequency_x", AngularFrequency),
    ("trap", "frequency_y", AngularFrequency),
    ("trap", "frequency_z", AngularFrequency),
    ("trap", "drive_rabi_frequency", AngularFrequency),
    ("timings", "t_pi", Time),
    ("timings", "t_2pi", Time),
    ("timings", "t_gap", Time),
    ("timings", "t_ground_rydberg", Time),
    ("timings", "drop_time", Time),
    ("measured_errors", "laser_noise", Dimensionless),
    ("measured_errors", "atom_position", Dimensionless),
    ("measured_errors", "crosstalk", Dimensionless),
    ("measured_errors", "rydberg_dephasing_free", Dimensionless),
    ("measured_errors", "rydberg_dephasing_blockaded", Dimensionless),
    ("measured_errors", "microwave", Dimensionless),
    ("measured_errors", "stark_pulse", Dimensionless),
    ("measured_errors", "readout_loss", Dimensionless),
    ("measured_errors", "optical_pumping", Dimensionless),
    ("measured_errors", "state_measurement", Dimensionless),
    ("pipeline_options", "mode", Text),
    ("pipeline_options", "target_branch", Text),
    ("pipeline_options", "crosstalk_model", Text),
    ("pipeline_options", "loss_map", Text),
    ("pipeline_options", "renormalize", Text),
    ("pipeline_options", "calculated_sources", Text),
    ("pipeline_options", "local_theta", Dimensionless),
    ("pipeline_options", "parity_points", Dimensionless),
    ("sweep", "seed", Dimensionless),
];

/// Dimension of `section.key`, if the key exists.
pub fn dimension_of(path: &str) -> Option<Dimension> {
    let (section, key) = path.split_once('.')?;
    SCHEMA
        .iter()
        .find(|(s, k, _)| *s == section && *k == key)
        .map(|e| e.2)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    /// SI value.
    Number(f64),
    Text(String),
}

/// Parsed configuration. Keys are `section.key`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    values: BTreeMap<String, Value>,
    origin: String,
}

/// Parses `text` as a quantity of `dim`, returning the SI value.
pub fn parse_quantity(path: &str, dim: Dimension, text: &str) -> Result<f64> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_ascii_alphabetic() && !((c == 'e' || c == 'E') && exponent_follows(&text[i + 1..]))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (num, unit) = (text[..split].trim(), text[split..].trim());
    let value: f64 = num
        .parse()
        .map_err(|_| Error::config(path, format!("'{text}' is not a number with a unit")))?;
    if !value.is_finite() {
        return Err(Error::config(path, format!("'{text}' is not finite")));
    }
    if !UNITS.contains(&unit) && !unit.is_empty() {
        return Err(Error::config(
            path,
            format!("unknown unit '{unit}' (allowed: {})", UNITS.join(", ")),
        ));
    }
    let factor = dim
        .factor(unit)
        .ok_or_else(|| Error::config(path, format!("unit '{unit}' is not a {dim}")))?;
    Ok(value * factor)
}

fn exponent_follows(rest: &str) -> bool {
    let rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
    rest.starts_with(|c: char| c.is_ascii_digit())
}

impl ExperimentConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut section: Option<String> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = format!("{origin}:{}", lineno + 1);
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| Error::config(&at, format!("malformed section header '{line}'")))?
                    .trim();
                if !SECTIONS.contains(&name) {
                    return Err(Error::config(&at, format!("unknown section [{name}]")));
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(&at, format!("expected 'key = value', got '{line}'")))?;
            let sec = section
                .as_deref()
                .ok_or_else(|| Error::config(&at, "key outside any section"))?;
            let path = format!("{sec}.{}", key.trim());
            let dim = dimension_of(&path).ok_or_else(|| Error::config(&path, "unknown key"))?;
            let value = value.trim();
            let parsed = match dim {
                Text => Value::Text(value.to_string()),
                _ => Value::Number(parse_quantity(&path, dim, value)?),
            };
            if values.insert(path.clone(), parsed).is_some() {
                return Err(Error::config(&path, "key given twice"));
            }
        }
        Ok(ExperimentConfig {
            values,
            origin: origin.to_string(),
        })
    }

    pub fn shipped_default() -> Self {
        Self::parse(DEFAULT_CONFIG, "default.cfg").expect("shipped config parses")
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), format!("cannot read: {e}")))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// `path` if given, else the file named by the environment variable, else
    /// the shipped default.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_file(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
                _ => Ok(Self::shipped_default()),
            },
        }
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn contains(&self, path: &str) -> bool {
        self.values.contains_key(path)
    }

    pub fn get(&self, path: &str) -> Option<&Value> {
        self.values.get(path)
    }

    pub fn opt_number(&self, path: &str) -> Result<Option<f64>> {
        match self.values.get(path) {
            None => Ok(None),
            Some(Value::Number(v)) => Ok(Some(*v)),
            Some(Value::Text(_)) => Err(Error::config(path, "expected a number")),
        }
    }

    pub fn number(&self, path: &str) -> Result<f64> {
        self.opt_number(path)?
            .ok_or_else(|| Error::config(path, "required key missing"))
    }

    pub fn opt_text(&self, path: &str) -> Option<&str> {
        match self.values.get(path) {
            Some(Value::Text(s)) => Some(s),
            _ => None,
        }
    }

    fn flag(&self, path: &str, default: bool) -> Result<bool> {
        match self.opt_text(path) {
            None => Ok(default),
            Some("true" | "yes" | "on") => Ok(true),
            Some("false" | "no" | "off") => Ok(false),
            Some(other) => Err(Error::config(path, format!("'{other}' is not true or false"))),
        }
    }

    fn parsed<T: std::str::FromStr<Err = Error>>(&self, path: &str, default: T) -> Result<T> {
        match self.opt_text(path) {
            None => Ok(default),
            Some(s) => s.parse().map_err(|e: Error| Error::config(path, e.to_string())),
        }
    }

    /// Sets a numeric key to an SI value, as a sweep does.
    pub fn set_number(&mut self, path: &str, si_value: f64) -> Result<()> {
        match dimension_of(path) {
            None => Err(Error::config(path, "unknown key")),
            Some(Text) => Err(Error::config(path, "text key cannot be swept")),
            Some(_) => {
                self.values.insert(path.to_string(), Value::Number(si_value));
                Ok(())
            }
        }
    }

    pub fn set_text(&mut self, path: &str, value: &str) -> Result<()> {
        match dimension_of(path) {
            Some(Text) => {
                self.values.insert(path.to_string(), Value::Text(value.to_string()));
                Ok(())
            }
            Some(_) => Err(Error::config(path, "numeric key")),
            None => Err(Error::config(path, "unknown key")),
        }
    }

    pub fn physical_params(&self) -> Result<PhysicalParams> {
        let n = |p: &str| self.number(p);
        let measured = MeasuredErrors {
            laser_noise: n("measured_errors.laser_noise")?,
            atom_position: n("measured_errors.atom_position")?,
            crosstalk: n("measured_errors.crosstalk")?,
            rydberg_dephasing_free: n("measured_errors.rydberg_dephasing_free")?,
            rydberg_dephasing_blockaded: n("measured_errors.rydberg_dephasing_blockaded")?,
            microwave: n("measured_errors.microwave")?,
            stark_pulse: n("measured_errors.stark_pulse")?,
            readout_loss: n("measured_errors.readout_loss")?,
            optical_pumping: n("measured_errors.optical_pumping")?,
            state_measurement: n("measured_errors.state_measurement")?,
        };
        let params = PhysicalParams {
            temperature: n("atom.temperature")?,
            lambda1: n("beams.lambda1")?,
            lambda2: n("beams.lambda2")?,
            t_pi: n("timings.t_pi")?,
            t_2pi: n("timings.t_2pi")?,
            t_gap: n("timings.t_gap")?,
            t_ground_rydberg: n("timings.t_ground_rydberg")?,
            tau_rydberg: n("beams.tau_rydberg")?,
            tau_7p: n("beams.tau_7p")?,
            detuning_7p: n("beams.detuning_7p")?,
            rabi_frequency: n("beams.rabi_frequency")?,
            blockade_shift: n("beams.blockade_shift")?,
            site_spacing: n("beams.site_spacing")?,
            waist1: n("beams.waist1")?,
            waist2: n("beams.waist2")?,
            crosstalk_rabi_frequency: n("beams.crosstalk_rabi_frequency")?,
            crosstalk_stark_shift: n("beams.crosstalk_stark_shift")?,
            magnetic_noise: n("beams.magnetic_noise")?,
            g_rydberg_mj: n("beams.g_rydberg_mj")?,
            g_ground_mf: n("beams.g_ground_mf")?,
            mass: n("atom.mass_amu")? * ATOMIC_MASS_UNIT,
            escape_distance: n("atom.escape_distance")?,
            drop_time: n("timings.drop_time")?,
            measured,
            fill_fraction: self.opt_number("atom.fill_fraction")?,
        };
        params
            .validate()
            .map_err(|e| Error::config(&self.origin, e.to_string()))?;
        Ok(params)
    }

    /// Error budget, with calculated rows zeroed when
    /// `pipeline_options.calculated_sources` is false.
    pub fn budget(&self) -> Result<ErrorBudget> {
        let budget = assemble_budget(&self.physical_params()?)?;
        if self.flag("pipeline_options.calculated_sources", true)? {
            Ok(budget)
        } else {
            Ok(budget.without_calculated())
        }
    }

    pub fn pipeline_options(&self) -> Result<PipelineOptions> {
        let d = PipelineOptions::default();
        let points = match self.opt_number("pipeline_options.parity_points")? {
            None => d.parity_points,
            Some(v) if v >= 8.0 && v.fract() == 0.0 && v <= 1e6 => v as usize,
            Some(v) => {
                return Err(Error::config(
                    "pipeline_options.parity_points",
                    format!("{v} is not an integer of at least 8"),
                ))
            }
        };
        Ok(PipelineOptions {
            mode: self.parsed("pipeline_options.mode", d.mode)?,
            target_branch: self.parsed("pipeline_options.target_branch", d.target_branch)?,
            crosstalk_model: self.parsed("pipeline_options.crosstalk_model", d.crosstalk_model)?,
            local_theta: self.opt_number("pipeline_options.local_theta")?.unwrap_or(d.local_theta),
            loss_map: self.parsed("pipeline_options.loss_map", d.loss_map)?,
            renormalize: self.flag("pipeline_options.renormalize", d.renormalize)?,
            parity_points: points,
        })
    }

    /// Beam geometry for position averaging, resonant at the beam centre.
    pub fn beam_geometry(&self) -> Result<BeamGeometry> {
        BeamGeometry::resonant(
            self.number("beams.pulse_waist1")?,
            self.number("beams.pulse_waist2")?,
            self.number("beams.lambda1")?,
            self.number("beams.lambda2")?,
            self.number("beams.pulse_rabi_frequency")?,
            self.number("beams.stark_coefficient1")?,
            self.number("beams.stark_coefficient2")?,
        )
        .map_err(|e| Error::config("beams", e.to_string()))
    }

    pub fn trap_distribution(&self) -> Result<TrapDistribution> {
        TrapDistribution::new(self.number("trap.sigma")?, self.number("trap.sigma_z")?)
            .map_err(|e| Error::config("trap.sigma", e.to_string()))
    }

    /// Drive parameters for the coherence calculations. The vibrational
    /// frequencies and drive strength have no defaults.
    pub fn thermal_drive(&self) -> Result<ThermalDriveParams> {
        ThermalDriveParams::new(
            self.number("trap.drive_rabi_frequency")?,
            self.number("trap.light_shift_fraction")?,
            [
                self.number("trap.frequency_x")?,
                self.number("trap.frequency_y")?,
                self.number("trap.frequency_z")?,
            ],
            self.number("atom.temperature")?,
        )
        .map_err(|e| Error::config("trap", e.to_string()))
    }

    pub fn ramsey_anchor(&self) -> Result<RamseyAnchor> {
        let d = RamseyAnchor::default();
        Ok(RamseyAnchor {
            t2: self.opt_number("trap.ramsey_t2")?.unwrap_or(d.t2),
            temperature: self.opt_number("trap.ramsey_temperature")?.unwrap_or(d.temperature),
        })
    }

    pub fn seed(&self) -> Result<u64> {
        let v = self.opt_number("sweep.seed")?.unwrap_or(1.0);
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Error::config("sweep.seed", format!("{v} is not a non-negative integer")));
        }
        Ok(v as u64)
    }
}
