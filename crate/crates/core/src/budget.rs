//! Closed-form physical error magnitudes and the assembled error budget.
//!
//! All angular frequencies are in rad/s, times in s, lengths in m.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::constants::{mhz_to_rad, CS133_MASS, HBAR, K_B, MU_B, TWO_PI};
use crate::error::check_probability;
use crate::{Error, Result};

/// Atomic, beam, trap and timing parameters plus the measured error strengths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhysicalParams {
    /// Atom temperature (K).
    pub temperature: f64,
    /// Wavelength of the first (blue) Rydberg leg (m).
    pub lambda1: f64,
    /// Wavelength of the second (infrared) Rydberg leg (m).
    pub lambda2: f64,
    pub t_pi: f64,
    pub t_2pi: f64,
    pub t_gap: f64,
    /// Time the control spends in the ground-Rydberg superposition (s).
    pub t_ground_rydberg: f64,
    pub tau_rydberg: f64,
    pub tau_7p: f64,
    /// One-photon detuning from the intermediate level (rad/s).
    pub detuning_7p: f64,
    /// Two-photon Rabi frequency used in the gate (rad/s).
    pub rabi_frequency: f64,
    pub blockade_shift: f64,
    /// Array period (m).
    pub site_spacing: f64,
    pub waist1: f64,
    pub waist2: f64,
    /// Single-site Rabi frequency entering the crosstalk estimate (rad/s).
    pub crosstalk_rabi_frequency: f64,
    /// Differential Stark shift suppressing crosstalk (rad/s).
    pub crosstalk_stark_shift: f64,
    /// RMS magnetic noise (T).
    pub magnetic_noise: f64,
    /// g_R·m_j of the Rydberg level.
    pub g_rydberg_mj: f64,
    /// g_g·m_f of the ground level.
    pub g_ground_mf: f64,
    pub mass: f64,
    /// Distance an atom must travel during trap-off to be lost (m).
    pub escape_distance: f64,
    pub drop_time: f64,
    pub measured: MeasuredErrors,
    /// Array fill fraction for the crosstalk scaler; `None` uses the measured
    /// crosstalk strength.
    pub fill_fraction: Option<f64>,
}

/// Error strengths taken from measurements rather than computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasuredErrors {
    pub laser_noise: f64,
    pub atom_position: f64,
    pub crosstalk: f64,
    pub rydberg_dephasing_free: f64,
    pub rydberg_dephasing_blockaded: f64,
    pub microwave: f64,
    pub stark_pulse: f64,
    pub readout_loss: f64,
    pub optical_pumping: f64,
    pub state_measurement: f64,
}

impl Default for MeasuredErrors {
    fn default() -> Self {
        MeasuredErrors {
            laser_noise: 0.0025,
            atom_position: 0.0025,
            crosstalk: 0.005,
            rydberg_dephasing_free: 0.018,
            rydberg_dephasing_blockaded: 0.006,
            microwave: 0.0028,
            stark_pulse: 0.006,
            readout_loss: 0.0025,
            optical_pumping: 0.005,
            state_measurement: 1.5e-4,
        }
    }
}

impl MeasuredErrors {
    pub fn zero() -> Self {
        MeasuredErrors {
            laser_noise: 0.0,
            atom_position: 0.0,
            crosstalk: 0.0,
            rydberg_dephasing_free: 0.0,
            rydberg_dephasing_blockaded: 0.0,
            microwave: 0.0,
            stark_pulse: 0.0,
            readout_loss: 0.0,
            optical_pumping: 0.0,
            state_measurement: 0.0,
        }
    }

    fn entries(&self) -> [(&'static str, f64); 10] {
        [
            ("laser_noise", self.laser_noise),
            ("atom_position", self.atom_position),
            ("crosstalk", self.crosstalk),
            ("rydberg_dephasing_free", self.rydberg_dephasing_free),
            ("rydberg_dephasing_blockaded", self.rydberg_dephasing_blockaded),
            ("microwave", self.microwave),
            ("stark_pulse", self.stark_pulse),
            ("readout_loss", self.readout_loss),
            ("optical_pumping", self.optical_pumping),
            ("state_measurement", self.state_measurement),
        ]
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            temperature: 15e-6,
            lambda1: 459e-9,
            lambda2: 1038e-9,
            t_pi: 150e-9,
            t_2pi: 220e-9,
            t_gap: 300e-9,
            t_ground_rydberg: 0.98e-6,
            tau_rydberg: 130e-6,
            tau_7p: 155e-9,
            detuning_7p: mhz_to_rad(680.0),
            rabi_frequency: mhz_to_rad(4.6),
            blockade_shift: mhz_to_rad(45.0),
            site_spacing: 3.1e-6,
            waist1: 3.0e-6,
            waist2: 3.0e-6,
            crosstalk_rabi_frequency: mhz_to_rad(2.5),
            crosstalk_stark_shift: mhz_to_rad(2.0),
            magnetic_noise: 1e-6,
            g_rydberg_mj: 1.0,
            g_ground_mf: 0.0,
            mass: CS133_MASS,
            escape_distance: 1.2e-6,
            drop_time: 1.7e-6,
            measured: MeasuredErrors::default(),
            fill_fraction: None,
        }
    }
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && !v.is_nan() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} = {v} must be non-negative")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} = {v} must be positive")))
    }
}

impl PhysicalParams {
    /// Checks signs, wavelength ordering and probability ranges. Infinite
    /// lifetimes, detunings and blockade shifts are accepted as limits.
    pub fn validate(&self) -> Result<()> {
        nonneg("temperature", self.temperature)?;
        positive("lambda1", self.lambda1)?;
        positive("lambda2", self.lambda2)?;
        if !(self.lambda1 < self.lambda2) {
            return Err(Error::Validation(format!(
                "lambda1 ({}) must be shorter than lambda2 ({})",
                self.lambda1, self.lambda2
            )));
        }
        for (name, v) in [
            ("t_pi", self.t_pi),
            ("t_2pi", self.t_2pi),
            ("t_gap", self.t_gap),
            ("t_ground_rydberg", self.t_ground_rydberg),
            ("magnetic_noise", self.magnetic_noise),
            ("rabi_frequency", self.rabi_frequency),
            ("crosstalk_rabi_frequency", self.crosstalk_rabi_frequency),
            ("escape_distance", self.escape_distance),
        ] {
            nonneg(name, v)?;
        }
        for (name, v) in [
            ("tau_rydberg", self.tau_rydberg),
            ("tau_7p", self.tau_7p),
            ("detuning_7p", self.detuning_7p),
            ("blockade_shift", self.blockade_shift),
            ("site_spacing", self.site_spacing),
            ("waist1", self.waist1),
            ("waist2", self.waist2),
            ("crosstalk_stark_shift", self.crosstalk_stark_shift),
            ("mass", self.mass),
            ("drop_time", self.drop_time),
        ] {
            positive(name, v)?;
        }
        for (name, v) in self.measured.entries() {
            check_probability(name, v)?;
        }
        if let Some(f) = self.fill_fraction {
            check_probability("fill_fraction", f)?;
        }
        Ok(())
    }

    /// t_π/2 + t_gap + t_2π + t_gap + t_π/2: time between the midpoints of
    /// the two control π pulses.
    pub fn pulse_sequence_ground_rydberg_time(&self) -> f64 {
        self.t_pi + 2.0 * self.t_gap + self.t_2pi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DopplerDephasing {
    /// Coherence time T₂,D (s).
    pub t2: f64,
    pub epsilon: f64,
}

/// Motional dephasing of a ground-Rydberg superposition driven by
/// counterpropagating beams of wavelengths λ₁ < λ₂.
///
/// ⟨e^{iφ}⟩ = exp(−t²/T₂,D²) with T₂,D = √(2M/k_BT)/k, k = 2π/λ₁ − 2π/λ₂, and
/// ε = (1 − ⟨e^{iφ}⟩)/2.
pub fn doppler_dephasing(temperature: f64, lambda1: f64, lambda2: f64, t: f64, mass: f64) -> DopplerDephasing {
    let k = TWO_PI / lambda1 - TWO_PI / lambda2;
    let t2 = (2.0 * mass / (K_B * temperature)).sqrt() / k;
    let x = if t == 0.0 { 0.0 } else { (t / t2).powi(2) };
    DopplerDephasing {
        t2,
        epsilon: 0.5 * (1.0 - (-x).exp()),
    }
}

/// Spontaneous decay from the Rydberg level over a time t: 1 − e^{−t/τ}.
pub fn lifetime_error(t: f64, tau: f64) -> f64 {
    -(-t / tau).exp_m1()
}

/// Intermediate-level scattering probability per π pulse, (π/2)/(τ₇ₚΔ), or
/// half of that when `blockaded` (per beam).
pub fn intermediate_scattering(tau_7p: f64, detuning: f64, blockaded: bool) -> f64 {
    let free = std::f64::consts::FRAC_PI_2 / (tau_7p * detuning);
    if blockaded {
        0.5 * free
    } else {
        free
    }
}

/// Residual doubly-excited population under a finite blockade, Ω²/(8B²).
pub fn blockade_leakage(rabi_frequency: f64, blockade_shift: f64) -> f64 {
    rabi_frequency * rabi_frequency / (8.0 * blockade_shift * blockade_shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MagneticDephasing {
    pub t2: f64,
    pub epsilon: f64,
}

/// Dephasing from quasi-static magnetic noise of rms σ_B on a transition with
/// differential moment |Δ(g m)|·μ_B. T₂,B = 2^{3/2}πħ/(|Δ(g m)| μ_B σ_B) and
/// ε = 1 − exp(−t²/T₂,B²).
pub fn magnetic_dephasing(sigma_b: f64, g_m_difference: f64, t: f64) -> MagneticDephasing {
    let t2 = 2f64.powf(1.5) * std::f64::consts::PI * HBAR / (g_m_difference.abs() * MU_B * sigma_b);
    let x = if t == 0.0 { 0.0 } else { (t / t2).powi(2) };
    MagneticDephasing {
        t2,
        epsilon: -(-x).exp_m1(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crosstalk {
    /// Rabi frequency at the neighbouring site relative to the addressed one.
    pub omega_ratio: f64,
    /// Oscillation amplitude (Ω′/Δ′)² left by the differential Stark shift.
    pub amplitude: f64,
}

/// Neighbour-site excitation for Gaussian beams of waists w₁, w₂ at spacing d.
pub fn crosstalk_estimate(d: f64, w1: f64, w2: f64, rabi_frequency: f64, stark_shift: f64) -> Crosstalk {
    let omega_ratio = (-(d * d) / (w1 * w1)).exp() * (-(d * d) / (w2 * w2)).exp();
    let amplitude = (omega_ratio * rabi_frequency / stark_shift).powi(2);
    Crosstalk {
        omega_ratio,
        amplitude,
    }
}

/// Upper bound on crosstalk error per neighbour (one neighbour in |1⟩).
pub const CROSSTALK_PER_NEIGHBOUR: f64 = 0.0025;
/// Nearest plus diagonal neighbours in a square array.
pub const CROSSTALK_NEIGHBOURS: f64 = 8.0;

/// Crosstalk strength for a given fill fraction: each of the 8 neighbours is
/// occupied with probability `fill` and in |1⟩ half of the time.
pub fn crosstalk_from_fill(fill: f64) -> Result<f64> {
    check_probability("fill_fraction", fill)?;
    Ok(CROSSTALK_NEIGHBOURS * CROSSTALK_PER_NEIGHBOUR * fill * 0.5)
}

/// Probability that a thermal atom's transverse speed exceeds v_e:
/// exp(−M v_e²/(2 k_B T)).
pub fn escape_probability_closed(v_escape: f64, temperature: f64, mass: f64) -> f64 {
    if v_escape == 0.0 {
        return 1.0;
    }
    if temperature == 0.0 {
        return 0.0;
    }
    (-mass * v_escape * v_escape / (2.0 * K_B * temperature)).exp()
}

/// Natural log of [`escape_probability_closed`], finite where the value
/// itself underflows.
pub fn escape_log_probability(v_escape: f64, temperature: f64, mass: f64) -> f64 {
    -mass * v_escape * v_escape / (2.0 * K_B * temperature)
}

/// Pipeline stage where an error is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    StatePrep,
    CzGate,
    LocalRotation,
    Measurement,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::StatePrep => "state_prep",
            Stage::CzGate => "cz",
            Stage::LocalRotation => "local_rotation",
            Stage::Measurement => "measurement",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Calculated,
    Measured,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Calculated => "calculated",
            Provenance::Measured => "measured",
        })
    }
}

/// One row of the error budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetRow {
    DopplerDephasing,
    RydbergLifetimeControl,
    RydbergLifetimeTarget,
    Scattering7p,
    BlockadeLeakage,
    AtomPosition,
    LaserNoise,
    Crosstalk,
    RydbergDephasingFree,
    RydbergDephasingBlockaded,
    MicrowaveHalfPi,
    StarkPulse,
    ReadoutLoss,
    OpticalPumping,
    StateMeasurement,
    MagneticDephasing,
}

impl BudgetRow {
    pub const ALL: [BudgetRow; 16] = [
        BudgetRow::DopplerDephasing,
        BudgetRow::RydbergLifetimeControl,
        BudgetRow::RydbergLifetimeTarget,
        BudgetRow::Scattering7p,
        BudgetRow::BlockadeLeakage,
        BudgetRow::AtomPosition,
        BudgetRow::LaserNoise,
        BudgetRow::Crosstalk,
        BudgetRow::RydbergDephasingFree,
        BudgetRow::RydbergDephasingBlockaded,
        BudgetRow::MicrowaveHalfPi,
        BudgetRow::StarkPulse,
        BudgetRow::ReadoutLoss,
        BudgetRow::OpticalPumping,
        BudgetRow::StateMeasurement,
        BudgetRow::MagneticDephasing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BudgetRow::DopplerDephasing => "doppler_dephasing",
            BudgetRow::RydbergLifetimeControl => "rydberg_lifetime_control",
            BudgetRow::RydbergLifetimeTarget => "rydberg_lifetime_target",
            BudgetRow::Scattering7p => "scattering_7p",
            BudgetRow::BlockadeLeakage => "blockade_leakage",
            BudgetRow::AtomPosition => "atom_position",
            BudgetRow::LaserNoise => "laser_noise",
            BudgetRow::Crosstalk => "crosstalk",
            BudgetRow::RydbergDephasingFree => "rydberg_dephasing_free",
            BudgetRow::RydbergDephasingBlockaded => "rydberg_dephasing_blockaded",
            BudgetRow::MicrowaveHalfPi => "microwave_half_pi",
            BudgetRow::StarkPulse => "stark_pulse",
            BudgetRow::ReadoutLoss => "readout_loss",
            BudgetRow::OpticalPumping => "optical_pumping",
            BudgetRow::StateMeasurement => "state_measurement",
            BudgetRow::MagneticDephasing => "magnetic_dephasing",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            BudgetRow::DopplerDephasing => "ground-Rydberg Doppler dephasing on control",
            BudgetRow::RydbergLifetimeControl => "Rydberg radiative lifetime on control",
            BudgetRow::RydbergLifetimeTarget => "Rydberg radiative lifetime on target",
            BudgetRow::Scattering7p => "7p1/2 scattering per atom per pi pulse per Rydberg beam",
            BudgetRow::BlockadeLeakage => "blockade leakage",
            BudgetRow::AtomPosition => "atom position in Rydberg beams per atom per pi pulse",
            BudgetRow::LaserNoise => "laser noise per atom per pi pulse",
            BudgetRow::Crosstalk => "Rydberg crosstalk for |01>",
            BudgetRow::RydbergDephasingFree => "Rydberg laser dephasing per pi pulse (non-blockaded)",
            BudgetRow::RydbergDephasingBlockaded => "Rydberg laser dephasing per pi pulse (blockaded)",
            BudgetRow::MicrowaveHalfPi => "global microwave pi/2 pulse per atom",
            BudgetRow::StarkPulse => "Stark-shift pulse",
            BudgetRow::ReadoutLoss => "readout loss per atom per readout",
            BudgetRow::OpticalPumping => "optical pumping per atom",
            BudgetRow::StateMeasurement => "state measurement error per atom",
            BudgetRow::MagneticDephasing => "magnetic-noise dephasing (not propagated)",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            BudgetRow::DopplerDephasing => "(1 - exp(-t_gR^2/T2D^2))/2, T2D = sqrt(2M/kB T)/(2pi/l1 - 2pi/l2)",
            BudgetRow::RydbergLifetimeControl => "1 - exp(-t_gR/tau)",
            BudgetRow::RydbergLifetimeTarget => "1 - exp(-(t_2pi/2)/tau)",
            BudgetRow::Scattering7p => "(pi/4)/(tau_7p Delta)",
            BudgetRow::BlockadeLeakage => "Omega^2/(8 B^2)",
            BudgetRow::MagneticDephasing => "1 - exp(-t_gR^2/T2B^2), T2B = 2^(3/2) pi hbar/(|dgm| muB sigmaB)",
            BudgetRow::Crosstalk => "measured, or 8 x 0.0025 x fill x 1/2",
            _ => "measured",
        }
    }

    pub fn provenance(self) -> Provenance {
        match self {
            BudgetRow::DopplerDephasing
            | BudgetRow::RydbergLifetimeControl
            | BudgetRow::RydbergLifetimeTarget
            | BudgetRow::Scattering7p
            | BudgetRow::BlockadeLeakage
            | BudgetRow::MagneticDephasing => Provenance::Calculated,
            _ => Provenance::Measured,
        }
    }

    /// Stages consuming this row; empty for rows reported but not propagated.
    pub fn placement(self) -> &'static [Stage] {
        match self {
            BudgetRow::MicrowaveHalfPi => &[Stage::StatePrep, Stage::LocalRotation, Stage::Measurement],
            BudgetRow::StarkPulse => &[Stage::LocalRotation],
            BudgetRow::ReadoutLoss => &[Stage::StatePrep, Stage::Measurement],
            BudgetRow::OpticalPumping => &[Stage::StatePrep],
            BudgetRow::StateMeasurement => &[Stage::Measurement],
            BudgetRow::MagneticDephasing => &[],
            _ => &[Stage::CzGate],
        }
    }
}

impl fmt::Display for BudgetRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BudgetRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BudgetRow::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown budget row '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetEntry {
    pub row: BudgetRow,
    pub epsilon: f64,
    pub provenance: Provenance,
}

/// Derived times and ratios reported next to the budget.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetDiagnostics {
    pub t2_doppler: f64,
    pub t2_magnetic: f64,
    pub scattering_free: f64,
    pub crosstalk_ratio: f64,
    pub crosstalk_amplitude: f64,
    pub escape_log_probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBudget {
    entries: Vec<BudgetEntry>,
    pub diagnostics: Option<BudgetDiagnostics>,
}

impl ErrorBudget {
    /// Every row at ε = 0.
    pub fn zero() -> Self {
        ErrorBudget {
            entries: BudgetRow::ALL
                .iter()
                .map(|&row| BudgetEntry {
                    row,
                    epsilon: 0.0,
                    provenance: row.provenance(),
                })
                .collect(),
            diagnostics: None,
        }
    }

    pub fn entries(&self) -> &[BudgetEntry] {
        &self.entries
    }

    pub fn get(&self, row: BudgetRow) -> f64 {
        self.entries.iter().find(|e| e.row == row).map(|e| e.epsilon).unwrap_or(0.0)
    }

    pub fn set(&mut self, row: BudgetRow, epsilon: f64) -> Result<()> {
        check_probability(row.name(), epsilon)?;
        for e in &mut self.entries {
            if e.row == row {
                e.epsilon = epsilon;
            }
        }
        Ok(())
    }

    pub fn with(mut self, row: BudgetRow, epsilon: f64) -> Result<Self> {
        self.set(row, epsilon)?;
        Ok(self)
    }

    /// Copy with every calculated row set to zero.
    pub fn without_calculated(&self) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            if e.provenance == Provenance::Calculated {
                e.epsilon = 0.0;
            }
        }
        out
    }
}

/// Computes every calculated row from `params` and copies the measured ones.
pub fn assemble_budget(params: &PhysicalParams) -> Result<ErrorBudget> {
    params.validate()?;
    let p = params;
    let m = &p.measured;
    let doppler = doppler_dephasing(p.temperature, p.lambda1, p.lambda2, p.t_ground_rydberg, p.mass);
    let magnetic = magnetic_dephasing(p.magnetic_noise, p.g_rydberg_mj - p.g_ground_mf, p.t_ground_rydberg);
    let xt = crosstalk_estimate(
        p.site_spacing,
        p.waist1,
        p.waist2,
        p.crosstalk_rabi_frequency,
        p.crosstalk_stark_shift,
    );
    let crosstalk = match p.fill_fraction {
        Some(f) => crosstalk_from_fill(f)?,
        None => m.crosstalk,
    };
    let v_escape = p.escape_distance / p.drop_time;

    let mut budget = ErrorBudget::zero();
    let values = [
        (BudgetRow::DopplerDephasing, doppler.epsilon),
        (BudgetRow::RydbergLifetimeControl, lifetime_error(p.t_ground_rydberg, p.tau_rydberg)),
        (BudgetRow::RydbergLifetimeTarget, lifetime_error(0.5 * p.t_2pi, p.tau_rydberg)),
        (BudgetRow::Scattering7p, intermediate_scattering(p.tau_7p, p.detuning_7p, true)),
        (BudgetRow::BlockadeLeakage, blockade_leakage(p.rabi_frequency, p.blockade_shift)),
        (BudgetRow::AtomPosition, m.atom_position),
        (BudgetRow::LaserNoise, m.laser_noise),
        (BudgetRow::Crosstalk, crosstalk),
        (BudgetRow::RydbergDephasingFree, m.rydberg_dephasing_free),
        (BudgetRow::RydbergDephasingBlockaded, m.rydberg_dephasing_blockaded),
        (BudgetRow::MicrowaveHalfPi, m.microwave),
        (BudgetRow::StarkPulse, m.stark_pulse),
        (BudgetRow::ReadoutLoss, m.readout_loss),
        (BudgetRow::OpticalPumping, m.optical_pumping),
        (BudgetRow::StateMeasurement, m.state_measurement),
        (BudgetRow::MagneticDephasing, magnetic.epsilon),
    ];
    for (row, eps) in values {
        budget.set(row, eps)?;
    }
    budget.diagnostics = Some(BudgetDiagnostics {
        t2_doppler: doppler.t2,
        t2_magnetic: magnetic.t2,
        scattering_free: intermediate_scattering(p.tau_7p, p.detuning_7p, false),
        crosstalk_ratio: xt.omega_ratio,
        crosstalk_amplitude: xt.amplitude,
        escape_log_probability: escape_log_probability(v_escape, p.temperature, p.mass),
    });
    Ok(budget)
}
