use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::{
    build_sequence, fit_sinusoid, outcome_probabilities, LossMap, PipelineOptions, Propagation, SinusoidFit, Step,
    StepKind,
};
use crate::budget::{ErrorBudget, Stage};
use crate::channels::{Assignment, ChannelKind, ChannelSpec};
use crate::process::{Qubit, TwoQubitState};
use crate::{Error, Result};

/// Single-atom Ramsey experiment: two π/2 pulses separated by a dephasing
/// interval, the second about an axis at angle θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamseyModel {
    pub microwave: f64,
    pub dephasing: f64,
    pub readout_loss: f64,
    pub optical_pumping: f64,
    pub state_measurement: f64,
    pub loss_map: LossMap,
}

impl Default for RamseyModel {
    fn default() -> Self {
        RamseyModel {
            microwave: 0.0,
            dephasing: 0.0,
            readout_loss: 0.0,
            optical_pumping: 0.0,
            state_measurement: 0.0,
            loss_map: LossMap::DarkAsOne,
        }
    }
}

impl RamseyModel {
    pub fn with_microwave(mut self, eps: f64) -> Self {
        self.microwave = eps;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamseyCurve {
    pub theta: Vec<f64>,
    pub p1: Vec<f64>,
    pub fit: SinusoidFit,
    /// Fitted half-amplitude; 0.5 for ideal pulses.
    pub amplitude: f64,
}

fn step(stage: Stage, kind: ChannelKind, eps: f64, axis: f64, qubit: Assignment) -> Result<Step> {
    Ok(Step {
        stage,
        kind: StepKind::Channel(ChannelSpec::with_axis(kind, eps, axis, qubit)?),
        source: None,
        units: 0.0,
        parity_pulse: false,
        label: kind.name(),
    })
}

fn target_one(p: &Propagation, loss_map: LossMap, confusion: f64) -> f64 {
    outcome_probabilities(&p.state, &p.ledger, loss_map, confusion).marginal(Qubit::Target, 1)
}

/// P(target reads 1) against the second pulse's axis angle.
pub fn simulate_ramsey(model: &RamseyModel, thetas: &[f64]) -> Result<RamseyCurve> {
    let t = Assignment::Target;
    let prep = [
        step(Stage::StatePrep, ChannelKind::Attenuation, model.readout_loss, 0.0, t)?,
        step(Stage::StatePrep, ChannelKind::Attenuation, model.optical_pumping, 0.0, t)?,
        step(Stage::StatePrep, ChannelKind::MicrowaveHalfPi, model.microwave, 0.0, t)?,
        step(Stage::CzGate, ChannelKind::Dephasing, model.dephasing, 0.0, t)?,
    ];
    let mut start = Propagation::start(TwoQubitState::basis(1));
    start.advance(&prep, None)?;
    let mut p1 = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let mut p = start.clone();
        p.advance(&[step(Stage::Measurement, ChannelKind::MicrowaveHalfPi, model.microwave, theta, t)?], None)?;
        p1.push(target_one(&p, model.loss_map, model.state_measurement));
    }
    let fit = fit_sinusoid(thetas, &p1, 1)?;
    Ok(RamseyCurve {
        theta: thetas.to_vec(),
        p1,
        amplitude: fit.amplitude,
        fit,
    })
}

/// Inverts a decreasing amplitude(ε) on [0, 0.5] by bisection.
pub fn extract_epsilon<F>(measured: f64, amplitude: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !measured.is_finite() {
        return Err(Error::Validation("measured amplitude must be finite".into()));
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    let (a_lo, a_hi) = (amplitude(lo)?, amplitude(hi)?);
    if measured > a_lo || measured < a_hi {
        return Err(Error::NoSolution(format!(
            "amplitude {measured} outside the model range [{a_hi}, {a_lo}] for eps in [0, 0.5]"
        )));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if amplitude(mid)? > measured {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EyeCurve {
    pub control_loaded: bool,
    pub theta: Vec<f64>,
    pub p1: Vec<f64>,
    pub fit: SinusoidFit,
    /// Peak-to-peak fringe contrast; 1 for an ideal gate.
    pub contrast: f64,
}

/// Target fringe after the C_Z gate with the control in |1⟩ (loaded,
/// blockaded) or |0⟩.
pub fn simulate_eye_diagram(
    budget: &ErrorBudget,
    opts: &PipelineOptions,
    control_loaded: bool,
    thetas: &[f64],
) -> Result<EyeCurve> {
    let seq = build_sequence(budget, opts)?;
    let single = opts.mode.includes_single_qubit();
    let spam = opts.mode.includes_spam();
    let mw = if single { budget.get(crate::budget::BudgetRow::MicrowaveHalfPi) } else { 0.0 };
    let readout = if spam { budget.get(crate::budget::BudgetRow::ReadoutLoss) } else { 0.0 };
    let t = Assignment::Target;

    let mut steps: Vec<Step> = seq
        .steps
        .iter()
        .filter(|s| {
            s.stage == Stage::StatePrep
                && matches!(&s.kind, StepKind::Channel(c) if c.kind == ChannelKind::Attenuation)
        })
        .cloned()
        .collect();
    steps.push(step(Stage::StatePrep, ChannelKind::MicrowaveHalfPi, mw, -FRAC_PI_2, t)?);
    if single {
        let stark = budget.get(crate::budget::BudgetRow::StarkPulse);
        steps.push(step(Stage::StatePrep, ChannelKind::Dephasing, stark, 0.0, t)?);
    }
    steps.push(Step {
        stage: Stage::StatePrep,
        kind: StepKind::IdealStarkRotation,
        source: None,
        units: 0.0,
        parity_pulse: false,
        label: "ideal Stark z rotation",
    });
    steps.push(step(Stage::StatePrep, ChannelKind::MicrowaveHalfPi, mw, FRAC_PI_2, t)?);
    steps.extend(seq.steps.iter().filter(|s| s.stage == Stage::CzGate).cloned());

    let initial = TwoQubitState::basis(if control_loaded { 3 } else { 1 });
    let mut start = Propagation::start(initial);
    start.advance(&steps, None)?;
    let confusion = seq.confusion();
    let mut p1 = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let mut p = start.clone();
        p.advance(
            &[
                step(Stage::Measurement, ChannelKind::MicrowaveHalfPi, mw, theta, t)?,
                step(Stage::Measurement, ChannelKind::Attenuation, readout, 0.0, t)?,
            ],
            None,
        )?;
        p1.push(target_one(&p, opts.loss_map, confusion));
    }
    let fit = fit_sinusoid(thetas, &p1, 1)?;
    Ok(EyeCurve {
        control_loaded,
        theta: thetas.to_vec(),
        p1,
        contrast: 2.0 * fit.amplitude,
        fit,
    })
}
