use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::LossMap;
use crate::budget::{BudgetRow, ErrorBudget, Stage};
use crate::channels::{Assignment, ChannelKind, ChannelSpec};
use crate::{Error, Result};

/// Which error groups are propagated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineMode {
    /// Everything.
    Full,
    /// No state preparation and measurement errors.
    NoSpam,
    /// Only the C_Z gate errors; single-qubit rotations stay ideal.
    CzOnly,
}

impl PipelineMode {
    pub const ALL: [PipelineMode; 3] = [PipelineMode::CzOnly, PipelineMode::NoSpam, PipelineMode::Full];

    pub fn includes_spam(self) -> bool {
        self == PipelineMode::Full
    }

    pub fn includes_single_qubit(self) -> bool {
        self != PipelineMode::CzOnly
    }
}

impl FromStr for PipelineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(PipelineMode::Full),
            "no_spam" => Ok(PipelineMode::NoSpam),
            "cz_only" => Ok(PipelineMode::CzOnly),
            other => Err(Error::Usage(format!(
                "unknown mode '{other}', expected full, no_spam or cz_only"
            ))),
        }
    }
}

impl fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PipelineMode::Full => "full",
            PipelineMode::NoSpam => "no_spam",
            PipelineMode::CzOnly => "cz_only",
        })
    }
}

/// Constructor family for errors of the target pulse that occur only when
/// the target is excited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetBranch {
    /// Target excited when the control is in |0⟩ (anti-controlled channels).
    AntiControlled,
    /// Controlled channels instead, for sensitivity checks.
    Controlled,
}

impl FromStr for TargetBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anti_controlled" => Ok(TargetBranch::AntiControlled),
            "controlled" => Ok(TargetBranch::Controlled),
            other => Err(Error::Usage(format!("unknown target branch '{other}'"))),
        }
    }
}

/// How crosstalk onto the target enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrosstalkModel {
    /// Wrong phase on the non-blockaded branch.
    Dephasing,
    /// Loss on the non-blockaded branch.
    Loss,
}

impl FromStr for CrosstalkModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dephasing" => Ok(CrosstalkModel::Dephasing),
            "loss" => Ok(CrosstalkModel::Loss),
            other => Err(Error::Usage(format!("unknown crosstalk model '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineOptions {
    pub mode: PipelineMode,
    pub target_branch: TargetBranch,
    pub crosstalk_model: CrosstalkModel,
    /// Axis angle θ of the local R_θ(π/2) on the target.
    pub local_theta: f64,
    pub loss_map: LossMap,
    /// Divide ρ_out by its trace before computing the direct fidelity.
    pub renormalize: bool,
    pub parity_points: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            mode: PipelineMode::Full,
            target_branch: TargetBranch::AntiControlled,
            crosstalk_model: CrosstalkModel::Dephasing,
            local_theta: 0.0,
            loss_map: LossMap::DarkAsOne,
            renormalize: false,
            parity_points: 64,
        }
    }
}

impl PipelineOptions {
    pub fn with_mode(mut self, mode: PipelineMode) -> Self {
        self.mode = mode;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Channel(ChannelSpec),
    /// diag(1, −1, −1, −1).
    IdealCz,
    /// diag(e^{−iπ/4}, e^{iπ/4}) on the target.
    IdealStarkRotation,
    /// Per-atom symmetric discrimination error applied at readout.
    Confusion(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub stage: Stage,
    pub kind: StepKind,
    /// Budget row supplying the strength, if any.
    pub source: Option<BudgetRow>,
    /// Multiples of the row's ε consumed by this step.
    pub units: f64,
    /// The parity-analysis pulse, whose axis is set per scan point.
    pub parity_pulse: bool,
    pub label: &'static str,
}

/// Ordered steps of the Bell protocol.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelSequence {
    pub mode: PipelineMode,
    pub steps: Vec<Step>,
}

impl ChannelSequence {
    /// Confusion strength of the measurement stage (zero if absent).
    pub fn confusion(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| match s.kind {
                StepKind::Confusion(c) => c,
                _ => 0.0,
            })
            .sum()
    }

    /// Total units of each budget row consumed by the sequence.
    pub fn consumption(&self) -> Vec<(BudgetRow, f64)> {
        let mut out: Vec<(BudgetRow, f64)> = Vec::new();
        for s in &self.steps {
            if let Some(row) = s.source {
                match out.iter_mut().find(|(r, _)| *r == row) {
                    Some(e) => e.1 += s.units,
                    None => out.push((row, s.units)),
                }
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn channel_steps(&self) -> impl Iterator<Item = (&Step, &ChannelSpec)> {
        self.steps.iter().filter_map(|s| match &s.kind {
            StepKind::Channel(c) => Some((s, c)),
            _ => None,
        })
    }
}

struct Builder {
    steps: Vec<Step>,
    stage: Stage,
}

impl Builder {
    fn channel(
        &mut self,
        kind: ChannelKind,
        eps: f64,
        assignment: Assignment,
        source: Option<BudgetRow>,
        units: f64,
        label: &'static str,
    ) -> Result<()> {
        self.channel_axis(kind, eps, 0.0, assignment, source, units, label, false)
    }

    #[allow(clippy::too_many_arguments)]
    fn channel_axis(
        &mut self,
        kind: ChannelKind,
        eps: f64,
        axis: f64,
        assignment: Assignment,
        source: Option<BudgetRow>,
        units: f64,
        label: &'static str,
        parity_pulse: bool,
    ) -> Result<()> {
        let spec = ChannelSpec::with_axis(kind, eps.min(1.0), axis, assignment)?;
        self.steps.push(Step {
            stage: self.stage,
            kind: StepKind::Channel(spec),
            source,
            units,
            parity_pulse,
            label,
        });
        Ok(())
    }

    fn ideal(&mut self, kind: StepKind, label: &'static str) {
        self.steps.push(Step {
            stage: self.stage,
            kind,
            source: None,
            units: 0.0,
            parity_pulse: false,
            label,
        });
    }
}

/// Rydberg π pulse on the control: scattering from both beams, position and
/// laser noise as state-dependent loss, laser dephasing.
fn control_pi_pulse(b: &mut Builder, budget: &ErrorBudget) -> Result<()> {
    use BudgetRow as R;
    use ChannelKind as K;
    let c = Assignment::Control;
    b.channel(K::StateDependentLoss, 2.0 * budget.get(R::Scattering7p), c, Some(R::Scattering7p), 2.0, "control pi: 7p scattering, two beams")?;
    b.channel(K::StateDependentLoss, budget.get(R::AtomPosition), c, Some(R::AtomPosition), 1.0, "control pi: atom position")?;
    b.channel(K::StateDependentLoss, budget.get(R::LaserNoise), c, Some(R::LaserNoise), 1.0, "control pi: laser noise")?;
    b.channel(K::Dephasing, budget.get(R::RydbergDephasingFree), c, Some(R::RydbergDephasingFree), 1.0, "control pi: Rydberg laser dephasing")?;
    Ok(())
}

/// Builds the Bell protocol for `budget` under `opts.mode`.
pub fn build_sequence(budget: &ErrorBudget, opts: &PipelineOptions) -> Result<ChannelSequence> {
    use BudgetRow as R;
    use ChannelKind as K;
    let mode = opts.mode;
    let spam = mode.includes_spam();
    let single = mode.includes_single_qubit();
    let mw = if single { budget.get(R::MicrowaveHalfPi) } else { 0.0 };
    let mw_source = single.then_some(R::MicrowaveHalfPi);
    let mut b = Builder {
        steps: Vec::new(),
        stage: Stage::StatePrep,
    };

    for (assignment, label_ro, label_op) in [
        (Assignment::Control, "readout loss (initial), control", "optical pumping, control"),
        (Assignment::Target, "readout loss (initial), target", "optical pumping, target"),
    ] {
        if spam {
            b.channel(K::Attenuation, budget.get(R::ReadoutLoss), assignment, Some(R::ReadoutLoss), 1.0, label_ro)?;
            b.channel(K::Attenuation, budget.get(R::OpticalPumping), assignment, Some(R::OpticalPumping), 1.0, label_op)?;
        }
    }
    b.channel(K::MicrowaveHalfPi, mw, Assignment::Both, mw_source, 2.0, "global pi/2")?;

    b.stage = Stage::CzGate;
    let (branch_deph, branch_loss, blockaded_deph, blockaded_loss) = match opts.target_branch {
        TargetBranch::AntiControlled => (K::AntiControlledDephasing, K::AntiControlledLoss, K::ControlledDephasing, K::ControlledLoss),
        TargetBranch::Controlled => (K::ControlledDephasing, K::ControlledLoss, K::AntiControlledDephasing, K::AntiControlledLoss),
    };
    let half_lifetime = 1.0 - (1.0 - budget.get(R::RydbergLifetimeControl)).sqrt();
    let j = Assignment::Joint;
    control_pi_pulse(&mut b, budget)?;
    b.channel(K::Dephasing, budget.get(R::DopplerDephasing), Assignment::Control, Some(R::DopplerDephasing), 1.0, "Doppler dephasing, control")?;
    b.channel(K::StateDependentLoss, half_lifetime, Assignment::Control, Some(R::RydbergLifetimeControl), 0.5, "Rydberg decay, control, first half")?;
    b.channel(blockaded_deph, 2.0 * budget.get(R::RydbergDephasingBlockaded), j, Some(R::RydbergDephasingBlockaded), 2.0, "target 2pi: dephasing, blockaded")?;
    b.channel(blockaded_loss, 2.0 * budget.get(R::Scattering7p), j, Some(R::Scattering7p), 2.0, "target 2pi: 7p scattering, blockaded")?;
    b.channel(branch_deph, 2.0 * budget.get(R::RydbergDephasingFree), j, Some(R::RydbergDephasingFree), 2.0, "target 2pi: dephasing")?;
    b.channel(branch_loss, 4.0 * budget.get(R::Scattering7p), j, Some(R::Scattering7p), 4.0, "target 2pi: 7p scattering, two beams")?;
    b.channel(branch_loss, 2.0 * budget.get(R::AtomPosition), j, Some(R::AtomPosition), 2.0, "target 2pi: atom position")?;
    b.channel(branch_loss, 2.0 * budget.get(R::LaserNoise), j, Some(R::LaserNoise), 2.0, "target 2pi: laser noise")?;
    b.channel(branch_loss, budget.get(R::RydbergLifetimeTarget), j, Some(R::RydbergLifetimeTarget), 1.0, "target 2pi: Rydberg decay")?;
    b.channel(branch_deph, budget.get(R::BlockadeLeakage), j, Some(R::BlockadeLeakage), 1.0, "blockade leakage")?;
    let xt_kind = match opts.crosstalk_model {
        CrosstalkModel::Dephasing => branch_deph,
        CrosstalkModel::Loss => branch_loss,
    };
    b.channel(xt_kind, budget.get(R::Crosstalk), j, Some(R::Crosstalk), 1.0, "crosstalk")?;
    b.channel(K::StateDependentLoss, half_lifetime, Assignment::Control, Some(R::RydbergLifetimeControl), 0.5, "Rydberg decay, control, second half")?;
    control_pi_pulse(&mut b, budget)?;
    b.ideal(StepKind::IdealCz, "ideal C_Z");

    b.stage = Stage::LocalRotation;
    let theta = opts.local_theta;
    b.channel_axis(K::MicrowaveHalfPi, mw, theta - FRAC_PI_2, Assignment::Both, mw_source, 2.0, "local rotation: first pi/2", false)?;
    if single {
        b.channel(K::Dephasing, budget.get(R::StarkPulse), Assignment::Target, Some(R::StarkPulse), 1.0, "Stark pulse dephasing")?;
    }
    b.ideal(StepKind::IdealStarkRotation, "ideal Stark z rotation");
    b.channel_axis(K::MicrowaveHalfPi, mw, theta + FRAC_PI_2, Assignment::Both, mw_source, 2.0, "local rotation: second pi/2", false)?;

    b.stage = Stage::Measurement;
    b.channel_axis(K::MicrowaveHalfPi, mw, 0.0, Assignment::Both, mw_source, 2.0, "parity pi/2", true)?;
    if spam {
        b.channel(K::Attenuation, budget.get(R::ReadoutLoss), Assignment::Both, Some(R::ReadoutLoss), 2.0, "readout loss (final)")?;
        b.steps.push(Step {
            stage: Stage::Measurement,
            kind: StepKind::Confusion(budget.get(R::StateMeasurement)),
            source: Some(R::StateMeasurement),
            units: 1.0,
            parity_pulse: false,
            label: "state discrimination",
        });
    }

    Ok(ChannelSequence { mode, steps: b.steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::{assemble_budget, PhysicalParams};

    fn budget() -> ErrorBudget {
        assemble_budget(&PhysicalParams::default()).unwrap()
    }

    fn count(seq: &ChannelSequence, kind: ChannelKind) -> usize {
        seq.channel_steps()
            .filter(|(_, c)| c.kind == kind)
            .map(|(_, c)| if c.assignment == Assignment::Both { 2 } else { 1 })
            .sum()
    }

    #[test]
    fn full_mode_pulse_counts() {
        let seq = build_sequence(&budget(), &PipelineOptions::default()).unwrap();
        // Four π/2 pulses per atom, two readouts and one pumping per atom.
        assert_eq!(count(&seq, ChannelKind::MicrowaveHalfPi), 8);
        let att: Vec<_> = seq.channel_steps().filter(|(_, c)| c.kind == ChannelKind::Attenuation).collect();
        let readouts: usize = att
            .iter()
            .filter(|(s, _)| s.source == Some(BudgetRow::ReadoutLoss))
            .map(|(_, c)| c.qubits().len())
            .sum();
        assert_eq!(readouts, 4);
        let pumping: usize = att
            .iter()
            .filter(|(s, _)| s.source == Some(BudgetRow::OpticalPumping))
            .map(|(_, c)| c.qubits().len())
            .sum();
        assert_eq!(pumping, 2);
    }

    #[test]
    fn stages_in_order() {
        for mode in PipelineMode::ALL {
            let seq = build_sequence(&budget(), &PipelineOptions::default().with_mode(mode)).unwrap();
            assert!(seq.steps.windows(2).all(|w| w[0].stage <= w[1].stage));
        }
    }

    #[test]
    fn cz_only_has_no_spam_or_single_qubit_noise() {
        let seq = build_sequence(&budget(), &PipelineOptions::default().with_mode(PipelineMode::CzOnly)).unwrap();
        for (s, c) in seq.channel_steps() {
            if s.stage != Stage::CzGate {
                assert_eq!(c.epsilon, 0.0, "{}", s.label);
                assert!(!matches!(c.kind, ChannelKind::Attenuation | ChannelKind::Dephasing));
            }
        }
        assert_eq!(seq.confusion(), 0.0);
    }

    #[test]
    fn zero_budget_is_noiseless() {
        for mode in PipelineMode::ALL {
            let seq = build_sequence(&ErrorBudget::zero(), &PipelineOptions::default().with_mode(mode)).unwrap();
            assert!(seq.channel_steps().all(|(_, c)| c.epsilon == 0.0));
        }
    }

    #[test]
    fn unknown_mode_rejected() {
        assert!("half".parse::<PipelineMode>().is_err());
    }
}
