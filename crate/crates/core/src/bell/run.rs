use std::f64::consts::{FRAC_PI_4, TAU};

use serde::Serialize;

use super::{
    build_sequence, fit_parity, outcome_probabilities, ChannelSequence, LossLedger, Outcomes, PipelineMode,
    PipelineOptions, SinusoidFit, Step, StepKind,
};
use crate::budget::ErrorBudget;
use crate::channels::ChannelSpec;
use crate::process::{uhlmann_fidelity, Mat4, Operation, Qubit, TwoQubitState, C64};
use crate::Result;

/// State and loss bookkeeping after some prefix of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Propagation {
    pub state: TwoQubitState,
    pub ledger: LossLedger,
}

impl Propagation {
    pub fn start(initial: TwoQubitState) -> Self {
        Propagation {
            state: initial,
            ledger: LossLedger::default(),
        }
    }

    /// Applies `steps` in order. Parity pulses are skipped when `parity` is
    /// `None`, otherwise applied about the axis at that angle.
    pub fn advance(&mut self, steps: &[Step], parity: Option<f64>) -> Result<()> {
        for step in steps {
            match &step.kind {
                StepKind::Channel(spec) => {
                    if step.parity_pulse {
                        let Some(phi) = parity else { continue };
                        let spec = ChannelSpec::with_axis(spec.kind, spec.epsilon, phi, spec.assignment)?;
                        self.apply_channel(&spec);
                    } else {
                        self.apply_channel(spec);
                    }
                }
                StepKind::IdealCz => self.state = self.state.conjugated(&ideal_cz()),
                StepKind::IdealStarkRotation => self.state = self.state.conjugated(&stark_rotation()),
                StepKind::Confusion(_) => {}
            }
        }
        Ok(())
    }

    fn apply_channel(&mut self, spec: &ChannelSpec) {
        for op in spec.to_operations() {
            let before = self.state.trace();
            self.state = op.apply(&self.state);
            let lost = before - self.state.trace();
            let owner = match &op {
                Operation::Single { qubit, .. } | Operation::Framed { qubit, .. } => Some(*qubit),
                Operation::Joint(_) => Some(Qubit::Target),
                Operation::Unitary(_) => None,
            };
            if let Some(q) = owner {
                self.ledger.add(q, lost);
            }
        }
    }
}

fn ideal_cz() -> Mat4 {
    let one = C64::new(1.0, 0.0);
    Mat4::from_diagonal(&nalgebra::Vector4::new(one, -one, -one, -one))
}

fn stark_rotation() -> Mat4 {
    let a = C64::from_polar(1.0, -FRAC_PI_4);
    let b = C64::from_polar(1.0, FRAC_PI_4);
    Mat4::from_diagonal(&nalgebra::Vector4::new(a, b, a, b))
}

/// Runs the whole sequence from |11⟩ without the parity pulse.
pub fn propagate(seq: &ChannelSequence, parity: Option<f64>) -> Result<Propagation> {
    let mut p = Propagation::start(TwoQubitState::basis(3));
    p.advance(&seq.steps, parity)?;
    Ok(p)
}

/// Noiseless output of the protocol; (|00⟩ − |11⟩)/√2 for θ = 0.
pub fn ideal_bell_state(local_theta: f64) -> Result<TwoQubitState> {
    let opts = PipelineOptions {
        mode: PipelineMode::CzOnly,
        local_theta,
        ..PipelineOptions::default()
    };
    let seq = build_sequence(&ErrorBudget::zero(), &opts)?;
    Ok(propagate(&seq, None)?.state)
}

/// `n` equally spaced analysis angles on [0, 2π).
pub fn parity_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityCurve {
    pub phi: Vec<f64>,
    pub parity: Vec<f64>,
    pub outcomes: Vec<Outcomes>,
}

fn parity_split(seq: &ChannelSequence) -> usize {
    seq.steps
        .iter()
        .position(|s| s.parity_pulse)
        .unwrap_or(seq.steps.len())
}

/// Parity Π(φ) from the state reached just before the analysis pulse.
pub fn parity_scan(
    seq: &ChannelSequence,
    before_parity: &Propagation,
    phis: &[f64],
    opts: &PipelineOptions,
) -> Result<ParityCurve> {
    let tail = &seq.steps[parity_split(seq)..];
    let confusion = seq.confusion();
    let mut outcomes = Vec::with_capacity(phis.len());
    for &phi in phis {
        let mut p = before_parity.clone();
        p.advance(tail, Some(phi))?;
        outcomes.push(outcome_probabilities(&p.state, &p.ledger, opts.loss_map, confusion));
    }
    Ok(ParityCurve {
        phi: phis.to_vec(),
        parity: outcomes.iter().map(Outcomes::parity).collect(),
        outcomes,
    })
}

#[derive(Clone, Debug)]
pub struct BellResult {
    pub mode: PipelineMode,
    pub sequence: ChannelSequence,
    pub rho_out: TwoQubitState,
    pub ledger: LossLedger,
    /// Uhlmann fidelity of ρ_out with the ideal Bell state.
    pub f_direct: f64,
    /// Readout probabilities without the parity pulse.
    pub outcomes: Outcomes,
    /// (P00 + P11)/2.
    pub population: f64,
    pub parity: ParityCurve,
    pub fit: SinusoidFit,
    /// Half the fitted parity amplitude.
    pub coherence: f64,
    /// population + coherence.
    pub f_experimental: f64,
}

/// Simulates the Bell experiment for `budget`.
pub fn run_bell(budget: &ErrorBudget, opts: &PipelineOptions) -> Result<BellResult> {
    let seq = build_sequence(budget, opts)?;
    let reference = ideal_bell_state(opts.local_theta)?;
    let split = parity_split(&seq);
    let mut before = Propagation::start(TwoQubitState::basis(3));
    before.advance(&seq.steps[..split], None)?;
    let mut after = before.clone();
    after.advance(&seq.steps[split..], None)?;

    let rho = if opts.renormalize {
        after.state.normalized()?
    } else {
        after.state.clone()
    };
    let f_direct = uhlmann_fidelity(&rho, &reference)?;
    let outcomes = outcome_probabilities(&after.state, &after.ledger, opts.loss_map, seq.confusion());
    let parity = parity_scan(&seq, &before, &parity_grid(opts.parity_points), opts)?;
    let fit = fit_parity(&parity.phi, &parity.parity)?;
    let population = outcomes.even() / 2.0;
    let coherence = fit.amplitude / 2.0;
    Ok(BellResult {
        mode: opts.mode,
        sequence: seq,
        rho_out: after.state,
        ledger: after.ledger,
        f_direct,
        outcomes,
        population,
        parity,
        fit,
        coherence,
        f_experimental: population + coherence,
    })
}
