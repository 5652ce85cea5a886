//! Bell-state preparation with a C_Z gate: channel sequence, propagation,
//! readout model and the observables derived from it.
//!
//! The protocol starts from |11⟩, applies a global π/2 pulse, the C_Z gate
//! and a local π/2 rotation on the target, producing (|00⟩ − |11⟩)/√2.

mod fit;
mod ramsey;
mod readout;
mod run;
mod sequence;

pub use fit::{fit_parity, fit_sinusoid, SinusoidFit};
pub use ramsey::{extract_epsilon, simulate_eye_diagram, simulate_ramsey, EyeCurve, RamseyCurve, RamseyModel};
pub use readout::{outcome_probabilities, LossLedger, LossMap, Outcomes};
pub use run::{
    ideal_bell_state, parity_grid, parity_scan, propagate, run_bell, BellResult, ParityCurve, Propagation,
};
pub use sequence::{
    build_sequence, ChannelSequence, CrosstalkModel, PipelineMode, PipelineOptions, Step, StepKind,
    TargetBranch,
};

pub use crate::budget::Stage;
