//! Library of error channels as χ matrices parameterised by an error
//! probability ε.
//!
//! Every two-qubit channel here has the form ρ ↦ (1−ε)ρ + ε KρK with K built
//! from I and Z on each qubit; the tensor is stored as the outer product of
//! K's Pauli coefficients.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use serde::Serialize;

use crate::error::check_probability;
use crate::process::{Operation, Process1Q, Process2Q, Qubit, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Identity,
    Attenuation,
    Dephasing,
    StateDependentLoss,
    MicrowaveHalfPi,
    ControlledDephasing,
    AntiControlledDephasing,
    ControlledLoss,
    AntiControlledLoss,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 9] = [
        ChannelKind::Identity,
        ChannelKind::Attenuation,
        ChannelKind::Dephasing,
        ChannelKind::StateDependentLoss,
        ChannelKind::MicrowaveHalfPi,
        ChannelKind::ControlledDephasing,
        ChannelKind::AntiControlledDephasing,
        ChannelKind::ControlledLoss,
        ChannelKind::AntiControlledLoss,
    ];

    pub fn is_joint(self) -> bool {
        matches!(
            self,
            ChannelKind::ControlledDephasing
                | ChannelKind::AntiControlledDephasing
                | ChannelKind::ControlledLoss
                | ChannelKind::AntiControlledLoss
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::Identity => "identity",
            ChannelKind::Attenuation => "attenuation",
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::StateDependentLoss => "state_dependent_loss",
            ChannelKind::MicrowaveHalfPi => "microwave_half_pi",
            ChannelKind::ControlledDephasing => "controlled_dephasing",
            ChannelKind::AntiControlledDephasing => "anticontrolled_dephasing",
            ChannelKind::ControlledLoss => "controlled_loss",
            ChannelKind::AntiControlledLoss => "anticontrolled_loss",
        }
    }

    /// Whether the channel removes trace.
    pub fn is_lossy(self) -> bool {
        matches!(
            self,
            ChannelKind::Attenuation
                | ChannelKind::StateDependentLoss
                | ChannelKind::ControlledLoss
                | ChannelKind::AntiControlledLoss
        )
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assignment {
    Control,
    Target,
    Both,
    Joint,
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "control" => Ok(Assignment::Control),
            "target" => Ok(Assignment::Target),
            "both" => Ok(Assignment::Both),
            "joint" => Ok(Assignment::Joint),
            other => Err(Error::Usage(format!("unknown qubit assignment '{other}'"))),
        }
    }
}

/// A channel kind, its strength, microwave axis angle and where it acts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub epsilon: f64,
    pub axis_angle: f64,
    pub assignment: Assignment,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, epsilon: f64, assignment: Assignment) -> Result<Self> {
        Self::with_axis(kind, epsilon, 0.0, assignment)
    }

    pub fn with_axis(kind: ChannelKind, epsilon: f64, axis_angle: f64, assignment: Assignment) -> Result<Self> {
        check_probability(kind.name(), epsilon)?;
        if !axis_angle.is_finite() {
            return Err(Error::Validation(format!("axis angle {axis_angle} is not finite")));
        }
        if kind.is_joint() != (assignment == Assignment::Joint) {
            return Err(Error::Validation(format!(
                "channel {kind} cannot be assigned to {assignment:?}"
            )));
        }
        Ok(ChannelSpec {
            kind,
            epsilon,
            axis_angle,
            assignment,
        })
    }

    /// Single-qubit χ for single-qubit kinds.
    pub fn single_process(&self) -> Option<Process1Q> {
        let eps = self.epsilon;
        let p = match self.kind {
            ChannelKind::Identity => chi_identity(),
            ChannelKind::Attenuation => chi_attenuation(eps).ok()?,
            ChannelKind::Dephasing => chi_dephasing(eps).ok()?,
            ChannelKind::StateDependentLoss => chi_state_dependent_loss(eps).ok()?,
            ChannelKind::MicrowaveHalfPi => chi_microwave_half_pi(eps).ok()?,
            _ => return None,
        };
        Some(p)
    }

    pub fn joint_process(&self) -> Option<Process2Q> {
        let eps = self.epsilon;
        match self.kind {
            ChannelKind::ControlledDephasing => chi_controlled_dephasing(eps).ok(),
            ChannelKind::AntiControlledDephasing => chi_anticontrolled_dephasing(eps).ok(),
            ChannelKind::ControlledLoss => chi_controlled_loss(eps).ok(),
            ChannelKind::AntiControlledLoss => chi_anticontrolled_loss(eps).ok(),
            _ => None,
        }
    }

    /// The qubits addressed by a single-qubit channel.
    pub fn qubits(&self) -> Vec<Qubit> {
        match self.assignment {
            Assignment::Control => vec![Qubit::Control],
            Assignment::Target => vec![Qubit::Target],
            Assignment::Both => vec![Qubit::Control, Qubit::Target],
            Assignment::Joint => vec![],
        }
    }

    /// Expands into process operations; a `Both` assignment becomes one
    /// operation per qubit, control first.
    pub fn to_operations(&self) -> Vec<Operation> {
        if let Some(p) = self.joint_process() {
            return vec![Operation::Joint(p)];
        }
        let p = self.single_process().expect("validated single-qubit channel");
        self.qubits()
            .into_iter()
            .map(|qubit| {
                if self.kind == ChannelKind::MicrowaveHalfPi && self.axis_angle != 0.0 {
                    Operation::Framed {
                        process: p.in_frame(self.axis_angle),
                        qubit,
                    }
                } else {
                    Operation::Single {
                        process: p.clone(),
                        qubit,
                    }
                }
            })
            .collect()
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn diag_chi(d: [f64; 4]) -> Process1Q {
    let mut chi = Matrix4::zeros();
    for (i, v) in d.iter().enumerate() {
        chi[(i, i)] = re(*v);
    }
    Process1Q::from_chi_unchecked(chi)
}

/// χ = diag(1, 0, 0, 0).
pub fn chi_identity() -> Process1Q {
    Process1Q::identity()
}

/// Uniform loss: ρ ↦ (1−ε)ρ.
pub fn chi_attenuation(eps: f64) -> Result<Process1Q> {
    check_probability("attenuation ε", eps)?;
    Ok(diag_chi([1.0 - eps, 0.0, 0.0, 0.0]))
}

/// Phase flip: ρ ↦ (1−ε)ρ + εZρZ.
pub fn chi_dephasing(eps: f64) -> Result<Process1Q> {
    check_probability("dephasing ε", eps)?;
    Ok(diag_chi([1.0 - eps, 0.0, 0.0, eps]))
}

/// Loss from |1⟩ only. Keeps |0⟩⟨0|, scales the |1⟩ population and the
/// coherences by (1−ε).
pub fn chi_state_dependent_loss(eps: f64) -> Result<Process1Q> {
    check_probability("state-dependent loss ε", eps)?;
    let mut chi = Matrix4::zeros();
    chi[(0, 0)] = re(1.0 - 0.75 * eps);
    chi[(0, 3)] = re(0.25 * eps);
    chi[(3, 0)] = re(0.25 * eps);
    chi[(3, 3)] = re(0.25 * eps);
    Ok(Process1Q::from_chi_unchecked(chi))
}

/// π/2 microwave rotation mixed with its inverse at probability ε.
pub fn chi_microwave_half_pi(eps: f64) -> Result<Process1Q> {
    check_probability("microwave ε", eps)?;
    let mut chi = Matrix4::zeros();
    chi[(0, 0)] = re(0.5);
    chi[(2, 2)] = re(0.5);
    chi[(0, 2)] = C64::new(0.0, 0.5 - eps);
    chi[(2, 0)] = C64::new(0.0, -(0.5 - eps));
    Ok(Process1Q::from_chi_unchecked(chi))
}

/// Pauli index for the {I, Z} sub-block.
const IZ: [usize; 2] = [0, 3];

fn joint_channel(eps: f64, k: [[f64; 2]; 2]) -> Process2Q {
    let mut p = Process2Q::zeros();
    p.add(0, 0, 0, 0, re(1.0 - eps));
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let w = eps * k[a][b] * k[c][d];
                    if w != 0.0 {
                        p.add(IZ[a], IZ[b], IZ[c], IZ[d], re(w));
                    }
                }
            }
        }
    }
    p
}

/// Target dephasing when the control is in |1⟩.
pub fn chi_controlled_dephasing(eps: f64) -> Result<Process2Q> {
    check_probability("controlled dephasing ε", eps)?;
    Ok(joint_channel(eps, [[0.5, 0.5], [0.5, -0.5]]))
}

/// Target dephasing when the control is in |0⟩.
pub fn chi_anticontrolled_dephasing(eps: f64) -> Result<Process2Q> {
    check_probability("anti-controlled dephasing ε", eps)?;
    Ok(joint_channel(eps, [[0.5, 0.5], [-0.5, 0.5]]))
}

/// Loss of the target |1⟩ population when the control is in |1⟩.
pub fn chi_controlled_loss(eps: f64) -> Result<Process2Q> {
    check_probability("controlled loss ε", eps)?;
    Ok(joint_channel(eps, [[0.75, 0.25], [0.25, -0.25]]))
}

/// Loss of the target |1⟩ population when the control is in |0⟩.
pub fn chi_anticontrolled_loss(eps: f64) -> Result<Process2Q> {
    check_probability("anti-controlled loss ε", eps)?;
    Ok(joint_channel(eps, [[0.75, 0.25], [-0.25, 0.25]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{pauli, uhlmann_fidelity, Mat2, TwoQubitState};

    fn plus_plus() -> TwoQubitState {
        let h = C64::new(0.5, 0.0);
        TwoQubitState::pure([h, h, h, h]).unwrap()
    }

    fn singles(eps: f64) -> Vec<Process1Q> {
        vec![
            chi_attenuation(eps).unwrap(),
            chi_dephasing(eps).unwrap(),
            chi_state_dependent_loss(eps).unwrap(),
            chi_microwave_half_pi(eps).unwrap(),
        ]
    }

    fn joints(eps: f64) -> Vec<Process2Q> {
        vec![
            chi_controlled_dephasing(eps).unwrap(),
            chi_anticontrolled_dephasing(eps).unwrap(),
            chi_controlled_loss(eps).unwrap(),
            chi_anticontrolled_loss(eps).unwrap(),
        ]
    }

    #[test]
    fn identity_is_printed_form() {
        let chi = chi_identity();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(chi.chi()[(i, j)], re(expect));
            }
        }
    }

    #[test]
    fn zero_strength_loss_channels_are_identity() {
        for p in singles(0.0).into_iter().take(3) {
            assert!((p.chi() - chi_identity().chi()).norm() < 1e-15);
        }
        for p in joints(0.0) {
            assert_eq!(p, Process2Q::identity());
        }
    }

    #[test]
    fn out_of_range_strength_rejected() {
        assert!(chi_attenuation(-0.1).is_err());
        assert!(chi_dephasing(1.5).is_err());
        assert!(chi_controlled_loss(f64::NAN).is_err());
    }

    #[test]
    fn all_library_chi_psd_on_grid() {
        for k in 0..=10 {
            let eps = k as f64 / 10.0;
            for p in singles(eps) {
                assert!(Process1Q::new(*p.chi()).is_ok(), "eps {eps}");
            }
            for p in joints(eps) {
                assert!(Process2Q::new(*p.tensor()).is_ok(), "eps {eps}");
            }
        }
    }

    #[test]
    fn readout_attenuation_factor() {
        let out = chi_attenuation(0.0025).unwrap().apply(&TwoQubitState::basis(0), Qubit::Target);
        assert!((out.trace() - 0.9975).abs() < 1e-15);
        let out = chi_attenuation(1.0).unwrap().apply(&TwoQubitState::basis(0), Qubit::Target);
        assert_eq!(out.trace(), 0.0);
    }

    #[test]
    fn half_dephasing_kills_coherence() {
        let out = chi_dephasing(0.5).unwrap().apply(&plus_plus(), Qubit::Target);
        assert!(out.matrix()[(0, 1)].norm() < 1e-16);
        assert!((out.populations()[0] - 0.25).abs() < 1e-16);
    }

    #[test]
    fn state_dependent_loss_action() {
        let l = chi_state_dependent_loss(0.0075).unwrap();
        let zero = l.apply(&TwoQubitState::basis(0), Qubit::Control);
        assert!(zero.max_abs_diff(&TwoQubitState::basis(0)) < 1e-15);
        let one = l.apply(&TwoQubitState::basis(2), Qubit::Control);
        assert!((one.trace() - 0.9925).abs() < 1e-15);
        let coh = l.apply(&plus_plus(), Qubit::Control);
        // ρ_{00,10} is a control coherence.
        assert!((coh.matrix()[(0, 2)].re - 0.25 * (1.0 - 0.0075)).abs() < 1e-15);
        assert!((coh.matrix()[(0, 0)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn state_dependent_loss_block_determinant() {
        let eps = 0.3;
        let l = chi_state_dependent_loss(eps).unwrap();
        let c = l.chi();
        let det = (c[(0, 0)] * c[(3, 3)] - c[(0, 3)] * c[(3, 0)]).re;
        assert!((det - eps * (1.0 - eps) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn ideal_half_pi_splits_population() {
        let mw = chi_microwave_half_pi(0.0).unwrap();
        let out = mw.apply(&TwoQubitState::basis(0), Qubit::Target);
        assert!((out.populations()[0] - 0.5).abs() < 1e-15);
        assert!((out.populations()[1] - 0.5).abs() < 1e-15);
        let twice = mw.apply(&out, Qubit::Target);
        assert!((twice.populations()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn microwave_eigenvalues() {
        let eps = 0.13;
        let mut ev = chi_microwave_half_pi(eps).unwrap().eigenvalues();
        ev.sort_by(f64::total_cmp);
        let expect = [0.0, 0.0, eps, 1.0 - eps];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn half_microwave_dephases_equator() {
        let out = chi_microwave_half_pi(0.5).unwrap().apply(&TwoQubitState::basis(0), Qubit::Target);
        assert!(out.matrix()[(0, 1)].norm() < 1e-16);
    }

    #[test]
    fn controlled_dephasing_leaves_populations() {
        let cd = chi_controlled_dephasing(1.0).unwrap();
        let s = TwoQubitState::basis(2);
        assert!(cd.apply(&s).max_abs_diff(&s) < 1e-15);
        let s = TwoQubitState::basis(0);
        assert!(cd.apply(&s).max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn controlled_dephasing_damps_only_controlled_coherence() {
        let eps = 0.012;
        let out = chi_controlled_dephasing(eps).unwrap().apply(&plus_plus());
        let m = out.matrix();
        // ρ_{10,11}: control |1⟩, target coherence.
        assert!((m[(2, 3)].re - 0.25 * (1.0 - 2.0 * eps)).abs() < 1e-15);
        // ρ_{00,01}: control |0⟩, untouched.
        assert!((m[(0, 1)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn anticontrolled_loss_action() {
        let eps = 0.2;
        let acl = chi_anticontrolled_loss(eps).unwrap();
        let out = acl.apply(&TwoQubitState::basis(1));
        assert!((out.trace() - (1.0 - eps)).abs() < 1e-15);
        let s = TwoQubitState::basis(3);
        assert!(acl.apply(&s).max_abs_diff(&s) < 1e-15);
        let s = TwoQubitState::basis(0);
        assert!(acl.apply(&s).max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn controlled_and_anticontrolled_are_x_conjugates() {
        let x = crate::process::kron(&pauli(1), &Mat2::identity());
        let s = plus_plus();
        let s = crate::channels::chi_state_dependent_loss(0.3).unwrap().apply(&s, Qubit::Target);
        for eps in [0.05, 0.4, 0.9] {
            let pairs = [
                (chi_controlled_dephasing(eps).unwrap(), chi_anticontrolled_dephasing(eps).unwrap()),
                (chi_controlled_loss(eps).unwrap(), chi_anticontrolled_loss(eps).unwrap()),
            ];
            for (c, a) in pairs {
                let lhs = c.apply(&s.conjugated(&x)).conjugated(&x);
                assert!(lhs.max_abs_diff(&a.apply(&s)) < 1e-15);
            }
        }
    }

    #[test]
    fn joint_dephasing_on_bell_precursor() {
        // Oracle: (1−ε)ρ + ε KρK with K = |0⟩⟨0|⊗I + |1⟩⟨1|⊗Z.
        let eps = 0.25;
        let s = plus_plus();
        let k = nalgebra::Matrix4::from_diagonal(&nalgebra::Vector4::new(re(1.0), re(1.0), re(1.0), re(-1.0)));
        let expect = s.matrix() * re(1.0 - eps) + k * s.matrix() * k * re(eps);
        let got = chi_controlled_dephasing(eps).unwrap().apply(&s);
        assert!((got.matrix() - expect).norm() < 1e-15);
        let f = uhlmann_fidelity(&got, &s).unwrap();
        assert!(f < 1.0);
    }

    #[test]
    fn spec_assignment_validation() {
        assert!(ChannelSpec::new(ChannelKind::Dephasing, 0.1, Assignment::Joint).is_err());
        assert!(ChannelSpec::new(ChannelKind::ControlledLoss, 0.1, Assignment::Target).is_err());
        let both = ChannelSpec::new(ChannelKind::Attenuation, 0.1, Assignment::Both).unwrap();
        assert_eq!(both.to_operations().len(), 2);
    }
}
