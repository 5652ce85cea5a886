use super::{FramedProcess, Mat4, Process1Q, Process2Q, Qubit, TwoQubitState};

/// One step of a process sequence.
#[derive(Clone, Debug)]
pub enum Operation {
    Single { process: Process1Q, qubit: Qubit },
    Framed { process: FramedProcess, qubit: Qubit },
    Joint(Process2Q),
    /// Ideal unitary U acting as ρ ↦ UρU†.
    Unitary(Mat4),
}

impl Operation {
    pub fn apply(&self, state: &TwoQubitState) -> TwoQubitState {
        match self {
            Operation::Single { process, qubit } => process.apply(state, *qubit),
            Operation::Framed { process, qubit } => process.apply(state, *qubit),
            Operation::Joint(p) => p.apply(state),
            Operation::Unitary(u) => state.conjugated(u),
        }
    }
}

/// Left fold of the operations over `initial`, in list order.
pub fn compose(ops: &[Operation], initial: &TwoQubitState) -> TwoQubitState {
    ops.iter().fold(initial.clone(), |state, op| op.apply(&state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::chi_attenuation;

    #[test]
    fn empty_sequence_is_identity() {
        let s = TwoQubitState::phi_plus();
        assert_eq!(compose(&[], &s), s);
    }

    #[test]
    fn attenuations_multiply() {
        let ops = vec![
            Operation::Single { process: chi_attenuation(0.1).unwrap(), qubit: Qubit::Control },
            Operation::Single { process: chi_attenuation(0.2).unwrap(), qubit: Qubit::Control },
        ];
        let out = compose(&ops, &TwoQubitState::phi_plus());
        assert!((out.trace() - 0.9 * 0.8).abs() < 1e-15);
    }
}
