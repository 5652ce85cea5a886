use std::str::FromStr;

use serde::Serialize;

use crate::process::{Qubit, TwoQubitState};
use crate::{Error, Result};

/// How a lost atom is reported by the state-selective readout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LossMap {
    /// A missing atom reads as |1⟩ (pushed-out state is dark).
    DarkAsOne,
    /// A missing atom reads as |0⟩.
    DarkAsZero,
    /// Lost population is discarded and the rest renormalized.
    PostSelect,
}

impl FromStr for LossMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dark_as_one" => Ok(LossMap::DarkAsOne),
            "dark_as_zero" => Ok(LossMap::DarkAsZero),
            "post_select" => Ok(LossMap::PostSelect),
            other => Err(Error::Usage(format!("unknown loss map '{other}'"))),
        }
    }
}

/// Trace removed so far, attributed to the atom that was lost.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct LossLedger {
    pub control: f64,
    pub target: f64,
}

impl LossLedger {
    pub fn add(&mut self, qubit: Qubit, amount: f64) {
        match qubit {
            Qubit::Control => self.control += amount,
            Qubit::Target => self.target += amount,
        }
    }

    pub fn total(&self) -> f64 {
        self.control + self.target
    }
}

/// Joint outcome probabilities, indexed by 2·control + target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Outcomes(pub [f64; 4]);

impl Outcomes {
    pub fn get(&self, control: usize, target: usize) -> f64 {
        self.0[2 * control + target]
    }

    /// P00 + P11 − P01 − P10.
    pub fn parity(&self) -> f64 {
        self.0[0] + self.0[3] - self.0[1] - self.0[2]
    }

    /// P00 + P11.
    pub fn even(&self) -> f64 {
        self.0[0] + self.0[3]
    }

    pub fn marginal(&self, qubit: Qubit, value: usize) -> f64 {
        match qubit {
            Qubit::Control => self.get(value, 0) + self.get(value, 1),
            Qubit::Target => self.get(0, value) + self.get(1, value),
        }
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Applies a symmetric per-atom discrimination error c.
    pub fn with_confusion(&self, c: f64) -> Outcomes {
        let m = [[1.0 - c, c], [c, 1.0 - c]];
        let mut out = [0.0; 4];
        for a2 in 0..2 {
            for b2 in 0..2 {
                let mut acc = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += m[a2][a] * m[b2][b] * self.get(a, b);
                    }
                }
                out[2 * a2 + b2] = acc;
            }
        }
        Outcomes(out)
    }
}

/// Readout probabilities of the surviving state plus the lost population,
/// followed by the discrimination error.
pub fn outcome_probabilities(
    state: &TwoQubitState,
    ledger: &LossLedger,
    loss_map: LossMap,
    confusion: f64,
) -> Outcomes {
    let p = state.populations().map(|x| x.max(0.0));
    let tr: f64 = p.iter().sum();
    let raw = match loss_map {
        LossMap::PostSelect => {
            if tr > 0.0 {
                p.map(|x| x / tr)
            } else {
                [0.25; 4]
            }
        }
        LossMap::DarkAsOne | LossMap::DarkAsZero => {
            let dark = usize::from(loss_map == LossMap::DarkAsOne);
            let marginal = |f: &dyn Fn(usize) -> f64| {
                if tr > 0.0 {
                    [f(0) / tr, f(1) / tr]
                } else {
                    [0.5, 0.5]
                }
            };
            let pc = marginal(&|a| p[2 * a] + p[2 * a + 1]);
            let pt = marginal(&|b| p[b] + p[2 + b]);
            let mut out = p;
            for b in 0..2 {
                out[2 * dark + b] += ledger.control * pt[b];
            }
            for a in 0..2 {
                out[2 * a + dark] += ledger.target * pc[a];
            }
            out
        }
    };
    Outcomes(raw).with_confusion(confusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::chi_attenuation;

    #[test]
    fn lost_target_reads_as_one() {
        let s = TwoQubitState::basis(0);
        let lost = chi_attenuation(0.2).unwrap().apply(&s, Qubit::Target);
        let ledger = LossLedger { control: 0.0, target: 0.2 };
        let o = outcome_probabilities(&lost, &ledger, LossMap::DarkAsOne, 0.0);
        assert!((o.get(0, 0) - 0.8).abs() < 1e-14);
        assert!((o.get(0, 1) - 0.2).abs() < 1e-14);
        let z = outcome_probabilities(&lost, &ledger, LossMap::DarkAsZero, 0.0);
        assert!((z.get(0, 0) - 1.0).abs() < 1e-14);
        let ps = outcome_probabilities(&lost, &ledger, LossMap::PostSelect, 0.0);
        assert!((ps.get(0, 0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let s = TwoQubitState::phi_plus();
        let lost = chi_attenuation(0.3).unwrap().apply(&s, Qubit::Control);
        let ledger = LossLedger { control: 0.3, target: 0.0 };
        let o = outcome_probabilities(&lost, &ledger, LossMap::DarkAsOne, 0.01);
        assert!((o.total() - 1.0).abs() < 1e-14);
        // Surviving [0.35, 0, 0, 0.35]; the lost control reads 1 with the target split evenly.
        let expected = 0.01 * 0.99 * 0.35 + 0.99 * 0.99 * 0.15 + 0.99 * 0.01 * 0.5;
        assert!((o.get(1, 0) - expected).abs() < 1e-14);
    }

    #[test]
    fn confusion_flips_each_atom() {
        let o = Outcomes([1.0, 0.0, 0.0, 0.0]).with_confusion(0.1);
        assert!((o.get(0, 0) - 0.81).abs() < 1e-15);
        assert!((o.get(0, 1) - 0.09).abs() < 1e-15);
        assert!((o.get(1, 1) - 0.01).abs() < 1e-15);
    }
}
