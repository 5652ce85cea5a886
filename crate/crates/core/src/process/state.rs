use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::linalg::{hermitian_defect, min_eigenvalue};
use super::{kron, Mat2, Mat4, C64, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Qubit {
    Control,
    Target,
}

impl Qubit {
    pub fn other(self) -> Qubit {
        match self {
            Qubit::Control => Qubit::Target,
            Qubit::Target => Qubit::Control,
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qubit::Control => f.write_str("control"),
            Qubit::Target => f.write_str("target"),
        }
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "control" | "c" => Ok(Qubit::Control),
            "target" | "t" => Ok(Qubit::Target),
            other => Err(Error::Usage(format!("unknown qubit '{other}', expected control or target"))),
        }
    }
}

/// Two-qubit density matrix, possibly sub-normalised after loss channels.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    rho: Mat4,
}

impl TwoQubitState {
    /// Validates and wraps a density matrix.
    pub fn new(rho: Mat4) -> Result<Self> {
        Self::validate(&rho)?;
        Ok(TwoQubitState { rho })
    }

    /// Wraps a matrix produced by library channels, which preserve the
    /// invariants by construction.
    pub(crate) fn from_raw(rho: Mat4) -> Self {
        TwoQubitState { rho }
    }

    pub fn validate(rho: &Mat4) -> Result<()> {
        let defect = hermitian_defect(rho);
        if !(defect <= HERMITIAN_TOL) {
            return Err(Error::Validation(format!(
                "density matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let lam = min_eigenvalue(rho);
        if lam < -PSD_TOL {
            return Err(Error::Validation(format!(
                "density matrix is not positive semidefinite (min eigenvalue {lam:.3e})"
            )));
        }
        let tr = rho.trace().re;
        if !(-TRACE_TOL..=1.0 + TRACE_TOL).contains(&tr) {
            return Err(Error::Validation(format!("density matrix trace {tr} outside [0, 1]")));
        }
        Ok(())
    }

    /// Computational basis state |index⟩ with index = 2·control + target.
    pub fn basis(index: usize) -> Self {
        assert!(index < 4, "basis index {index} out of range");
        let mut rho = Mat4::zeros();
        rho[(index, index)] = C64::new(1.0, 0.0);
        TwoQubitState { rho }
    }

    /// Normalised pure state from unnormalised amplitudes.
    pub fn pure(amplitudes: [C64; 4]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Validation("pure state amplitudes have zero norm".into()));
        }
        let v = nalgebra::Vector4::from_iterator(amplitudes.iter().map(|a| a / norm));
        Ok(TwoQubitState { rho: v * v.adjoint() })
    }

    /// Product state ρ_c ⊗ ρ_t.
    pub fn product(control: &Mat2, target: &Mat2) -> Result<Self> {
        Self::new(kron(control, target))
    }

    /// Bell state (|00⟩ + |11⟩)/√2.
    pub fn phi_plus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self::pure([h, z, z, h]).expect("nonzero")
    }

    /// Bell state (|00⟩ − |11⟩)/√2.
    pub fn phi_minus() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self::pure([h, z, z, -h]).expect("nonzero")
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitState {
            rho: Mat4::identity() * C64::new(0.25, 0.0),
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.rho
    }

    pub fn into_matrix(self) -> Mat4 {
        self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// Diagonal entries ρ_00,00 … ρ_11,11.
    pub fn populations(&self) -> [f64; 4] {
        [self.rho[(0, 0)].re, self.rho[(1, 1)].re, self.rho[(2, 2)].re, self.rho[(3, 3)].re]
    }

    /// Reduced single-qubit density matrix.
    pub fn reduced(&self, which: Qubit) -> Mat2 {
        let mut out = Mat2::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for k in 0..2 {
                    let (i, j) = match which {
                        Qubit::Control => (2 * a + k, 2 * b + k),
                        Qubit::Target => (2 * k + a, 2 * k + b),
                    };
                    out[(a, b)] += self.rho[(i, j)];
                }
            }
        }
        out
    }

    /// U ρ U†.
    pub fn conjugated(&self, u: &Mat4) -> Self {
        TwoQubitState {
            rho: u * self.rho * u.adjoint(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.rho * C64::new(factor, 0.0))
    }

    /// State divided by its trace.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr <= 0.0 {
            return Err(Error::Validation("cannot normalise a zero-trace state".into()));
        }
        Ok(TwoQubitState {
            rho: self.rho / C64::new(tr, 0.0),
        })
    }

    /// Largest elementwise difference from another state.
    pub fn max_abs_diff(&self, other: &TwoQubitState) -> f64 {
        (self.rho - other.rho).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
