use nalgebra::SMatrix;

use super::linalg::hermitian_eigen;
use super::pauli::pauli_pairs;
use super::{Mat4, TwoQubitState, C64, HERMITIAN_TOL, PSD_TOL};
use crate::{Error, Result};

type Chi16 = SMatrix<C64, 16, 16>;

/// Two-qubit process as a rank-4 χ tensor χ[m][r][n][s].
///
/// The channel acts as ρ ↦ Σ χ_mrns (σ_m⊗σ_r) ρ (σ_n⊗σ_s) with m, n on the
/// control and r, s on the target.
#[derive(Clone, Debug, PartialEq)]
pub struct Process2Q {
    chi: Box<[[[[C64; 4]; 4]; 4]; 4]>,
}

impl Process2Q {
    /// Validates conjugate symmetry under (m,r) ↔ (n,s) and positivity of
    /// the 16×16 reshape.
    pub fn new(chi: [[[[C64; 4]; 4]; 4]; 4]) -> Result<Self> {
        let p = Process2Q { chi: Box::new(chi) };
        let mut worst: f64 = 0.0;
        for m in 0..4 {
            for r in 0..4 {
                for n in 0..4 {
                    for s in 0..4 {
                        worst = worst.max((p.get(m, r, n, s) - p.get(n, s, m, r).conj()).norm());
                    }
                }
            }
        }
        if !(worst <= HERMITIAN_TOL) {
            return Err(Error::Validation(format!("two-qubit χ is not Hermitian (defect {worst:.3e})")));
        }
        let lam = p.eigenvalues()[0];
        if lam < -PSD_TOL {
            return Err(Error::Validation(format!(
                "two-qubit χ is not positive semidefinite (min eigenvalue {lam:.3e})"
            )));
        }
        Ok(p)
    }

    pub fn zeros() -> Self {
        Process2Q {
            chi: Box::new([[[[C64::new(0.0, 0.0); 4]; 4]; 4]; 4]),
        }
    }

    pub fn identity() -> Self {
        let mut p = Self::zeros();
        p.chi[0][0][0][0] = C64::new(1.0, 0.0);
        p
    }

    pub fn get(&self, m: usize, r: usize, n: usize, s: usize) -> C64 {
        self.chi[m][r][n][s]
    }

    pub(crate) fn add(&mut self, m: usize, r: usize, n: usize, s: usize, value: C64) {
        self.chi[m][r][n][s] += value;
    }

    pub fn tensor(&self) -> &[[[[C64; 4]; 4]; 4]; 4] {
        &self.chi
    }

    /// 16×16 matrix view with row (m,r) and column (n,s).
    pub fn reshaped(&self) -> Chi16 {
        Chi16::from_fn(|i, j| self.chi[i / 4][i % 4][j / 4][j % 4])
    }

    /// Eigenvalues of the 16×16 reshape, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.reshaped()).0
    }

    /// Applies the process by the Pauli-sum definition.
    pub fn apply(&self, state: &TwoQubitState) -> TwoQubitState {
        let rho = state.matrix();
        let paulis = pauli_pairs();
        let zero = C64::new(0.0, 0.0);
        let mut out = Mat4::zeros();
        for i in 0..16 {
            let (m, r) = (i / 4, i % 4);
            if self.chi[m][r].iter().all(|row| row.iter().all(|&c| c == zero)) {
                continue;
            }
            let left = paulis[i] * rho;
            for j in 0..16 {
                let c = self.chi[m][r][j / 4][j % 4];
                if c != zero {
                    out += left * paulis[j] * c;
                }
            }
        }
        TwoQubitState::from_raw(out)
    }

    /// Kraus operators from the eigendecomposition of the 16×16 reshape.
    pub fn kraus_operators(&self) -> Vec<Mat4> {
        let (values, vectors) = hermitian_eigen(&self.reshaped());
        let paulis = pauli_pairs();
        let mut out = Vec::new();
        for (k, &lam) in values.iter().enumerate() {
            if lam <= 0.0 {
                continue;
            }
            let mut op = Mat4::zeros();
            for (i, p) in paulis.iter().enumerate() {
                op += p * vectors[(i, k)];
            }
            out.push(op * C64::new(lam.sqrt(), 0.0));
        }
        out
    }

    pub fn apply_kraus(&self, state: &TwoQubitState) -> TwoQubitState {
        let rho = state.matrix();
        let mut out = Mat4::zeros();
        for k in self.kraus_operators() {
            out += k * rho * k.adjoint();
        }
        TwoQubitState::from_raw(out)
    }

    /// Product process χ_a ⊗ χ_b: control process `a`, target process `b`.
    pub fn from_product(a: &super::Process1Q, b: &super::Process1Q) -> Self {
        let mut p = Self::zeros();
        for m in 0..4 {
            for r in 0..4 {
                for n in 0..4 {
                    for s in 0..4 {
                        p.chi[m][r][n][s] = a.chi()[(m, n)] * b.chi()[(r, s)];
                    }
                }
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{Process1Q, Qubit};

    fn sample_state() -> TwoQubitState {
        let a = [
            C64::new(0.2, -0.1),
            C64::new(0.4, 0.3),
            C64::new(-0.5, 0.2),
            C64::new(0.3, 0.5),
        ];
        TwoQubitState::pure(a).unwrap()
    }

    #[test]
    fn identity_product_is_identity() {
        let p = Process2Q::from_product(&Process1Q::identity(), &Process1Q::identity());
        let s = sample_state();
        assert!(p.apply(&s).max_abs_diff(&s) < 1e-15);
        assert_eq!(p, Process2Q::identity());
    }

    #[test]
    fn product_matches_sequential_single_qubit() {
        let a = crate::channels::chi_microwave_half_pi(0.1).unwrap();
        let b = crate::channels::chi_state_dependent_loss(0.2).unwrap();
        let p = Process2Q::from_product(&a, &b);
        let s = sample_state();
        let seq = b.apply(&a.apply(&s, Qubit::Control), Qubit::Target);
        assert!(p.apply(&s).max_abs_diff(&seq) < 1e-12);
    }

    #[test]
    fn kraus_matches_pauli_sum() {
        let p = crate::channels::chi_controlled_loss(0.3).unwrap();
        let s = sample_state();
        assert!(p.apply(&s).max_abs_diff(&p.apply_kraus(&s)) < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_tensor() {
        let mut t = [[[[C64::new(0.0, 0.0); 4]; 4]; 4]; 4];
        t[0][0][0][0] = C64::new(0.5, 0.0);
        t[0][0][3][3] = C64::new(0.1, 0.0);
        assert!(Process2Q::new(t).is_err());
    }
}
