use nalgebra::Matrix4;

use super::linalg::{hermitian_defect, hermitian_eigen};
use super::{pauli, pauli_pair, z_rotation, Mat2, Mat4, Qubit, TwoQubitState, C64};
use super::{HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::{Error, Result};

/// Single-qubit process as a 4×4 χ matrix over (I, X, Y, Z).
///
/// The channel acts as ρ ↦ Σ_mn χ_mn σ_m ρ σ_n on the addressed qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct Process1Q {
    chi: Matrix4<C64>,
}

fn embed(op: &Mat2, which: Qubit) -> Mat4 {
    match which {
        Qubit::Control => super::kron(op, &Mat2::identity()),
        Qubit::Target => super::kron(&Mat2::identity(), op),
    }
}

fn embedded_pauli(m: usize, which: Qubit) -> Mat4 {
    match which {
        Qubit::Control => pauli_pair(m, 0),
        Qubit::Target => pauli_pair(0, m),
    }
}

impl Process1Q {
    /// Validates Hermiticity, positivity and the trace bound of χ.
    pub fn new(chi: Matrix4<C64>) -> Result<Self> {
        let defect = hermitian_defect(&chi);
        if !(defect <= HERMITIAN_TOL) {
            return Err(Error::Validation(format!("χ is not Hermitian (defect {defect:.3e})")));
        }
        let lam = hermitian_eigen(&chi).0[0];
        if lam < -PSD_TOL {
            return Err(Error::Validation(format!("χ is not positive semidefinite (min eigenvalue {lam:.3e})")));
        }
        let tr = chi.trace().re;
        if tr > 1.0 + TRACE_TOL {
            return Err(Error::Validation(format!("χ trace {tr} exceeds 1")));
        }
        Ok(Process1Q { chi })
    }

    pub(crate) fn from_chi_unchecked(chi: Matrix4<C64>) -> Self {
        Process1Q { chi }
    }

    pub fn identity() -> Self {
        let mut chi = Matrix4::zeros();
        chi[(0, 0)] = C64::new(1.0, 0.0);
        Process1Q { chi }
    }

    pub fn chi(&self) -> &Matrix4<C64> {
        &self.chi
    }

    /// Eigenvalues of χ in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.chi).0
    }

    /// Applies the process to one qubit by the Pauli-sum definition.
    pub fn apply(&self, state: &TwoQubitState, which: Qubit) -> TwoQubitState {
        let rho = state.matrix();
        let left: Vec<Option<Mat4>> = (0..4)
            .map(|m| {
                let row_nonzero = (0..4).any(|n| self.chi[(m, n)] != C64::new(0.0, 0.0));
                row_nonzero.then(|| embedded_pauli(m, which) * rho)
            })
            .collect();
        let mut out = Mat4::zeros();
        for m in 0..4 {
            let Some(a) = &left[m] else { continue };
            for n in 0..4 {
                let c = self.chi[(m, n)];
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                out += a * embedded_pauli(n, which) * c;
            }
        }
        TwoQubitState::from_raw(out)
    }

    /// Kraus operators K_k = √λ_k Σ_m v_k[m] σ_m from the eigendecomposition of χ.
    pub fn kraus_operators(&self) -> Vec<Mat2> {
        let (values, vectors) = hermitian_eigen(&self.chi);
        let mut out = Vec::new();
        for (k, &lam) in values.iter().enumerate() {
            if lam <= 0.0 {
                continue;
            }
            let mut op = Mat2::zeros();
            for m in 0..4 {
                op += pauli(m) * vectors[(m, k)];
            }
            out.push(op * C64::new(lam.sqrt(), 0.0));
        }
        out
    }

    /// Applies the process through its Kraus decomposition, ρ ↦ Σ K ρ K†.
    pub fn apply_kraus(&self, state: &TwoQubitState, which: Qubit) -> TwoQubitState {
        let rho = state.matrix();
        let mut out = Mat4::zeros();
        for k in self.kraus_operators() {
            let big = embed(&k, which);
            out += big * rho * big.adjoint();
        }
        TwoQubitState::from_raw(out)
    }

    /// Same process acting in a frame rotated by θ about z.
    pub fn in_frame(&self, theta: f64) -> FramedProcess {
        FramedProcess {
            inner: self.clone(),
            theta,
        }
    }
}

/// A process sandwiched by frame rotations:
/// ρ ↦ U_z(−θ) E(U_z(θ) ρ U_z(−θ)) U_z(θ).
#[derive(Clone, Debug, PartialEq)]
pub struct FramedProcess {
    inner: Process1Q,
    theta: f64,
}

impl FramedProcess {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn inner(&self) -> &Process1Q {
        &self.inner
    }

    pub fn apply(&self, state: &TwoQubitState, which: Qubit) -> TwoQubitState {
        let u = embed(&z_rotation(self.theta), which);
        let rotated = state.conjugated(&u);
        let acted = self.inner.apply(&rotated, which);
        acted.conjugated(&u.adjoint())
    }

    /// χ matrix of the framed channel, obtained by expanding U†σ_mU in the
    /// Pauli basis.
    pub fn effective(&self) -> Process1Q {
        let u = z_rotation(self.theta);
        let mut c = Matrix4::<C64>::zeros();
        for m in 0..4 {
            let rotated = u.adjoint() * pauli(m) * u;
            for k in 0..4 {
                c[(m, k)] = (pauli(k) * rotated).trace() * C64::new(0.5, 0.0);
            }
        }
        Process1Q::from_chi_unchecked(c.transpose() * self.inner.chi * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{chi_attenuation, chi_dephasing, chi_microwave_half_pi};

    fn sample_state() -> TwoQubitState {
        let a = [
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.4),
            C64::new(0.5, -0.3),
            C64::new(0.1, 0.6),
        ];
        TwoQubitState::pure(a).unwrap()
    }

    #[test]
    fn identity_leaves_state_unchanged() {
        let s = sample_state();
        for q in [Qubit::Control, Qubit::Target] {
            assert!(Process1Q::identity().apply(&s, q).max_abs_diff(&s) < 1e-15);
        }
    }

    #[test]
    fn attenuation_scales_trace() {
        let s = TwoQubitState::basis(3);
        let out = chi_attenuation(0.01).unwrap().apply(&s, Qubit::Control);
        assert!((out.trace() - 0.99).abs() < 1e-15);
    }

    #[test]
    fn dephasing_bell_overlap() {
        let b = TwoQubitState::phi_plus();
        let out = chi_dephasing(0.1).unwrap().apply(&b, Qubit::Control);
        let f = crate::process::uhlmann_fidelity(&out, &b).unwrap();
        assert!((f - 0.9).abs() < 1e-12);
    }

    #[test]
    fn frame_zero_and_two_pi_match_bare() {
        let p = chi_microwave_half_pi(0.1).unwrap();
        let s = sample_state();
        let bare = p.apply(&s, Qubit::Target);
        assert!(p.in_frame(0.0).apply(&s, Qubit::Target).max_abs_diff(&bare) < 1e-15);
        let tau = 2.0 * std::f64::consts::PI;
        assert!(p.in_frame(tau).apply(&s, Qubit::Target).max_abs_diff(&bare) < 1e-12);
    }

    #[test]
    fn opposite_frames_undo_each_other() {
        let p = chi_microwave_half_pi(0.0).unwrap();
        let s = sample_state();
        let once = p.in_frame(0.0).apply(&s, Qubit::Control);
        let back = p.in_frame(std::f64::consts::PI).apply(&once, Qubit::Control);
        assert!(back.max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn effective_chi_matches_sandwich() {
        let p = chi_microwave_half_pi(0.07).unwrap();
        let s = sample_state();
        for theta in [0.3, 1.2, -2.0] {
            let framed = p.in_frame(theta);
            let a = framed.apply(&s, Qubit::Control);
            let b = framed.effective().apply(&s, Qubit::Control);
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn kraus_route_matches_pauli_route() {
        let p = chi_microwave_half_pi(0.2).unwrap();
        let s = sample_state();
        for q in [Qubit::Control, Qubit::Target] {
            assert!(p.apply(&s, q).max_abs_diff(&p.apply_kraus(&s, q)) < 1e-12);
        }
    }

    #[test]
    fn rejects_non_psd_chi() {
        let mut chi = Matrix4::zeros();
        chi[(0, 0)] = C64::new(0.5, 0.0);
        chi[(3, 3)] = C64::new(-0.1, 0.0);
        assert!(Process1Q::new(chi).is_err());
    }
}
