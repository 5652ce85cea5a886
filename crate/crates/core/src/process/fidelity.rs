use super::linalg::{hermitian_defect, hermitian_eigen};
use super::{Mat4, TwoQubitState, C64, HERMITIAN_TOL, PSD_TOL};
use crate::{Error, Result};

/// Square root of a Hermitian PSD matrix by eigendecomposition. Eigenvalues in
/// (−1e-10, 0) are clamped to zero; more negative ones are rejected.
pub fn hermitian_sqrt(m: &Mat4) -> Result<Mat4> {
    let defect = hermitian_defect(m);
    if !(defect <= HERMITIAN_TOL) {
        return Err(Error::Validation(format!("matrix is not Hermitian (defect {defect:.3e})")));
    }
    let (values, vectors) = hermitian_eigen(m);
    if values[0] < -PSD_TOL {
        return Err(Error::Validation(format!(
            "matrix is not positive semidefinite (min eigenvalue {:.3e})",
            values[0]
        )));
    }
    let mut root = Mat4::zeros();
    for (k, &lam) in values.iter().enumerate() {
        let v = vectors.column(k);
        root += v * v.adjoint() * C64::new(lam.max(0.0).sqrt(), 0.0);
    }
    Ok(root)
}

/// Uhlmann fidelity (Tr √(√σ ρ √σ))².
///
/// Evaluated as the squared nuclear norm of √ρ·√σ, which equals the trace
/// above and stays accurate when the inner product matrix is rank deficient.
/// `rho_out` is not renormalised.
pub fn uhlmann_fidelity(rho_out: &TwoQubitState, rho_ref: &TwoQubitState) -> Result<f64> {
    let a = hermitian_sqrt(rho_out.matrix())?;
    let b = hermitian_sqrt(rho_ref.matrix())?;
    let nuclear: f64 = (a * b).singular_values().iter().sum();
    Ok(nuclear * nuclear)
}
