use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::{Error, Result};

/// y ≈ offset + amplitude · cos(h·x − phase).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SinusoidFit {
    pub harmonic: u32,
    pub offset: f64,
    pub amplitude: f64,
    pub phase: f64,
    /// Root-mean-square residual.
    pub rms_residual: f64,
}

impl SinusoidFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.offset + self.amplitude * (self.harmonic as f64 * x - self.phase).cos()
    }
}

/// Linear least squares on {1, cos hx, sin hx}.
pub fn fit_sinusoid(x: &[f64], y: &[f64], harmonic: u32) -> Result<SinusoidFit> {
    if x.len() != y.len() {
        return Err(Error::Validation(format!(
            "fit: {} abscissae but {} values",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::Validation(format!("fit: need at least 3 samples, got {}", x.len())));
    }
    if harmonic == 0 {
        return Err(Error::Validation("fit: harmonic must be positive".into()));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Validation("fit: non-finite sample".into()));
    }
    let h = harmonic as f64;
    let a = DMatrix::from_fn(x.len(), 3, |i, j| match j {
        0 => 1.0,
        1 => (h * x[i]).cos(),
        _ => (h * x[i]).sin(),
    });
    let b = DVector::from_column_slice(y);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.min() <= 1e-10 * smax {
        return Err(Error::Numerical("fit: sample phases do not resolve the harmonic".into()));
    }
    let coef = svd.solve(&b, 1e-12 * smax).map_err(|e| Error::Numerical(format!("fit: {e}")))?;
    let resid = &a * &coef - &b;
    Ok(SinusoidFit {
        harmonic,
        offset: coef[0],
        amplitude: coef[1].hypot(coef[2]),
        phase: coef[2].atan2(coef[1]),
        rms_residual: (resid.norm_squared() / x.len() as f64).sqrt(),
    })
}

/// Parity oscillation fit at twice the analysis angle.
pub fn fit_parity(phi: &[f64], parity: &[f64]) -> Result<SinusoidFit> {
    if phi.len() < 8 {
        return Err(Error::Validation(format!(
            "parity fit needs at least 8 samples, got {}",
            phi.len()
        )));
    }
    fit_sinusoid(phi, parity, 2)
}
