//! Pauli-basis process algebra on a control/target qubit pair.
//!
//! Basis order for states is |00⟩, |01⟩, |10⟩, |11⟩ with the control qubit
//! first. Pauli labels are indexed 0..4 as I, X, Y, Z.

mod fidelity;
pub(crate) mod linalg;
mod ops;
mod pauli;
mod single;
mod state;
mod two;

pub use fidelity::{hermitian_sqrt, uhlmann_fidelity};
pub use ops::{compose, Operation};
pub use pauli::{kron, pauli, pauli_pair, PAULI_LABELS};
pub use single::{FramedProcess, Process1Q};
pub use state::{Qubit, TwoQubitState};
pub use two::Process2Q;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;

/// Elementwise tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted as numerical noise in PSD checks.
pub const PSD_TOL: f64 = 1e-10;
/// Slack allowed on trace upper bounds.
pub const TRACE_TOL: f64 = 1e-12;

/// z-rotation U_z(θ) = diag(1, e^{iθ}).
pub fn z_rotation(theta: f64) -> Mat2 {
    Mat2::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, theta),
    )
}
