use std::sync::LazyLock;

use super::{Mat2, Mat4, C64};

pub const PAULI_LABELS: [&str; 4] = ["I", "X", "Y", "Z"];

static PAULIS: LazyLock<[Mat2; 4]> = LazyLock::new(|| {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Mat2::new(l, o, o, l),
        Mat2::new(o, l, l, o),
        Mat2::new(o, -i, i, o),
        Mat2::new(l, o, o, -l),
    ]
});

static PAULI_PAIRS: LazyLock<Vec<Mat4>> = LazyLock::new(|| {
    let mut out = Vec::with_capacity(16);
    for m in 0..4 {
        for r in 0..4 {
            out.push(kron(&PAULIS[m], &PAULIS[r]));
        }
    }
    out
});

/// Single-qubit Pauli matrix by index (0=I, 1=X, 2=Y, 3=Z).
pub fn pauli(index: usize) -> Mat2 {
    PAULIS[index]
}

/// σ_m ⊗ σ_r with m on the control and r on the target.
pub fn pauli_pair(m: usize, r: usize) -> Mat4 {
    PAULI_PAIRS[4 * m + r]
}

pub(crate) fn pauli_pairs() -> &'static [Mat4] {
    &PAULI_PAIRS
}

/// Kronecker product a ⊗ b, `a` acting on the control.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}
