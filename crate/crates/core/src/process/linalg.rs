//! Small Hermitian helpers on top of nalgebra.

use nalgebra::{ComplexField, DMatrix, Dim, OMatrix, SymmetricEigen, DefaultAllocator};
use nalgebra::allocator::Allocator;
use nalgebra::DimSub;
use nalgebra::U1;

use super::C64;

/// Largest elementwise deviation |a_ij − conj(a_ji)|.
pub fn hermitian_defect<D: Dim>(m: &OMatrix<C64, D, D>) -> f64
where
    DefaultAllocator: Allocator<D, D>,
{
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Hermitian part (A + A†)/2, used before eigendecomposition so that rounding
/// asymmetry does not leak into the eigenvalues.
pub fn symmetrize<D: Dim>(m: &OMatrix<C64, D, D>) -> OMatrix<C64, D, D>
where
    DefaultAllocator: Allocator<D, D>,
{
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Eigenvalues (ascending) and eigenvectors (columns, same order).
pub fn hermitian_eigen<D>(m: &OMatrix<C64, D, D>) -> (Vec<f64>, OMatrix<C64, D, D>)
where
    D: DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<D> + Allocator<<D as DimSub<U1>>::Output>,
{
    let eig = SymmetricEigen::new(symmetrize(m));
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i].real()).collect();
    let mut vectors = eig.eigenvectors.clone();
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn min_eigenvalue<D>(m: &OMatrix<C64, D, D>) -> f64
where
    D: DimSub<U1>,
    DefaultAllocator: Allocator<D, D> + Allocator<D> + Allocator<<D as DimSub<U1>>::Output>,
{
    hermitian_eigen(m).0[0]
}

/// Real symmetric eigendecomposition used by the quadrature rules.
pub fn real_symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = eig.eigenvectors.clone();
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}
