//! Dense complex linear algebra helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// decreasing order. Eigenvectors are the matching columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(m: &CMatrix) -> Self {
        let h = hermitian_part(m);
        let eig = h.symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        // stable: equal eigenvalues keep the solver's order
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Self { values, vectors }
    }

    /// Rebuilds `V f(Λ) V†` from the spectrum.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            scaled.column_mut(j).scale_mut(s);
        }
        &scaled * self.vectors.adjoint()
    }
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entrywise modulus of `m - m†`.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn trace(m: &CMatrix) -> C64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

pub fn outer(a: &CVector) -> CMatrix {
    a * a.adjoint()
}

/// Largest entrywise deviation of `m†m` from the identity.
pub fn isometry_error(m: &CMatrix) -> f64 {
    let g = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// `exp(t·A)` for anti-Hermitian `A`, computed through the Hermitian matrix `iA`
/// so the result is unitary to working precision.
pub fn expm_anti_hermitian(a: &CMatrix, t: f64) -> CMatrix {
    let h = a.scale(1.0).map(|z| z * c(0.0, 1.0));
    let eig = HermitianEigen::new(&h);
    let n = eig.values.len();
    let mut scaled = eig.vectors.clone();
    for j in 0..n {
        // exp(tA) = exp(-i t H) with H = iA
        let phase = C64::from_polar(1.0, -t * eig.values[j]);
        scaled.column_mut(j).scale_mut_complex(phase);
    }
    &scaled * eig.vectors.adjoint()
}

trait ScaleComplex {
    fn scale_mut_complex(&mut self, z: C64);
}

impl<S> ScaleComplex for nalgebra::Matrix<C64, nalgebra::Dyn, nalgebra::U1, S>
where
    S: nalgebra::StorageMut<C64, nalgebra::Dyn, nalgebra::U1>,
{
    fn scale_mut_complex(&mut self, z: C64) {
        for x in self.iter_mut() {
            *x *= z;
        }
    }
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Index of the entry with the largest modulus; the first one wins ties.
pub fn argmax_modulus<'a>(xs: impl IntoIterator<Item = &'a C64>) -> usize {
    let mut best = 0;
    let mut best_val = -1.0;
    for (i, z) in xs.into_iter().enumerate() {
        let v = z.norm();
        if v > best_val + 1e-15 {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Converts a flat index into mixed-radix digits (most significant first).
pub fn unravel(mut index: usize, dims: &[usize], digits: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

pub fn ravel(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_reconstructs() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, -2.0), c(0.0, 2.0), c(3.0, 0.0)],
        );
        let e = HermitianEigen::new(&m);
        assert!(e.values[0] >= e.values[1]);
        let back = e.map(|x| x);
        assert!(frobenius(&(back - &m)) < 1e-12);
    }

    #[test]
    fn expm_is_unitary() {
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.0, 0.3), c(1.0, 0.5), c(-0.2, 0.0),
                c(-1.0, 0.5), c(0.0, -0.7), c(0.4, 0.1),
                c(0.2, 0.0), c(-0.4, 0.1), c(0.0, 0.0),
            ],
        );
        let u = expm_anti_hermitian(&a, 0.8);
        assert!(isometry_error(&u) < 1e-12);
        // first-order check: (exp(tA) - I)/t -> A
        let t = 1e-6;
        let d = (expm_anti_hermitian(&a, t) - CMatrix::identity(3, 3)).scale(1.0 / t);
        assert!(frobenius(&(d - &a)) < 1e-5);
    }

    #[test]
    fn ravel_round_trip() {
        let dims = [2, 3, 4];
        let mut digits = [0; 3];
        for i in 0..24 {
            unravel(i, &dims, &mut digits);
            assert_eq!(ravel(&digits, &dims), i);
        }
    }
}
