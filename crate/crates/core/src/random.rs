//! Seeded random sampling of states, unitaries and weights.
//!
//! Every generator is a ChaCha stream derived from `(seed, stream)`, so
//! independent restarts or samples can be drawn in any order and still
//! reproduce bit-for-bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::linalg::{c, CMatrix, CVector, C64};
use crate::pure_gme::ProductState;
use crate::state::{DensityMatrix, PureState, SubsystemSignature};

pub type StateRng = ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im)
}

/// Haar-uniform unit vector (normalized complex Gaussian).
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| complex_gaussian(rng));
        let n = v.norm();
        if n > 1e-300 {
            return v.unscale(n);
        }
    }
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s
/// diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = ginibre(rng, n, n).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// First `cols` columns of a Haar unitary.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    haar_unitary(rng, rows).columns(0, cols).into_owned()
}

/// Local unitary `U₁ ⊗ … ⊗ Uₙ` with Haar-random factors.
pub fn local_unitary<R: Rng + ?Sized>(rng: &mut R, sig: &SubsystemSignature) -> CMatrix {
    let mut u = CMatrix::identity(1, 1);
    for &d in sig.dims() {
        u = crate::linalg::kron(&u, &haar_unitary(rng, d));
    }
    u
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, sig: &SubsystemSignature) -> PureState {
    PureState::new(haar_vector(rng, sig.total_dim()), sig.clone()).expect("unit vector")
}

pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R, sig: &SubsystemSignature) -> ProductState {
    ProductState::new(sig.dims().iter().map(|&d| haar_vector(rng, d)).collect())
        .expect("unit factors")
}

/// Random density matrix of the given rank: `GG†/Tr(GG†)` with `G` a
/// `D × rank` Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &SubsystemSignature,
    rank: usize,
) -> DensityMatrix {
    let d = sig.total_dim();
    let g = ginibre(rng, d, rank.clamp(1, d));
    let m = &g * g.adjoint();
    let tr: f64 = (0..d).map(|i| m[(i, i)].re).sum();
    DensityMatrix::new(m.unscale(tr), sig.clone()).expect("Wishart matrices are valid states")
}

/// GUE-style random Hermitian matrix.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = ginibre(rng, n, n);
    (&g + g.adjoint()).scale(0.5)
}

/// Uniform point on the probability simplex.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}
