//! Closed forms for two qubits, driven by the concurrence.

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_part, CMatrix, HermitianEigen, ZERO};
use crate::state::{DensityMatrix, RANK_CUTOFF};

const EIGEN_CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitReport {
    pub concurrence: f64,
    pub e_ge: f64,
    pub f_sep: f64,
    pub e_b: f64,
}

impl TwoQubitReport {
    pub fn from_concurrence(concurrence: f64) -> Self {
        let f_sep = f_sep_from_concurrence(concurrence);
        Self {
            concurrence,
            e_ge: 1.0 - f_sep,
            f_sep,
            e_b: bures_from_f_sep(f_sep),
        }
    }
}

fn check_signature(rho: &DensityMatrix) -> Result<()> {
    if rho.signature().dims() != [2, 2] {
        return Err(Error::Signature(format!(
            "two-qubit formulas need signature (2,2), got {}",
            rho.signature()
        )));
    }
    Ok(())
}

/// `σ_y ⊗ σ_y` in the computational basis.
fn spin_flip() -> CMatrix {
    let mut y = CMatrix::from_element(4, 4, ZERO);
    y[(0, 3)] = c(-1.0, 0.0);
    y[(1, 2)] = c(1.0, 0.0);
    y[(2, 1)] = c(1.0, 0.0);
    y[(3, 0)] = c(-1.0, 0.0);
    y
}

/// Concurrence `max(0, μ₁−μ₂−μ₃−μ₄)`, where `μᵢ` are the decreasing square
/// roots of the eigenvalues of `ρ ρ̃` and `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// The `μᵢ` are taken as the singular values of `τ = Xᵀ (σ_y⊗σ_y) X`, where
/// the columns of `X` are the subnormalized eigenvectors `√qₖ|eₖ⟩` of `ρ`
/// with `qₖ` above the rank cutoff. This avoids square roots of eigenvalues
/// that are zero up to rounding.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    check_signature(rho)?;
    let eig = rho.spectrum();
    let kept: Vec<usize> = (0..4).filter(|&i| eig.values[i] > RANK_CUTOFF).collect();
    let x = CMatrix::from_fn(4, kept.len(), |row, col| {
        let k = kept[col];
        eig.vectors[(row, k)] * eig.values[k].sqrt()
    });
    let tau = x.transpose() * spin_flip() * &x;
    let mut mu: Vec<f64> = tau.singular_values().iter().copied().collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    mu.resize(4, 0.0);
    let value = mu[0] - mu[1] - mu[2] - mu[3];
    Ok(value.clamp(0.0, 1.0))
}

/// Spectrum route: `μᵢ² = eig(√ρ ρ̃ √ρ)`, negative rounding above `-1e-10`
/// clamped to zero. Less accurate near rank deficiency than [`concurrence`]
/// but independent of it.
pub fn concurrence_spectral(rho: &DensityMatrix) -> Result<f64> {
    check_signature(rho)?;
    let y = spin_flip();
    let conj = rho.matrix().map(|z| z.conj());
    let flipped = &y * conj * &y;
    let s = rho.sqrt();
    let r = hermitian_part(&(&s * flipped * &s));
    let eig = HermitianEigen::new(&r);
    let mu: Vec<f64> = eig
        .values
        .iter()
        .map(|&v| if v > -EIGEN_CLAMP { v.max(0.0).sqrt() } else { 0.0 })
        .collect();
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).clamp(0.0, 1.0))
}

pub fn f_sep_from_concurrence(c: f64) -> f64 {
    (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0
}

pub fn e_ge_from_concurrence(c: f64) -> f64 {
    (1.0 - (1.0 - c * c).max(0.0).sqrt()) / 2.0
}

pub fn bures_from_f_sep(f_sep: f64) -> f64 {
    2.0 * (1.0 - f_sep.sqrt())
}

pub fn e_ge_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(e_ge_from_concurrence(concurrence(rho)?))
}

pub fn f_sep_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(f_sep_from_concurrence(concurrence(rho)?))
}

/// `E_B = 2 − 2√((1+√(1−C²))/2)`.
pub fn bures_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(bures_from_f_sep(f_sep_two_qubit(rho)?))
}

pub fn two_qubit_report(rho: &DensityMatrix) -> Result<TwoQubitReport> {
    Ok(TwoQubitReport::from_concurrence(concurrence(rho)?))
}
