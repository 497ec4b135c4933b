//! Quantum fidelity in the squared convention `F(ρ,σ) = (Tr √(√ρ σ √ρ))²`.
//!
//! Many texts call the square root of this quantity the fidelity; everything
//! in this crate uses the squared form.

use crate::error::Result;
use crate::linalg::{CMatrix, CVector, C64, ZERO};
use crate::state::{purify, DensityMatrix, PureState, RANK_CUTOFF};

/// Values below zero by at most this much are rounded up to zero.
const NEGATIVE_CLAMP: f64 = 1e-9;

fn clamp_unit(f: f64) -> f64 {
    if f < 0.0 && f > -NEGATIVE_CLAMP {
        0.0
    } else {
        f.clamp(0.0, 1.0)
    }
}

/// Columns `√λᵢ|eᵢ⟩` over the eigenvalues above [`RANK_CUTOFF`], so that
/// `ρ = X X†` on its support.
fn support_factor(rho: &DensityMatrix) -> CMatrix {
    let eig = rho.spectrum();
    let kept: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] > RANK_CUTOFF)
        .collect();
    let mut x = CMatrix::zeros(rho.dim(), kept.len().max(1));
    for (dst, &src) in kept.iter().enumerate() {
        x.set_column(dst, &(eig.vectors.column(src) * C64::from(eig.values[src].sqrt())));
    }
    x
}

/// Trace formula, evaluated as `‖Y†X‖²_*` with `ρ = XX†`, `σ = YY†`:
/// the singular values of `Y†X` are the square roots of the eigenvalues of
/// `√ρ σ √ρ`, so no square root of rounding noise is ever taken.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.ensure_same_signature(sigma.signature())?;
    let x = support_factor(rho);
    let y = support_factor(sigma);
    let tr: f64 = (y.adjoint() * x).singular_values().iter().sum();
    Ok(clamp_unit(tr * tr))
}

/// `⟨ψ|σ|ψ⟩`.
pub fn fidelity_pure(psi: &PureState, sigma: &DensityMatrix) -> Result<f64> {
    Ok(clamp_unit(sigma.expectation(psi)?))
}

/// Splits a purification amplitude vector into its ancilla blocks `|xᵢ⟩`,
/// zero-padded to `blocks` entries.
fn ancilla_blocks(amps: &CVector, ancilla: usize, system: usize, blocks: usize) -> Vec<CVector> {
    (0..blocks)
        .map(|i| {
            if i < ancilla {
                amps.rows(i * system, system).into_owned()
            } else {
                CVector::zeros(system)
            }
        })
        .collect()
}

/// Fidelity as the maximal squared overlap between a fixed purification of
/// `ρ` and purifications of `σ`.
///
/// With canonical purifications `|ψ⟩ = Σᵢ |i⟩|xᵢ⟩` and `|φ⟩ = Σⱼ |j⟩|yⱼ⟩` on a
/// common (zero-padded) ancilla, every purification of `σ` is `(U⊗I)|φ⟩` and
/// `⟨ψ|(U⊗I)|φ⟩ = Tr(U Kᵀ)` with `Kᵢⱼ = ⟨xᵢ|yⱼ⟩`. The maximizing unitary
/// comes from the polar decomposition of `Kᵀ`; the rotated purification is
/// built explicitly and its overlap with `|ψ⟩` returned.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.ensure_same_signature(sigma.signature())?;
    let d = rho.dim();
    let pr = purify(rho);
    let ps = purify(sigma);
    let anc = pr.ancilla_dim.max(ps.ancilla_dim);
    let xs = ancilla_blocks(pr.state.amplitudes(), pr.ancilla_dim, d, anc);
    let ys = ancilla_blocks(ps.state.amplitudes(), ps.ancilla_dim, d, anc);

    let k_t = CMatrix::from_fn(anc, anc, |j, i| xs[i].dotc(&ys[j]));
    let svd = k_t.svd(true, true);
    let w = svd.u.expect("left singular vectors requested");
    let v = svd.v_t.expect("right singular vectors requested").adjoint();
    let u = &v * w.adjoint();

    // (U⊗I)|φ⟩ = Σᵢ |i⟩ Σⱼ Uᵢⱼ |yⱼ⟩
    let mut overlap = ZERO;
    for (i, x) in xs.iter().enumerate() {
        let mut rotated = CVector::zeros(d);
        for (j, y) in ys.iter().enumerate() {
            rotated += y * u[(i, j)];
        }
        overlap += x.dotc(&rotated);
    }
    Ok(clamp_unit(overlap.norm_sqr()))
}
