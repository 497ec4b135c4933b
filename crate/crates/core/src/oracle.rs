//! Brute-force reference values for cross-checking the solvers.
//!
//! Nothing here calls into the optimized solvers: product-state refinement is
//! reimplemented with plain stride arithmetic, and separable states are drawn
//! at random rather than optimized. Both oracles return lower bounds on the
//! quantities they estimate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fidelity::fidelity;
use crate::linalg::{CVector, C64, ZERO};
use crate::random::{haar_vector, random_simplex, stream_rng, StateRng};
use crate::state::{DensityMatrix, PureState};
use crate::pure_gme::ProductState;

/// Sweeps of local refinement applied to every sampled product state.
pub const REFINE_SWEEPS: usize = 50;

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// `|⟨φ|ψ⟩|` after refining `φ` by single-factor updates.
fn refine(amps: &CVector, dims: &[usize], factors: &mut [CVector], sweeps: usize) -> f64 {
    let st = strides(dims);
    let n = dims.len();
    let mut best = 0.0;
    for _ in 0..sweeps {
        for k in 0..n {
            let mut v = CVector::zeros(dims[k]);
            for (idx, a) in amps.iter().enumerate() {
                let mut w: C64 = *a;
                for l in 0..n {
                    if l != k {
                        w *= factors[l][(idx / st[l]) % dims[l]].conj();
                    }
                }
                v[(idx / st[k]) % dims[k]] += w;
            }
            let norm = v.norm();
            if norm > 0.0 {
                factors[k] = v.unscale(norm);
            }
        }
    }
    // final overlap recomputed from scratch
    let mut s = ZERO;
    for (idx, a) in amps.iter().enumerate() {
        let mut w: C64 = *a;
        for l in 0..n {
            w *= factors[l][(idx / st[l]) % dims[l]].conj();
        }
        s += w;
    }
    if s.norm() > best {
        best = s.norm();
    }
    best
}

fn sample_factors(rng: &mut StateRng, dims: &[usize]) -> Vec<CVector> {
    dims.iter().map(|&d| haar_vector(rng, d)).collect()
}

/// Maximum of `|⟨φ|ψ⟩|` over `samples` Haar-random product states, each
/// refined by [`REFINE_SWEEPS`] sweeps. Sample `i` is drawn from stream `i`
/// of `seed`, so larger budgets extend smaller ones.
pub fn brute_lambda_max(psi: &PureState, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let dims = psi.signature().dims().to_vec();
    let amps = psi.amplitudes();
    let best = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let mut factors = sample_factors(&mut rng, &dims);
            refine(amps, &dims, &mut factors, REFINE_SWEEPS)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best.min(1.0))
}

/// One random separable state with `branches` Haar-random product branches
/// and uniformly random simplex weights.
pub fn random_separable(rng: &mut StateRng, dims: &[usize], branches: usize) -> Result<(Vec<f64>, Vec<ProductState>)> {
    let weights = random_simplex(rng, branches);
    let products = (0..branches)
        .map(|_| ProductState::new(sample_factors(rng, dims)))
        .collect::<Result<Vec<_>>>()?;
    Ok((weights, products))
}

/// Maximum of `F(ρ, σ)` over `ensembles` random separable `σ`, each a
/// mixture of `branches` product states. Never exceeds `F_sep(ρ)`.
pub fn brute_f_sep_lower(rho: &DensityMatrix, ensembles: usize, branches: usize, seed: u64) -> Result<f64> {
    if ensembles == 0 || branches == 0 {
        return Err(Error::InvalidArgument(
            "ensembles and branches must be at least 1".into(),
        ));
    }
    let dims = rho.signature().dims().to_vec();
    let values = (0..ensembles)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let (weights, products) = random_separable(&mut rng, &dims, branches)?;
            let states: Vec<PureState> = products.iter().map(|p| p.to_state()).collect();
            let sigma = DensityMatrix::mixture(&weights, &states)?;
            fidelity(rho, &sigma)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{tensor_product, SubsystemSignature};

    #[test]
    fn product_state_is_found() {
        let p = tensor_product(
            &PureState::from_real(&[1.0, 2.0], &[2]).unwrap(),
            &PureState::from_real(&[0.5, -1.0, 2.0], &[3]).unwrap(),
        );
        assert!((brute_lambda_max(&p, 4, 1).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bell_within_budget() {
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0], &[2, 2]).unwrap();
        let v = brute_lambda_max(&bell, 10_000, 3).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-4);
    }

    #[test]
    fn zero_budget_is_an_error() {
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0], &[2, 2]).unwrap();
        assert!(brute_lambda_max(&bell, 0, 0).is_err());
        assert!(brute_f_sep_lower(&bell.to_density(), 0, 1, 0).is_err());
    }

    #[test]
    fn bell_floor_stays_below_half() {
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0], &[2, 2]).unwrap();
        let v = brute_f_sep_lower(&bell.to_density(), 2000, 4, 5).unwrap();
        assert!(v <= 0.5 + 1e-9);
        assert!(v > 0.3);
    }

    #[test]
    fn maximally_mixed_floor() {
        let mm = DensityMatrix::maximally_mixed(SubsystemSignature::new(vec![2, 2]).unwrap());
        let v = brute_f_sep_lower(&mm, 10_000, 8, 6).unwrap();
        assert!(v >= 0.95, "{v}");
    }
}
