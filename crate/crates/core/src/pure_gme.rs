//! Maximal product-state overlap `Λ_max` of pure states, and the pure-state
//! fidelity of separability `F_sep = Λ_max²` and geometric measure
//! `E_Ge = 1 − Λ_max²` derived from it.
//!
//! Two routes are provided. Bipartite states (or any state viewed across a
//! cut) use the largest Schmidt coefficient, which is exact. General
//! multipartite states use alternating ascent over the factors: all factors
//! but one are held fixed, the state is contracted against them, and the free
//! factor is replaced by the normalized contraction. Every such update
//! maximizes the overlap in that factor, so the overlap sequence of a run is
//! nondecreasing. Random restarts guard against poor stationary points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_error, inner, kron_vec, unravel, CMatrix, CVector, HermitianEigen, C64, ZERO};
use crate::random::{haar_vector, stream_rng};
use crate::state::{schmidt_decompose, Bipartition, PureState, SubsystemSignature, STATE_TOL};

/// Tensor product of one unit vector per subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    factors: Vec<CVector>,
}

impl ProductState {
    pub fn new(factors: Vec<CVector>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product state needs at least one factor".into()));
        }
        for (k, f) in factors.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::InvalidArgument(format!("factor {k} is empty")));
            }
            let n = f.norm();
            if (n - 1.0).abs() > STATE_TOL {
                return Err(Error::Norm(n));
            }
        }
        Ok(Self { factors })
    }

    /// Normalizes every factor; fails on a zero factor.
    pub fn normalized(factors: Vec<CVector>) -> Result<Self> {
        let factors = factors
            .into_iter()
            .map(|f| {
                let n = f.norm();
                if n == 0.0 || !n.is_finite() {
                    Err(Error::Norm(n))
                } else {
                    Ok(f.unscale(n))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    pub fn factors(&self) -> &[CVector] {
        &self.factors
    }

    pub fn signature(&self) -> SubsystemSignature {
        SubsystemSignature::new(self.factors.iter().map(|f| f.len()).collect::<Vec<_>>())
            .expect("factors are nonempty")
    }

    pub fn amplitudes(&self) -> CVector {
        let mut it = self.factors.iter();
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, f| kron_vec(&acc, f))
    }

    pub fn to_state(&self) -> PureState {
        PureState::normalized(self.amplitudes(), self.signature()).expect("unit factors")
    }

    /// `⟨φ|ψ⟩` for a state with the same signature.
    pub fn overlap(&self, psi: &PureState) -> Result<C64> {
        let sig = self.signature();
        if &sig != psi.signature() {
            return Err(Error::SignatureMismatch {
                left: sig.dims().to_vec(),
                right: psi.signature().dims().to_vec(),
            });
        }
        Ok(inner(&self.amplitudes(), psi.amplitudes()))
    }
}

/// Knobs for the alternating-ascent solver.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaOptions {
    pub restarts: usize,
    /// Maximum number of full sweeps per restart.
    pub max_iterations: usize,
    /// Convergence threshold on the overlap change between sweeps.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iterations: 1000,
            tolerance: 1e-10,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LambdaResult {
    pub lambda_max: f64,
    pub argmax: ProductState,
    pub iterations: usize,
    pub restarts_used: usize,
    pub converged: bool,
}

impl LambdaResult {
    pub fn f_sep(&self) -> f64 {
        self.lambda_max * self.lambda_max
    }

    pub fn e_ge(&self) -> f64 {
        1.0 - self.f_sep()
    }
}

/// A scalar result from a stochastic solver together with its convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub converged: bool,
}

/// Outcome of one alternating-ascent run.
#[derive(Debug, Clone)]
pub struct Ascent {
    pub overlap: f64,
    pub factors: Vec<CVector>,
    pub sweeps: usize,
    pub converged: bool,
    /// Overlap after every single-factor update, starting with the initial
    /// overlap. Empty unless recording was requested.
    pub history: Vec<f64>,
}

/// Precomputed digit table for contracting a state against product factors.
pub(crate) struct Contraction {
    dims: Vec<usize>,
    digits: Vec<Vec<usize>>,
}

impl Contraction {
    pub(crate) fn new(dims: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        let mut digits = Vec::with_capacity(total);
        let mut buf = vec![0; dims.len()];
        for i in 0..total {
            unravel(i, dims, &mut buf);
            digits.push(buf.clone());
        }
        Self {
            dims: dims.to_vec(),
            digits,
        }
    }

    /// `v[i] = Σ ψ[…i…] Π_{l≠k} conj(φ_l[i_l])`.
    fn contract_except(&self, amps: &CVector, factors: &[CVector], k: usize) -> CVector {
        let mut v = CVector::zeros(self.dims[k]);
        for (idx, amp) in amps.iter().enumerate() {
            if *amp == ZERO {
                continue;
            }
            let d = &self.digits[idx];
            let mut w = *amp;
            for (l, f) in factors.iter().enumerate() {
                if l != k {
                    w *= f[d[l]].conj();
                }
            }
            v[d[k]] += w;
        }
        v
    }

    fn overlap(&self, amps: &CVector, factors: &[CVector]) -> f64 {
        let mut s = ZERO;
        for (idx, amp) in amps.iter().enumerate() {
            let d = &self.digits[idx];
            let mut w = *amp;
            for (l, f) in factors.iter().enumerate() {
                w *= f[d[l]].conj();
            }
            s += w;
        }
        s.norm()
    }

    /// Alternating ascent from `factors`, sweeping parties in order.
    pub(crate) fn ascend(
        &self,
        amps: &CVector,
        mut factors: Vec<CVector>,
        max_sweeps: usize,
        tolerance: f64,
        record: bool,
    ) -> Ascent {
        let mut current = self.overlap(amps, &factors);
        let mut history = Vec::new();
        if record {
            history.push(current);
        }
        let mut sweeps = 0;
        let mut converged = false;
        while sweeps < max_sweeps {
            let before = current;
            for k in 0..factors.len() {
                let v = self.contract_except(amps, &factors, k);
                let n = v.norm();
                // a zero contraction leaves the factor where it is
                if n > 0.0 {
                    factors[k] = v.unscale(n);
                    current = n;
                }
                if record {
                    history.push(current);
                }
            }
            sweeps += 1;
            if (current - before).abs() < tolerance {
                converged = true;
                break;
            }
        }
        Ascent {
            overlap: current,
            factors,
            sweeps,
            converged,
            history,
        }
    }
}

/// Runs alternating ascent on `psi` from the given starting product state.
pub fn ascend_from(
    psi: &PureState,
    start: &ProductState,
    max_sweeps: usize,
    tolerance: f64,
    record: bool,
) -> Result<Ascent> {
    let sig = start.signature();
    if &sig != psi.signature() {
        return Err(Error::SignatureMismatch {
            left: sig.dims().to_vec(),
            right: psi.signature().dims().to_vec(),
        });
    }
    let c = Contraction::new(sig.dims());
    Ok(c.ascend(psi.amplitudes(), start.factors.clone(), max_sweeps, tolerance, record))
}

/// Computational-basis product state on which `psi` has its largest amplitude.
fn best_basis_start(psi: &PureState) -> Vec<CVector> {
    let dims = psi.signature().dims();
    let best = crate::linalg::argmax_modulus(psi.amplitudes().iter());
    let mut digits = vec![0; dims.len()];
    unravel(best, dims, &mut digits);
    dims.iter()
        .zip(&digits)
        .map(|(&d, &i)| {
            let mut v = CVector::zeros(d);
            v[i] = C64::new(1.0, 0.0);
            v
        })
        .collect()
}

/// Multi-restart alternating ascent without the bipartite shortcut.
///
/// Restart 0 starts from the computational-basis product state carrying the
/// largest amplitude, which pins the result above `max|ψᵢ| ≥ 1/√D`. The
/// remaining restarts start from Haar-random factors drawn from independent
/// streams of the seeded generator. Restarts run in parallel; the best value
/// wins and ties go to the lowest restart index.
pub fn lambda_max_alternating(psi: &PureState, opts: &LambdaOptions) -> LambdaResult {
    let dims = psi.signature().dims().to_vec();
    let contraction = Contraction::new(&dims);
    let restarts = opts.restarts.max(1);
    let runs: Vec<Ascent> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                best_basis_start(psi)
            } else {
                let mut rng = stream_rng(opts.seed, r as u64);
                dims.iter().map(|&d| haar_vector(&mut rng, d)).collect()
            };
            contraction.ascend(
                psi.amplitudes(),
                start,
                opts.max_iterations,
                opts.tolerance,
                false,
            )
        })
        .collect();

    let converged = runs.iter().any(|a| a.converged);
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.overlap > runs[best].overlap {
            best = i;
        }
    }
    let run = runs.into_iter().nth(best).expect("at least one restart");
    LambdaResult {
        lambda_max: run.overlap.min(1.0),
        argmax: ProductState::normalized(run.factors).expect("ascent keeps unit factors"),
        iterations: run.sweeps,
        restarts_used: restarts,
        converged,
    }
}

/// `Λ_max(ψ)`. Two-party states go through the Schmidt decomposition; other
/// states use [`lambda_max_alternating`]. The value is a lower bound on the
/// true maximum for three or more parties.
pub fn lambda_max(psi: &PureState, opts: &LambdaOptions) -> LambdaResult {
    if psi.signature().parties() == 2 {
        return lambda_max_bipartite(psi, &Bipartition::split_at(1, 2))
            .expect("natural split of a two-party state is a valid cut");
    }
    lambda_max_alternating(psi, opts)
}

/// Largest Schmidt coefficient across `cut`; the maximizer is the product of
/// the leading Schmidt vectors. For cuts grouping several subsystems the two
/// argmax factors live on the grouped left and right spaces.
pub fn lambda_max_bipartite(psi: &PureState, cut: &Bipartition) -> Result<LambdaResult> {
    let form = schmidt_decompose(psi, cut)?;
    let left = form.left_basis[0].clone();
    let right = form.right_basis[0].clone();
    Ok(LambdaResult {
        lambda_max: form.largest().min(1.0),
        argmax: ProductState::normalized(vec![left, right])?,
        iterations: 0,
        restarts_used: 0,
        converged: true,
    })
}

/// `F_sep(ψ) = Λ_max²`.
pub fn f_sep_pure(psi: &PureState, opts: &LambdaOptions) -> Estimate {
    let r = lambda_max(psi, opts);
    Estimate {
        value: r.f_sep(),
        converged: r.converged,
    }
}

/// `E_Ge(ψ) = 1 − Λ_max²`.
pub fn e_ge_pure(psi: &PureState, opts: &LambdaOptions) -> Estimate {
    let r = lambda_max(psi, opts);
    Estimate {
        value: r.e_ge(),
        converged: r.converged,
    }
}

/// Returns `(|⟨a|H|b⟩|, maxᵢ|λᵢ(H)|)`; the first never exceeds the second.
pub fn hermitian_overlap_bound(h: &CMatrix, a: &CVector, b: &CVector) -> Result<(f64, f64)> {
    if h.nrows() != h.ncols() || a.len() != h.nrows() || b.len() != h.nrows() {
        return Err(Error::Dimension {
            expected: h.nrows(),
            found: a.len().max(b.len()),
        });
    }
    let herr = hermiticity_error(h);
    if herr > STATE_TOL {
        return Err(Error::NotHermitian(herr));
    }
    for v in [a, b] {
        let n = v.norm();
        if (n - 1.0).abs() > STATE_TOL {
            return Err(Error::Norm(n));
        }
    }
    let value = inner(a, &(h * b)).norm();
    let eig = HermitianEigen::new(h);
    let bound = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok((value, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::state::tensor_product;

    fn ghz3() -> PureState {
        let mut a = vec![0.0; 8];
        a[0] = 1.0;
        a[7] = 1.0;
        PureState::from_real(&a, &[2, 2, 2]).unwrap()
    }

    fn w3() -> PureState {
        let mut a = vec![0.0; 8];
        a[1] = 1.0;
        a[2] = 1.0;
        a[4] = 1.0;
        PureState::from_real(&a, &[2, 2, 2]).unwrap()
    }

    #[test]
    fn product_input_gives_one() {
        let p = tensor_product(
            &tensor_product(
                &PureState::from_real(&[1.0, 2.0], &[2]).unwrap(),
                &PureState::from_real(&[0.0, 1.0, 1.0], &[3]).unwrap(),
            ),
            &PureState::from_real(&[3.0, 1.0], &[2]).unwrap(),
        );
        let r = lambda_max(&p, &LambdaOptions::default());
        assert!((r.lambda_max - 1.0).abs() < 1e-9);
        assert!(r.converged);
    }

    #[test]
    fn bell_value_and_argmax() {
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0], &[2, 2]).unwrap();
        let r = lambda_max(&bell, &LambdaOptions::default());
        assert!((r.lambda_max - 0.5f64.sqrt()).abs() < 1e-12);
        let amps = r.argmax.amplitudes();
        assert!((amps[0].norm() - 1.0).abs() < 1e-12, "argmax {amps:?}");
        assert!((r.argmax.overlap(&bell).unwrap().norm() - r.lambda_max).abs() < 1e-9);
    }

    #[test]
    fn unequal_schmidt_state() {
        let psi = PureState::from_real(&[0.9f64.sqrt(), 0.0, 0.0, 0.1f64.sqrt()], &[2, 2]).unwrap();
        let r = lambda_max_bipartite(&psi, &Bipartition::split_at(1, 2)).unwrap();
        assert!((r.lambda_max - 0.9f64.sqrt()).abs() < 1e-12);
        assert!((f_sep_pure(&psi, &LambdaOptions::default()).value - 0.9).abs() < 1e-12);
    }

    #[test]
    fn ghz_and_w() {
        let opts = LambdaOptions::default();
        let g = lambda_max(&ghz3(), &opts);
        assert!((g.lambda_max - 0.5f64.sqrt()).abs() < 1e-6);
        assert!((g.argmax.overlap(&ghz3()).unwrap().norm() - g.lambda_max).abs() < 1e-9);
        let w = lambda_max(&w3(), &opts);
        assert!((w.lambda_max - 2.0 / 3.0).abs() < 1e-6);
        assert!((f_sep_pure(&w3(), &opts).value - 4.0 / 9.0).abs() < 1e-6);
        assert!((e_ge_pure(&ghz3(), &opts).value - 0.5).abs() < 1e-6);
    }

    #[test]
    fn f_sep_and_e_ge_sum_to_one() {
        let r = lambda_max(&w3(), &LambdaOptions::default());
        assert_eq!(r.f_sep() + r.e_ge(), 1.0);
    }

    #[test]
    fn history_is_monotone() {
        let start = ProductState::normalized(vec![
            CVector::from_vec(vec![c(0.3, 0.1), c(0.2, -0.5)]),
            CVector::from_vec(vec![c(-0.7, 0.0), c(0.1, 0.4)]),
            CVector::from_vec(vec![c(0.5, 0.5), c(0.5, -0.1)]),
        ])
        .unwrap();
        let run = ascend_from(&w3(), &start, 200, 1e-12, true).unwrap();
        for pair in run.history.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12);
        }
    }

    #[test]
    fn overlap_bound_saturates_on_top_eigenvector() {
        let h = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-3.0, 0.0)]);
        let eig = HermitianEigen::new(&h);
        // |λ| is largest for the most negative eigenvalue here
        let top: CVector = eig.vectors.column(1).into_owned();
        let (v, b) = hermitian_overlap_bound(&h, &top, &top).unwrap();
        assert!((v - b).abs() < 1e-12);

        let id = CMatrix::identity(2, 2);
        let a = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let bb = CVector::from_vec(vec![c(1.0, 0.0), ZERO]);
        let (v, b) = hermitian_overlap_bound(&id, &a, &bb).unwrap();
        assert!((v - 0.6).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_bound_rejects_non_hermitian() {
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), ZERO, c(1.0, 0.0)]);
        let a = CVector::from_vec(vec![c(1.0, 0.0), ZERO]);
        assert!(matches!(
            hermitian_overlap_bound(&h, &a, &a),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn product_state_validation() {
        assert!(ProductState::new(vec![CVector::from_vec(vec![c(0.5, 0.0)])]).is_err());
        assert!(ProductState::normalized(vec![CVector::zeros(2)]).is_err());
    }
}
