//! Fidelity of separability of mixed states through pure-state
//! decompositions.
//!
//! `F_sep(ρ) = max Σᵢ pᵢ Λ_max²(ψᵢ)` over decompositions `ρ = Σᵢ pᵢ|ψᵢ⟩⟨ψᵢ|`.
//! Writing `ρ = Σₖ qₖ|eₖ⟩⟨eₖ|` (its support), every `m`-term decomposition
//! comes from an isometry `u` (`m × rank`, `u†u = 1`) through
//! `√pⱼ|ψⱼ⟩ = Σₖ uⱼₖ √qₖ|eₖ⟩`. The objective then reads
//! `G(u) = Σⱼ max_φ |⟨φ|wⱼ⟩|²` over unnormalized branch vectors `wⱼ`.
//!
//! The optimizer alternates two steps that never decrease `G`:
//!
//! 1. With `u` fixed, each branch gets its best product state (Schmidt vectors
//!    for two parties, warm-started alternating ascent otherwise).
//! 2. With the product states fixed, `u = V·[1;0]` is moved along the
//!    geodesic `V ← exp(tA)V` generated by the anti-Hermitian projection of
//!    the gradient of `Σⱼ |⟨φⱼ|wⱼ⟩|²`, with an Armijo backtracking line search.
//!    The isometry constraint holds exactly at every iterate.
//!
//! The purified view of the same problem pairs orthonormal ancilla vectors
//! `aⱼ` with branch product states; weights of the separable ensemble are
//! eliminated in closed form by [`optimal_ancilla_weights`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{expm_anti_hermitian, isometry_error, outer, CMatrix, CVector, C64, ONE, ZERO};
use crate::pure_gme::{lambda_max, Contraction, LambdaOptions, ProductState};
use crate::random::{haar_unitary, stream_rng};
use crate::state::{
    DensityMatrix, PureState, Purification, SubsystemSignature, RANK_CUTOFF, STATE_TOL,
};

/// Branches lighter than this are dropped from decompositions.
pub const ZERO_WEIGHT: f64 = 1e-14;

/// Pure-state decomposition `{pᵢ, |ψᵢ⟩}`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    weights: Vec<f64>,
    states: Vec<PureState>,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        check_weights(&weights, states.len())?;
        if let Some(first) = states.first() {
            if states.iter().any(|s| s.signature() != first.signature()) {
                return Err(Error::InvalidArgument(
                    "decomposition states differ in signature".into(),
                ));
            }
        }
        Ok(Self { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σᵢ pᵢ|ψᵢ⟩⟨ψᵢ|`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.states[0].dim();
        let mut m = CMatrix::zeros(d, d);
        for (w, s) in self.weights.iter().zip(&self.states) {
            m += outer(s.amplitudes()).scale(*w);
        }
        m
    }

    /// Largest entrywise deviation from `rho`.
    pub fn reconstruction_error(&self, rho: &DensityMatrix) -> f64 {
        (self.reconstruct() - rho.matrix()).camax()
    }
}

/// Convex mixture of product states, `σ = Σᵢ qᵢ |φᵢ⟩⟨φᵢ|`.
#[derive(Debug, Clone)]
pub struct SeparableEnsemble {
    weights: Vec<f64>,
    branches: Vec<ProductState>,
}

impl SeparableEnsemble {
    pub fn new(weights: Vec<f64>, branches: Vec<ProductState>) -> Result<Self> {
        check_weights(&weights, branches.len())?;
        if let Some(first) = branches.first() {
            let sig = first.signature();
            if branches.iter().any(|b| b.signature() != sig) {
                return Err(Error::InvalidArgument(
                    "ensemble branches differ in signature".into(),
                ));
            }
        }
        Ok(Self { weights, branches })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn branches(&self) -> &[ProductState] {
        &self.branches
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let states: Vec<PureState> = self.branches.iter().map(|b| b.to_state()).collect();
        DensityMatrix::mixture(&self.weights, &states)
    }
}

fn check_weights(weights: &[f64], count: usize) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidArgument("no branches".into()));
    }
    if weights.len() != count {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {count} branches",
            weights.len()
        )));
    }
    if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidArgument(format!("weights sum to {total}")));
    }
    Ok(())
}

/// Eigenpairs of a density matrix above the rank cutoff.
#[derive(Debug, Clone)]
pub struct Support {
    /// Eigenvalues `qₖ`, decreasing.
    pub weights: Vec<f64>,
    /// Eigenvectors as columns (`D × rank`).
    pub vectors: CMatrix,
    pub signature: SubsystemSignature,
}

impl Support {
    pub fn of(rho: &DensityMatrix) -> Self {
        let eig = rho.spectrum();
        let kept: Vec<usize> = (0..eig.values.len())
            .filter(|&i| eig.values[i] > RANK_CUTOFF)
            .collect();
        let mut vectors = CMatrix::zeros(rho.dim(), kept.len());
        for (dst, &src) in kept.iter().enumerate() {
            vectors.set_column(dst, &eig.vectors.column(src));
        }
        Self {
            weights: kept.iter().map(|&i| eig.values[i]).collect(),
            vectors,
            signature: rho.signature().clone(),
        }
    }

    /// Support given explicitly; the vectors must be orthonormal columns.
    pub fn new(weights: Vec<f64>, vectors: CMatrix, signature: SubsystemSignature) -> Result<Self> {
        if vectors.ncols() != weights.len() || vectors.nrows() != signature.total_dim() {
            return Err(Error::Dimension {
                expected: signature.total_dim() * weights.len(),
                found: vectors.nrows() * vectors.ncols(),
            });
        }
        let err = isometry_error(&vectors);
        if err > STATE_TOL {
            return Err(Error::NotOrthonormal(err));
        }
        Ok(Self {
            weights,
            vectors,
            signature,
        })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// `diag(√q) Φᵀ`, so that the branch vectors are the rows of `u·B`.
    fn branch_basis(&self) -> CMatrix {
        let r = self.rank();
        let d = self.vectors.nrows();
        CMatrix::from_fn(r, d, |k, x| self.vectors[(x, k)] * self.weights[k].sqrt())
    }
}

/// Decomposition generated by the isometry `u` (`m × rank`): branch `j` is
/// `Σₖ uⱼₖ √qₖ |eₖ⟩`, its weight the squared norm. Branches with weight below
/// [`ZERO_WEIGHT`] are dropped.
pub fn decomposition_from_unitary(support: &Support, u: &CMatrix, m: usize) -> Result<Decomposition> {
    if u.nrows() != m || u.ncols() != support.rank() {
        return Err(Error::Dimension {
            expected: m * support.rank(),
            found: u.nrows() * u.ncols(),
        });
    }
    if m < support.rank() {
        return Err(Error::InvalidArgument(format!(
            "{m} branches cannot carry rank {}",
            support.rank()
        )));
    }
    let err = isometry_error(u);
    if err > STATE_TOL {
        return Err(Error::NotIsometry(err));
    }
    let w = u * support.branch_basis();
    decomposition_from_rows(&w, &support.signature)
}

fn decomposition_from_rows(w: &CMatrix, sig: &SubsystemSignature) -> Result<Decomposition> {
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for j in 0..w.nrows() {
        let row: CVector = w.row(j).transpose();
        let p = row.norm_squared();
        if p < ZERO_WEIGHT {
            continue;
        }
        weights.push(p);
        states.push(PureState::normalized(row, sig.clone())?);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|p| *p /= total);
    Decomposition::new(weights, states)
}

/// Weights maximizing `(Σᵢ √qᵢ oᵢ)²` on the simplex:
/// `√qᵢ = oᵢ / √(Σₖ oₖ²)`.
pub fn optimal_ancilla_weights(overlaps: &[f64]) -> Result<Vec<f64>> {
    if overlaps.iter().any(|&o| !o.is_finite() || o < 0.0) {
        return Err(Error::InvalidArgument("overlaps must be nonnegative".into()));
    }
    let total: f64 = overlaps.iter().map(|o| o * o).sum();
    if total <= 0.0 {
        return Err(Error::DegenerateOverlaps);
    }
    Ok(overlaps.iter().map(|o| o * o / total).collect())
}

/// `(Σᵢ √qᵢ oᵢ)²`: squared overlap of a purification with a phase-aligned
/// separable purification whose branches have overlaps `oᵢ`.
pub fn ensemble_overlap(overlaps: &[f64], weights: &[f64]) -> f64 {
    let s: f64 = overlaps
        .iter()
        .zip(weights)
        .map(|(o, q)| q.max(0.0).sqrt() * o)
        .sum();
    s * s
}

/// `Σᵢ |⟨ψ| (aᵢ ⊗ φᵢ)⟩|²` for orthonormal ancilla vectors `aᵢ` and product
/// branches `φᵢ` on the system. This is the separable-purification overlap
/// after the ensemble weights are eliminated and the phases aligned.
pub fn purified_overlap(
    psi: &Purification,
    branches: &[ProductState],
    ancilla_vectors: &[CVector],
) -> Result<f64> {
    if branches.len() != ancilla_vectors.len() {
        return Err(Error::InvalidArgument(format!(
            "{} branches but {} ancilla vectors",
            branches.len(),
            ancilla_vectors.len()
        )));
    }
    let anc = psi.ancilla_dim;
    if ancilla_vectors.iter().any(|a| a.len() != anc) {
        return Err(Error::Dimension {
            expected: anc,
            found: ancilla_vectors.iter().map(|a| a.len()).find(|&l| l != anc).unwrap_or(0),
        });
    }
    let mut worst: f64 = 0.0;
    for (i, a) in ancilla_vectors.iter().enumerate() {
        for (j, b) in ancilla_vectors.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((a.dotc(b) - target).norm());
        }
    }
    if worst > STATE_TOL {
        return Err(Error::NotOrthonormal(worst));
    }
    let d = psi.system_signature.total_dim();
    let amps = psi.state.amplitudes();
    let mut total = 0.0;
    for (branch, a) in branches.iter().zip(ancilla_vectors) {
        if branch.signature() != psi.system_signature {
            return Err(Error::SignatureMismatch {
                left: branch.signature().dims().to_vec(),
                right: psi.system_signature.dims().to_vec(),
            });
        }
        let phi = branch.amplitudes();
        let mut s = ZERO;
        for (k, ak) in a.iter().enumerate() {
            s += amps.rows(k * d, d).dotc(&phi) * ak;
        }
        total += s.norm_sqr();
    }
    Ok(total)
}

impl Purification {
    /// Same state with the ancilla zero-padded to `dim`.
    pub fn padded(&self, dim: usize) -> Result<Purification> {
        if dim < self.ancilla_dim {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink ancilla from {} to {dim}",
                self.ancilla_dim
            )));
        }
        let d = self.system_signature.total_dim();
        let mut amps = CVector::zeros(dim * d);
        amps.rows_mut(0, self.ancilla_dim * d)
            .copy_from(self.state.amplitudes());
        let sig = SubsystemSignature::new(vec![dim])?.concat(&self.system_signature);
        Ok(Purification {
            state: PureState::new(amps, sig)?,
            ancilla_dim: dim,
            system_signature: self.system_signature.clone(),
        })
    }
}

/// Ancilla vectors `aⱼ = Σₖ conj(Vⱼₖ)|k⟩` matching the decomposition
/// generated by the unitary `V` on the canonical purification.
pub fn ancilla_frame(v: &CMatrix) -> Vec<CVector> {
    (0..v.nrows())
        .map(|j| v.row(j).transpose().map(|z| z.conj()))
        .collect()
}

#[derive(Debug, Clone)]
pub struct RoofOptions {
    /// Number of decomposition branches `m`, between rank and rank². Defaults
    /// to `min(rank², max(rank, D))` with `D` the total dimension: separable
    /// states can need up to `D` product terms even at lower rank.
    pub branches: Option<usize>,
    pub restarts: usize,
    /// Outer iterations per restart.
    pub max_iterations: usize,
    /// Convergence threshold on the objective change per outer iteration.
    pub tolerance: f64,
    /// Budget for the per-branch `Λ_max` solves.
    pub inner: LambdaOptions,
    pub seed: u64,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            branches: None,
            restarts: 10,
            max_iterations: 1000,
            tolerance: 1e-10,
            inner: LambdaOptions::default(),
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagnostics {
    pub restarts: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// `F_sep` together with every measure derived from it and the witnesses
/// that realize it.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    pub f_sep: f64,
    pub e_ge: f64,
    pub e_rge: f64,
    pub e_gr: f64,
    pub e_b: f64,
    pub best_decomposition: Decomposition,
    pub closest_separable: SeparableEnsemble,
    pub diagnostics: Diagnostics,
}

impl MeasureReport {
    /// Fills `E_Ge = E_RGe = 1 − F_sep`, `E_Gr = √(1 − F_sep)` and
    /// `E_B = 2(1 − √F_sep)`.
    pub fn new(
        f_sep: f64,
        best_decomposition: Decomposition,
        closest_separable: SeparableEnsemble,
        diagnostics: Diagnostics,
    ) -> Self {
        let f_sep = f_sep.clamp(0.0, 1.0);
        let e_rge = 1.0 - f_sep;
        Self {
            f_sep,
            e_ge: e_rge,
            e_rge,
            e_gr: e_rge.sqrt(),
            e_b: 2.0 * (1.0 - f_sep.sqrt()),
            best_decomposition,
            closest_separable,
            diagnostics,
        }
    }
}

/// Best product state of one unnormalized branch vector, warm-started from
/// `factors` where the route is iterative.
struct BranchSolver {
    dims: Vec<usize>,
    contraction: Option<Contraction>,
    sweeps: usize,
    tolerance: f64,
}

impl BranchSolver {
    fn new(dims: &[usize], tolerance: f64) -> Self {
        Self {
            dims: dims.to_vec(),
            contraction: (dims.len() > 2).then(|| Contraction::new(dims)),
            sweeps: 200,
            tolerance,
        }
    }

    /// Returns `max_φ |⟨φ|w⟩|` over the warm-start neighbourhood and updates
    /// `factors` in place.
    fn improve(&self, w: &CVector, factors: &mut Vec<CVector>) -> f64 {
        let n = w.norm();
        if n < ZERO_WEIGHT.sqrt() {
            return 0.0;
        }
        match self.dims.len() {
            1 => {
                factors[0] = w.unscale(n);
                n
            }
            2 => {
                let (d1, d2) = (self.dims[0], self.dims[1]);
                let m = CMatrix::from_fn(d1, d2, |i, j| w[i * d2 + j]);
                let svd = m.svd(true, true);
                let mut top = 0;
                for (i, s) in svd.singular_values.iter().enumerate() {
                    if *s > svd.singular_values[top] {
                        top = i;
                    }
                }
                factors[0] = svd.u.as_ref().expect("requested").column(top).into_owned();
                factors[1] = svd.v_t.as_ref().expect("requested").row(top).transpose();
                svd.singular_values[top]
            }
            _ => {
                let c = self.contraction.as_ref().expect("built for three or more parties");
                let run = c.ascend(w, std::mem::take(factors), self.sweeps, self.tolerance, false);
                *factors = run.factors;
                run.overlap
            }
        }
    }
}

fn product_amplitudes(factors: &[CVector]) -> CVector {
    let mut it = factors.iter();
    let first = it.next().expect("nonempty").clone();
    it.fold(first, |acc, f| crate::linalg::kron_vec(&acc, f))
}

struct RestartOutcome {
    objective: f64,
    unitary: CMatrix,
    factors: Vec<Vec<CVector>>,
    iterations: usize,
    converged: bool,
}

struct RoofProblem<'a> {
    support: &'a Support,
    basis: CMatrix,
    branches: usize,
    solver: BranchSolver,
    opts: &'a RoofOptions,
}

impl RoofProblem<'_> {
    fn initial_factors(&self, w: &CMatrix) -> Vec<Vec<CVector>> {
        let sig = &self.support.signature;
        (0..w.nrows())
            .map(|j| {
                let row: CVector = w.row(j).transpose();
                let n = row.norm();
                if self.solver.dims.len() > 2 && n > ZERO_WEIGHT.sqrt() {
                    let psi = PureState::normalized(row, sig.clone()).expect("nonzero branch");
                    lambda_max(&psi, &self.opts.inner).argmax.factors().to_vec()
                } else {
                    self.solver
                        .dims
                        .iter()
                        .map(|&d| {
                            let mut v = CVector::zeros(d);
                            v[0] = ONE;
                            v
                        })
                        .collect()
                }
            })
            .collect()
    }

    fn refresh(&self, w: &CMatrix, factors: &mut [Vec<CVector>]) -> f64 {
        let mut total = 0.0;
        for (j, f) in factors.iter_mut().enumerate() {
            let row: CVector = w.row(j).transpose();
            let o = self.solver.improve(&row, f);
            total += o * o;
        }
        total
    }

    fn run(&self, restart: usize) -> RestartOutcome {
        let m = self.branches;
        let r = self.support.rank();
        let mut rng = stream_rng(self.opts.seed, restart as u64);
        let mut v = haar_unitary(&mut rng, m);
        let mut w = v.columns(0, r) * &self.basis;
        let mut factors = self.initial_factors(&w);
        let mut objective = self.refresh(&w, &mut factors);

        let mut step = 0.5;
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.opts.max_iterations {
            iterations += 1;
            // S[j, j'] = ⟨φ_j'|w_j⟩; the surrogate is Σⱼ |S_jj|²
            let products: Vec<CVector> = factors.iter().map(|f| product_amplitudes(f)).collect();
            let s = CMatrix::from_fn(m, m, |j, jp| products[jp].dotc(&w.row(j).transpose()));
            let diag: Vec<C64> = (0..m).map(|j| s[(j, j)]).collect();
            let g0: f64 = diag.iter().map(|z| z.norm_sqr()).sum();
            let grad_m = CMatrix::from_fn(m, m, |k, j| s[(k, j)] * diag[j].conj());
            let a = (grad_m.adjoint() - &grad_m).scale(0.5);
            let slope = 2.0 * a.norm_squared();
            if slope.sqrt() < 1e-12 {
                converged = true;
                break;
            }

            let surrogate = |e: &CMatrix| -> f64 {
                (0..m)
                    .map(|j| {
                        let mut z = ZERO;
                        for k in 0..m {
                            z += e[(j, k)] * s[(k, j)];
                        }
                        z.norm_sqr()
                    })
                    .sum()
            };
            let mut t = step;
            let mut accepted = None;
            for _ in 0..40 {
                let e = expm_anti_hermitian(&a, t);
                if surrogate(&e) >= g0 + 1e-4 * t * slope {
                    accepted = Some(e);
                    break;
                }
                t *= 0.5;
            }
            let Some(e) = accepted else {
                converged = true;
                break;
            };
            step = (2.0 * t).min(4.0);
            v = &e * v;
            w = &e * w;

            let updated = self.refresh(&w, &mut factors);
            let gain = updated - objective;
            objective = updated.max(objective);
            if gain.abs() < self.opts.tolerance {
                converged = true;
                break;
            }
        }
        RestartOutcome {
            objective,
            unitary: v,
            factors,
            iterations,
            converged,
        }
    }
}

pub fn default_branches(rank: usize, dim: usize) -> usize {
    (rank * rank).min(rank.max(dim))
}

/// `F_sep(ρ)` by optimizing over `m`-term decompositions. The returned value
/// is realized by the returned decomposition and therefore a lower bound on
/// the true maximum.
///
/// `closest_separable` weights its branches by `pⱼΛⱼ²/F_sep`, the closed-form
/// ancilla weights applied to the branch overlaps `√pⱼ Λⱼ`; with these
/// weights the ensemble's fidelity with `ρ` is at least the reported `F_sep`.
pub fn f_sep_mixed(rho: &DensityMatrix, opts: &RoofOptions) -> Result<MeasureReport> {
    let support = Support::of(rho);
    let r = support.rank();
    let m = opts.branches.unwrap_or_else(|| default_branches(r, rho.dim()));
    if m < r || m > r * r {
        return Err(Error::InvalidArgument(format!(
            "branch count {m} outside [{r}, {}] for rank {r}",
            r * r
        )));
    }
    let problem = RoofProblem {
        basis: support.branch_basis(),
        support: &support,
        branches: m,
        solver: BranchSolver::new(rho.signature().dims(), opts.inner.tolerance),
        opts,
    };
    let restarts = opts.restarts.max(1);
    let outcomes: Vec<RestartOutcome> = (0..restarts)
        .into_par_iter()
        .map(|i| problem.run(i))
        .collect();
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.objective > outcomes[best].objective {
            best = i;
        }
    }
    let any_converged = outcomes.iter().any(|o| o.converged);
    let outcome = outcomes.into_iter().nth(best).expect("at least one restart");

    // final per-branch polish with the full restart budget
    let sig = rho.signature();
    let w = outcome.unitary.columns(0, r) * &support.branch_basis();
    let mut weights = Vec::new();
    let mut states = Vec::new();
    let mut branch_products = Vec::new();
    let mut lambdas = Vec::new();
    let mut inner_converged = true;
    for (j, warm) in outcome.factors.iter().enumerate() {
        let row: CVector = w.row(j).transpose();
        let p = row.norm_squared();
        if p < ZERO_WEIGHT {
            continue;
        }
        let psi = PureState::normalized(row, sig.clone())?;
        let full = lambda_max(&psi, &opts.inner);
        inner_converged &= full.converged;
        let warm_state = ProductState::normalized(warm.clone())?;
        let warm_value = warm_state.overlap(&psi)?.norm();
        let (lambda, argmax) = if warm_value > full.lambda_max {
            (warm_value.min(1.0), warm_state)
        } else {
            (full.lambda_max, full.argmax)
        };
        weights.push(p);
        states.push(psi);
        branch_products.push(argmax);
        lambdas.push(lambda);
    }
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|p| *p /= total);
    let f_sep: f64 = weights.iter().zip(&lambdas).map(|(p, l)| p * l * l).sum();

    let overlaps: Vec<f64> = weights.iter().zip(&lambdas).map(|(p, l)| p.sqrt() * l).collect();
    let (ens_weights, ens_branches) = match optimal_ancilla_weights(&overlaps) {
        Ok(q) => q
            .into_iter()
            .zip(branch_products)
            .filter(|(q, _)| *q > 0.0)
            .unzip(),
        // every branch orthogonal to every product state cannot happen for a
        // normalized state; fall back to the branch weights
        Err(_) => (weights.clone(), branch_products),
    };
    let ens_total: f64 = ens_weights.iter().sum();
    let ens_weights = ens_weights.into_iter().map(|q: f64| q / ens_total).collect();

    Ok(MeasureReport::new(
        f_sep,
        Decomposition::new(weights, states)?,
        SeparableEnsemble::new(ens_weights, ens_branches)?,
        Diagnostics {
            restarts,
            iterations: outcome.iterations,
            converged: any_converged && inner_converged,
        },
    ))
}

/// All fidelity-based measures of `ρ`; see [`MeasureReport::new`].
pub fn entanglement_report(rho: &DensityMatrix, opts: &RoofOptions) -> Result<MeasureReport> {
    f_sep_mixed(rho, opts)
}

/// Report for a pure state from a single `Λ_max` solve: the decomposition is
/// the state itself and the closest separable state its best product state.
pub fn pure_report(psi: &PureState, opts: &LambdaOptions) -> Result<MeasureReport> {
    let r = lambda_max(psi, opts);
    let argmax = if r.argmax.signature() == *psi.signature() {
        r.argmax.clone()
    } else {
        return Err(Error::InvalidArgument(
            "argmax does not live on the state's subsystems".into(),
        ));
    };
    Ok(MeasureReport::new(
        r.f_sep(),
        Decomposition::new(vec![1.0], vec![psi.clone()])?,
        SeparableEnsemble::new(vec![1.0], vec![argmax])?,
        Diagnostics {
            restarts: r.restarts_used,
            iterations: r.iterations,
            converged: r.converged,
        },
    ))
}
