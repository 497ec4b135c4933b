//! Quantum-state primitives: subsystem signatures, pure states, density
//! matrices, partial traces, Schmidt decompositions and purifications.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    argmax_modulus, c, hermitian_part, hermiticity_error, kron, kron_vec, outer, ravel, trace,
    unravel, CMatrix, CVector, HermitianEigen, C64,
};

/// Validation tolerance for norms, traces, Hermiticity and PSD checks.
pub const STATE_TOL: f64 = 1e-9;
/// Eigenvalues above this count towards the rank of a density matrix.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Ordered local Hilbert-space dimensions `d₁,…,dₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemSignature {
    dims: Vec<usize>,
}

impl SubsystemSignature {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::Signature("no subsystems".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Signature(format!("subsystem {pos} has dimension 0")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Signature("total dimension overflows".into()))?;
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }

    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        self.check_indices(keep)?;
        Self::new(keep.iter().map(|&k| self.dims[k]).collect::<Vec<_>>())
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.dims.len()];
        for &k in idx {
            if k >= self.dims.len() {
                return Err(Error::Signature(format!(
                    "subsystem index {k} out of range for {} parties",
                    self.dims.len()
                )));
            }
            if seen[k] {
                return Err(Error::Signature(format!("subsystem index {k} repeated")));
            }
            seen[k] = true;
        }
        Ok(())
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::SignatureMismatch {
                left: self.dims.clone(),
                right: other.dims.clone(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SubsystemSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Split of the subsystem indices into two nonempty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Self {
        Self { left, right }
    }

    /// `{0,…,k-1} | {k,…,n-1}`.
    pub fn split_at(k: usize, parties: usize) -> Self {
        Self {
            left: (0..k).collect(),
            right: (k..parties).collect(),
        }
    }

    pub fn validate(&self, sig: &SubsystemSignature) -> Result<()> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::Cut("both sides must be nonempty".into()));
        }
        let n = sig.parties();
        let mut seen = vec![false; n];
        for &k in self.left.iter().chain(&self.right) {
            if k >= n {
                return Err(Error::Cut(format!("index {k} out of range for {n} parties")));
            }
            if seen[k] {
                return Err(Error::Cut(format!("index {k} appears twice")));
            }
            seen[k] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Cut("cut does not cover every subsystem".into()));
        }
        Ok(())
    }

    fn side_dim(side: &[usize], sig: &SubsystemSignature) -> usize {
        side.iter().map(|&k| sig.dims()[k]).product()
    }
}

/// Normalized pure state with its subsystem signature.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
    signature: SubsystemSignature,
}

impl PureState {
    /// Validates length and unit norm (tolerance [`STATE_TOL`]).
    pub fn new(amplitudes: CVector, signature: SubsystemSignature) -> Result<Self> {
        if amplitudes.len() != signature.total_dim() {
            return Err(Error::Dimension {
                expected: signature.total_dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::Norm(norm));
        }
        Ok(Self {
            amplitudes,
            signature,
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: CVector, signature: SubsystemSignature) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Norm(norm));
        }
        Self::new(amplitudes.unscale(norm), signature)
    }

    pub fn from_real(amps: &[f64], dims: &[usize]) -> Result<Self> {
        let v = CVector::from_iterator(amps.len(), amps.iter().map(|&x| c(x, 0.0)));
        Self::normalized(v, SubsystemSignature::new(dims.to_vec())?)
    }

    /// Computational basis state `|i₁ i₂ … iₙ⟩`.
    pub fn basis(digits: &[usize], dims: &[usize]) -> Result<Self> {
        let sig = SubsystemSignature::new(dims.to_vec())?;
        if digits.len() != dims.len() || digits.iter().zip(dims).any(|(d, n)| d >= n) {
            return Err(Error::InvalidArgument(format!(
                "basis digits {digits:?} do not fit dims {dims:?}"
            )));
        }
        let mut v = CVector::zeros(sig.total_dim());
        v[ravel(digits, dims)] = c(1.0, 0.0);
        Self::new(v, sig)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn signature(&self) -> &SubsystemSignature {
        &self.signature
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: outer(&self.amplitudes),
            signature: self.signature.clone(),
        }
    }

    /// `U|ψ⟩` for a unitary acting on the full space.
    pub fn transform(&self, u: &CMatrix) -> Result<Self> {
        Self::new(u * &self.amplitudes, self.signature.clone())
    }
}

/// Kronecker product of two pure states; signatures concatenate.
pub fn tensor_product(a: &PureState, b: &PureState) -> PureState {
    PureState {
        amplitudes: kron_vec(&a.amplitudes, &b.amplitudes),
        signature: a.signature.concat(&b.signature),
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix with a signature.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    signature: SubsystemSignature,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, trace and spectrum at [`STATE_TOL`].
    /// The stored matrix is the Hermitian part of the input.
    pub fn new(matrix: CMatrix, signature: SubsystemSignature) -> Result<Self> {
        let d = signature.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension {
                expected: d * d,
                found: matrix.nrows() * matrix.ncols(),
            });
        }
        let herr = hermiticity_error(&matrix);
        if herr > STATE_TOL {
            return Err(Error::NotHermitian(herr));
        }
        let tr = trace(&matrix);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::Trace(tr.re));
        }
        let matrix = hermitian_part(&matrix);
        let eig = HermitianEigen::new(&matrix);
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { matrix, signature })
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix, signature: SubsystemSignature) -> Self {
        Self { matrix, signature }
    }

    pub fn maximally_mixed(signature: SubsystemSignature) -> Self {
        let d = signature.total_dim();
        Self {
            matrix: CMatrix::identity(d, d).unscale(d as f64),
            signature,
        }
    }

    /// Convex mixture `Σ pᵢ|ψᵢ⟩⟨ψᵢ|`; weights are renormalized.
    pub fn mixture(weights: &[f64], states: &[PureState]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        if weights.len() != states.len() {
            return Err(Error::InvalidArgument(
                "weights and states differ in length".into(),
            ));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidArgument("negative weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidArgument("weights sum to zero".into()));
        }
        let d = first.dim();
        let mut m = CMatrix::zeros(d, d);
        for (w, s) in weights.iter().zip(states) {
            first.signature.ensure_same(&s.signature)?;
            m += outer(&s.amplitudes).scale(w / total);
        }
        Self::new(m, first.signature.clone())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn signature(&self) -> &SubsystemSignature {
        &self.signature
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectrum(&self) -> HermitianEigen {
        HermitianEigen::new(&self.matrix)
    }

    /// Number of eigenvalues above [`RANK_CUTOFF`].
    pub fn rank(&self) -> usize {
        self.spectrum()
            .values
            .iter()
            .filter(|&&v| v > RANK_CUTOFF)
            .count()
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        self.signature.ensure_same(&psi.signature)?;
        Ok(psi.amplitudes.dotc(&(&self.matrix * &psi.amplitudes)).re)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: kron(&self.matrix, &other.matrix),
            signature: self.signature.concat(&other.signature),
        }
    }

    /// `UρU†` for a unitary on the full space.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        Self::new(u * &self.matrix * u.adjoint(), self.signature.clone())
    }

    pub(crate) fn ensure_same_signature(&self, other: &SubsystemSignature) -> Result<()> {
        self.signature.ensure_same(other)
    }
}

/// Traces out every subsystem not listed in `keep`. The output's subsystem
/// order follows the order of `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let sig = &rho.signature;
    if keep.is_empty() {
        return Err(Error::Signature("keep set is empty".into()));
    }
    let out_sig = sig.restrict(keep)?;
    let dims = sig.dims();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let traced_total: usize = traced_dims.iter().product();

    // group full indices by their traced multi-index
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); traced_total];
    let mut digits = vec![0; dims.len()];
    let mut kd = vec![0; keep.len()];
    let mut td = vec![0; traced.len()];
    for full in 0..sig.total_dim() {
        unravel(full, dims, &mut digits);
        for (slot, &k) in keep.iter().enumerate() {
            kd[slot] = digits[k];
        }
        for (slot, &k) in traced.iter().enumerate() {
            td[slot] = digits[k];
        }
        groups[ravel(&td, &traced_dims)].push((full, ravel(&kd, &keep_dims)));
    }

    let d_out = out_sig.total_dim();
    let mut out = CMatrix::zeros(d_out, d_out);
    for group in &groups {
        for &(i, ki) in group {
            for &(j, kj) in group {
                out[(ki, kj)] += rho.matrix[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(out, out_sig))
}

/// Reshapes `|ψ⟩` into the `dim(left) × dim(right)` coefficient matrix of a cut.
pub(crate) fn cut_matrix(psi: &PureState, cut: &Bipartition) -> Result<CMatrix> {
    let sig = psi.signature();
    cut.validate(sig)?;
    let dims = sig.dims();
    let ldims: Vec<usize> = cut.left.iter().map(|&k| dims[k]).collect();
    let rdims: Vec<usize> = cut.right.iter().map(|&k| dims[k]).collect();
    let mut m = CMatrix::zeros(
        Bipartition::side_dim(&cut.left, sig),
        Bipartition::side_dim(&cut.right, sig),
    );
    let mut digits = vec![0; dims.len()];
    let mut ld = vec![0; ldims.len()];
    let mut rd = vec![0; rdims.len()];
    for (full, amp) in psi.amplitudes().iter().enumerate() {
        unravel(full, dims, &mut digits);
        for (slot, &k) in cut.left.iter().enumerate() {
            ld[slot] = digits[k];
        }
        for (slot, &k) in cut.right.iter().enumerate() {
            rd[slot] = digits[k];
        }
        m[(ravel(&ld, &ldims), ravel(&rd, &rdims))] = *amp;
    }
    Ok(m)
}

/// For each index of the regrouped two-party space `(left, right)`, the
/// index of the same basis state in the original ordering.
fn cut_permutation(sig: &SubsystemSignature, cut: &Bipartition) -> Result<(Vec<usize>, SubsystemSignature)> {
    cut.validate(sig)?;
    let dims = sig.dims();
    let order: Vec<usize> = cut.left.iter().chain(&cut.right).copied().collect();
    let new_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
    let mut digits = vec![0; dims.len()];
    let mut moved = vec![0; dims.len()];
    let perm = (0..sig.total_dim())
        .map(|idx| {
            unravel(idx, &new_dims, &mut moved);
            for (slot, &k) in order.iter().enumerate() {
                digits[k] = moved[slot];
            }
            ravel(&digits, dims)
        })
        .collect();
    let grouped = SubsystemSignature::new(vec![
        Bipartition::side_dim(&cut.left, sig),
        Bipartition::side_dim(&cut.right, sig),
    ])?;
    Ok((perm, grouped))
}

impl PureState {
    /// The same state viewed as a two-party state across `cut`.
    pub fn regroup(&self, cut: &Bipartition) -> Result<PureState> {
        let (perm, sig) = cut_permutation(&self.signature, cut)?;
        let amps = CVector::from_iterator(perm.len(), perm.iter().map(|&i| self.amplitudes[i]));
        Ok(PureState {
            amplitudes: amps,
            signature: sig,
        })
    }
}

impl DensityMatrix {
    /// The same state viewed as a two-party state across `cut`.
    pub fn regroup(&self, cut: &Bipartition) -> Result<DensityMatrix> {
        let (perm, sig) = cut_permutation(&self.signature, cut)?;
        let d = perm.len();
        let m = CMatrix::from_fn(d, d, |i, j| self.matrix[(perm[i], perm[j])]);
        Ok(DensityMatrix::from_parts_unchecked(m, sig))
    }
}

/// Schmidt form `Σᵢ λᵢ |lᵢ⟩ ⊗ |rᵢ⟩` of a pure state across a cut.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub left_basis: Vec<CVector>,
    pub right_basis: Vec<CVector>,
    pub cut: Bipartition,
    signature: SubsystemSignature,
}

impl SchmidtForm {
    pub fn largest(&self) -> f64 {
        self.coefficients[0]
    }

    /// Rebuilds the amplitude vector in the original subsystem order.
    pub fn reconstruct(&self) -> CVector {
        let dims = self.signature.dims();
        let ldims: Vec<usize> = self.cut.left.iter().map(|&k| dims[k]).collect();
        let rdims: Vec<usize> = self.cut.right.iter().map(|&k| dims[k]).collect();
        let mut out = CVector::zeros(self.signature.total_dim());
        let mut digits = vec![0; dims.len()];
        let mut ld = vec![0; ldims.len()];
        let mut rd = vec![0; rdims.len()];
        for (full, slot_val) in out.iter_mut().enumerate() {
            unravel(full, dims, &mut digits);
            for (slot, &k) in self.cut.left.iter().enumerate() {
                ld[slot] = digits[k];
            }
            for (slot, &k) in self.cut.right.iter().enumerate() {
                rd[slot] = digits[k];
            }
            let (l, r) = (ravel(&ld, &ldims), ravel(&rd, &rdims));
            *slot_val = self
                .coefficients
                .iter()
                .zip(self.left_basis.iter().zip(&self.right_basis))
                .map(|(&lam, (u, v))| u[l] * v[r] * lam)
                .sum();
        }
        out
    }
}

/// Singular-value form of `|ψ⟩` across `cut`. Coefficients are sorted
/// nonincreasing (stable in the solver's order on ties); each left vector is
/// rotated so that its largest-modulus entry is real and nonnegative.
pub fn schmidt_decompose(psi: &PureState, cut: &Bipartition) -> Result<SchmidtForm> {
    let m = cut_matrix(psi, cut)?;
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let mut coefficients = Vec::with_capacity(k);
    let mut left_basis = Vec::with_capacity(k);
    let mut right_basis = Vec::with_capacity(k);
    for &i in &order {
        let mut l: CVector = u.column(i).into_owned();
        let mut r: CVector = v_t.row(i).transpose().into_owned();
        let pivot = l[argmax_modulus(l.iter())];
        if pivot.norm() > 0.0 {
            let phase = pivot / pivot.norm();
            l.iter_mut().for_each(|z| *z /= phase);
            r.iter_mut().for_each(|z| *z *= phase);
        }
        coefficients.push(svd.singular_values[i]);
        left_basis.push(l);
        right_basis.push(r);
    }
    Ok(SchmidtForm {
        coefficients,
        left_basis,
        right_basis,
        cut: cut.clone(),
        signature: psi.signature().clone(),
    })
}

/// Pure state on `ancilla ⊗ system` whose ancilla marginal is traced away.
#[derive(Debug, Clone)]
pub struct Purification {
    pub state: PureState,
    pub ancilla_dim: usize,
    pub system_signature: SubsystemSignature,
}

impl Purification {
    /// `Tr₀ |ψ⟩⟨ψ|`.
    pub fn reduced(&self) -> DensityMatrix {
        let keep: Vec<usize> = (1..=self.system_signature.parties()).collect();
        partial_trace(&self.state.to_density(), &keep).expect("purification signature is valid")
    }
}

/// Canonical purification `Σᵢ √qᵢ |i⟩₀ |φᵢ⟩` built from the eigenpairs of
/// `ρ` above [`RANK_CUTOFF`]; the ancilla dimension equals the rank.
pub fn purify(rho: &DensityMatrix) -> Purification {
    let eig = rho.spectrum();
    let kept: Vec<usize> = (0..eig.values.len())
        .filter(|&i| eig.values[i] > RANK_CUTOFF)
        .collect();
    let ancilla_dim = kept.len().max(1);
    let d = rho.dim();
    let mut amps = CVector::zeros(ancilla_dim * d);
    for (a, &i) in kept.iter().enumerate() {
        let w = eig.values[i].sqrt();
        for k in 0..d {
            amps[a * d + k] = eig.vectors[(k, i)] * w;
        }
    }
    let sig = SubsystemSignature {
        dims: vec![ancilla_dim],
    }
    .concat(rho.signature());
    let state = PureState::normalized(amps, sig).expect("density matrix has unit trace");
    Purification {
        state,
        ancilla_dim,
        system_signature: rho.signature().clone(),
    }
}

/// Principal square root of a PSD matrix. Eigenvalues in `[-1e-9, 0)` are
/// clamped to zero; anything more negative is rejected.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = HermitianEigen::new(m);
    if let Some(&min) = eig.values.last() {
        if min < -STATE_TOL {
            return Err(Error::NotPsd(min));
        }
    }
    Ok(eig.map(|x| x.max(0.0).sqrt()))
}

impl DensityMatrix {
    pub fn sqrt(&self) -> CMatrix {
        psd_sqrt(&self.matrix).expect("density matrices are PSD")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, ZERO};

    fn sig(d: &[usize]) -> SubsystemSignature {
        SubsystemSignature::new(d.to_vec()).unwrap()
    }

    fn bell() -> PureState {
        PureState::from_real(&[1.0, 0.0, 0.0, 1.0], &[2, 2]).unwrap()
    }

    #[test]
    fn signature_rejects_zero_dim() {
        assert!(SubsystemSignature::new(vec![2, 0]).is_err());
        assert!(SubsystemSignature::new(Vec::new()).is_err());
    }

    #[test]
    fn tensor_of_basis_states() {
        let z = PureState::basis(&[0], &[2]).unwrap();
        let t = tensor_product(&z, &z);
        assert_eq!(t.signature().dims(), &[2, 2]);
        let expect = [1.0, 0.0, 0.0, 0.0];
        for (a, e) in t.amplitudes().iter().zip(expect) {
            assert!((a - c(e, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_dimension_bookkeeping() {
        let a = PureState::basis(&[1], &[2]).unwrap();
        let b = PureState::basis(&[2], &[3]).unwrap();
        let t = tensor_product(&a, &b);
        assert_eq!(t.signature().dims(), &[2, 3]);
        assert_eq!(t.dim(), 6);
        let bz = tensor_product(&bell(), &PureState::basis(&[0], &[2]).unwrap());
        assert!((bz.amplitudes().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_state_rejects_bad_norm() {
        let v = CVector::from_vec(vec![c(0.9, 0.0), ZERO]);
        assert!(matches!(PureState::new(v, sig(&[2])), Err(Error::Norm(_))));
    }

    #[test]
    fn density_rejects_invalid() {
        let not_herm = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), ZERO, c(0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(not_herm, sig(&[2])), Err(Error::NotHermitian(_))));
        let bad_trace = CMatrix::identity(2, 2);
        assert!(matches!(DensityMatrix::new(bad_trace, sig(&[2])), Err(Error::Trace(_))));
        let not_psd = CMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), ZERO, ZERO, c(-0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(not_psd, sig(&[2])), Err(Error::NotPsd(_))));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let r = partial_trace(&bell().to_density(), &[0]).unwrap();
        let target = CMatrix::identity(2, 2).scale(0.5);
        assert!(frobenius(&(r.matrix() - target)) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = DensityMatrix::new(
            CMatrix::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.1, 0.2), c(0.1, -0.2), c(0.3, 0.0)]),
            sig(&[2]),
        )
        .unwrap();
        let sigma = DensityMatrix::maximally_mixed(sig(&[3]));
        let joint = rho.tensor(&sigma);
        let back = partial_trace(&joint, &[0]).unwrap();
        assert!(frobenius(&(back.matrix() - rho.matrix())) < 1e-12);
        let other = partial_trace(&joint, &[1]).unwrap();
        assert!(frobenius(&(other.matrix() - sigma.matrix())) < 1e-12);
    }

    #[test]
    fn partial_trace_identity_and_reordering() {
        let a = PureState::from_real(&[1.0, 2.0], &[2]).unwrap();
        let b = PureState::from_real(&[1.0, 0.0, 3.0], &[3]).unwrap();
        let ab = tensor_product(&a, &b).to_density();
        let same = partial_trace(&ab, &[0, 1]).unwrap();
        assert_eq!(same.matrix(), ab.matrix());
        let swapped = partial_trace(&ab, &[1, 0]).unwrap();
        assert_eq!(swapped.signature().dims(), &[3, 2]);
        let ba = tensor_product(&b, &a).to_density();
        assert!(frobenius(&(swapped.matrix() - ba.matrix())) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_indices() {
        let rho = bell().to_density();
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert!(partial_trace(&rho, &[]).is_err());
    }

    #[test]
    fn schmidt_of_bell_and_product() {
        let cut = Bipartition::split_at(1, 2);
        let s = schmidt_decompose(&bell(), &cut).unwrap();
        let h = 0.5f64.sqrt();
        assert!((s.coefficients[0] - h).abs() < 1e-12);
        assert!((s.coefficients[1] - h).abs() < 1e-12);

        let p = tensor_product(
            &PureState::from_real(&[1.0, 1.0], &[2]).unwrap(),
            &PureState::from_real(&[3.0, -1.0], &[2]).unwrap(),
        );
        let s = schmidt_decompose(&p, &cut).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
        assert!(s.coefficients[1].abs() < 1e-12);
    }

    #[test]
    fn schmidt_phase_convention() {
        let psi = PureState::new(
            CVector::from_vec(vec![c(0.0, 0.6), ZERO, ZERO, c(0.0, -0.8)]),
            sig(&[2, 2]),
        )
        .unwrap();
        let s = schmidt_decompose(&psi, &Bipartition::split_at(1, 2)).unwrap();
        for l in &s.left_basis {
            let p = l[argmax_modulus(l.iter())];
            assert!(p.im.abs() < 1e-14 && p.re >= 0.0);
        }
        assert!((s.reconstruct() - psi.amplitudes()).norm() < 1e-12);
    }

    #[test]
    fn schmidt_rejects_bad_cut() {
        let cut = Bipartition::new(vec![0], vec![]);
        assert!(schmidt_decompose(&bell(), &cut).is_err());
        let cut = Bipartition::new(vec![0], vec![0, 1]);
        assert!(schmidt_decompose(&bell(), &cut).is_err());
    }

    #[test]
    fn purify_maximally_mixed_qubit() {
        let p = purify(&DensityMatrix::maximally_mixed(sig(&[2])));
        assert_eq!(p.ancilla_dim, 2);
        let s = schmidt_decompose(&p.state, &Bipartition::split_at(1, 2)).unwrap();
        let h = 0.5f64.sqrt();
        assert!((s.coefficients[0] - h).abs() < 1e-12 && (s.coefficients[1] - h).abs() < 1e-12);
    }

    #[test]
    fn purify_pure_input() {
        let rho = bell().to_density();
        let p = purify(&rho);
        assert_eq!(p.ancilla_dim, 1);
        assert!(frobenius(&(p.reduced().matrix() - rho.matrix())) < 1e-12);
    }

    #[test]
    fn psd_sqrt_cases() {
        let half = DensityMatrix::maximally_mixed(sig(&[2]));
        let r = half.sqrt();
        let target = CMatrix::identity(2, 2).scale(0.5f64.sqrt());
        assert!(frobenius(&(r - target)) < 1e-12);

        let proj = PureState::basis(&[0], &[2]).unwrap().to_density();
        assert!(frobenius(&(proj.sqrt() - proj.matrix())) < 1e-12);

        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), ZERO, ZERO, c(-1e-6, 0.0)]);
        assert!(matches!(psd_sqrt(&bad), Err(Error::NotPsd(_))));
        let tiny = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), ZERO, ZERO, c(-1e-12, 0.0)]);
        assert!(psd_sqrt(&tiny).is_ok());
    }

    #[test]
    fn regroup_moves_parties() {
        let psi = PureState::basis(&[1, 0, 2], &[2, 2, 3]).unwrap();
        let cut = Bipartition::new(vec![2, 0], vec![1]);
        let g = psi.regroup(&cut).unwrap();
        assert_eq!(g.signature().dims(), &[6, 2]);
        // left digit (2, 1) -> 2*2 + 1 = 5, right digit 0
        assert_eq!(g.amplitudes()[5 * 2].re, 1.0);
        let rho = psi.to_density().regroup(&cut).unwrap();
        assert!((rho.matrix() - g.to_density().matrix()).camax() == 0.0);
    }
}
