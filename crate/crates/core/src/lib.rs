//! Fidelity-based and geometric entanglement measures for finite-dimensional
//! multipartite states.
//!
//! The central quantity is the fidelity of separability
//! `F_sep(ρ) = max_{σ separable} F(ρ, σ)` with the squared fidelity
//! `F(ρ, σ) = (Tr √(√ρ σ √ρ))²`. For pure states it equals `Λ_max²`, the
//! squared maximal overlap with a product state; for mixed states it equals
//! the maximum of `Σᵢ pᵢ Λ_max²(ψᵢ)` over pure-state decompositions of `ρ`.
//! The geometric measure, its revised form, the Groverian measure and the
//! Bures measure all follow from `F_sep`.

pub mod convex_roof;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod oracle;
pub mod pure_gme;
pub mod random;
pub mod state;
pub mod two_qubit;

pub use convex_roof::{
    decomposition_from_unitary, entanglement_report, f_sep_mixed, optimal_ancilla_weights,
    purified_overlap, Decomposition, Diagnostics, MeasureReport, RoofOptions, SeparableEnsemble,
};
pub use error::{Error, Result};
pub use fidelity::{fidelity, fidelity_pure, uhlmann_fidelity};
pub use linalg::{CMatrix, CVector, C64};
pub use pure_gme::{
    e_ge_pure, f_sep_pure, hermitian_overlap_bound, lambda_max, lambda_max_bipartite,
    lambda_max_alternating, Estimate, LambdaOptions, LambdaResult, ProductState,
};
pub use state::{
    partial_trace, psd_sqrt, purify, schmidt_decompose, tensor_product, Bipartition,
    DensityMatrix, PureState, Purification, SchmidtForm, SubsystemSignature,
};
pub use two_qubit::{
    bures_two_qubit, concurrence, concurrence_spectral, e_ge_two_qubit, f_sep_two_qubit, two_qubit_report,
    TwoQubitReport,
};
