//! The self-check suite behind `sepfid verify`.
//!
//! Every check compares a solver against an independent reference: closed
//! forms, Schmidt coefficients, brute-force sampling, or randomized
//! competitors. `Budget::full` uses the sample counts of the acceptance
//! criteria; `Budget::quick` is a fast smoke run of the same checks.

use std::fmt;

use rand::Rng;
use sepfid_core::convex_roof::{ensemble_overlap, pure_report};
use sepfid_core::oracle::{brute_lambda_max, random_separable};
use sepfid_core::random::{
    haar_vector, random_density, random_hermitian, random_pure_state, random_simplex, stream_rng, StateRng,
};
use sepfid_core::two_qubit::f_sep_from_concurrence;
use sepfid_core::{
    concurrence, f_sep_mixed, f_sep_pure, fidelity, fidelity_pure, hermitian_overlap_bound, lambda_max,
    lambda_max_alternating, optimal_ancilla_weights, schmidt_decompose, uhlmann_fidelity, Bipartition,
    DensityMatrix, LambdaOptions, MeasureReport, PureState, RoofOptions, SubsystemSignature,
};

use crate::args::{Format, Knobs, Level, SolveArgs};
use crate::run::{solve_mixed, solve_pure};
use crate::statefile::{emit_state, parse_state, State};

#[derive(Debug, Clone)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub two_qubit_states: usize,
    pub bipartite_states: usize,
    pub oracle_samples: usize,
    pub fidelity_pairs: usize,
    pub bound_samples: usize,
    pub weight_vectors: usize,
    pub weight_trials: usize,
    pub witness_states: usize,
    pub witness_samples: usize,
}

impl Budget {
    pub fn full() -> Self {
        Self {
            two_qubit_states: 100,
            bipartite_states: 1000,
            oracle_samples: 10_000,
            fidelity_pairs: 200,
            bound_samples: 10_000,
            weight_vectors: 100,
            weight_trials: 1000,
            witness_states: 50,
            witness_samples: 1000,
        }
    }

    pub fn quick() -> Self {
        Self {
            two_qubit_states: 12,
            bipartite_states: 100,
            oracle_samples: 1000,
            fidelity_pairs: 20,
            bound_samples: 1000,
            weight_vectors: 10,
            weight_trials: 100,
            witness_states: 6,
            witness_samples: 100,
        }
    }

    pub fn for_level(level: Level) -> Self {
        match level {
            Level::Quick => Self::quick(),
            Level::Full => Self::full(),
        }
    }
}

fn rng(seed: u64, check: u8, item: usize) -> StateRng {
    stream_rng(seed, ((check as u64) << 32) | item as u64)
}

fn sig(dims: &[usize]) -> SubsystemSignature {
    SubsystemSignature::new(dims.to_vec()).expect("nonempty dims")
}

fn check(id: u8, name: &'static str, passed: bool, detail: String) -> Check {
    Check { id, name, passed, detail }
}

fn failed(id: u8, name: &'static str, err: impl fmt::Display) -> Check {
    check(id, name, false, format!("error: {err}"))
}

pub fn ghz(parties: usize) -> PureState {
    let mut v = vec![0.0; 1 << parties];
    v[0] = 1.0;
    v[(1 << parties) - 1] = 1.0;
    PureState::from_real(&v, &vec![2; parties]).expect("valid state")
}

pub fn w_state(parties: usize) -> PureState {
    let mut v = vec![0.0; 1 << parties];
    for k in 0..parties {
        v[1 << k] = 1.0;
    }
    PureState::from_real(&v, &vec![2; parties]).expect("valid state")
}

pub fn singlet() -> PureState {
    PureState::from_real(&[0.0, 1.0, -1.0, 0.0], &[2, 2]).expect("valid state")
}

/// Convex-roof `F_sep` of random two-qubit states against `(1 + √(1 − C²))/2`.
pub fn two_qubit_theorem(count: usize, seed: u64) -> (Check, Vec<MeasureReport>) {
    const NAME: &str = "two-qubit convex roof vs concurrence closed form";
    let mut worst: f64 = 0.0;
    let mut excess = f64::NEG_INFINITY;
    let mut reports = Vec::with_capacity(count);
    for i in 0..count {
        let rho = random_density(&mut rng(seed, 1, i), &sig(&[2, 2]), 1 + i % 4);
        let closed = match concurrence(&rho) {
            Ok(c) => f_sep_from_concurrence(c),
            Err(e) => return (failed(1, NAME, e), reports),
        };
        let r = match f_sep_mixed(&rho, &RoofOptions::default()) {
            Ok(r) => r,
            Err(e) => return (failed(1, NAME, e), reports),
        };
        worst = worst.max((r.f_sep - closed).abs());
        excess = excess.max(r.f_sep - closed);
        reports.push(r);
    }
    let passed = worst <= 1e-3 && excess <= 1e-6;
    let detail = format!("{count} states, max |diff| = {worst:.3e}, max excess = {excess:.3e}");
    (check(1, NAME, passed, detail), reports)
}

/// `Λ_max` of bipartite pure states against the largest Schmidt coefficient,
/// through both the default route and the alternating solver.
pub fn schmidt_agreement(count: usize, seed: u64) -> Check {
    const NAME: &str = "bipartite lambda_max vs largest Schmidt coefficient";
    let opts = LambdaOptions::default();
    let cut = Bipartition::split_at(1, 2);
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let mut g = rng(seed, 2, i);
        let (da, db) = (g.random_range(2..=4), g.random_range(2..=4));
        let psi = random_pure_state(&mut g, &sig(&[da, db]));
        let schmidt = match schmidt_decompose(&psi, &cut) {
            Ok(s) => s.largest(),
            Err(e) => return failed(2, NAME, e),
        };
        worst = worst
            .max((lambda_max(&psi, &opts).lambda_max - schmidt).abs())
            .max((lambda_max_alternating(&psi, &opts).lambda_max - schmidt).abs());
    }
    check(2, NAME, worst <= 1e-8, format!("{count} states, max |diff| = {worst:.3e}"))
}

/// GHZ₃ and W₃ against the brute-force oracle and the values 1/2 and 4/9.
pub fn multipartite_values(samples: usize, seed: u64) -> (Check, Vec<MeasureReport>) {
    const NAME: &str = "GHZ3 and W3 against brute-force oracle";
    let opts = LambdaOptions { seed, ..LambdaOptions::default() };
    let mut parts = Vec::new();
    let mut passed = true;
    let mut reports = Vec::new();
    for (label, psi, exact) in [("GHZ3", ghz(3), 0.5), ("W3", w_state(3), 4.0 / 9.0)] {
        let f = f_sep_pure(&psi, &opts);
        let brute = match brute_lambda_max(&psi, samples, seed) {
            Ok(b) => b * b,
            Err(e) => return (failed(3, NAME, e), reports),
        };
        match pure_report(&psi, &opts) {
            Ok(r) => reports.push(r),
            Err(e) => return (failed(3, NAME, e), reports),
        }
        passed &= f.converged && (f.value - brute).abs() <= 1e-6 && (f.value - exact).abs() <= 1e-6;
        parts.push(format!("{label}: {:.9} (oracle {:.9}, exact {:.9})", f.value, brute, exact));
    }
    (check(3, NAME, passed, format!("{samples} samples; {}", parts.join("; "))), reports)
}

/// Uhlmann maximization and the pure shortcut against the trace formula.
pub fn fidelity_cross_check(pairs: usize, seed: u64) -> Check {
    const NAME: &str = "Uhlmann and pure-state fidelity vs trace formula";
    let mut worst_uhlmann: f64 = 0.0;
    let mut worst_pure: f64 = 0.0;
    for i in 0..pairs {
        let mut g = rng(seed, 4, i);
        let d = g.random_range(2..=4);
        let s = sig(&[d]);
        let (ra, rb) = (g.random_range(1..=d), g.random_range(1..=d));
        let rho = random_density(&mut g, &s, ra);
        let sigma = random_density(&mut g, &s, rb);
        let psi = random_pure_state(&mut g, &s);
        let result = (|| -> sepfid_core::Result<(f64, f64)> {
            let u = (uhlmann_fidelity(&rho, &sigma)? - fidelity(&rho, &sigma)?).abs();
            let p = (fidelity_pure(&psi, &sigma)? - fidelity(&psi.to_density(), &sigma)?).abs();
            Ok((u, p))
        })();
        match result {
            Ok((u, p)) => {
                worst_uhlmann = worst_uhlmann.max(u);
                worst_pure = worst_pure.max(p);
            }
            Err(e) => return failed(4, NAME, e),
        }
    }
    check(
        4,
        NAME,
        worst_uhlmann <= 1e-6 && worst_pure <= 1e-9,
        format!("{pairs} pairs each, max Uhlmann diff = {worst_uhlmann:.3e}, max pure diff = {worst_pure:.3e}"),
    )
}

/// `|⟨a|H|b⟩| ≤ maxᵢ|λᵢ|` for random Hermitian `H` and unit `a`, `b`.
pub fn hermitian_bound(samples: usize, seed: u64) -> Check {
    const NAME: &str = "Hermitian overlap bounded by spectral radius";
    let mut violations = 0;
    let mut margin = f64::INFINITY;
    for i in 0..samples {
        let mut g = rng(seed, 5, i);
        let n = g.random_range(1..=8);
        let h = random_hermitian(&mut g, n);
        let a = haar_vector(&mut g, n);
        let b = haar_vector(&mut g, n);
        match hermitian_overlap_bound(&h, &a, &b) {
            Ok((value, bound)) => {
                if value > bound + 1e-12 {
                    violations += 1;
                }
                margin = margin.min(bound - value);
            }
            Err(e) => return failed(5, NAME, e),
        }
    }
    check(
        5,
        NAME,
        violations == 0,
        format!("{samples} samples, {violations} violations, min margin = {margin:.3e}"),
    )
}

/// Closed-form ancilla weights against random simplex weights.
pub fn lagrange_weights(vectors: usize, trials: usize, seed: u64) -> Check {
    const NAME: &str = "closed-form ensemble weights beat random weights";
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..vectors {
        let mut g = rng(seed, 6, i);
        let n = g.random_range(2..=8);
        let overlaps: Vec<f64> = (0..n).map(|_| g.random::<f64>()).collect();
        let q = match optimal_ancilla_weights(&overlaps) {
            Ok(q) => q,
            Err(e) => return failed(6, NAME, e),
        };
        let best = ensemble_overlap(&overlaps, &q);
        for _ in 0..trials {
            let other = ensemble_overlap(&overlaps, &random_simplex(&mut g, n));
            worst = worst.max(other - best);
            if other > best + 1e-12 {
                violations += 1;
            }
        }
    }
    check(
        6,
        NAME,
        violations == 0,
        format!("{vectors} vectors x {trials} trials, {violations} violations, max gain = {worst:.3e}"),
    )
}

/// `F_sep(ψ) ≥ F(ψ, σ)` for random separable `σ`.
pub fn separable_floor(states: usize, samples: usize, seed: u64) -> Check {
    const NAME: &str = "pure F_sep dominates fidelity with random separable states";
    let opts = LambdaOptions { seed, ..LambdaOptions::default() };
    let mut violations = 0;
    let mut margin = f64::INFINITY;
    for i in 0..states {
        let mut g = rng(seed, 7, i);
        let dims = if i % 2 == 0 { vec![2, 2] } else { vec![2, 2, 2] };
        let psi = random_pure_state(&mut g, &sig(&dims));
        let f = f_sep_pure(&psi, &opts).value;
        let branches = psi.dim();
        for _ in 0..samples {
            let value = random_separable(&mut g, &dims, branches).and_then(|(w, products)| {
                let pure: Vec<PureState> = products.iter().map(|p| p.to_state()).collect();
                fidelity_pure(&psi, &DensityMatrix::mixture(&w, &pure)?)
            });
            match value {
                Ok(v) => {
                    margin = margin.min(f - v);
                    if v > f + 1e-6 {
                        violations += 1;
                    }
                }
                Err(e) => return failed(7, NAME, e),
            }
        }
    }
    check(
        7,
        NAME,
        violations == 0,
        format!("{states} states x {samples} samples, {violations} violations, min margin = {margin:.3e}"),
    )
}

/// `E_Ge = E_RGe` exactly and `E_Gr² + F_sep = 1` on every report.
pub fn report_identities(reports: &[MeasureReport]) -> Check {
    const NAME: &str = "report identities E_Ge = E_RGe, E_Gr^2 + F_sep = 1";
    let mut mismatched = 0;
    let mut worst: f64 = 0.0;
    for r in reports {
        if r.e_ge.to_bits() != r.e_rge.to_bits() {
            mismatched += 1;
        }
        worst = worst.max((r.e_gr * r.e_gr + r.f_sep - 1.0).abs());
    }
    check(
        8,
        NAME,
        !reports.is_empty() && mismatched == 0 && worst <= 1e-12,
        format!(
            "{} reports, {mismatched} with E_Ge != E_RGe, max |E_Gr^2 + F_sep - 1| = {worst:.3e}",
            reports.len()
        ),
    )
}

#[allow(clippy::approx_constant)]
pub const SINGLET_EXPECTED: [(&str, f64); 4] =
    [("f_sep", 0.5), ("e_ge", 0.5), ("e_gr", 0.70710678), ("e_b", 0.58578644)];

/// Largest deviation of a report document's measures from the singlet values.
pub fn singlet_deviation(report: &serde_json::Value) -> Option<f64> {
    SINGLET_EXPECTED
        .iter()
        .map(|(k, v)| report.get(*k).and_then(|x| x.as_f64()).map(|x| (x - v).abs()))
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
}

/// The singlet pushed through the document pipeline as a pure and as a
/// mixed state.
pub fn bell_singlet(seed: u64) -> Check {
    const NAME: &str = "Bell singlet through the CLI pipeline";
    let args = SolveArgs {
        input: Default::default(),
        knobs: Knobs { seed, restarts: None, branches: None, tol: None },
        cut: None,
        format: Format::Full,
    };
    let pure_doc = emit_state(&State::Pure(singlet()));
    let mixed_doc = emit_state(&State::Mixed(singlet().to_density()));
    let run = |doc: &str, mixed: bool| -> Result<f64, String> {
        let state = parse_state(doc).map_err(|e| e.to_string())?;
        let out = if mixed { solve_mixed(state, &args) } else { solve_pure(state, &args) }
            .map_err(|e| e.to_string())?;
        if out.exit != 0 {
            return Err(format!("exit status {}", out.exit));
        }
        let report: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        singlet_deviation(&report).ok_or_else(|| "report lacks a measure".to_string())
    };
    match (run(&pure_doc, false), run(&mixed_doc, true)) {
        (Ok(p), Ok(m)) => check(
            9,
            NAME,
            p <= 1e-6 && m <= 1e-3,
            format!("pure max diff = {p:.3e}, mixed max diff = {m:.3e}"),
        ),
        (Err(e), _) | (_, Err(e)) => failed(9, NAME, e),
    }
}

pub fn run_suite(level: Level, seed: u64) -> Vec<Check> {
    let b = Budget::for_level(level);
    let (c1, mut reports) = two_qubit_theorem(b.two_qubit_states, seed);
    let (c3, pure) = multipartite_values(b.oracle_samples, seed);
    reports.extend(pure);
    vec![
        c1,
        schmidt_agreement(b.bipartite_states, seed),
        c3,
        fidelity_cross_check(b.fidelity_pairs, seed),
        hermitian_bound(b.bound_samples, seed),
        lagrange_weights(b.weight_vectors, b.weight_trials, seed),
        separable_floor(b.witness_states, b.witness_samples, seed),
        report_identities(&reports),
        bell_singlet(seed),
    ]
}
