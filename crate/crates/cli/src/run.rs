//! Command dispatch and report assembly.

use std::path::Path;

use serde_json::{json, Value};
use sepfid_core::convex_roof::pure_report;
use sepfid_core::{
    f_sep_mixed, fidelity, fidelity_pure, two_qubit_report, uhlmann_fidelity, Bipartition, LambdaOptions,
    MeasureReport, RoofOptions,
};

use crate::args::{Cli, Command, FidelityArgs, Format, InputArgs, Knobs, SolveArgs, VerifyArgs};
use crate::error::CliError;
use crate::statefile::{number, numbers, parse_state, pure_value, to_text, vector, State};
use crate::verify;

pub const TOOL: &str = "sepfid";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONVENTION: &str = "squared";
pub const DEFINITION: &str = "F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2";

/// Exit status for a report produced by a solver that did not converge.
pub const EXIT_NOT_CONVERGED: u8 = 2;

/// Text for stdout, optional lines for stderr, and the exit status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit: u8,
}

impl Outcome {
    fn report(doc: Value, headline: f64, format: Format, converged: bool) -> Self {
        let stdout = match format {
            Format::Full => to_text(&doc),
            Format::Value => format!("{}\n", number(headline)),
        };
        Self {
            stdout,
            stderr: Vec::new(),
            exit: if converged { 0 } else { EXIT_NOT_CONVERGED },
        }
    }
}

pub fn read_state(path: &Path) -> Result<State, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text)
}

/// Parses `a,b|c` into a bipartition of party indices.
pub fn parse_cut(text: &str) -> Result<Bipartition, CliError> {
    let bad = || CliError::Usage(format!("invalid cut `{text}`, expected e.g. `0,1|2`"));
    let (l, r) = text.split_once('|').ok_or_else(bad)?;
    let side = |s: &str| {
        s.split(',')
            .map(|k| k.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(Bipartition::new(side(l)?, side(r)?))
}

fn check_knobs(knobs: &Knobs) -> Result<(), CliError> {
    if knobs.tol.is_some_and(|t| !t.is_finite() || t < 0.0) {
        return Err(CliError::Usage("--tol must be a finite nonnegative number".into()));
    }
    if knobs.restarts == Some(0) {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    Ok(())
}

pub fn lambda_options(knobs: &Knobs) -> LambdaOptions {
    let defaults = LambdaOptions::default();
    LambdaOptions {
        restarts: knobs.restarts.unwrap_or(defaults.restarts),
        tolerance: knobs.tol.unwrap_or(defaults.tolerance),
        seed: knobs.seed,
        ..defaults
    }
}

pub fn roof_options(knobs: &Knobs) -> RoofOptions {
    let defaults = RoofOptions::default();
    RoofOptions {
        branches: knobs.branches,
        restarts: knobs.restarts.unwrap_or(defaults.restarts),
        tolerance: knobs.tol.unwrap_or(defaults.tolerance),
        inner: LambdaOptions {
            tolerance: knobs.tol.unwrap_or(defaults.inner.tolerance),
            seed: knobs.seed,
            ..defaults.inner
        },
        seed: knobs.seed,
        ..defaults
    }
}

fn header(command: &str, seed: Option<u64>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(command));
    m.insert("fidelity_convention".into(), json!(CONVENTION));
    m.insert("fidelity_definition".into(), json!(DEFINITION));
    if let Some(seed) = seed {
        m.insert("seed".into(), json!(seed));
    }
    m
}

/// Report document for a measure computation.
pub fn measure_document(command: &str, seed: u64, state: &State, cut: Option<&str>, r: &MeasureReport) -> Value {
    let mut m = header(command, Some(seed));
    m.insert("dims".into(), json!(state.signature().dims()));
    m.insert("cut".into(), json!(cut));
    m.insert("f_sep".into(), number(r.f_sep));
    m.insert("e_ge".into(), number(r.e_ge));
    m.insert("e_rge".into(), number(r.e_rge));
    m.insert("e_gr".into(), number(r.e_gr));
    m.insert("e_b".into(), number(r.e_b));
    let d = &r.best_decomposition;
    m.insert(
        "best_decomposition".into(),
        json!({
            "weights": numbers(d.weights()),
            "states": d.states().iter().map(pure_value).collect::<Vec<_>>(),
        }),
    );
    let e = &r.closest_separable;
    m.insert(
        "closest_separable".into(),
        json!({
            "weights": numbers(e.weights()),
            "branches": e.branches().iter().map(|b| {
                json!({
                    "dims": b.signature().dims(),
                    "factors": b.factors().iter().map(vector).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        }),
    );
    m.insert(
        "diagnostics".into(),
        json!({
            "restarts": r.diagnostics.restarts,
            "iterations": r.diagnostics.iterations,
            "converged": r.diagnostics.converged,
            "branches": d.len(),
        }),
    );
    Value::Object(m)
}

fn regroup(state: State, cut: &Option<String>) -> Result<State, CliError> {
    let Some(text) = cut else { return Ok(state) };
    let cut = parse_cut(text)?;
    Ok(match state {
        State::Pure(p) => State::Pure(p.regroup(&cut)?),
        State::Mixed(m) => State::Mixed(m.regroup(&cut)?),
    })
}

/// `pure` on an already parsed state.
pub fn solve_pure(state: State, args: &SolveArgs) -> Result<Outcome, CliError> {
    check_knobs(&args.knobs)?;
    let State::Pure(psi) = regroup(state, &args.cut)? else {
        return Err(CliError::Usage("`pure` needs a pure state document; use `mixed`".into()));
    };
    let r = pure_report(&psi, &lambda_options(&args.knobs))?;
    let doc = measure_document("pure", args.knobs.seed, &State::Pure(psi), args.cut.as_deref(), &r);
    Ok(Outcome::report(doc, r.f_sep, args.format, r.diagnostics.converged))
}

/// `mixed` on an already parsed state; pure documents are treated as
/// rank-one density matrices.
pub fn solve_mixed(state: State, args: &SolveArgs) -> Result<Outcome, CliError> {
    check_knobs(&args.knobs)?;
    let rho = regroup(state, &args.cut)?.to_density();
    let r = f_sep_mixed(&rho, &roof_options(&args.knobs))?;
    let doc = measure_document("mixed", args.knobs.seed, &State::Mixed(rho), args.cut.as_deref(), &r);
    Ok(Outcome::report(doc, r.f_sep, args.format, r.diagnostics.converged))
}

fn two_qubit(args: &InputArgs) -> Result<Outcome, CliError> {
    let state = read_state(&args.input)?;
    let r = two_qubit_report(&state.to_density())?;
    let mut m = header("twoqubit", None);
    m.insert("dims".into(), json!(state.signature().dims()));
    m.insert("concurrence".into(), number(r.concurrence));
    m.insert("f_sep".into(), number(r.f_sep));
    m.insert("e_ge".into(), number(r.e_ge));
    m.insert("e_rge".into(), number(r.e_ge));
    m.insert("e_gr".into(), number(r.e_ge.sqrt()));
    m.insert("e_b".into(), number(r.e_b));
    m.insert("diagnostics".into(), json!({ "method": "closed_form", "converged": true }));
    Ok(Outcome::report(Value::Object(m), r.concurrence, args.format, true))
}

fn fidelity_command(args: &FidelityArgs) -> Result<Outcome, CliError> {
    let a = read_state(&args.input)?;
    let b = read_state(&args.other)?;
    let (ra, rb) = (a.to_density(), b.to_density());
    let f = fidelity(&ra, &rb)?;
    let u = uhlmann_fidelity(&ra, &rb)?;
    let shortcut = match (&a, &b) {
        (State::Pure(p), _) => Some(fidelity_pure(p, &rb)?),
        (_, State::Pure(p)) => Some(fidelity_pure(p, &ra)?),
        _ => None,
    };
    let mut m = header("fidelity", None);
    m.insert("dims".into(), json!(a.signature().dims()));
    m.insert("fidelity".into(), number(f));
    m.insert("uhlmann_fidelity".into(), number(u));
    m.insert("fidelity_pure".into(), shortcut.map_or(Value::Null, number));
    Ok(Outcome::report(Value::Object(m), f, args.format, true))
}

fn verify_command(args: &VerifyArgs) -> Outcome {
    let checks = verify::run_suite(args.level, args.seed);
    let passed = checks.iter().all(|c| c.passed);
    let stdout = match args.format {
        Format::Full => {
            let mut m = header("verify", Some(args.seed));
            m.insert("level".into(), json!(format!("{:?}", args.level).to_lowercase()));
            m.insert("passed".into(), json!(passed));
            m.insert(
                "checks".into(),
                Value::Array(
                    checks
                        .iter()
                        .map(|c| json!({ "id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail }))
                        .collect(),
                ),
            );
            to_text(&Value::Object(m))
        }
        Format::Value => format!("{}\n", if passed { "pass" } else { "fail" }),
    };
    Outcome {
        stdout,
        stderr: checks.iter().map(|c| c.to_string()).collect(),
        exit: if passed { 0 } else { 1 },
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Pure(args) => solve_pure(read_state(&args.input)?, args),
        Command::Mixed(args) => solve_mixed(read_state(&args.input)?, args),
        Command::Twoqubit(args) => two_qubit(args),
        Command::Fidelity(args) => fidelity_command(args),
        Command::Verify(args) => Ok(verify_command(args)),
    }
}
