//! Reading and writing state documents.
//!
//! ```json
//! {"kind": "pure", "dims": [2, 2], "data": [[0.7071067812, 0], [0, 0], [0, 0], [0.7071067812, 0]]}
//! ```
//!
//! Pure states carry a flat list of `Πdims` complex amplitudes, mixed states a
//! square list of rows. Complex numbers are always `[re, im]`.

use serde_json::{json, Number, Value};
use sepfid_core::linalg::{hermitian_part, hermiticity_error, HermitianEigen};
use sepfid_core::{CMatrix, CVector, DensityMatrix, Error, PureState, SubsystemSignature, C64};

use crate::error::CliError;

/// Constraint violations up to this size are repaired on input.
pub const PARSE_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub enum State {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl State {
    pub fn signature(&self) -> &SubsystemSignature {
        match self {
            State::Pure(p) => p.signature(),
            State::Mixed(m) => m.signature(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            State::Pure(p) => p.to_density(),
            State::Mixed(m) => m.clone(),
        }
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn parse_complex(v: &Value) -> Result<C64, CliError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| malformed(format!("expected [re, im], found {v}")))?;
    let part = |x: &Value| {
        x.as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| malformed(format!("expected a finite number, found {x}")))
    };
    Ok(C64::new(part(&pair[0])?, part(&pair[1])?))
}

fn parse_dims(v: &Value) -> Result<Vec<usize>, CliError> {
    v.as_array()
        .ok_or_else(|| malformed("dims must be a list"))?
        .iter()
        .map(|d| {
            d.as_u64()
                .filter(|&d| d > 0)
                .map(|d| d as usize)
                .ok_or_else(|| malformed(format!("invalid dimension {d}")))
        })
        .collect()
}

fn parse_pure(data: &[Value], sig: SubsystemSignature) -> Result<PureState, CliError> {
    let d = sig.total_dim();
    if data.len() != d {
        return Err(Error::Dimension { expected: d, found: data.len() }.into());
    }
    let amps = data.iter().map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    let amps = CVector::from_vec(amps);
    let norm = amps.norm();
    if (norm - 1.0).abs() > PARSE_TOL {
        return Err(Error::Norm(norm).into());
    }
    Ok(PureState::normalized(amps, sig)?)
}

fn parse_mixed(data: &[Value], sig: SubsystemSignature) -> Result<DensityMatrix, CliError> {
    let d = sig.total_dim();
    if data.len() != d {
        return Err(Error::Dimension { expected: d * d, found: data.len() * d }.into());
    }
    let mut m = CMatrix::zeros(d, d);
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| malformed("mixed data must be a list of rows"))?;
        if row.len() != d {
            return Err(Error::Dimension { expected: d * d, found: row.len() * d }.into());
        }
        for (j, z) in row.iter().enumerate() {
            m[(i, j)] = parse_complex(z)?;
        }
    }
    let herr = hermiticity_error(&m);
    if herr > PARSE_TOL {
        return Err(Error::NotHermitian(herr).into());
    }
    let h = hermitian_part(&m);
    let eig = HermitianEigen::new(&h);
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -PARSE_TOL {
        return Err(Error::NotPsd(min).into());
    }
    let tr: f64 = eig.values.iter().sum();
    if (tr - 1.0).abs() > PARSE_TOL {
        return Err(Error::Trace(tr).into());
    }
    let fixed = if min < 0.0 {
        let clipped = eig.map(|v| v.max(0.0));
        let t: f64 = (0..d).map(|i| clipped[(i, i)].re).sum();
        clipped.unscale(t)
    } else {
        h.unscale(tr)
    };
    Ok(DensityMatrix::new(fixed, sig)?)
}

pub fn parse_value(doc: &Value) -> Result<State, CliError> {
    let obj = doc.as_object().ok_or_else(|| malformed("document must be an object"))?;
    let field = |k: &str| obj.get(k).ok_or_else(|| malformed(format!("missing field `{k}`")));
    let kind = field("kind")?.as_str().ok_or_else(|| malformed("kind must be a string"))?;
    let sig = SubsystemSignature::new(parse_dims(field("dims")?)?)?;
    let data = field("data")?.as_array().ok_or_else(|| malformed("data must be a list"))?;
    match kind {
        "pure" => Ok(State::Pure(parse_pure(data, sig)?)),
        "mixed" => Ok(State::Mixed(parse_mixed(data, sig)?)),
        other => Err(malformed(format!("unknown kind `{other}`"))),
    }
}

pub fn parse_state(text: &str) -> Result<State, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    parse_value(&doc)
}

/// A float with 17 significant digits, enough to round-trip exactly.
pub fn number(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_string_unchecked(format!("{x:.16e}")))
    } else {
        Value::Null
    }
}

pub fn complex(z: C64) -> Value {
    json!([number(z.re), number(z.im)])
}

pub fn vector(v: &CVector) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

pub fn numbers(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| number(x)).collect())
}

pub fn pure_value(psi: &PureState) -> Value {
    json!({
        "kind": "pure",
        "dims": psi.signature().dims(),
        "data": vector(psi.amplitudes()),
    })
}

pub fn mixed_value(rho: &DensityMatrix) -> Value {
    let m = rho.matrix();
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
        .collect();
    json!({
        "kind": "mixed",
        "dims": rho.signature().dims(),
        "data": rows,
    })
}

pub fn state_value(state: &State) -> Value {
    match state {
        State::Pure(p) => pure_value(p),
        State::Mixed(m) => mixed_value(m),
    }
}

pub fn emit_state(state: &State) -> String {
    to_text(&state_value(state))
}

/// Pretty-printed document with a trailing newline.
pub fn to_text(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values always serialize");
    s.push('\n');
    s
}
