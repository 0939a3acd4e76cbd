//! The JSON-shaped text format for rings, elements, ideals, matrices,
//! semifiltrations, certificates and witnesses.
//!
//! Serialization is canonical: object keys are sorted (serde_json's
//! default map), integers are emitted as JSON numbers when they fit in
//! i64 and as decimal strings otherwise, rationals with denominator 1
//! collapse to integers. `parse . serialize` is the identity on every
//! value type.

use integra_core::lombardi::MembershipWitness;
use integra_core::rees::ReesCertificate;
use integra_core::ring::{RingKind, Value as ElemValue};
use integra_core::{
    Element, Ideal, Matrix, ModulePresentation, ReesHandle, Ring, RingCertificate,
    SemifilCertificate, Semifiltration,
};
use num_bigint::{BigInt, BigUint, Sign};
use serde_json::{json, Map, Value};

/// A parse/semantic error naming the JSON path and the problem.
#[derive(Debug)]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for JsonError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError { path: path.into(), message: message.into() })
}

type JResult<T> = Result<T, JsonError>;

// ---- integers -----------------------------------------------------------

fn bigint_to_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn biguint_to_json(n: &BigUint) -> Value {
    bigint_to_json(&BigInt::from_biguint(Sign::Plus, n.clone()))
}

fn bigint_from_json(v: &Value, path: &str) -> JResult<BigInt> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigInt::from(i)),
            None => err(path, "expected an integer (use a decimal string for big values)"),
        },
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| JsonError { path: path.into(), message: "not a decimal integer".into() }),
        _ => err(path, "expected an integer"),
    }
}

// ---- rings ----------------------------------------------------------------

pub fn ring_to_json(r: &Ring) -> Value {
    match r.kind() {
        RingKind::Integers => json!({"ring": "Z"}),
        RingKind::Modular(m) => json!({"ring": "Zmod", "m": biguint_to_json(m)}),
        RingKind::Rationals => json!({"ring": "Q"}),
        RingKind::Polynomial { base, var } => {
            json!({"ring": "Poly", "base": ring_to_json(base), "var": var})
        }
        RingKind::MonicQuotient { base, modulus, var } => json!({
            "ring": "QuotMonic",
            "base": ring_to_json(base),
            "mod": modulus.iter().map(elem_to_json).collect::<Vec<_>>(),
            "var": var,
        }),
    }
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> JResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| JsonError { path: path.into(), message: format!("missing field \"{key}\"") })
}

fn get_str<'a>(v: &'a Value, key: &str, path: &str) -> JResult<&'a str> {
    get(v, key, path)?
        .as_str()
        .ok_or_else(|| JsonError { path: format!("{path}.{key}"), message: "expected a string".into() })
}

fn get_usize(v: &Value, key: &str, path: &str) -> JResult<usize> {
    get(v, key, path)?.as_u64().map(|u| u as usize).ok_or_else(|| JsonError {
        path: format!("{path}.{key}"),
        message: "expected a nonnegative integer".into(),
    })
}

pub fn ring_from_json(v: &Value, path: &str) -> JResult<Ring> {
    let tag = get_str(v, "ring", path)?;
    match tag {
        "Z" => Ok(Ring::integers()),
        "Q" => Ok(Ring::rationals()),
        "Zmod" => {
            let m = bigint_from_json(get(v, "m", path)?, &format!("{path}.m"))?;
            let m = m.to_biguint().ok_or_else(|| JsonError {
                path: format!("{path}.m"),
                message: "modulus must be positive".into(),
            })?;
            Ring::modular(m).map_err(|e| JsonError { path: format!("{path}.m"), message: e.to_string() })
        }
        "Poly" => {
            let base = ring_from_json(get(v, "base", path)?, &format!("{path}.base"))?;
            let var = get_str(v, "var", path)?;
            Ring::polynomial(&base, var)
                .map_err(|e| JsonError { path: format!("{path}.var"), message: e.to_string() })
        }
        "QuotMonic" => {
            let base = ring_from_json(get(v, "base", path)?, &format!("{path}.base"))?;
            let var = get_str(v, "var", path)?;
            let raw = get(v, "mod", path)?.as_array().ok_or_else(|| JsonError {
                path: format!("{path}.mod"),
                message: "expected a coefficient array".into(),
            })?;
            let modulus = raw
                .iter()
                .enumerate()
                .map(|(i, c)| elem_from_json(c, &base, &format!("{path}.mod[{i}]")))
                .collect::<JResult<Vec<_>>>()?;
            Ring::monic_quotient(&base, modulus, var)
                .map_err(|e| JsonError { path: format!("{path}.mod"), message: e.to_string() })
        }
        other => err(path, format!("unknown ring tag \"{other}\"")),
    }
}

// ---- elements -------------------------------------------------------------

pub fn elem_to_json(e: &Element) -> Value {
    match e.value() {
        ElemValue::Int(n) => bigint_to_json(n),
        ElemValue::Mod(n) => biguint_to_json(n),
        ElemValue::Rat(r) => {
            if r.denom() == &BigInt::from(1) {
                bigint_to_json(r.numer())
            } else {
                json!([bigint_to_json(r.numer()), bigint_to_json(r.denom())])
            }
        }
        ElemValue::Poly(_) => {
            let coeffs = e.coeffs_in_base().expect("polynomial layer");
            Value::Array(coeffs.iter().map(elem_to_json).collect())
        }
    }
}

pub fn elem_from_json(v: &Value, ring: &Ring, path: &str) -> JResult<Element> {
    match ring.kind() {
        RingKind::Integers | RingKind::Modular(_) => Ok(ring.from_int(bigint_from_json(v, path)?)),
        RingKind::Rationals => match v {
            Value::Array(parts) => {
                if parts.len() != 2 {
                    return err(path, "a rational is [numerator, denominator]");
                }
                let n = bigint_from_json(&parts[0], &format!("{path}[0]"))?;
                let d = bigint_from_json(&parts[1], &format!("{path}[1]"))?;
                ring.rational(n, d)
                    .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
            }
            _ => Ok(ring.from_int(bigint_from_json(v, path)?)),
        },
        RingKind::Polynomial { base, .. } | RingKind::MonicQuotient { base, .. } => match v {
            Value::Array(coeffs) => {
                let parsed = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| elem_from_json(c, base, &format!("{path}[{i}]")))
                    .collect::<JResult<Vec<_>>>()?;
                ring.poly_from_coeffs(parsed)
                    .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
            }
            // a bare integer denotes the constant n . 1
            _ => Ok(ring.from_int(bigint_from_json(v, path)?)),
        },
    }
}

// ---- ideals and matrices ---------------------------------------------------

pub fn ideal_to_json(i: &Ideal) -> Value {
    json!({
        "gens": i.generators().iter().map(elem_to_json).collect::<Vec<_>>(),
        "ring": ring_to_json(i.ring()),
    })
}

pub fn ideal_from_json(v: &Value, path: &str) -> JResult<Ideal> {
    let ring = ring_from_json(get(v, "ring", path)?, &format!("{path}.ring"))?;
    let gens = get(v, "gens", path)?
        .as_array()
        .ok_or_else(|| JsonError { path: format!("{path}.gens"), message: "expected an array".into() })?
        .iter()
        .enumerate()
        .map(|(i, g)| elem_from_json(g, &ring, &format!("{path}.gens[{i}]")))
        .collect::<JResult<Vec<_>>>()?;
    Ideal::new(ring, gens).map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let data: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| elem_to_json(m.at(i, j))).collect()))
        .collect();
    json!({
        "cols": m.cols(),
        "data": data,
        "ring": ring_to_json(m.ring()),
        "rows": m.rows(),
    })
}

pub fn matrix_from_json(v: &Value, path: &str) -> JResult<Matrix> {
    let ring = ring_from_json(get(v, "ring", path)?, &format!("{path}.ring"))?;
    let rows = get_usize(v, "rows", path)?;
    let cols = get_usize(v, "cols", path)?;
    let data = get(v, "data", path)?
        .as_array()
        .ok_or_else(|| JsonError { path: format!("{path}.data"), message: "expected an array".into() })?;
    if data.len() != rows {
        return err(&format!("{path}.data"), format!("expected {rows} rows"));
    }
    let mut rowvecs = Vec::with_capacity(rows);
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| JsonError {
            path: format!("{path}.data[{i}]"),
            message: "expected an array".into(),
        })?;
        if row.len() != cols {
            return err(&format!("{path}.data[{i}]"), format!("expected {cols} entries"));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, e)| elem_from_json(e, &ring, &format!("{path}.data[{i}][{j}]")))
            .collect::<JResult<Vec<_>>>()?;
        rowvecs.push(parsed);
    }
    Matrix::from_rows(ring, rowvecs).map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

// ---- semifiltrations --------------------------------------------------------

pub fn semifil_to_json(s: &Semifiltration) -> Value {
    if s.is_trivial() {
        return json!({"ring": ring_to_json(s.ring()), "semifil": "trivial"});
    }
    if let Some((l, r)) = s.product_parts() {
        return json!({
            "left": semifil_to_json(&l),
            "right": semifil_to_json(&r),
            "semifil": "product",
        });
    }
    if let Some(inner) = s.extended_inner() {
        return json!({
            "inner": semifil_to_json(&inner),
            "semifil": "extend",
            "target": ring_to_json(s.ring()),
        });
    }
    if let Some((inner, lambda)) = s.accel_parts() {
        return json!({"inner": semifil_to_json(&inner), "lambda": lambda, "semifil": "accel"});
    }
    if let Some(ideal) = s.powers_ideal() {
        return json!({"ideal": ideal_to_json(&ideal), "semifil": "powers"});
    }
    if let Some(ideal) = s.constant_ideal() {
        return json!({"ideal": ideal_to_json(&ideal), "semifil": "const"});
    }
    let (prefix, tail) = s.explicit_parts().expect("exhaustive rule match");
    json!({
        "prefix": prefix.iter().map(ideal_to_json).collect::<Vec<_>>(),
        "semifil": "explicit",
        "tail": semifil_to_json(&tail),
    })
}

pub fn semifil_from_json(v: &Value, path: &str) -> JResult<Semifiltration> {
    let tag = get_str(v, "semifil", path)?;
    let wrap = |r: Result<Semifiltration, integra_core::Error>| {
        r.map_err(|e| JsonError { path: path.into(), message: e.to_string() })
    };
    match tag {
        "trivial" => {
            let ring = ring_from_json(get(v, "ring", path)?, &format!("{path}.ring"))?;
            Ok(Semifiltration::trivial(ring))
        }
        "powers" => {
            let ideal = ideal_from_json(get(v, "ideal", path)?, &format!("{path}.ideal"))?;
            wrap(Semifiltration::powers(ideal))
        }
        "const" => {
            let ideal = ideal_from_json(get(v, "ideal", path)?, &format!("{path}.ideal"))?;
            wrap(Semifiltration::constant(ideal))
        }
        "product" => {
            let l = semifil_from_json(get(v, "left", path)?, &format!("{path}.left"))?;
            let r = semifil_from_json(get(v, "right", path)?, &format!("{path}.right"))?;
            wrap(Semifiltration::product(l, r))
        }
        "accel" => {
            let inner = semifil_from_json(get(v, "inner", path)?, &format!("{path}.inner"))?;
            let lambda = get_usize(v, "lambda", path)?;
            Ok(Semifiltration::accelerated(inner, lambda))
        }
        "extend" => {
            let inner = semifil_from_json(get(v, "inner", path)?, &format!("{path}.inner"))?;
            let target = ring_from_json(get(v, "target", path)?, &format!("{path}.target"))?;
            wrap(Semifiltration::extended(inner, target))
        }
        "explicit" => {
            let prefix = get(v, "prefix", path)?
                .as_array()
                .ok_or_else(|| JsonError {
                    path: format!("{path}.prefix"),
                    message: "expected an array".into(),
                })?
                .iter()
                .enumerate()
                .map(|(i, p)| ideal_from_json(p, &format!("{path}.prefix[{i}]")))
                .collect::<JResult<Vec<_>>>()?;
            let tail = semifil_from_json(get(v, "tail", path)?, &format!("{path}.tail"))?;
            wrap(Semifiltration::explicit(prefix, tail))
        }
        other => err(path, format!("unknown semifiltration tag \"{other}\"")),
    }
}

// ---- certificates ------------------------------------------------------------

pub fn ring_cert_to_json(c: &RingCertificate) -> Value {
    json!({
        "algebra": ring_to_json(c.algebra()),
        "base": ring_to_json(c.base()),
        "coeffs": c.coeffs().iter().map(elem_to_json).collect::<Vec<_>>(),
        "element": elem_to_json(c.element()),
    })
}

pub fn semifil_cert_to_json(c: &SemifilCertificate) -> Value {
    let mut v = ring_cert_to_json(c.ring_cert());
    v.as_object_mut()
        .unwrap()
        .insert("semifiltration".into(), semifil_to_json(c.semifiltration()));
    v
}

/// A certificate file, with or without the semifiltration refinement.
pub enum CertFile {
    Plain(RingCertificate),
    Semifil(SemifilCertificate),
}

impl CertFile {
    pub fn ring_cert(&self) -> &RingCertificate {
        match self {
            CertFile::Plain(c) => c,
            CertFile::Semifil(c) => c.ring_cert(),
        }
    }
}

pub fn cert_from_json(v: &Value, path: &str) -> JResult<CertFile> {
    let base = ring_from_json(get(v, "base", path)?, &format!("{path}.base"))?;
    let algebra = ring_from_json(get(v, "algebra", path)?, &format!("{path}.algebra"))?;
    let element = elem_from_json(get(v, "element", path)?, &algebra, &format!("{path}.element"))?;
    let coeffs = get(v, "coeffs", path)?
        .as_array()
        .ok_or_else(|| JsonError { path: format!("{path}.coeffs"), message: "expected an array".into() })?
        .iter()
        .enumerate()
        .map(|(i, c)| elem_from_json(c, &base, &format!("{path}.coeffs[{i}]")))
        .collect::<JResult<Vec<_>>>()?;
    let cert = RingCertificate::new(base, algebra, element, coeffs)
        .map_err(|e| JsonError { path: path.into(), message: e.to_string() })?;
    match v.get("semifiltration") {
        None => Ok(CertFile::Plain(cert)),
        Some(sf) => {
            let sf = semifil_from_json(sf, &format!("{path}.semifiltration"))?;
            cert.with_semifiltration(sf)
                .map(CertFile::Semifil)
                .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
        }
    }
}

pub fn semifil_cert_from_json(v: &Value, path: &str) -> JResult<SemifilCertificate> {
    match cert_from_json(v, path)? {
        CertFile::Semifil(c) => Ok(c),
        CertFile::Plain(_) => err(path, "missing field \"semifiltration\""),
    }
}

// ---- Rees certificates ---------------------------------------------------------

pub fn rees_cert_to_json(c: &ReesCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("algebra".into(), ring_to_json(c.algebra()));
    obj.insert("coeffs".into(), Value::Array(c.coeffs().iter().map(elem_to_json).collect()));
    obj.insert("element".into(), elem_to_json(c.element()));
    obj.insert(
        "handle".into(),
        json!({
            "semifil": semifil_to_json(c.handle().semifiltration()),
            "var": c.handle().var(),
        }),
    );
    if let Some(j) = c.jpart() {
        obj.insert("jpart".into(), semifil_to_json(j));
    }
    obj.insert("lambda".into(), json!(c.lambda()));
    Value::Object(obj)
}

pub fn rees_handle_from_json(v: &Value, path: &str) -> JResult<ReesHandle> {
    let sf = semifil_from_json(get(v, "semifil", path)?, &format!("{path}.semifil"))?;
    let var = get_str(v, "var", path)?;
    ReesHandle::new(sf, var).map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

pub fn rees_cert_from_json(v: &Value, path: &str) -> JResult<ReesCertificate> {
    let handle = rees_handle_from_json(get(v, "handle", path)?, &format!("{path}.handle"))?;
    let algebra = ring_from_json(get(v, "algebra", path)?, &format!("{path}.algebra"))?;
    let element = elem_from_json(get(v, "element", path)?, &algebra, &format!("{path}.element"))?;
    let lambda = get_usize(v, "lambda", path)?;
    let ambient = handle.ambient();
    let coeffs = get(v, "coeffs", path)?
        .as_array()
        .ok_or_else(|| JsonError { path: format!("{path}.coeffs"), message: "expected an array".into() })?
        .iter()
        .enumerate()
        .map(|(i, c)| elem_from_json(c, &ambient, &format!("{path}.coeffs[{i}]")))
        .collect::<JResult<Vec<_>>>()?;
    let jpart = match v.get("jpart") {
        None => None,
        Some(j) => Some(semifil_from_json(j, &format!("{path}.jpart"))?),
    };
    ReesCertificate::new(handle, jpart, algebra, element, lambda, coeffs)
        .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

// ---- witnesses -------------------------------------------------------------------

pub fn witness_to_json(w: &MembershipWitness) -> Value {
    let (n, m, mu, nu) = w.exponents();
    let rel = |it: Vec<(usize, usize, &Element)>| {
        Value::Array(it.into_iter().map(|(i, j, c)| json!([i, j, elem_to_json(c)])).collect())
    };
    json!({
        "m": m,
        "mu": mu,
        "n": n,
        "nu": nu,
        "rel1": rel(w.rel1().collect()),
        "rel2": rel(w.rel2().collect()),
        "ring": ring_to_json(w.base()),
    })
}

fn rel_from_json(v: &Value, ring: &Ring, path: &str) -> JResult<Vec<(usize, usize, Element)>> {
    let arr = v.as_array().ok_or_else(|| JsonError {
        path: path.into(),
        message: "expected an array of [i, j, coeff]".into(),
    })?;
    arr.iter()
        .enumerate()
        .map(|(k, t)| {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| JsonError {
                path: format!("{path}[{k}]"),
                message: "expected [i, j, coeff]".into(),
            })?;
            let i = t[0].as_u64().ok_or_else(|| JsonError {
                path: format!("{path}[{k}][0]"),
                message: "expected a nonnegative integer".into(),
            })? as usize;
            let j = t[1].as_u64().ok_or_else(|| JsonError {
                path: format!("{path}[{k}][1]"),
                message: "expected a nonnegative integer".into(),
            })? as usize;
            let c = elem_from_json(&t[2], ring, &format!("{path}[{k}][2]"))?;
            Ok((i, j, c))
        })
        .collect()
}

pub fn witness_from_json(v: &Value, path: &str) -> JResult<MembershipWitness> {
    let ring = ring_from_json(get(v, "ring", path)?, &format!("{path}.ring"))?;
    let n = get_usize(v, "n", path)?;
    let m = get_usize(v, "m", path)?;
    let mu = get_usize(v, "mu", path)?;
    let nu = get_usize(v, "nu", path)?;
    let rel1 = rel_from_json(get(v, "rel1", path)?, &ring, &format!("{path}.rel1"))?;
    let rel2 = rel_from_json(get(v, "rel2", path)?, &ring, &format!("{path}.rel2"))?;
    MembershipWitness::new(ring, n, m, mu, nu, rel1, rel2)
        .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

// ---- module presentations -----------------------------------------------------------

pub fn presentation_from_json(v: &Value, path: &str) -> JResult<ModulePresentation> {
    let base = ring_from_json(get(v, "base", path)?, &format!("{path}.base"))?;
    let algebra = ring_from_json(get(v, "algebra", path)?, &format!("{path}.algebra"))?;
    let generators = get(v, "generators", path)?
        .as_array()
        .ok_or_else(|| JsonError {
            path: format!("{path}.generators"),
            message: "expected an array".into(),
        })?
        .iter()
        .enumerate()
        .map(|(i, g)| elem_from_json(g, &algebra, &format!("{path}.generators[{i}]")))
        .collect::<JResult<Vec<_>>>()?;
    let action = matrix_from_json(get(v, "action", path)?, &format!("{path}.action"))?;
    let element = elem_from_json(get(v, "element", path)?, &algebra, &format!("{path}.element"))?;
    ModulePresentation::new(base, algebra, generators, action, element)
        .map_err(|e| JsonError { path: path.into(), message: e.to_string() })
}

/// Canonical text form: pretty-printed with sorted keys and a trailing
/// newline, byte-stable across runs.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
