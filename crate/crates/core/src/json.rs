//! JSON encodings shared by every component. Exact scalars are encoded as
//! strings (`"p/q"` decimal fractions), never as JSON numbers, so nothing
//! is ever rounded. Polynomials are term arrays over the fixed variable
//! alphabet; matrices are row-major nested arrays.

use crate::bispectral::PolyExpOp;
use crate::cm::{CMPairRational, CMPairTrig};
use crate::darboux::DarbouxTransform;
use crate::difference::{DeltaOp, DifferenceOp};
use crate::diffop::DiffOp;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::multipoly::{Monomial, MultiPoly, NVARS};
use crate::quasipoly::{ChainTerm, KernelChainSpec, QuasiPoly};
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;
use crate::spectral::{SpectralData, SpectralGroup};
use crate::unipoly::UniPoly;
use num::BigRational;
use serde_json::{json, Map, Value};
use std::str::FromStr;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ratio_from_str(s: &str) -> Result<BigRational, Error> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let num = num::BigInt::from_str(p.trim()).map_err(|e| bad(format!("bad integer {p:?}: {e}")))?;
    let den = num::BigInt::from_str(q.trim()).map_err(|e| bad(format!("bad integer {q:?}: {e}")))?;
    if den == num::BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub fn scalar_json(c: &GaussianRational) -> Value {
    json!({ "re": ratio_string(&c.re), "im": ratio_string(&c.im) })
}

pub fn scalar_from_json(v: &Value) -> Result<GaussianRational, Error> {
    // accept bare strings/integers for convenience, objects canonically
    match v {
        Value::String(s) => Ok(GaussianRational::new(
            ratio_from_str(s)?,
            BigRational::from_integer(0.into()),
        )),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| bad("non-integer number for exact scalar"))?;
            Ok(GaussianRational::from_int(i))
        }
        Value::Object(m) => {
            let re = match m.get("re") {
                Some(Value::String(s)) => ratio_from_str(s)?,
                None => BigRational::from_integer(0.into()),
                _ => return Err(bad("field \"re\" must be a string")),
            };
            let im = match m.get("im") {
                Some(Value::String(s)) => ratio_from_str(s)?,
                None => BigRational::from_integer(0.into()),
                _ => return Err(bad("field \"im\" must be a string")),
            };
            Ok(GaussianRational::new(re, im))
        }
        _ => Err(bad("expected scalar encoding")),
    }
}

pub fn multipoly_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(m, c)| {
            json!({
                "exponents": m.0.iter().map(|&e| e as u64).collect::<Vec<_>>(),
                "coeff": scalar_json(c),
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn multipoly_from_json(v: &Value) -> Result<MultiPoly, Error> {
    let arr = v.as_array().ok_or_else(|| bad("expected term array"))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let exps = t
            .get("exponents")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term missing exponents"))?;
        if exps.len() != NVARS {
            return Err(bad(format!("exponent vector must have length {NVARS}")));
        }
        let mut m = [0u16; NVARS];
        for (i, e) in exps.iter().enumerate() {
            m[i] = e
                .as_u64()
                .and_then(|x| u16::try_from(x).ok())
                .ok_or_else(|| bad("exponent out of range"))?;
        }
        let c = scalar_from_json(t.get("coeff").ok_or_else(|| bad("term missing coeff"))?)?;
        terms.push((Monomial(m), c));
    }
    Ok(MultiPoly::from_terms(terms))
}

pub fn unipoly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs.iter().map(scalar_json).collect())
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly, Error> {
    let arr = v.as_array().ok_or_else(|| bad("expected coefficient array"))?;
    Ok(UniPoly::new(
        arr.iter().map(scalar_from_json).collect::<Result<_, _>>()?,
    ))
}

pub fn ratfunc_json(r: &RatFunc) -> Value {
    json!({ "num": multipoly_json(r.num()), "den": multipoly_json(r.den()) })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc, Error> {
    let num = multipoly_from_json(v.get("num").ok_or_else(|| bad("missing num"))?)?;
    let den = multipoly_from_json(v.get("den").ok_or_else(|| bad("missing den"))?)?;
    RatFunc::new(num, den)
}

pub fn matrix_json(m: &Matrix<GaussianRational>) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array((0..m.cols).map(|j| scalar_json(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix<GaussianRational>, Error> {
    let rows = v.as_array().ok_or_else(|| bad("expected matrix rows"))?;
    let n = rows.len();
    let mut data = Vec::new();
    let mut cols = 0;
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| bad("expected matrix row"))?;
        if i == 0 {
            cols = r.len();
        } else if r.len() != cols {
            return Err(bad("ragged matrix rows"));
        }
        for c in r {
            data.push(scalar_from_json(c)?);
        }
    }
    Ok(Matrix::new(n, cols, data))
}

pub fn diffop_json(p: &DiffOp) -> Value {
    json!({
        "order": p.order(),
        "coeffs": p.coeffs().iter().map(ratfunc_json).collect::<Vec<_>>(),
    })
}

pub fn polyexp_json(p: &PolyExpOp) -> Value {
    json!({
        "order": p.order(),
        "coeffs": p.coeffs().iter().map(unipoly_json).collect::<Vec<_>>(),
    })
}

pub fn difference_json(p: &DifferenceOp) -> Value {
    let mut coeffs = vec![Value::Null; p.order().map_or(0, |o| o + 1)];
    for (m, c) in p.terms() {
        coeffs[m] = ratfunc_json(c);
    }
    for c in coeffs.iter_mut() {
        if c.is_null() {
            *c = ratfunc_json(&RatFunc::zero());
        }
    }
    json!({
        "order": p.order(),
        "variable": p.var().name(),
        "coeffs": coeffs,
    })
}

pub fn delta_json(p: &DeltaOp) -> Value {
    json!({
        "order": p.order(),
        "variable": p.var().name(),
        "basis": "delta",
        "coeffs": p.coeffs().iter().map(ratfunc_json).collect::<Vec<_>>(),
    })
}

pub fn quasipoly_json(q: &QuasiPoly) -> Value {
    Value::Array(
        q.parts()
            .map(|(l, p)| json!({ "lambda": scalar_json(l), "poly": unipoly_json(p) }))
            .collect(),
    )
}

pub fn quasipoly_from_json(v: &Value) -> Result<QuasiPoly, Error> {
    let arr = v.as_array().ok_or_else(|| bad("expected part array"))?;
    let mut q = QuasiPoly::zero();
    for part in arr {
        let l = scalar_from_json(part.get("lambda").ok_or_else(|| bad("missing lambda"))?)?;
        let p = unipoly_from_json(part.get("poly").ok_or_else(|| bad("missing poly"))?)?;
        q = q.add(&QuasiPoly::exp_term(l, p));
    }
    Ok(q)
}

pub fn chain_json(c: &KernelChainSpec) -> Value {
    json!({
        "r": c.r,
        "terms": c.terms.iter().map(|t| json!({
            "k": t.k, "j": t.j, "coeff": scalar_json(&t.coeff),
        })).collect::<Vec<_>>(),
    })
}

pub fn chain_from_json(v: &Value) -> Result<KernelChainSpec, Error> {
    let r = v
        .get("r")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("chain missing group index r"))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("chain missing terms"))?;
    let terms = terms
        .iter()
        .map(|t| -> Result<ChainTerm, Error> {
            Ok(ChainTerm {
                k: t.get("k").and_then(Value::as_u64).ok_or_else(|| bad("term missing k"))?
                    as usize,
                j: t.get("j").and_then(Value::as_u64).ok_or_else(|| bad("term missing j"))?
                    as usize,
                coeff: scalar_from_json(t.get("coeff").ok_or_else(|| bad("term missing coeff"))?)?,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KernelChainSpec { r, terms })
}

/// Parsed construction input: either spectral data with derivative chains,
/// or a list of single-exponent points.
pub enum KernelSpec {
    Spectral {
        data: SpectralData,
        chains: Vec<KernelChainSpec>,
    },
    Adelic(Vec<(UniPoly, GaussianRational)>),
}

pub fn kernel_spec_json(s: &KernelSpec) -> Value {
    match s {
        KernelSpec::Spectral { data, chains } => json!({
            "spectral": {
                "groups": data.groups.iter().map(|g| json!({
                    "lambda": scalar_json(&g.lambda),
                    "mult": g.mults,
                })).collect::<Vec<_>>(),
            },
            "chains": chains.iter().map(chain_json).collect::<Vec<_>>(),
        }),
        KernelSpec::Adelic(points) => json!({
            "adelic": points.iter().map(|(p, l)| json!({
                "poly": unipoly_json(p),
                "lambda": scalar_json(l),
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn kernel_spec_from_json(v: &Value) -> Result<KernelSpec, Error> {
    if let Some(ad) = v.get("adelic") {
        let arr = ad.as_array().ok_or_else(|| bad("adelic must be an array"))?;
        let points = arr
            .iter()
            .map(|p| -> Result<_, Error> {
                Ok((
                    unipoly_from_json(p.get("poly").ok_or_else(|| bad("point missing poly"))?)?,
                    scalar_from_json(p.get("lambda").ok_or_else(|| bad("point missing lambda"))?)?,
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(KernelSpec::Adelic(points));
    }
    let sp = v
        .get("spectral")
        .ok_or_else(|| bad("expected \"spectral\" or \"adelic\" key"))?;
    let groups = sp
        .get("groups")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("spectral missing groups"))?;
    let groups = groups
        .iter()
        .map(|g| -> Result<SpectralGroup, Error> {
            let lambda =
                scalar_from_json(g.get("lambda").ok_or_else(|| bad("group missing lambda"))?)?;
            let mults = g
                .get("mult")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("group missing mult"))?
                .iter()
                .map(|m| m.as_u64().map(|x| x as usize).ok_or_else(|| bad("bad multiplicity")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SpectralGroup { lambda, mults })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let data = SpectralData::new(groups)?;
    let chains = match v.get("chains") {
        None => vec![],
        Some(c) => c
            .as_array()
            .ok_or_else(|| bad("chains must be an array"))?
            .iter()
            .map(chain_from_json)
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(KernelSpec::Spectral { data, chains })
}

pub fn cm_pair_rational_json(p: &CMPairRational) -> Value {
    json!({ "N": p.n, "X": matrix_json(&p.xt), "Z": matrix_json(&p.zt), "kind": "rational" })
}

pub fn cm_pair_trig_json(p: &CMPairTrig) -> Value {
    json!({ "N": p.n, "X": matrix_json(&p.x), "Z": matrix_json(&p.z), "kind": "trig" })
}

/// Parsed matrix pair of either kind.
pub enum AnyPair {
    Rational(CMPairRational),
    Trig(CMPairTrig),
}

pub fn cm_pair_from_json(v: &Value) -> Result<AnyPair, Error> {
    let n = v
        .get("N")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("pair missing N"))? as usize;
    let x = matrix_from_json(v.get("X").ok_or_else(|| bad("pair missing X"))?)?;
    let z = matrix_from_json(v.get("Z").ok_or_else(|| bad("pair missing Z"))?)?;
    if x.rows != n || z.rows != n {
        return Err(bad("matrix size disagrees with N"));
    }
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(AnyPair::Rational(CMPairRational::new(x, z)?)),
        Some("trig") => Ok(AnyPair::Trig(CMPairTrig::new(x, z)?)),
        _ => Err(bad("kind must be \"rational\" or \"trig\"")),
    }
}

/// Serialized factorization bundle with its boolean invariant results.
pub fn bundle_json(t: &DarbouxTransform, checks: &[(&str, bool)]) -> Value {
    let mut m = Map::new();
    m.insert("h".into(), unipoly_json(&t.h));
    m.insert("p".into(), diffop_json(&t.p));
    m.insert("q".into(), diffop_json(&t.q));
    m.insert("f".into(), unipoly_json(&t.f));
    m.insert("g".into(), unipoly_json(&t.g));
    m.insert("rho".into(), ratfunc_json(&t.rho));
    m.insert("rho_star".into(), ratfunc_json(&t.rho_star));
    m.insert(
        "basis".into(),
        Value::Array(t.basis.iter().map(quasipoly_json).collect()),
    );
    if let Some(trig) = &t.trig {
        m.insert(
            "trig".into(),
            json!({
                "theta": unipoly_json(&trig.theta),
                "nu": unipoly_json(&trig.nu),
                "p_bar": polyexp_json(&trig.p_bar),
                "q_bar": polyexp_json(&trig.q_bar),
            }),
        );
    }
    let mut cm = Map::new();
    for (k, v) in checks {
        cm.insert((*k).into(), Value::Bool(*v));
    }
    m.insert("checks".into(), Value::Object(cm));
    Value::Object(m)
}
