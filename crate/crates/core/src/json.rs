//! JSON forms for the wire- and file-level interfaces: polytopes, Laurent
//! polynomials with grammar-string coefficients, and root sets.

use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::geometry::{ExpVec, LatticePolytope};
use crate::laurent::Laurent;
use crate::mpoly::{parse_expr, ParamList};
use crate::ratfunc::RatFunc;

/// `{"dim": n, "vertices": [[...], ...]}`
pub fn polytope_to_json(p: &LatticePolytope) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": p.vertices(),
    })
}

/// Facet list as `[{"normal": [...], "offset": k}, ...]`.
pub fn facets_to_json(p: &LatticePolytope) -> Value {
    match p.facets() {
        Ok(fs) => Value::Array(
            fs.iter()
                .map(|f| json!({"normal": f.normal, "offset": f.offset}))
                .collect(),
        ),
        Err(_) => Value::Null,
    }
}

pub fn polytope_from_json(v: &Value) -> Result<LatticePolytope, String> {
    let obj = v.as_object().ok_or("polytope must be an object")?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or("polytope needs an integer `dim`")? as usize;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or("polytope needs a `vertices` array")?;
    let mut pts: Vec<ExpVec> = Vec::with_capacity(verts.len());
    for (i, row) in verts.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format!("/vertices/{i}: expected an array"))?;
        if row.len() != dim {
            return Err(format!("/vertices/{i}: expected {dim} coordinates"));
        }
        let mut p = Vec::with_capacity(dim);
        for (j, c) in row.iter().enumerate() {
            p.push(
                c.as_i64()
                    .ok_or_else(|| format!("/vertices/{i}/{j}: expected an integer"))?,
            );
        }
        pts.push(p);
    }
    LatticePolytope::convex_hull(&pts).map_err(|e| e.to_string())
}

/// `{"terms": [{"exp": [...], "coeff": "<grammar string>"}, ...]}` with terms
/// in the polynomial's deterministic order.
pub fn laurent_to_json<C: Coeff>(f: &Laurent<C>) -> Value {
    json!({
        "terms": f
            .terms()
            .map(|(e, c)| json!({"exp": e, "coeff": c.to_string()}))
            .collect::<Vec<_>>(),
    })
}

/// Parses a Laurent polynomial whose coefficients are expressions over
/// `params`. Errors carry JSON-pointer-style paths relative to the given
/// prefix.
pub fn laurent_from_json(
    v: &Value,
    nvars: usize,
    params: &ParamList,
    at: &str,
) -> Result<Laurent<RatFunc>, String> {
    let obj = v.as_object().ok_or_else(|| format!("{at}: expected an object"))?;
    let terms = obj
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| format!("{at}/terms: expected an array"))?;
    let mut out = Laurent::zero(nvars);
    for (i, t) in terms.iter().enumerate() {
        let t = t
            .as_object()
            .ok_or_else(|| format!("{at}/terms/{i}: expected an object"))?;
        let exp = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| format!("{at}/terms/{i}/exp: expected an array"))?;
        if exp.len() != nvars {
            return Err(format!(
                "{at}/terms/{i}/exp: expected {nvars} exponents, got {}",
                exp.len()
            ));
        }
        let mut e = Vec::with_capacity(nvars);
        for (j, c) in exp.iter().enumerate() {
            e.push(
                c.as_i64()
                    .ok_or_else(|| format!("{at}/terms/{i}/exp/{j}: expected an integer"))?,
            );
        }
        let src = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| format!("{at}/terms/{i}/coeff: expected a string"))?;
        let poly =
            parse_expr(src, params).map_err(|err| format!("{at}/terms/{i}/coeff: {err}"))?;
        out.add_term(e, RatFunc::from_poly(poly));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::params;

    #[test]
    fn polytope_roundtrip() {
        let p = LatticePolytope::convex_hull(&[vec![-1, 0], vec![0, -1], vec![2, 1]]).unwrap();
        let v = polytope_to_json(&p);
        let q = polytope_from_json(&v).unwrap();
        assert_eq!(p, q);
        assert!(facets_to_json(&p).as_array().unwrap().len() == 3);
    }

    #[test]
    fn laurent_roundtrip() {
        let ps = params(&["a1", "a2"]);
        let v = serde_json::json!({
            "terms": [
                {"exp": [1, 0], "coeff": "a1"},
                {"exp": [-1, 2], "coeff": "3/2*a2 - 1"},
            ]
        });
        let f = laurent_from_json(&v, 2, &ps, "/g").unwrap();
        assert_eq!(f.num_terms(), 2);
        let back = laurent_to_json(&f);
        let again = laurent_from_json(&back, 2, &ps, "/g").unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let ps = params(&["a1"]);
        let v = serde_json::json!({"terms": [{"exp": [1, 0, 0], "coeff": "a1"}]});
        let err = laurent_from_json(&v, 2, &ps, "/system/0").unwrap_err();
        assert!(err.contains("/system/0/terms/0/exp"), "{err}");
        let v2 = serde_json::json!({"terms": [{"exp": [1, 0], "coeff": "zz"}]});
        let err2 = laurent_from_json(&v2, 2, &ps, "/system/0").unwrap_err();
        assert!(err2.contains("unknown symbol"), "{err2}");
    }
}
