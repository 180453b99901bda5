//! WebAssembly bindings for the browser demo in `www/index.html`.
//!
//! Each exported function returns a JSON string; the page renders it. The
//! `*_json` functions carry the logic and are tested natively.

use extquot::cohomology::{betti_x, cohomology_sequence, graded_invariants, total_dim};
use extquot::ktheory::ktheory_ranks;
use extquot::quotient::{rational_lattice, ProjectivePoint};
use extquot::report::{self, Record};
use extquot::{arith::parse_angles, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `n` the page asks for. Totals stay below 2^53 so JavaScript
/// numbers hold them exactly.
pub const MAX_N: u64 = 48;

fn check_n(n: u64) -> Result<(), Error> {
    if n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            got: n,
            bound: MAX_N + 1,
        });
    }
    Ok(())
}

fn records(rows: &[Record]) -> Value {
    Value::Array(rows.iter().map(Record::to_json).collect())
}

/// Invariants `a_j`, Betti numbers `b_j` of `X(n)`, and `g(m)/2` for `m <= n`.
pub fn betti_json(n: u64) -> Result<String, Error> {
    check_n(n)?;
    let g = total_dim(n)?;
    let a = graded_invariants(n)?;
    let b = betti_x(n)?;
    let row = report::betti_record(&a, &b, &g);
    let sequence = report::sequence_records(&cohomology_sequence(n)?);
    Ok(json!({ "table": row.to_json(), "sequence": records(&sequence) }).to_string())
}

/// Component census of `(T^n/T)//(Z/nZ)` with the K-theory breakdown.
pub fn components_json(n: u64) -> Result<String, Error> {
    check_n(n)?;
    let ranks = ktheory_ranks(n)?;
    Ok(json!({
        "n": n,
        "k0": ranks.k0.to_string(),
        "k1": ranks.k1.to_string(),
        "rows": records(&report::ktheory_records(&ranks)),
    })
    .to_string())
}

/// Isotropy, memberships and fibre of a point given as `"0,1/3,2/3"`, plus
/// the isotropy orders over its `n`-torsion lattice for context.
pub fn isotropy_json(point: &str) -> Result<String, Error> {
    let p = ProjectivePoint::normalize(&parse_angles(point)?)?;
    check_n(p.n())?;
    let mut histogram = serde_json::Map::new();
    if p.n() <= 6 {
        for q in rational_lattice(p.n(), p.n())? {
            let order = extquot::quotient::isotropy(&q).order.to_string();
            let slot = histogram.entry(order).or_insert(json!(0));
            *slot = json!(slot.as_u64().unwrap_or(0) + 1);
        }
    }
    Ok(json!({
        "point": report::isotropy_record(&p).to_json(),
        "lattice_orders": histogram,
    })
    .to_string())
}

fn to_js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn betti(n: u32) -> Result<String, JsError> {
    to_js(betti_json(n.into()))
}

#[wasm_bindgen]
pub fn components(n: u32) -> Result<String, JsError> {
    to_js(components_json(n.into()))
}

#[wasm_bindgen]
pub fn isotropy(point: &str) -> Result<String, JsError> {
    to_js(isotropy_json(point))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_payload() {
        let v: Value = serde_json::from_str(&betti_json(6).unwrap()).unwrap();
        assert_eq!(v["table"]["b"], json!([1, 0, 2, 2, 1, 0]));
        assert_eq!(v["table"]["half_g"], json!(6));
        assert_eq!(v["sequence"].as_array().unwrap().len(), 6);
        assert!(betti_json(0).is_err());
        assert!(betti_json(MAX_N + 1).is_err());
    }

    #[test]
    fn components_payload() {
        let v: Value = serde_json::from_str(&components_json(6).unwrap()).unwrap();
        assert_eq!(v["k0"], "26");
        assert_eq!(v["k1"], "2");
        // 6 + 3 + 2 + 3 + 6 + 1 components plus the total row
        assert_eq!(v["rows"].as_array().unwrap().len(), 22);
    }

    #[test]
    fn isotropy_payload() {
        let v: Value = serde_json::from_str(&isotropy_json("1/3,2/3,0").unwrap()).unwrap();
        assert_eq!(v["point"]["point"], "0,1/3,2/3");
        assert_eq!(v["point"]["order"], json!(3));
        assert_eq!(v["point"]["fibre"], json!(3));
        let hist = v["lattice_orders"].as_object().unwrap();
        let total: u64 = hist.values().map(|x| x.as_u64().unwrap()).sum();
        assert_eq!(total, 9);
        assert!(matches!(isotropy_json("0,a"), Err(Error::Parse { position: 2, .. })));
    }
}
