//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string:
//! the same schema as the command-line `--json` output, or an error
//! envelope `{"error": {...}}`.

use bifurcata::jets::{jet_series_table, Filter};
use bifurcata::newton::{face_polynomials, is_nondegenerate, newton_polygon};
use bifurcata::report::{to_json, ErrorEnvelope, JetJson, NewtonJson, ReportJson};
use bifurcata::{analyze, parse_polynomial, Error, Result};
use wasm_bindgen::prelude::*;

/// Largest `p^(2(n+1))` the page will enumerate; keeps the tab responsive.
pub const WEB_BUDGET: u64 = 1 << 20;

fn respond<T: serde::Serialize>(r: Result<T>) -> String {
    match r {
        Ok(v) => to_json(&v),
        Err(e) => to_json(&ErrorEnvelope::from(&e)),
    }
}

#[wasm_bindgen]
pub fn analyze_json(poly: &str) -> String {
    respond(parse_polynomial(poly).and_then(|f| Ok(ReportJson::from(&analyze(&f)?))))
}

#[wasm_bindgen]
pub fn newton_json(poly: &str) -> String {
    respond(parse_polynomial(poly).and_then(|f| {
        let np = newton_polygon(&f)?;
        let faces = face_polynomials(&f)?.iter().map(|g| g.render()).collect();
        Ok(NewtonJson::new(&np, faces, is_nondegenerate(&f)?))
    }))
}

/// Jet counts for levels `0..=levels`; `filter` is `on-fiber` or `order-ac`.
#[wasm_bindgen]
pub fn jet_table_json(poly: &str, prime: u32, levels: u32, filter: &str) -> String {
    respond(jet_table(poly, prime, levels, filter))
}

fn jet_table(poly: &str, prime: u32, levels: u32, filter: &str) -> Result<Vec<JetJson>> {
    let filter = match filter {
        "on-fiber" => Filter::OnFiber,
        "order-ac" => Filter::OrderAc,
        other => return Err(Error::Precondition(format!("unknown filter {other:?}"))),
    };
    let f = parse_polynomial(poly)?;
    let needed = (prime as u128).pow(2 * (levels + 1));
    if needed > WEB_BUDGET as u128 {
        return Err(Error::Budget { needed, budget: WEB_BUDGET });
    }
    Ok(jet_series_table(&f, prime as u64, levels, filter)?.iter().map(JetJson::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn analyze_worked_example() {
        let v = parse(&analyze_json("x*(x*y - 1)"));
        assert_eq!(v["chi_gen"], 0);
        assert_eq!(v["euler_jump_set"][0]["rational_hint"], "0");
    }

    #[test]
    fn newton_polygon_of_cusp() {
        let v = parse(&newton_json("y^2 - x^3"));
        assert_eq!(v["vertices"], serde_json::json!([[0, 0], [3, 0], [0, 2]]));
        assert_eq!(v["kouchnirenko_number"], 2);
    }

    #[test]
    fn jet_table_levels() {
        let v = parse(&jet_table_json("x", 2, 2, "order-ac"));
        let counts: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
        assert_eq!(counts, ["2", "4", "8"]);
    }

    #[test]
    fn errors_are_envelopes() {
        assert_eq!(parse(&analyze_json("x +"))["error"]["kind"], "parse");
        assert_eq!(parse(&jet_table_json("x", 2, 1, "sideways"))["error"]["kind"], "precondition");
        assert_eq!(parse(&jet_table_json("x", 5, 9, "on-fiber"))["error"]["kind"], "budget");
    }
}
