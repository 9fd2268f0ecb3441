//! wasm-bindgen entry points for `www/index.html`.
//!
//! Every export takes plain numbers or strings and returns a JSON string,
//! either `{"value": ...}` or `{"error": "..."}`, so the page needs no glue
//! beyond `JSON.parse` and the functions run unchanged in native tests.

use ellweyl::ncword::{normal_order, parse_word, RelationSystem};
use ellweyl::special_fn::{binom_numeric, theta, ParameterSet, WeightFamily, C64};
use ellweyl::Result;
use serde::{Deserialize, Serialize};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn respond<T: Serialize>(r: Result<T>) -> String {
    match r {
        Ok(v) => json!({ "value": v }).to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// θ(x;p), answered as `{"value": [re, im]}`.
#[wasm_bindgen]
pub fn theta_value(x_re: f64, x_im: f64, p_re: f64, p_im: f64) -> String {
    respond(theta(C64::new(x_re, x_im), C64::new(p_re, p_im)))
}

#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
enum FamilyJson {
    Elliptic { a: C64, b: C64, q: C64, p: C64 },
    Bq { b: C64, q: C64 },
    Aq { a: C64, q: C64 },
    Q { q: C64 },
}

fn family(json: &str) -> Result<WeightFamily> {
    let parsed: FamilyJson = serde_json::from_str(json).map_err(|e| ellweyl::Error::Domain(format!("bad family: {e}")))?;
    Ok(match parsed {
        FamilyJson::Elliptic { a, b, q, p } => WeightFamily::Elliptic(ParameterSet::elliptic(a, b, q, p)?),
        FamilyJson::Bq { b, q } => WeightFamily::BQ { b, q },
        FamilyJson::Aq { a, q } => WeightFamily::AQ { a, q },
        FamilyJson::Q { q } => WeightFamily::Q { q },
    })
}

/// Row `n` of the binomial coefficients of a family given as JSON, e.g.
/// `{"family": "elliptic", "a": [0.9, 0.1], "b": [1.2, 0], "q": [0.5, 0.2], "p": [0.1, 0]}`.
#[wasm_bindgen]
pub fn binom_row(family_json: &str, n: u32) -> String {
    respond(family(family_json).and_then(|f| (0..=n as i64).map(|k| binom_numeric(&f, n as i64, k)).collect::<Result<Vec<_>>>()))
}

/// Symbolic normal form of `word` under `comm`, `weyl` or `file`, as text.
#[wasm_bindgen]
pub fn normal_form(word: &str, system: &str) -> String {
    let rs = match system {
        "comm" => RelationSystem::Homogeneous,
        "weyl" => RelationSystem::RookWeyl,
        "file" => RelationSystem::File,
        other => return json!({ "error": format!("unknown system {other:?}") }).to_string(),
    };
    respond(parse_word(word).map(|w| normal_order(&w, rs).to_string()))
}
