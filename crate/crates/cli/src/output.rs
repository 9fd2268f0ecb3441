use std::collections::BTreeMap;

use ellweyl::special_fn::{WeightValue, C64};
use serde::Serialize;

/// `1.5`, `-2`, `0.25+1i` or `0.25-1i`.
pub fn complex(v: C64) -> String {
    if v.im == 0.0 {
        return real(v.re);
    }
    let sign = if v.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", real(v.re), real(v.im.abs()))
}

fn real(x: f64) -> String {
    // avoid printing "-0"
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn value(v: &WeightValue) -> String {
    match v {
        WeightValue::Numeric(c) => complex(*c),
        WeightValue::Symbolic(p) => p.to_string(),
    }
}

fn monomial(i: u32, j: u32) -> String {
    let power = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [power("x", i), power("y", j)].into_iter().flatten().collect::<Vec<_>>().join(" ")
}

/// An evaluated normal form in the same layout as the symbolic one, highest
/// monomial first: `x^4 y^4 + 4 x^3 y^3 + 2 x^2 y^2`.
pub fn evaluated(terms: &BTreeMap<(u32, u32), C64>) -> String {
    let mut out = String::new();
    for (n, (&(i, j), &c)) in terms.iter().rev().enumerate() {
        let mono = monomial(i, j);
        let negative = c.im == 0.0 && c.re < 0.0;
        let mag = if negative { -c } else { c };
        if n == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff = match (mag == C64::new(1.0, 0.0), mono.is_empty(), mag.im == 0.0) {
            (true, false, _) => String::new(),
            (_, _, true) => real(mag.re),
            _ => format!("({})", complex(mag)),
        };
        out.push_str(&coeff);
        if !coeff.is_empty() && !mono.is_empty() {
            out.push(' ');
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize)]
struct EvaluatedTerm {
    i: u32,
    j: u32,
    coeff: C64,
}

#[derive(Serialize)]
struct EvaluatedForm {
    terms: Vec<EvaluatedTerm>,
}

/// Same shape as the symbolic normal form JSON with numeric coefficients.
pub fn evaluated_json(terms: &BTreeMap<(u32, u32), C64>) -> serde_json::Value {
    let form = EvaluatedForm { terms: terms.iter().map(|(&(i, j), &coeff)| EvaluatedTerm { i, j, coeff }).collect() };
    serde_json::to_value(form).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formats() {
        assert_eq!(complex(C64::new(1.5, 0.0)), "1.5");
        assert_eq!(complex(C64::new(-2.0, -0.0)), "-2");
        assert_eq!(complex(C64::new(0.25, -1.0)), "0.25-1i");
        assert_eq!(complex(C64::new(-0.0, 3.0)), "0+3i");
    }

    #[test]
    fn evaluated_forms() {
        let terms: BTreeMap<_, _> = [((2, 2), C64::new(2.0, 0.0)), ((3, 3), C64::new(4.0, 0.0)), ((4, 4), C64::new(1.0, 0.0))].into();
        assert_eq!(evaluated(&terms), "x^4 y^4 + 4 x^3 y^3 + 2 x^2 y^2");
        let terms: BTreeMap<_, _> = [((0, 0), C64::new(1.0, 0.0)), ((1, 1), C64::new(0.5, 0.5)), ((0, 1), C64::new(-3.0, 0.0))].into();
        assert_eq!(evaluated(&terms), "(0.5+0.5i) x y - 3 y + 1");
        assert_eq!(evaluated(&BTreeMap::new()), "0");
    }
}
