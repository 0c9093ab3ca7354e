//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string;
//! errors surface as JavaScript exceptions carrying the message.

use num_traits::ToPrimitive;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use embedlimits_core::analytics::{ks_distance, EmbeddingDistribution, EmbeddingKind};
use embedlimits_core::document::FamilyDocument;
use embedlimits_core::enumerator::{census, MultiGraph};
use embedlimits_core::poly::{IntPolynomial, Rational};
use embedlimits_core::recurrence::{ladderlike_matrix, pathlike_matrix, Family, FamilySpec};
use embedlimits_core::spectral::{analyze, LimitCase, DEFAULT_TOLERANCE};

/// Enumeration ceiling in the browser, kept low so the page stays responsive.
pub const WEB_BUDGET: u64 = 2_000_000;

const FIXTURES: [(&str, &str); 9] = [
    ("claw-genus", include_str!("../../../fixtures/families/claw-genus.json")),
    ("claw-euler", include_str!("../../../fixtures/families/claw-euler.json")),
    ("grid-genus", include_str!("../../../fixtures/families/grid-genus.json")),
    ("grid-euler", include_str!("../../../fixtures/families/grid-euler.json")),
    ("ladders-genus", include_str!("../../../fixtures/families/ladders-genus.json")),
    ("ladders-euler", include_str!("../../../fixtures/families/ladders-euler.json")),
    ("ladder-euler-matrix", include_str!("../../../fixtures/families/ladder-euler-matrix.json")),
    ("constant-two", include_str!("../../../fixtures/families/constant-two.json")),
    ("imprimitive-diagonal", include_str!("../../../fixtures/families/imprimitive-diagonal.json")),
];

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize)]
struct Fixture<'a> {
    id: &'a str,
    name: String,
}

pub fn fixture_list() -> String {
    let list: Vec<Fixture> =
        FIXTURES.iter().map(|(id, text)| Fixture { id, name: FamilyDocument::parse(text).map(|d| d.name).unwrap_or_default() }).collect();
    serde_json::to_string(&list).expect("serializable")
}

#[derive(Serialize)]
struct Histogram {
    name: String,
    n: usize,
    case: LimitCase,
    e: Option<String>,
    v: Option<String>,
    mean: f64,
    variance: f64,
    ks_distance: Option<f64>,
    bars: Vec<f64>,
    /// `N(e·n, v·n)` density at each integer, when the limit is normal.
    gaussian: Option<Vec<f64>>,
}

pub fn histogram_json(fixture: &str, n: usize) -> Result<String, String> {
    let text = FIXTURES.iter().find(|(id, _)| *id == fixture).map(|(_, t)| *t).ok_or(format!("unknown fixture {fixture}"))?;
    let family = FamilyDocument::parse(text).and_then(|d| d.family(WEB_BUDGET)).map_err(|e| e.to_string())?;
    if !(1..=400).contains(&n) {
        return Err("n must lie in 1..=400".into());
    }
    let p = family.polynomial(n).map_err(|e| e.to_string())?;
    let dist = EmbeddingDistribution::from_polynomial(&p, family.embedding_kind(), n).map_err(|e| e.to_string())?;
    let report = analyze(&family, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let moments = dist.moments();
    let bars: Vec<f64> = dist.probabilities().iter().map(to_f64).collect();
    let (mut gaussian, mut ks) = (None, None);
    if let (LimitCase::NormalLimit, Some(e), Some(v)) = (report.case, &report.e, &report.v) {
        let mu = to_f64(e) * n as f64;
        let sigma = (to_f64(v) * n as f64).sqrt();
        let density = |k: f64| (-((k - mu) / sigma).powi(2) / 2.0).exp() / (sigma * std::f64::consts::TAU.sqrt());
        gaussian = Some((0..bars.len()).map(|k| density(k as f64)).collect());
        ks = ks_distance(&dist, mu, sigma).ok();
    }
    let out = Histogram {
        name: family.name().to_string(),
        n,
        case: report.case,
        e: report.e.map(|r| r.to_string()),
        v: report.v.map(|r| r.to_string()),
        mean: to_f64(&moments.mean),
        variance: to_f64(&moments.variance),
        ks_distance: ks,
        bars,
        gaussian,
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

fn parse_coefficients(text: &str) -> Result<IntPolynomial, String> {
    let coeffs = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| format!("not an integer: {s}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::from_i64s(&coeffs))
}

#[derive(Serialize)]
struct Parameters {
    matrix: Vec<Vec<String>>,
    char_poly: String,
    d: String,
    e: Option<String>,
    v: Option<String>,
    primitivity: String,
    case: LimitCase,
    diagnostics: Vec<String>,
}

/// `shape` is `"path"` (first polynomial `D_H`, second `S_H`) or `"ladder"` (`p`, `q`).
pub fn parameters_json(shape: &str, first: &str, second: &str) -> Result<String, String> {
    let (a, b) = (parse_coefficients(first)?, parse_coefficients(second)?);
    let matrix = match shape {
        "path" => pathlike_matrix(&a, &b),
        "ladder" => ladderlike_matrix(&a, &b),
        other => return Err(format!("unknown shape {other}")),
    }
    .map_err(|e| e.to_string())?;
    let ones = vec![IntPolynomial::one(); matrix.dim()];
    let display = matrix.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    let spec = FamilySpec::new(shape, EmbeddingKind::Genus, matrix, ones, None).map_err(|e| e.to_string())?;
    let report = analyze(&Family::Transfer(spec), DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let out = Parameters {
        matrix: display,
        char_poly: report.char_poly,
        d: report.d.to_string(),
        e: report.e.map(|r| r.to_string()),
        v: report.v.map(|r| r.to_string()),
        primitivity: format!("{:?}", report.primitivity),
        case: report.case,
        diagnostics: report.diagnostics,
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[derive(Serialize)]
struct Census {
    vertex_count: usize,
    edge_count: usize,
    cycle_rank: usize,
    genus: Vec<String>,
    euler: Vec<String>,
    crosscap: Vec<String>,
}

/// Edges as `u-v` pairs separated by spaces or commas, e.g. `0-1 1-2 2-0`.
pub fn census_json(edges: &str) -> Result<String, String> {
    let edges = edges
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (u, v) = pair.split_once('-').ok_or(format!("expected u-v, got {pair}"))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad vertex in {pair}"));
            Ok((parse(u)?, parse(v)?))
        })
        .collect::<Result<Vec<(usize, usize)>, String>>()?;
    let vertex_count = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
    let graph = MultiGraph::new(vertex_count, edges).map_err(|e| e.to_string())?;
    let c = census(&graph, WEB_BUDGET).map_err(|e| e.to_string())?;
    let strings = |p: &IntPolynomial| p.coeffs().iter().map(|c| c.to_string()).collect();
    let out = Census {
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        cycle_rank: graph.cycle_rank(),
        genus: strings(&c.genus),
        euler: strings(&c.euler),
        crosscap: strings(&c.crosscap),
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[wasm_bindgen]
pub fn fixtures() -> String {
    fixture_list()
}

#[wasm_bindgen]
pub fn histogram(fixture: &str, n: usize) -> Result<String, JsValue> {
    histogram_json(fixture, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn parameters(shape: &str, first: &str, second: &str) -> Result<String, JsValue> {
    parameters_json(shape, first, second).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn enumerate(edges: &str) -> Result<String, JsValue> {
    census_json(edges).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn every_fixture_loads() {
        let list: Value = serde_json::from_str(&fixture_list()).unwrap();
        assert_eq!(list.as_array().unwrap().len(), FIXTURES.len());
        for (id, _) in FIXTURES {
            histogram_json(id, 3).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
    }

    #[test]
    fn histogram_sums_to_one() {
        let h: Value = serde_json::from_str(&histogram_json("claw-genus", 20).unwrap()).unwrap();
        let total: f64 = h["bars"].as_array().unwrap().iter().map(|b| b.as_f64().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(h["e"], "6/7");
        assert!(h["gaussian"].is_array());
        let diag: Value = serde_json::from_str(&histogram_json("imprimitive-diagonal", 5).unwrap()).unwrap();
        assert!(diag["gaussian"].is_null());
        assert!(histogram_json("nope", 3).is_err());
    }

    #[test]
    fn ladder_parameters() {
        let p: Value = serde_json::from_str(&parameters_json("ladder", "1", "1").unwrap()).unwrap();
        assert_eq!(p["d"], "8");
        assert_eq!(p["primitivity"], "Primitive");
        let path: Value = serde_json::from_str(&parameters_json("path", "0 2", "1").unwrap()).unwrap();
        assert_eq!(path["d"], "3");
        assert!(parameters_json("ladder", "1", "0").is_err());
        assert!(parameters_json("ladder", "x", "1").is_err());
    }

    #[test]
    fn census_of_a_triangle() {
        let c: Value = serde_json::from_str(&census_json("0-1, 1-2, 2-0").unwrap()).unwrap();
        assert_eq!(c["euler"], serde_json::json!(["1", "1"]));
        assert_eq!(c["crosscap"], serde_json::json!(["0", "1"]));
        assert!(census_json("0-1 5-6").is_err());
    }
}
