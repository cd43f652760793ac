//! Browser bindings: draw a realization, capture a progression by a
//! rectangle, and find a monochromatic edge under a random coloring.

use hyperrect::arithmetic::{ap_capture_rectangle, embed_integers, FiniteAP};
use hyperrect::construction::{
    build_gcg, build_hkc, find_monochromatic_edge, Limits, OddCycleProvider, StagedHypergraph,
};
use hyperrect::geometry::{emit_svg, incidence_hypergraph, realize_staged, Realization, SvgStyle, Variant};
use hyperrect::hypergraph::Coloring;
use hyperrect::{Error, Result};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Drawings beyond this many vertices are refused.
pub const MAX_DRAWN_VERTICES: u64 = 2000;

fn limits() -> Limits {
    Limits {
        max_vertices: MAX_DRAWN_VERTICES,
    }
}

/// `g == 0` selects `H_k^c`, otherwise `G^c(g)` over odd cycles.
fn build(k: usize, c: usize, g: usize) -> Result<StagedHypergraph> {
    if g == 0 {
        build_hkc(k, c, limits())
    } else {
        build_gcg(c, g, &mut OddCycleProvider, limits())
    }
}

pub fn realization_svg(k: usize, c: usize, g: usize, nested: bool) -> Result<String> {
    let s = build(k, c, g)?;
    let variant = if nested { Variant::Nested } else { Variant::Plain };
    let real = realize_staged(&s, variant)?;
    let doc = json!({
        "svg": emit_svg(&real, &SvgStyle::default())?,
        "summary": format!("{} points, {} rectangles, verified", real.points.len(), real.rects.len()),
    });
    Ok(doc.to_string())
}

pub fn capture_svg(set: &str, start: &str, difference: &str, length: &str) -> Result<String> {
    let int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    };
    let v = set
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(int)
        .collect::<Result<Vec<_>>>()?;
    if v.len() as u64 > MAX_DRAWN_VERTICES {
        return Err(Error::ResourceLimit {
            predicted: v.len().to_string(),
            limit: MAX_DRAWN_VERTICES,
        });
    }
    let e = embed_integers(&v)?;
    let ap = FiniteAP::new(int(start)? + &e.offset, int(difference)?, int(length)?)?;
    let rect = ap_capture_rectangle(&ap, &e.values)?;
    let inc = incidence_hypergraph(&e.points, std::slice::from_ref(&rect))?;
    let captured: Vec<String> = inc.hypergraph.edges()[0]
        .iter()
        .map(|&i| (BigInt::from(e.values[i].clone()) - &e.offset).to_string())
        .collect();
    let colors = (0..e.points.len())
        .map(|i| usize::from(inc.hypergraph.edges()[0].contains(&i)))
        .collect();
    let real = Realization {
        points: e.points,
        rects: vec![rect],
        hypergraph: inc.hypergraph,
    };
    let style = SvgStyle {
        vertex_colors: Some(colors),
        highlight: vec![0],
        ..SvgStyle::default()
    };
    let doc = json!({
        "svg": emit_svg(&real, &style)?,
        "summary": format!("captured {{{}}}", captured.join(", ")),
    });
    Ok(doc.to_string())
}

pub fn finder_svg(k: usize, c: usize, seed: u64) -> Result<String> {
    let s = build_hkc(k, c, limits())?;
    let real = realize_staged(&s, Variant::Plain)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palette = c.max(1);
    let col = Coloring::new(palette, (0..s.n()).map(|_| rng.random_range(0..palette)).collect())?;
    let found = find_monochromatic_edge(&s, &col)?;
    let style = SvgStyle {
        vertex_colors: Some(col.colors().to_vec()),
        highlight: vec![found.edge],
        ..SvgStyle::default()
    };
    let doc = json!({
        "svg": emit_svg(&real, &style)?,
        "summary": format!(
            "edge {} {:?} is monochromatic in color {}",
            found.edge,
            s.base().edge(found.edge),
            found.color
        ),
    });
    Ok(doc.to_string())
}

fn to_js(r: Result<String>) -> std::result::Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = realizationSvg)]
pub fn realization_svg_js(k: usize, c: usize, g: usize, nested: bool) -> std::result::Result<String, JsValue> {
    to_js(realization_svg(k, c, g, nested))
}

#[wasm_bindgen(js_name = captureSvg)]
pub fn capture_svg_js(
    set: &str,
    start: &str,
    difference: &str,
    length: &str,
) -> std::result::Result<String, JsValue> {
    to_js(capture_svg(set, start, difference, length))
}

#[wasm_bindgen(js_name = finderSvg)]
pub fn finder_svg_js(k: usize, c: usize, seed: u64) -> std::result::Result<String, JsValue> {
    to_js(finder_svg(k, c, seed))
}
