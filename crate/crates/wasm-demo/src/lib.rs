//! Browser bindings for the interactive demo page: generate an instance,
//! sketch it, and draw approximate shortest paths, all returned as SVG
//! markup for direct injection into the page.

use wasm_bindgen::prelude::*;

use pathsketch::corridors::approx_shortest_path_simple;
use pathsketch::domain_io::{generate_instance, parse_domain_file, ObstacleShape};
use pathsketch::geom::Point;
use pathsketch::oracle::exact_shortest_path;
use pathsketch::pipeline::approx_shortest_path_convex;
use pathsketch::sketch::{build_sketch, make_params, ParamMode};
use pathsketch::svg::{render_svg, SvgOverlays};

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Generate a random instance and return its domain-file JSON.
#[wasm_bindgen]
pub fn generate_domain_json(
    seed: u32,
    obstacles: usize,
    vertices: usize,
    convex: bool,
) -> Result<String, JsValue> {
    let shape = if convex { ObstacleShape::Convex } else { ObstacleShape::Simple };
    let file = generate_instance(seed as u64, obstacles, vertices, shape).map_err(err)?;
    serde_json::to_string_pretty(&file).map_err(err)
}

/// Render the domain, optionally with its sketch at `eps`, as SVG.
#[wasm_bindgen]
pub fn sketch_svg(domain_json: &str, eps: f64, show_sketch: bool) -> Result<String, JsValue> {
    let domain = parse_domain_file(domain_json).map_err(err)?.to_domain().map_err(err)?;
    let sketch = if show_sketch {
        let params = make_params(eps, ParamMode::SingleShot).map_err(err)?;
        Some(build_sketch(&domain, &params).map_err(err)?)
    } else {
        None
    };
    let overlays = SvgOverlays { sketch: sketch.as_ref(), ..Default::default() };
    Ok(render_svg(&domain, &overlays))
}

/// Compute an approximate (and exact baseline) path and render the figure.
/// Returns the SVG plus a one-line summary separated by a NUL byte.
#[wasm_bindgen]
pub fn path_svg(
    domain_json: &str,
    eps: f64,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
) -> Result<String, JsValue> {
    let domain = parse_domain_file(domain_json).map_err(err)?.to_domain().map_err(err)?;
    let s = Point::new(x1, y1);
    let t = Point::new(x2, y2);
    let convex = domain.obstacles.iter().all(|o| o.is_convex());
    let approx = if convex {
        approx_shortest_path_convex(&domain, s, t, eps).map_err(err)?
    } else {
        approx_shortest_path_simple(&domain, s, t, eps).map_err(err)?
    };
    let (exact, exact_path) = exact_shortest_path(&domain, s, t).map_err(err)?;
    let params = make_params(eps, ParamMode::SingleShot).map_err(err)?;
    let sketch = if convex { build_sketch(&domain, &params).ok() } else { None };
    let overlays = SvgOverlays {
        sketch: sketch.as_ref(),
        paths: vec![(&approx, "approximate"), (&exact_path, "exact")],
        ..Default::default()
    };
    let svg = render_svg(&domain, &overlays);
    let summary = format!(
        "approx {:.4}, exact {:.4}, stretch {:.4} (bound 1+eps = {:.2})",
        approx.length,
        exact,
        approx.length / exact.max(1e-300),
        1.0 + eps,
    );
    Ok(format!("{svg}\u{0}{summary}"))
}
