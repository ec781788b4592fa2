//! Browser bindings: every function takes plain strings or numbers and
//! returns JSON text, `{"error": ...}` on bad input.

use gnk_core::certificate::gnk_report;
use gnk_core::certificate::unknotting_report;
use gnk_core::geometry::simulate::traced_bij_circle;
use gnk_core::gnk::{Context, GnkWord, Subset};
use gnk_core::parity::BaseChoice;
use gnk_core::pure_braid::{map_pb_unreduced, PbWord};
use gnk_core::verify::same_parity_images;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Value, gnk_core::Error>) -> String {
    let value = result.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    value.to_string()
}

fn parse_gnk(text: &str) -> Result<GnkWord, gnk_core::Error> {
    let letters = text.split_whitespace().map(Subset::parse_letter).collect::<Result<Vec<_>, _>>()?;
    let n = letters.iter().map(Subset::max).max().unwrap_or(3).max(3);
    let k = letters.first().map_or(3, Subset::len);
    GnkWord::new(Context::new(n, k)?, letters)
}

/// Reduced form of a `G_n^k` word and, when it is even, its parity image
/// under every base.
#[wasm_bindgen]
pub fn reduce_word(text: &str) -> String {
    respond((|| {
        let w = parse_gnk(text)?;
        let r = w.reduced();
        let mut images = Vec::new();
        if r.is_even() {
            for base in BaseChoice::all(r.context())? {
                images.push(json!({ "base": base.m().to_string(), "phi": base.phi(&r)?.to_string() }));
            }
        }
        Ok(json!({ "reduced": r.to_string(), "complexity": r.len(), "even": r.is_even(), "images": images }))
    })())
}

/// Lower-bound certificate of a pure braid word (`b12 B13 ...`) on `n`
/// strands, or of an even `G_n^k` word.
#[wasm_bindgen]
pub fn bounds(text: &str, n: usize, budget: usize) -> String {
    respond((|| {
        let cert = if text.trim_start().starts_with('a') {
            gnk_report(&parse_gnk(text)?, budget)?
        } else {
            unknotting_report(&PbWord::parse(text, n)?, budget)?
        };
        Ok(serde_json::to_value(&cert).expect("certificate serializes"))
    })())
}

/// The circle motion of `b_ij` on `n` points: breakpoints as floats for
/// drawing, and the word read off the collinear moments.
#[wasm_bindgen]
pub fn circle_motion(i: usize, j: usize, n: usize) -> String {
    respond((|| {
        let (traj, word) = traced_bij_circle(i, j, n)?;
        let f = |r: &gnk_core::geometry::Rat| r.to_f64().unwrap_or(f64::NAN);
        let paths: Vec<Value> = (1..=n)
            .map(|p| json!(traj.path(p).iter().map(|b| [f(&b.time), f(&b.x), f(&b.y)]).collect::<Vec<_>>()))
            .collect();
        let generator = PbWord::parse(&format!("b{{{i},{j}}}"), n)?;
        let formula = map_pb_unreduced(&generator, 3)?;
        Ok(json!({
            "paths": paths,
            "traced": word.to_string(),
            "reduced": word.reduced().to_string(),
            "formula": formula.to_string(),
            "agrees": word.is_even() && same_parity_images(&word, &formula)?,
        }))
    })())
}
