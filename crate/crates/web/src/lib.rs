//! Browser bindings. Every entry point takes the spec file as JSON text and returns a JSON
//! object `{"exit", "text", "report"}`, or `{"error"}` when the spec does not load.

use folham::cli::{corpus, find_example, run_bracket, run_cohomology, run_verify, Report, Spec, Theory};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(spec_json: &str, run: impl FnOnce(&Spec) -> Report) -> String {
    let value = match Spec::parse(spec_json) {
        Ok(spec) => {
            let report = run(&spec);
            json!({
                "exit": report.exit_code(),
                "text": report.render_text(),
                "report": serde_json::to_value(&report).unwrap_or(Value::Null),
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    value.to_string()
}

/// Classification, identity suite and image checks.
#[wasm_bindgen]
pub fn verify(spec_json: &str) -> String {
    respond(spec_json, run_verify)
}

#[wasm_bindgen]
pub fn bracket(spec_json: &str, f: &str, g: &str, extended: bool) -> String {
    respond(spec_json, |spec| run_bracket(spec, f, g, extended))
}

/// `theory` is one of `twisted`, `lp-basic`, `basic-derham`.
#[wasm_bindgen]
pub fn cohomology(spec_json: &str, theory: &str, k: usize, max_degree: u32) -> String {
    match theory.parse::<Theory>() {
        Ok(t) => respond(spec_json, |spec| run_cohomology(spec, t, k, max_degree, true)),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Names of the bundled examples, as a JSON array.
#[wasm_bindgen]
pub fn example_names() -> String {
    Value::from(corpus().iter().map(|e| e.name).collect::<Vec<_>>()).to_string()
}

/// Spec file of a bundled example, or the empty string.
#[wasm_bindgen]
pub fn example(name: &str) -> String {
    find_example(name).map(|e| e.json.to_string()).unwrap_or_default()
}
