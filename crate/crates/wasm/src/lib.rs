//! Browser bindings for the two-level pair experiments.
//!
//! Each exported function runs one experiment on the calling thread and
//! returns the result table as a JSON string, so a static page can render
//! it with plain canvas code. Sample counts are capped to keep a single
//! browser thread responsive.

use tribit::analysis::experiments::{run_experiment, ExperimentName, ExperimentSpec};
use tribit::sampling::SampleConfig;
use tribit::scalar::ScalarKind;
use wasm_bindgen::prelude::*;

/// Largest sample count a demo call accepts.
pub const MAX_DEMO_SAMPLES: u64 = 200_000;

fn parse_pair_kind(kind: &str) -> Result<ScalarKind, String> {
    match kind {
        "rebit" => Ok(ScalarKind::Real),
        "qubit" => Ok(ScalarKind::Complex),
        other => Err(format!("unknown kind {other:?}, expected rebit or qubit")),
    }
}

fn experiment_json(
    name: ExperimentName,
    kind: ScalarKind,
    samples: u64,
    seed: u64,
) -> Result<String, String> {
    if samples == 0 || samples > MAX_DEMO_SAMPLES {
        return Err(format!("samples must be between 1 and {MAX_DEMO_SAMPLES}"));
    }
    let config = SampleConfig::new(kind, seed, samples, 1).map_err(|e| e.to_string())?;
    let spec = ExperimentSpec::new(name, config, name.default_bins()).map_err(|e| e.to_string())?;
    let table = run_experiment(&spec).map_err(|e| e.to_string())?;
    Ok(table.to_json())
}

fn pure_density(kind: &str, samples: u64, seed: u64) -> Result<String, String> {
    let kind = parse_pair_kind(kind)?;
    experiment_json(ExperimentName::Fig3C2Pure, kind, samples, seed)
}

fn boundary_scan(samples: u64, seed: u64) -> Result<String, String> {
    experiment_json(ExperimentName::BoundaryScan, ScalarKind::Real, samples, seed)
}

fn quaterbit_surface() -> Result<String, String> {
    // The surface is a deterministic grid; the sample budget is unused.
    experiment_json(ExperimentName::Fig4QuaterbitSurface, ScalarKind::Quaternion, 1, 0)
}

/// Squared-concurrence density of random pure pairs, with the closed-form
/// curve per bin. `kind` is `"rebit"` or `"qubit"`.
#[wasm_bindgen]
pub fn pure_density_json(kind: &str, samples: u64, seed: u64) -> Result<String, JsError> {
    pure_density(kind, samples, seed).map_err(|e| JsError::new(&e))
}

/// Mixed rebit samples in the (R, C^2) plane together with the attainable
/// ceiling and the states that sit exactly on it.
#[wasm_bindgen]
pub fn boundary_scan_json(samples: u64, seed: u64) -> Result<String, JsError> {
    boundary_scan(samples, seed).map_err(|e| JsError::new(&e))
}

/// Entanglement of formation over the pure quaterbit surface coordinates.
#[wasm_bindgen]
pub fn quaterbit_surface_json() -> Result<String, JsError> {
    quaterbit_surface().map_err(|e| JsError::new(&e))
}
