//! Browser bindings for the demo page in `www/`.
//!
//! Each export has a plain Rust twin in [`demo`] that the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo {
    use qrpnn_core::experiments::{self, default_noise_grid, ModelSpec, Preset, TrialConfig};

    /// Largest network the page accepts; keeps a single call under a few seconds.
    pub const MAX_N: usize = 200;

    fn config(preset: &str, model: &str, n: usize, p: usize, seed: u64) -> Result<TrialConfig, String> {
        let preset: Preset = preset.parse().map_err(|e: qrpnn_core::Error| e.to_string())?;
        let model = ModelSpec::parse(model, &preset.kernel_params()).map_err(|e| e.to_string())?;
        if n > MAX_N {
            return Err(format!("n must be at most {MAX_N}"));
        }
        let cfg = TrialConfig { n, p, ..preset.config(model, seed) };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    /// Model names available for a preset, in display order.
    pub fn model_names(preset: &str) -> Result<Vec<String>, String> {
        let preset: Preset = preset.parse().map_err(|e: qrpnn_core::Error| e.to_string())?;
        Ok(preset.models().iter().map(ModelSpec::name).collect())
    }

    /// Recall probability at noise levels 0.0, 0.1, ..., 1.0.
    pub fn recall_curve(
        preset: &str,
        model: &str,
        n: usize,
        p: usize,
        trials: usize,
        seed: u64,
    ) -> Result<Vec<f64>, String> {
        let cfg = TrialConfig { trials, ..config(preset, model, n, p, seed)? };
        let result = experiments::run_sweep(&cfg, &default_noise_grid()).map_err(|e| e.to_string())?;
        Ok(result.points.iter().map(|pt| pt.recall_probability).collect())
    }

    /// Distance moved by each stored memory after one update.
    pub fn fixed_point_distances(
        preset: &str,
        model: &str,
        n: usize,
        p: usize,
        seed: u64,
    ) -> Result<Vec<f64>, String> {
        experiments::fixed_point_distances(&config(preset, model, n, p, seed)?).map_err(|e| e.to_string())
    }

    /// Distance to the target memory at every iteration of one noisy recall.
    pub fn recall_trace(
        preset: &str,
        model: &str,
        n: usize,
        p: usize,
        noise: f64,
        seed: u64,
    ) -> Result<Vec<f64>, String> {
        let cfg = TrialConfig { noise_prob: noise, ..config(preset, model, n, p, seed)? };
        experiments::recall_trace(&cfg).map_err(|e| e.to_string())
    }
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = modelNames)]
pub fn model_names(preset: &str) -> Result<Vec<String>, JsError> {
    demo::model_names(preset).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = recallCurve)]
pub fn recall_curve(preset: &str, model: &str, n: usize, p: usize, trials: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    js(demo::recall_curve(preset, model, n, p, trials, seed))
}

#[wasm_bindgen(js_name = fixedPointDistances)]
pub fn fixed_point_distances(preset: &str, model: &str, n: usize, p: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    js(demo::fixed_point_distances(preset, model, n, p, seed))
}

#[wasm_bindgen(js_name = recallTrace)]
pub fn recall_trace(preset: &str, model: &str, n: usize, p: usize, noise: f64, seed: u64) -> Result<Vec<f64>, JsError> {
    js(demo::recall_trace(preset, model, n, p, noise, seed))
}
