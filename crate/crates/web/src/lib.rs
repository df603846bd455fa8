//! WebAssembly bindings for the browser demo. Every export returns a JSON
//! string; the plain `*_json` functions carry the same logic for native use.

use grand_turbo::codes::CodeSpec;
use grand_turbo::grand::{OneLineGenerator, PatternSource};
use grand_turbo::sim::{run_campaign, CampaignConfig, DecoderSpec};
use grand_turbo::turbo::{ComponentDecoder, TurboConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_PATTERNS: usize = 5000;
const MAX_FRAMES: u64 = 200_000;
const TRACE_CODE: &str = "product:ebch:32,26^2";

fn decoder(kind: &str, param: usize) -> Result<ComponentDecoder, String> {
    match kind {
        "orbgrand" => Ok(ComponentDecoder::Orbgrand { list_size: param }),
        "orbgrand1" => Ok(ComponentDecoder::Orbgrand1 { list_size: param }),
        "chase" => Ok(ComponentDecoder::Chase { rho: param }),
        other => Err(format!("unknown decoder {other:?}")),
    }
}

fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
        return Err("grid needs step > 0 and stop >= start".into());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count >= 40 {
        return Err("at most 40 grid points".into());
    }
    Ok((0..=count)
        .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

/// The first `count` noise effects of 1-line ORBGRAND with intercept `c`.
pub fn query_order_json(n: usize, c: u32, count: usize) -> Result<String, String> {
    if !(1..=64).contains(&n) {
        return Err("n must be in 1..=64".into());
    }
    if count > MAX_PATTERNS {
        return Err(format!("at most {MAX_PATTERNS} patterns"));
    }
    let mut gen = OneLineGenerator::new(n, c);
    let mut patterns = Vec::with_capacity(count);
    while patterns.len() < count {
        let Some(p) = gen.next_pattern() else { break };
        let w_l: u32 = p.iter().map(|&r| u32::from(r)).sum();
        patterns.push(json!({
            "ranks": p,
            "w_h": p.len(),
            "w_l": w_l,
            "w_t": c * p.len() as u32 + w_l,
        }));
    }
    Ok(json!({ "n": n, "c": c, "patterns": patterns }).to_string())
}

/// Mean sorted-reliability profile entering each half-iteration of
/// eBCH(32,26)^2 turbo decoding, without early stopping.
pub fn turbo_trace_json(
    eb_n0_db: f64,
    kind: &str,
    param: usize,
    iterations: usize,
    frames: u64,
    seed: u64,
) -> Result<String, String> {
    if frames == 0 || frames > 2000 {
        return Err("frames must be in 1..=2000".into());
    }
    let mut t = TurboConfig::new(decoder(kind, param)?);
    t.iterations = iterations;
    t.early_stop = false;
    let spec: CodeSpec = TRACE_CODE.parse().map_err(|e| format!("{e}"))?;
    let mut c = CampaignConfig::new(spec, DecoderSpec::Turbo(t), vec![eb_n0_db]);
    c.master_seed = seed;
    c.max_frames = frames;
    c.min_block_errors = u64::MAX;
    c.trace = true;
    let r = run_campaign(&c).map_err(|e| e.to_string())?;
    let p = &r.points[0];
    let stages = r.traces.as_ref().map_or(&[][..], |t| &t[0].stages[..]);
    Ok(json!({
        "code": r.code_label,
        "eb_n0_db": eb_n0_db,
        "frames": p.frames,
        "ber": p.ber(),
        "bler": p.bler(),
        "stages": stages,
    })
    .to_string())
}

/// Fixed-length list-decoding BLER campaign over an inclusive grid.
#[allow(clippy::too_many_arguments)]
pub fn list_bler_json(
    code: &str,
    kind: &str,
    param: usize,
    start: f64,
    stop: f64,
    step: f64,
    frames: u64,
    seed: u64,
) -> Result<String, String> {
    if frames == 0 || frames > MAX_FRAMES {
        return Err(format!("frames must be in 1..={MAX_FRAMES}"));
    }
    let spec: CodeSpec = code.parse().map_err(|e| format!("{e}"))?;
    if matches!(spec, CodeSpec::File(_)) {
        return Err("file codes are unavailable in the browser".into());
    }
    let mut c = CampaignConfig::new(
        spec,
        DecoderSpec::List(decoder(kind, param)?),
        grid(start, stop, step)?,
    );
    c.master_seed = seed;
    c.max_frames = frames;
    c.min_block_errors = u64::MAX;
    let r = run_campaign(&c).map_err(|e| e.to_string())?;
    let points: Vec<_> = r
        .points
        .iter()
        .map(|p| {
            json!({
                "eb_n0_db": p.eb_n0_db,
                "frames": p.frames,
                "block_errors": p.block_errors,
                "bler": p.bler(),
                "ber": p.ber(),
                "mean_queries": p.mean_queries(),
            })
        })
        .collect();
    Ok(json!({ "code": r.code_label, "n": r.n, "k": r.k, "points": points }).to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = queryOrder)]
pub fn query_order(n: usize, c: u32, count: usize) -> Result<String, JsError> {
    js(query_order_json(n, c, count))
}

#[wasm_bindgen(js_name = turboTrace)]
pub fn turbo_trace(
    eb_n0_db: f64,
    kind: &str,
    param: usize,
    iterations: usize,
    frames: u32,
    seed: u32,
) -> Result<String, JsError> {
    js(turbo_trace_json(
        eb_n0_db,
        kind,
        param,
        iterations,
        frames.into(),
        seed.into(),
    ))
}

#[wasm_bindgen(js_name = listBler)]
#[allow(clippy::too_many_arguments)]
pub fn list_bler(
    code: &str,
    kind: &str,
    param: usize,
    start: f64,
    stop: f64,
    step: f64,
    frames: u32,
    seed: u32,
) -> Result<String, JsError> {
    js(list_bler_json(
        code,
        kind,
        param,
        start,
        stop,
        step,
        frames.into(),
        seed.into(),
    ))
}
