//! Seeded Monte-Carlo campaigns.
//!
//! Every frame draws its own RNG from [`derive_frame_seed`], and frames are
//! accumulated strictly in index order, so a campaign gives bit-identical
//! results for any number of workers.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bitlinalg::{BitMatrix, BitVector};
use crate::channel::{add_noise, hard_decision_word, llr, ChannelError, ChannelSpec};
use crate::chase::{chase_list_decode_word, ChaseError, SyndromeTable};
use crate::codes::{BuiltCode, CodeError, CodeSpec, LinearCode, ProductCode};
use crate::grand::{
    default_query_cap, fit_line, OneLineGenerator, PatternCache, PatternSource, RankPermutation,
    WordListResult,
};
use crate::turbo::{
    Axis, ComponentDecoder, HalfIterationTrace, TurboConfig, TurboDecoder, TurboError,
};

pub const DEFAULT_MIN_BLOCK_ERRORS: u64 = 100;
pub const DEFAULT_MAX_FRAMES: u64 = 1_000_000;
/// Largest word length accepted by [`guesswork_experiment`].
pub const GUESSWORK_MAX_N: usize = 20;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid campaign: {0}")]
    Config(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Turbo(#[from] TurboError),
    #[error(transparent)]
    Chase(#[from] ChaseError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// What decodes each frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DecoderSpec {
    /// List decoding of a single code; a block error is a list miss.
    List(ComponentDecoder),
    /// Block turbo decoding of a product code.
    Turbo(TurboConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub code: CodeSpec,
    pub decoder: DecoderSpec,
    pub eb_n0_db: Vec<f64>,
    #[serde(default = "default_min_block_errors")]
    pub min_block_errors: u64,
    #[serde(default = "default_max_frames")]
    pub max_frames: u64,
    #[serde(default)]
    pub master_seed: u64,
    /// GRAND query budget per word in list campaigns.
    #[serde(default)]
    pub query_cap: Option<u64>,
    /// Collect the per-half-iteration reliability profile (turbo only).
    #[serde(default)]
    pub trace: bool,
    /// Worker threads; `None` uses all available. Never affects results.
    #[serde(default)]
    pub workers: Option<usize>,
}

fn default_min_block_errors() -> u64 {
    DEFAULT_MIN_BLOCK_ERRORS
}

fn default_max_frames() -> u64 {
    DEFAULT_MAX_FRAMES
}

impl CampaignConfig {
    pub fn new(code: CodeSpec, decoder: DecoderSpec, eb_n0_db: Vec<f64>) -> Self {
        CampaignConfig {
            code,
            decoder,
            eb_n0_db,
            min_block_errors: DEFAULT_MIN_BLOCK_ERRORS,
            max_frames: DEFAULT_MAX_FRAMES,
            master_seed: 0,
            query_cap: None,
            trace: false,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: &str| Err(SimError::Config(m.to_string()));
        if self.eb_n0_db.is_empty() {
            return bad("Eb/N0 grid is empty");
        }
        if self.eb_n0_db.iter().any(|v| !v.is_finite()) {
            return bad("Eb/N0 grid has a non-finite point");
        }
        if self.min_block_errors == 0 {
            return bad("min_block_errors must be at least 1");
        }
        if self.max_frames == 0 {
            return bad("max_frames must be at least 1");
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1");
        }
        if self.query_cap == Some(0) {
            return bad("query_cap must be at least 1");
        }
        match &self.decoder {
            DecoderSpec::List(d) => {
                if self.code.is_product() {
                    return bad("list campaigns need a single code, not a product");
                }
                match *d {
                    ComponentDecoder::Chase { rho } if !(1..=16).contains(&rho) => {
                        return bad("rho must be in 1..=16")
                    }
                    ComponentDecoder::Orbgrand { list_size }
                    | ComponentDecoder::Orbgrand1 { list_size }
                        if list_size == 0 =>
                    {
                        return bad("list size must be at least 1")
                    }
                    _ => {}
                }
            }
            DecoderSpec::Turbo(t) => {
                if !self.code.is_product() {
                    return bad("turbo campaigns need a product code");
                }
                t.validate()?;
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, ignoring `workers`.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.workers = None;
        let json = serde_json::to_string(&c).expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }
}

/// Counters for one Eb/N0 point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointStats {
    pub eb_n0_db: f64,
    pub frames: u64,
    /// Errors over the information bits.
    pub bit_errors: u64,
    pub block_errors: u64,
    /// List campaigns: frames whose transmitted codeword is not in the list.
    /// Turbo campaigns: component words whose list came back empty.
    pub list_misses: u64,
    pub queries: u64,
    pub truncations: u64,
    /// Information bits per frame.
    pub info_bits: u64,
}

impl PointStats {
    pub fn ber(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        self.bit_errors as f64 / (self.frames * self.info_bits) as f64
    }

    pub fn bler(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        self.block_errors as f64 / self.frames as f64
    }

    /// Binomial standard error of [`PointStats::bler`].
    pub fn bler_std_err(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        let p = self.bler();
        (p * (1.0 - p) / self.frames as f64).sqrt()
    }

    pub fn mean_queries(&self) -> f64 {
        if self.frames == 0 {
            return 0.0;
        }
        self.queries as f64 / self.frames as f64
    }
}

/// Mean reliability profile of one half-iteration across a point's frames.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageProfile {
    pub stage: usize,
    pub axis: Axis,
    /// Frames that reached this half-iteration.
    pub frames: u64,
    pub components: u64,
    pub profile: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointTrace {
    pub eb_n0_db: f64,
    pub stages: Vec<StageProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignResult {
    pub config: CampaignConfig,
    pub config_hash: String,
    pub master_seed: u64,
    pub code_label: String,
    pub n: usize,
    pub k: usize,
    pub points: Vec<PointStats>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<PointTrace>>,
}

pub const CSV_HEADER: &str =
    "eb_n0_db,frames,bit_errors,block_errors,ber,bler,mean_queries,truncations";

impl CampaignResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for p in &self.points {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                p.eb_n0_db,
                p.frames,
                p.bit_errors,
                p.block_errors,
                p.ber(),
                p.bler(),
                p.mean_queries(),
                p.truncations
            );
        }
        s
    }

    /// Long-format profile CSV: one row per point, half-iteration and rank.
    pub fn trace_csv(&self) -> Option<String> {
        let traces = self.traces.as_ref()?;
        let mut s = String::from("eb_n0_db,stage,axis,frames,rank,mean_reliability\n");
        for t in traces {
            for st in &t.stages {
                let axis = match st.axis {
                    Axis::Rows => "rows",
                    Axis::Columns => "columns",
                };
                for (r, v) in st.profile.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        t.eb_n0_db,
                        st.stage,
                        axis,
                        st.frames,
                        r + 1,
                        v
                    );
                }
            }
        }
        Some(s)
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("result serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("traces");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// Writes the CSV to `csv_path` and the JSON sidecar next to it with a
    /// `.json` extension. Returns the sidecar path.
    pub fn write(&self, csv_path: &Path) -> Result<PathBuf, SimError> {
        write_file(csv_path, &self.to_csv())?;
        let json_path = csv_path.with_extension("json");
        write_file(&json_path, &self.to_json())?;
        Ok(json_path)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), SimError> {
    std::fs::write(path, text).map_err(|source| SimError::Io {
        path: path.to_path_buf(),
        source,
    })
}

// wasm32-unknown-unknown has no clock
#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
fn clock() -> Option<Instant> {
    Some(Instant::now())
}

#[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
fn clock() -> Option<Instant> {
    None
}

/// Per-frame seed. `splitmix64` is a bijection, so distinct
/// `(point, frame)` pairs below `2^32` never collide within a campaign.
pub fn derive_frame_seed(master_seed: u64, point_index: u32, frame_index: u32) -> u64 {
    let key = (u64::from(point_index) << 32) | u64::from(frame_index);
    splitmix64(splitmix64(master_seed) ^ key)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[derive(Debug, Default)]
struct FrameOutcome {
    bit_errors: u64,
    block_error: bool,
    list_misses: u64,
    queries: u64,
    truncations: u64,
    trace: Option<Vec<HalfIterationTrace>>,
}

#[derive(Default)]
struct TraceAccum {
    stages: Vec<(Axis, u64, u64, Vec<f64>)>,
}

impl TraceAccum {
    fn add(&mut self, trace: &[HalfIterationTrace], components: [u64; 2]) {
        for t in trace {
            if self.stages.len() <= t.stage {
                self.stages
                    .resize_with(t.stage + 1, || (t.axis, 0, 0, vec![0.0; t.profile.len()]));
            }
            let entry = &mut self.stages[t.stage];
            entry.0 = t.axis;
            entry.1 += 1;
            entry.2 += components[(t.axis == Axis::Rows) as usize];
            if entry.3.len() != t.profile.len() {
                entry.3 = vec![0.0; t.profile.len()];
            }
            for (a, b) in entry.3.iter_mut().zip(&t.profile) {
                *a += b;
            }
        }
    }

    fn finish(self, eb_n0_db: f64) -> PointTrace {
        let stages = self
            .stages
            .into_iter()
            .enumerate()
            .filter(|(_, s)| s.1 > 0)
            .map(|(stage, (axis, frames, components, sum))| StageProfile {
                stage,
                axis,
                frames,
                components,
                profile: sum.iter().map(|v| v / frames as f64).collect(),
            })
            .collect();
        PointTrace { eb_n0_db, stages }
    }
}

/// Runs `frame(state, index)` for frame indices `0, 1, ...` in batches until
/// the error or frame budget is met, folding outcomes in index order.
fn simulate_point<S, F>(
    states: &mut [S],
    min_block_errors: u64,
    max_frames: u64,
    frame: F,
    mut fold: impl FnMut(FrameOutcome) -> bool,
) where
    S: Send,
    F: Fn(&mut S, u64) -> FrameOutcome + Sync,
{
    let workers = states.len().max(1) as u64;
    let batch = (32 * workers).max(64);
    let mut next = 0u64;
    let mut block_errors = 0u64;
    while next < max_frames && block_errors < min_block_errors {
        let end = (next + batch).min(max_frames);
        let outcomes = run_batch(states, next, end, &frame);
        for o in outcomes {
            next += 1;
            block_errors += u64::from(o.block_error);
            if !fold(o) || block_errors >= min_block_errors {
                return;
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn run_batch<S, F>(states: &mut [S], start: u64, end: u64, frame: &F) -> Vec<FrameOutcome>
where
    S: Send,
    F: Fn(&mut S, u64) -> FrameOutcome + Sync,
{
    use rayon::prelude::*;
    if states.len() == 1 {
        return (start..end).map(|i| frame(&mut states[0], i)).collect();
    }
    let indices: Vec<u64> = (start..end).collect();
    let chunk = indices.len().div_ceil(states.len()).max(1);
    let parts: Vec<Vec<FrameOutcome>> = states
        .par_iter_mut()
        .zip(indices.par_chunks(chunk))
        .map(|(s, idx)| idx.iter().map(|&i| frame(s, i)).collect())
        .collect();
    parts.into_iter().flatten().collect()
}

#[cfg(not(feature = "parallel"))]
fn run_batch<S, F>(states: &mut [S], start: u64, end: u64, frame: &F) -> Vec<FrameOutcome>
where
    F: Fn(&mut S, u64) -> FrameOutcome,
{
    (start..end).map(|i| frame(&mut states[0], i)).collect()
}

/// Worker count actually used for `requested`.
pub fn effective_workers(requested: Option<usize>) -> usize {
    #[cfg(feature = "parallel")]
    {
        requested.unwrap_or_else(rayon::current_num_threads).max(1)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = requested;
        1
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

fn frame_rng(config: &CampaignConfig, point: usize, frame: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_frame_seed(
        config.master_seed,
        point as u32,
        frame as u32,
    ))
}

fn check_frame_budget(config: &CampaignConfig) -> Result<(), SimError> {
    if config.max_frames > u64::from(u32::MAX) || config.eb_n0_db.len() > u32::MAX as usize {
        return Err(SimError::Config(
            "frame and point indices must fit in 32 bits".into(),
        ));
    }
    Ok(())
}

/// Scratch for one list-decoding worker.
struct ListWorker<'a> {
    code: &'a LinearCode,
    decoder: ComponentDecoder,
    table: Option<SyndromeTable>,
    patterns: PatternCache,
    grand: WordListResult,
    list: Vec<u64>,
    query_cap: u64,
    y: Vec<f64>,
    sorted: Vec<f64>,
}

impl<'a> ListWorker<'a> {
    fn new(
        code: &'a LinearCode,
        decoder: ComponentDecoder,
        cap: Option<u64>,
    ) -> Result<Self, SimError> {
        let table = match decoder {
            ComponentDecoder::Chase { .. } => Some(SyndromeTable::for_code(code)?),
            _ => None,
        };
        Ok(ListWorker {
            code,
            decoder,
            table,
            patterns: PatternCache::new(code.n()),
            grand: WordListResult::default(),
            list: Vec::new(),
            query_cap: cap
                .unwrap_or_else(|| default_query_cap(code.n(), code.k(), decoder.list_size())),
            y: vec![0.0; code.n()],
            sorted: Vec::with_capacity(code.n()),
        })
    }

    fn frame(&mut self, channel: &ChannelSpec, rng: &mut ChaCha8Rng) -> FrameOutcome {
        let (n, k) = (self.code.n(), self.code.k());
        let msg = rng.random::<u64>() & low_mask(k);
        let cw = self.code.encode_u64(msg).expect("n <= 64");
        for (i, v) in self.y.iter_mut().enumerate() {
            *v = if cw >> i & 1 == 1 { -1.0 } else { 1.0 };
        }
        add_noise(&mut self.y, channel.sigma2(), rng);
        let soft = llr(&self.y, channel).expect("positive variance");
        let hard = hard_decision_word(&soft);
        let ranks = RankPermutation::from_reliabilities(&soft);
        let mut out = FrameOutcome::default();
        match self.decoder {
            ComponentDecoder::Chase { rho } => {
                let table = self.table.as_ref().expect("built for chase");
                chase_list_decode_word(self.code, table, hard, &ranks, rho, &mut self.list);
                out.queries = 1 << rho.min(n);
            }
            ComponentDecoder::Orbgrand { list_size }
            | ComponentDecoder::Orbgrand1 { list_size } => {
                let c = if matches!(self.decoder, ComponentDecoder::Orbgrand1 { .. }) {
                    self.sorted.clear();
                    self.sorted
                        .extend(ranks.order().iter().map(|&p| soft[p].abs()));
                    fit_line(&self.sorted).c
                } else {
                    0
                };
                self.patterns.list_decode_word(
                    c,
                    self.code,
                    hard,
                    &ranks,
                    list_size,
                    self.query_cap,
                    &mut self.grand,
                );
                out.queries = self.grand.queries_used;
                out.truncations = u64::from(self.grand.truncated);
                self.list.clear();
                self.list.extend_from_slice(&self.grand.codewords);
            }
        }
        let miss = !self.list.contains(&cw);
        out.block_error = miss;
        out.list_misses = u64::from(miss);
        let decision = best_by_correlation(&self.list, &soft).unwrap_or(hard);
        out.bit_errors = u64::from(((decision ^ cw) & low_mask(k)).count_ones());
        out
    }
}

/// List entry with the largest correlation `sum_i soft_i (-1)^{c_i}`,
/// earliest on ties.
fn best_by_correlation(list: &[u64], soft: &[f64]) -> Option<u64> {
    let mut best: Option<(u64, f64)> = None;
    for &c in list {
        let corr: f64 = soft
            .iter()
            .enumerate()
            .map(|(i, &r)| if c >> i & 1 == 1 { -r } else { r })
            .sum();
        if best.is_none_or(|(_, b)| corr > b) {
            best = Some((c, corr));
        }
    }
    best.map(|(c, _)| c)
}

/// List-decoding BLER campaign. A block error is a frame whose transmitted
/// codeword is missing from the list; bit errors count the information bits
/// of the list entry closest to the received word.
pub fn run_list_bler(config: &CampaignConfig) -> Result<CampaignResult, SimError> {
    config.validate()?;
    check_frame_budget(config)?;
    let DecoderSpec::List(decoder) = config.decoder else {
        return Err(SimError::Config(
            "run_list_bler needs a list decoder".into(),
        ));
    };
    let code = config.code.build_linear()?;
    if code.n() > 64 || code.syndrome_columns().is_none() {
        return Err(SimError::Config(format!(
            "list campaigns support n <= 64, got n={}",
            code.n()
        )));
    }
    let started = clock();
    let workers = effective_workers(config.workers);
    let mut states = (0..workers)
        .map(|_| ListWorker::new(&code, decoder, config.query_cap))
        .collect::<Result<Vec<_>, _>>()?;
    let mut points = Vec::with_capacity(config.eb_n0_db.len());
    for (pi, &ebn0) in config.eb_n0_db.iter().enumerate() {
        let channel = ChannelSpec::new(ebn0, code.rate())?;
        let mut stats = empty_point(ebn0, code.k());
        with_pool(workers, || {
            simulate_point(
                &mut states,
                config.min_block_errors,
                config.max_frames,
                |w: &mut ListWorker, i| w.frame(&channel, &mut frame_rng(config, pi, i)),
                |o| {
                    stats.absorb(&o);
                    true
                },
            )
        });
        points.push(stats);
    }
    Ok(CampaignResult {
        config: config.clone(),
        config_hash: config.hash(),
        master_seed: config.master_seed,
        code_label: code.label().to_string(),
        n: code.n(),
        k: code.k(),
        points,
        wall_time_s: started.map_or(0.0, |t| t.elapsed().as_secs_f64()),
        traces: None,
    })
}

fn empty_point(eb_n0_db: f64, info_bits: usize) -> PointStats {
    PointStats {
        eb_n0_db,
        frames: 0,
        bit_errors: 0,
        block_errors: 0,
        list_misses: 0,
        queries: 0,
        truncations: 0,
        info_bits: info_bits as u64,
    }
}

impl PointStats {
    fn absorb(&mut self, o: &FrameOutcome) {
        self.frames += 1;
        self.bit_errors += o.bit_errors;
        self.block_errors += u64::from(o.block_error);
        self.list_misses += o.list_misses;
        self.queries += o.queries;
        self.truncations += o.truncations;
    }
}

struct TurboWorker<'a> {
    pc: &'a ProductCode,
    decoder: TurboDecoder<'a>,
    y: Vec<f64>,
}

impl<'a> TurboWorker<'a> {
    fn frame(&mut self, channel: &ChannelSpec, rng: &mut ChaCha8Rng, trace: bool) -> FrameOutcome {
        let (k1, k2) = (self.pc.row_code().k(), self.pc.col_code().k());
        let msg = random_message(k2, k1, rng);
        let cw = self.pc.encode(&msg).expect("dimensions match");
        self.y.clear();
        for row in cw.row_iter() {
            self.y
                .extend(row.iter().map(|b| if b { -1.0 } else { 1.0 }));
        }
        add_noise(&mut self.y, channel.sigma2(), rng);
        let reference = trace.then_some(&cw);
        let out = self
            .decoder
            .decode(&self.y, reference)
            .expect("frame dimensions");
        let bit_errors: usize = out
            .message
            .row_iter()
            .zip(msg.row_iter())
            .map(|(a, b)| a.hamming_distance(b))
            .sum();
        FrameOutcome {
            bit_errors: bit_errors as u64,
            block_error: bit_errors > 0,
            list_misses: out.stats.fallbacks,
            queries: out.stats.queries,
            truncations: out.stats.truncations,
            trace: trace.then_some(out.trace),
        }
    }
}

fn random_message(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    let rows = (0..rows)
        .map(|_| {
            if cols <= 64 {
                BitVector::from_u64(rng.random::<u64>() & low_mask(cols), cols)
            } else {
                BitVector::from_bools((0..cols).map(|_| rng.random_bool(0.5)))
            }
        })
        .collect();
    BitMatrix::from_rows(rows).expect("uniform width")
}

/// Turbo BER campaign over a product code. The decoder sees received
/// amplitudes; bit and block errors are counted on the `k2 x k1` message.
pub fn run_turbo_ber(config: &CampaignConfig) -> Result<CampaignResult, SimError> {
    config.validate()?;
    check_frame_budget(config)?;
    let DecoderSpec::Turbo(turbo) = &config.decoder else {
        return Err(SimError::Config(
            "run_turbo_ber needs a turbo decoder".into(),
        ));
    };
    let BuiltCode::Product(pc) = config.code.build()? else {
        return Err(SimError::Config(
            "turbo campaigns need a product code".into(),
        ));
    };
    let started = clock();
    let workers = effective_workers(config.workers);
    let mut states = (0..workers)
        .map(|_| {
            Ok(TurboWorker {
                pc: &pc,
                decoder: TurboDecoder::new(&pc, turbo.clone())?,
                y: Vec::with_capacity(pc.n()),
            })
        })
        .collect::<Result<Vec<_>, SimError>>()?;
    let components = [pc.row_code().n() as u64, pc.col_code().n() as u64];
    let mut points = Vec::with_capacity(config.eb_n0_db.len());
    let mut traces = config.trace.then(Vec::new);
    for (pi, &ebn0) in config.eb_n0_db.iter().enumerate() {
        let channel = ChannelSpec::new(ebn0, pc.rate())?;
        let mut stats = empty_point(ebn0, pc.k());
        let mut acc = TraceAccum::default();
        with_pool(workers, || {
            simulate_point(
                &mut states,
                config.min_block_errors,
                config.max_frames,
                |w: &mut TurboWorker, i| {
                    w.frame(&channel, &mut frame_rng(config, pi, i), config.trace)
                },
                |o| {
                    stats.absorb(&o);
                    if let Some(t) = &o.trace {
                        // columns half-iterations decode n1 words, rows n2
                        acc.add(t, [components[0], components[1]]);
                    }
                    true
                },
            )
        });
        if let Some(traces) = traces.as_mut() {
            traces.push(acc.finish(ebn0));
        }
        points.push(stats);
    }
    Ok(CampaignResult {
        config: config.clone(),
        config_hash: config.hash(),
        master_seed: config.master_seed,
        code_label: pc.label(),
        n: pc.n(),
        k: pc.k(),
        points,
        wall_time_s: started.map_or(0.0, |t| t.elapsed().as_secs_f64()),
        traces,
    })
}

/// Dispatches on the decoder mode.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignResult, SimError> {
    match config.decoder {
        DecoderSpec::List(_) => run_list_bler(config),
        DecoderSpec::Turbo(_) => run_turbo_ber(config),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuessworkResult {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub trials: u64,
    pub mean: f64,
    pub std_err: f64,
    pub ci95: (f64, f64),
    /// `2^(n - k + l)`.
    pub predicted: f64,
}

/// Queries a GRAND decoder spends before collecting `L = 2^l` codewords of
/// a uniformly random codebook.
///
/// Each trial draws `2^k` words uniformly with replacement and a uniformly
/// random received word, then walks the basic ORBGRAND order (a fixed
/// bijection of `{0,1}^n`) until `L` distinct codebook words have been hit,
/// or the codebook is exhausted. None of the words is the transmitted one,
/// so the count measures incorrect-codeword accumulation.
pub fn guesswork_experiment(
    n: usize,
    k: usize,
    l: usize,
    trials: u64,
    master_seed: u64,
) -> Result<GuessworkResult, SimError> {
    if n == 0 || n > GUESSWORK_MAX_N {
        return Err(SimError::Config(format!(
            "guesswork needs 1 <= n <= {GUESSWORK_MAX_N}, got {n}"
        )));
    }
    if k > n || l > k {
        return Err(SimError::Config(format!(
            "need l <= k <= n, got n={n} k={k} l={l}"
        )));
    }
    if trials == 0 || trials > u64::from(u32::MAX) {
        return Err(SimError::Config("trials must be in 1..2^32".into()));
    }
    let mut order = Vec::with_capacity(1 << n);
    let mut gen = OneLineGenerator::basic(n);
    while let Some(p) = gen.next_pattern() {
        order.push(p.iter().fold(0u64, |m, &r| m | 1 << (r - 1)));
    }
    let list = 1usize << l;
    let trial = |t: u64| -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_frame_seed(master_seed, 0, t as u32));
        let mask = low_mask(n);
        let codebook: HashSet<u64> = (0..1u64 << k).map(|_| rng.random::<u64>() & mask).collect();
        let y = rng.random::<u64>() & mask;
        let target = list.min(codebook.len());
        let mut found = 0;
        for (q, &e) in order.iter().enumerate() {
            if codebook.contains(&(y ^ e)) {
                found += 1;
                if found == target {
                    return (q + 1) as f64;
                }
            }
        }
        order.len() as f64
    };
    let samples: Vec<f64> = map_trials(trials, &trial);
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let var = if trials > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let std_err = (var / trials as f64).sqrt();
    Ok(GuessworkResult {
        n,
        k,
        l,
        trials,
        mean,
        std_err,
        ci95: (mean - 1.96 * std_err, mean + 1.96 * std_err),
        predicted: 2f64.powi((n - k + l) as i32),
    })
}

#[cfg(feature = "parallel")]
fn map_trials(trials: u64, f: &(dyn Fn(u64) -> f64 + Sync)) -> Vec<f64> {
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_trials(trials: u64, f: &dyn Fn(u64) -> f64) -> Vec<f64> {
    (0..trials).map(f).collect()
}
