//! Block turbo decoding of product codes with list-decoding component
//! decoders.
//!
//! One half-iteration decodes every column (or row) from the current soft
//! values, turns each decoding list into per-bit soft output, and feeds the
//! extrinsic part back:
//!
//! ```text
//! soft' = channel + alpha[stage] * extrinsic
//! extrinsic = output - soft     where the list has a competitor
//!           = beta * x(d)       where it has none
//! ```
//!
//! The frame's hard matrix is the decision codewords of the latest
//! half-iteration (the channel hard decisions before any). Early stopping and
//! the returned message both use it.
//!
//! Soft values are signed reliabilities, positive favouring bit 0. `beta` is
//! on the same scale, so campaigns feed received amplitudes (LLRs times
//! `sigma^2 / 2`) to keep its meaning fixed across Eb/N0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitlinalg::{BitMatrix, BitVector};
use crate::channel::hard_decision_word;
use crate::chase::{chase_list_decode_word, ChaseError, SyndromeTable};
use crate::codes::{LinearCode, ProductCode};
use crate::grand::{default_query_cap, fit_line, PatternCache, RankPermutation, WordListResult};

#[derive(Debug, Error)]
pub enum TurboError {
    #[error("list size L must be >= 2 for soft output, got {0}")]
    ListSize(usize),
    #[error("at least one iteration is required")]
    Iterations,
    #[error("schedule `{0}` is empty or has a non-finite entry")]
    Schedule(&'static str),
    #[error("beta must be non-negative")]
    NegativeBeta,
    #[error("component codes must have n <= 64 and n - k <= 64")]
    ComponentTooLong,
    #[error(transparent)]
    Chase(#[from] ChaseError),
    #[error("soft matrix has {got} entries, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("empty decoding list")]
    EmptyList,
}

/// Component list decoder used inside the turbo loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentDecoder {
    /// 1-line ORBGRAND, intercept refitted per component word.
    Orbgrand1 {
        list_size: usize,
    },
    /// Basic ORBGRAND (intercept fixed at zero).
    Orbgrand {
        list_size: usize,
    },
    Chase {
        rho: usize,
    },
}

impl ComponentDecoder {
    pub fn list_size(&self) -> usize {
        match *self {
            ComponentDecoder::Orbgrand1 { list_size }
            | ComponentDecoder::Orbgrand { list_size } => list_size,
            ComponentDecoder::Chase { rho } => 1usize << rho.min(31),
        }
    }
}

pub const DEFAULT_ALPHA: [f64; 8] = [0.2, 0.3, 0.5, 0.7, 0.9, 1.0, 1.0, 1.0];
pub const DEFAULT_BETA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurboConfig {
    pub iterations: usize,
    pub decoder: ComponentDecoder,
    /// Extrinsic weight per half-iteration; the last entry repeats.
    pub alpha: Vec<f64>,
    /// No-competitor reliability per half-iteration; the last entry repeats.
    pub beta: Vec<f64>,
    pub early_stop: bool,
    /// GRAND query budget per component word; `None` uses
    /// [`default_query_cap`].
    #[serde(default)]
    pub query_cap: Option<u64>,
}

impl TurboConfig {
    pub fn new(decoder: ComponentDecoder) -> Self {
        TurboConfig {
            iterations: 4,
            decoder,
            alpha: DEFAULT_ALPHA.to_vec(),
            beta: vec![DEFAULT_BETA],
            early_stop: true,
            query_cap: None,
        }
    }

    pub fn validate(&self) -> Result<(), TurboError> {
        if self.iterations == 0 {
            return Err(TurboError::Iterations);
        }
        if let ComponentDecoder::Chase { rho } = self.decoder {
            if !(1..=16).contains(&rho) {
                return Err(TurboError::ListSize(self.decoder.list_size()));
            }
        }
        if self.decoder.list_size() < 2 {
            return Err(TurboError::ListSize(self.decoder.list_size()));
        }
        if self.alpha.is_empty() || self.alpha.iter().any(|a| !a.is_finite()) {
            return Err(TurboError::Schedule("alpha"));
        }
        if self.beta.is_empty() || self.beta.iter().any(|b| !b.is_finite()) {
            return Err(TurboError::Schedule("beta"));
        }
        if self.beta.iter().any(|&b| b < 0.0) {
            return Err(TurboError::NegativeBeta);
        }
        Ok(())
    }

    pub fn alpha_at(&self, stage: usize) -> f64 {
        self.alpha[stage.min(self.alpha.len() - 1)]
    }

    pub fn beta_at(&self, stage: usize) -> f64 {
        self.beta[stage.min(self.beta.len() - 1)]
    }
}

/// Index of the list codeword closest to `soft` in Euclidean distance after
/// BPSK mapping; ties go to the earliest entry.
pub fn select_decision(list: &[BitVector], soft: &[f64]) -> Result<usize, TurboError> {
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in list.iter().enumerate() {
        let d = squared_distance(c, soft);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i).ok_or(TurboError::EmptyList)
}

/// `|soft - modulate(c)|^2`.
pub fn squared_distance(c: &BitVector, soft: &[f64]) -> f64 {
    soft.iter()
        .zip(c.iter())
        .map(|(&r, b)| {
            let x = if b { -1.0 } else { 1.0 };
            (r - x) * (r - x)
        })
        .sum()
}

/// Per-bit soft output for decision `list[decision]`.
///
/// For bit `i`, the competitor is the closest list codeword disagreeing with
/// the decision there; the output is `x_i (|r - c*|^2 - |r - d|^2) / 4` with
/// `x_i = +/-1` the modulated decision bit, or `beta * x_i` when no competitor
/// exists.
pub fn soft_output(list: &[BitVector], decision: usize, soft: &[f64], beta: f64) -> Vec<f64> {
    let d = &list[decision];
    let dist: Vec<f64> = list.iter().map(|c| squared_distance(c, soft)).collect();
    (0..soft.len())
        .map(|i| {
            let x = if d.get(i) { -1.0 } else { 1.0 };
            let competitor = list
                .iter()
                .zip(&dist)
                .filter(|(c, _)| c.get(i) != d.get(i))
                .map(|(_, &dd)| dd)
                .min_by(f64::total_cmp);
            match competitor {
                Some(dc) => x * (dc - dist[decision]) / 4.0,
                None => beta * x,
            }
        })
        .collect()
}

/// Soft input/output decoder for one component word, with reusable scratch.
pub struct ComponentSiso<'a> {
    code: &'a LinearCode,
    decoder: ComponentDecoder,
    table: Option<SyndromeTable>,
    query_cap: u64,
    list: Vec<u64>,
    grand: WordListResult,
    patterns: PatternCache,
    corr: Vec<f64>,
    sorted: Vec<f64>,
}

/// What happened while decoding one component word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComponentOutcome {
    pub queries: u64,
    pub truncated: bool,
    /// The list came back empty and the input passed through unchanged.
    pub fallback: bool,
    /// Bit `i` set iff some list codeword disagrees with the decision there.
    pub competitors: u64,
}

impl<'a> ComponentSiso<'a> {
    pub fn new(
        code: &'a LinearCode,
        decoder: ComponentDecoder,
        query_cap: Option<u64>,
    ) -> Result<Self, TurboError> {
        if code.n() > 64 || code.syndrome_columns().is_none() {
            return Err(TurboError::ComponentTooLong);
        }
        let table = match decoder {
            ComponentDecoder::Chase { .. } => Some(SyndromeTable::for_code(code)?),
            _ => None,
        };
        let cap =
            query_cap.unwrap_or_else(|| default_query_cap(code.n(), code.k(), decoder.list_size()));
        Ok(ComponentSiso {
            code,
            decoder,
            table,
            query_cap: cap,
            list: Vec::with_capacity(decoder.list_size()),
            grand: WordListResult::default(),
            patterns: PatternCache::new(code.n()),
            corr: Vec::new(),
            sorted: Vec::with_capacity(code.n()),
        })
    }

    /// `|input|` of the last decoded word in ascending order.
    pub fn sorted_input(&self) -> &[f64] {
        &self.sorted
    }

    /// Decodes `input` into `output`. Returns the outcome and the chosen
    /// decision word (or the hard input on fallback).
    pub fn decode(
        &mut self,
        input: &[f64],
        beta: f64,
        output: &mut [f64],
    ) -> (ComponentOutcome, u64) {
        let n = self.code.n();
        debug_assert_eq!(input.len(), n);
        let hard = hard_decision_word(input);
        let ranks = RankPermutation::from_reliabilities(input);
        self.sorted.clear();
        self.sorted
            .extend(ranks.order().iter().map(|&p| input[p].abs()));
        let mut outcome = ComponentOutcome::default();
        match self.decoder {
            ComponentDecoder::Chase { rho } => {
                let table = self.table.as_ref().expect("built for chase");
                chase_list_decode_word(self.code, table, hard, &ranks, rho, &mut self.list);
            }
            ComponentDecoder::Orbgrand1 { list_size }
            | ComponentDecoder::Orbgrand { list_size } => {
                let c = if matches!(self.decoder, ComponentDecoder::Orbgrand1 { .. }) {
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
                outcome.queries = self.grand.queries_used;
                outcome.truncated = self.grand.truncated;
                self.list.clear();
                self.list.extend_from_slice(&self.grand.codewords);
            }
        }
        if self.list.is_empty() {
            output.copy_from_slice(input);
            outcome.fallback = true;
            outcome.competitors = u64::MAX;
            return (outcome, hard);
        }
        // correlation sum_j r_j x_j; larger means closer
        let total: f64 = input.iter().sum();
        self.corr.clear();
        for &c in &self.list {
            let mut neg = 0.0;
            let mut bits = c;
            while bits != 0 {
                neg += input[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            self.corr.push(total - 2.0 * neg);
        }
        let mut best = 0;
        for (i, &v) in self.corr.iter().enumerate() {
            if v > self.corr[best] {
                best = i;
            }
        }
        let d = self.list[best];
        let d_corr = self.corr[best];
        for (i, out) in output.iter_mut().enumerate().take(n) {
            let d_bit = d >> i & 1;
            let x = if d_bit == 1 { -1.0 } else { 1.0 };
            let mut comp = f64::NEG_INFINITY;
            for (&c, &v) in self.list.iter().zip(&self.corr) {
                if (c >> i & 1) != d_bit && v > comp {
                    comp = v;
                }
            }
            *out = if comp == f64::NEG_INFINITY {
                beta * x
            } else {
                outcome.competitors |= 1 << i;
                x * (d_corr - comp) / 2.0
            };
        }
        (outcome, d)
    }
}

/// Soft state of a product codeword under decoding, `n2 x n1` row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFrame {
    rows: usize,
    cols: usize,
    channel_llr: Vec<f64>,
    current_soft: Vec<f64>,
    // component decisions of the latest half-iteration
    decisions: Vec<bool>,
}

impl ProductFrame {
    pub fn new(rows: usize, cols: usize, channel_llr: Vec<f64>) -> Result<Self, TurboError> {
        if channel_llr.len() != rows * cols {
            return Err(TurboError::Dimension {
                expected: rows * cols,
                got: channel_llr.len(),
            });
        }
        Ok(ProductFrame {
            rows,
            cols,
            current_soft: channel_llr.clone(),
            decisions: channel_llr.iter().map(|&v| v < 0.0).collect(),
            channel_llr,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channel_llr(&self) -> &[f64] {
        &self.channel_llr
    }

    pub fn current_soft(&self) -> &[f64] {
        &self.current_soft
    }

    /// Bit `1` wherever the current soft value is negative.
    pub fn hard(&self) -> BitMatrix {
        let rows = (0..self.rows)
            .map(|r| {
                BitVector::from_bools(
                    self.current_soft[r * self.cols..(r + 1) * self.cols]
                        .iter()
                        .map(|&v| v < 0.0),
                )
            })
            .collect();
        BitMatrix::from_rows(rows).expect("uniform width")
    }

    /// Decision codewords of the most recent half-iteration (the channel
    /// hard decisions before any).
    pub fn decisions(&self) -> BitMatrix {
        let rows = (0..self.rows)
            .map(|r| {
                BitVector::from_bools(
                    self.decisions[r * self.cols..(r + 1) * self.cols]
                        .iter()
                        .copied(),
                )
            })
            .collect();
        BitMatrix::from_rows(rows).expect("uniform width")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Rows,
    Columns,
}

/// Instrumentation for one half-iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfIterationTrace {
    pub stage: usize,
    pub axis: Axis,
    /// Mean over component words of the ascending sorted `|soft input|`.
    pub profile: Vec<f64>,
    /// Component words whose list came back empty.
    pub fallbacks: usize,
    /// Bit errors in the component decisions, when a reference codeword was
    /// supplied.
    pub bit_errors: Option<usize>,
}

/// Aggregate decoding effort.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TurboStats {
    pub component_decodes: u64,
    pub queries: u64,
    pub truncations: u64,
    pub fallbacks: u64,
}

/// Runs one half-iteration along `axis` and returns its trace.
pub fn half_iteration(
    frame: &mut ProductFrame,
    axis: Axis,
    siso: &mut ComponentSiso<'_>,
    config: &TurboConfig,
    stage: usize,
    stats: &mut TurboStats,
) -> HalfIterationTrace {
    let alpha = config.alpha_at(stage);
    let beta = config.beta_at(stage);
    let (count, len) = match axis {
        Axis::Rows => (frame.rows, frame.cols),
        Axis::Columns => (frame.cols, frame.rows),
    };
    let index = |comp: usize, j: usize| match axis {
        Axis::Rows => comp * frame.cols + j,
        Axis::Columns => j * frame.cols + comp,
    };
    let mut input = vec![0.0; len];
    let mut output = vec![0.0; len];
    let mut profile = vec![0.0; len];
    let mut updated = frame.current_soft.clone();
    let mut fallbacks = 0;
    for comp in 0..count {
        for (j, v) in input.iter_mut().enumerate() {
            *v = frame.current_soft[index(comp, j)];
        }
        let (outcome, decision) = siso.decode(&input, beta, &mut output);
        for (p, s) in profile.iter_mut().zip(siso.sorted_input()) {
            *p += s;
        }
        stats.component_decodes += 1;
        stats.queries += outcome.queries;
        stats.truncations += u64::from(outcome.truncated);
        if outcome.fallback {
            fallbacks += 1;
            stats.fallbacks += 1;
        }
        for j in 0..len {
            let idx = index(comp, j);
            frame.decisions[idx] = decision >> j & 1 == 1;
            // without a competitor the beta term is the extrinsic itself
            let extrinsic = if outcome.competitors >> j & 1 == 1 {
                output[j] - input[j]
            } else {
                output[j]
            };
            updated[idx] = frame.channel_llr[idx] + alpha * extrinsic;
        }
    }
    frame.current_soft = updated;
    for p in &mut profile {
        *p /= count as f64;
    }
    HalfIterationTrace {
        stage,
        axis,
        profile,
        fallbacks,
        bit_errors: None,
    }
}

/// True iff every row is a row-code word and every column a column-code
/// word.
pub fn early_stop_check(pc: &ProductCode, hard: &BitMatrix) -> bool {
    pc.is_codeword(hard).unwrap_or(false)
}

/// Early-stop test on the decision matrix.
fn frame_is_codeword(pc: &ProductCode, frame: &ProductFrame) -> bool {
    let d = &frame.decisions;
    let word = |bits: &mut dyn Iterator<Item = bool>| {
        bits.enumerate()
            .fold(0u64, |w, (i, b)| w | u64::from(b) << i)
    };
    (0..frame.rows).all(|r| {
        let mut it = d[r * frame.cols..(r + 1) * frame.cols].iter().copied();
        pc.row_code().syndrome_word(word(&mut it)) == 0
    }) && (0..frame.cols).all(|c| {
        let mut it = (0..frame.rows).map(|r| d[r * frame.cols + c]);
        pc.col_code().syndrome_word(word(&mut it)) == 0
    })
}

#[derive(Debug, Clone)]
pub struct TurboOutput {
    /// Systematic `k2 x k1` corner of `hard`.
    pub message: BitMatrix,
    /// Component decisions of the last half-iteration, or the channel hard
    /// decisions if none ran.
    pub hard: BitMatrix,
    pub iterations_run: usize,
    pub trace: Vec<HalfIterationTrace>,
    pub stats: TurboStats,
}

/// Reusable turbo decoder bound to one product code and configuration.
pub struct TurboDecoder<'a> {
    pc: &'a ProductCode,
    config: TurboConfig,
    row_siso: ComponentSiso<'a>,
    col_siso: ComponentSiso<'a>,
}

impl<'a> TurboDecoder<'a> {
    pub fn new(pc: &'a ProductCode, config: TurboConfig) -> Result<Self, TurboError> {
        config.validate()?;
        let row_siso = ComponentSiso::new(pc.row_code(), config.decoder, config.query_cap)?;
        let col_siso = ComponentSiso::new(pc.col_code(), config.decoder, config.query_cap)?;
        Ok(TurboDecoder {
            pc,
            config,
            row_siso,
            col_siso,
        })
    }

    pub fn config(&self) -> &TurboConfig {
        &self.config
    }

    /// Decodes a frame of channel LLRs. With `reference` (the transmitted
    /// codeword array) each trace entry also counts hard-decision errors.
    pub fn decode(
        &mut self,
        channel_llr: &[f64],
        reference: Option<&BitMatrix>,
    ) -> Result<TurboOutput, TurboError> {
        let n2 = self.pc.col_code().n();
        let n1 = self.pc.row_code().n();
        let mut frame = ProductFrame::new(n2, n1, channel_llr.to_vec())?;
        let mut trace = Vec::with_capacity(2 * self.config.iterations);
        let mut stats = TurboStats::default();
        let mut iterations_run = 0;
        for it in 0..self.config.iterations {
            if self.config.early_stop && frame_is_codeword(self.pc, &frame) {
                break;
            }
            for (half, axis) in [Axis::Columns, Axis::Rows].into_iter().enumerate() {
                let siso = match axis {
                    Axis::Columns => &mut self.col_siso,
                    Axis::Rows => &mut self.row_siso,
                };
                let stage = 2 * it + half;
                let mut t = half_iteration(&mut frame, axis, siso, &self.config, stage, &mut stats);
                if let Some(reference) = reference {
                    let hard = frame.decisions();
                    let errs = hard
                        .row_iter()
                        .zip(reference.row_iter())
                        .map(|(a, b)| a.hamming_distance(b))
                        .sum();
                    t.bit_errors = Some(errs);
                }
                trace.push(t);
            }
            iterations_run += 1;
        }
        let hard = frame.decisions();
        Ok(TurboOutput {
            message: self.pc.message_corner(&hard),
            hard,
            iterations_run,
            trace,
            stats,
        })
    }
}

/// One-shot convenience wrapper around [`TurboDecoder`].
pub fn turbo_decode(
    pc: &ProductCode,
    channel_llr: &[f64],
    config: &TurboConfig,
) -> Result<TurboOutput, TurboError> {
    TurboDecoder::new(pc, config.clone())?.decode(channel_llr, None)
}
