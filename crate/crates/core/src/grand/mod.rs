//! GRAND list decoding with ORBGRAND query orders.
//!
//! Noise effects are generated in the *rank domain*: position `1` is the
//! least reliable bit, `n` the most reliable. [`RankPermutation`] maps ranks
//! back to bit positions before each membership query.

mod cache;
mod generator;
mod landslide;

use crate::bitlinalg::BitVector;
use crate::codes::LinearCode;

pub use cache::{CachedSource, PatternCache};
pub use generator::OneLineGenerator;
pub use landslide::Landslide;

/// A stateful stream of noise effects, each a strictly increasing list of
/// 1-based rank positions. The returned slice is only valid until the next
/// call.
pub trait PatternSource {
    fn next_pattern(&mut self) -> Option<&[u16]>;

    /// Adapts the stream into owned [`NoisePattern`]s.
    fn patterns(self) -> Patterns<Self>
    where
        Self: Sized,
    {
        Patterns(self)
    }
}

pub struct Patterns<S>(S);

impl<S: PatternSource> Iterator for Patterns<S> {
    type Item = NoisePattern;

    fn next(&mut self) -> Option<NoisePattern> {
        self.0.next_pattern().map(|p| NoisePattern::new(p.to_vec()))
    }
}

/// A putative noise effect: the set of rank positions it flips.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoisePattern {
    flips: Vec<u16>,
}

impl NoisePattern {
    pub fn new(flips: Vec<u16>) -> Self {
        debug_assert!(flips.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(flips.first().is_none_or(|&f| f >= 1));
        NoisePattern { flips }
    }

    pub fn flips(&self) -> &[u16] {
        &self.flips
    }

    pub fn hamming_weight(&self) -> usize {
        self.flips.len()
    }

    /// Sum of flipped rank positions.
    pub fn logistic_weight(&self) -> u64 {
        self.flips.iter().map(|&f| u64::from(f)).sum()
    }

    /// `c * w_H + w_L`.
    pub fn total_weight(&self, c: u32) -> u64 {
        u64::from(c) * self.hamming_weight() as u64 + self.logistic_weight()
    }
}

/// Sum of the rank-ordered reliabilities at the flipped positions; the noise
/// effect's likelihood decreases as this grows.
pub fn statistic_f(pattern: &[u16], sorted_reliabilities: &[f64]) -> f64 {
    pattern
        .iter()
        .map(|&p| sorted_reliabilities[usize::from(p) - 1])
        .sum()
}

/// Ordering of bit positions by ascending reliability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPermutation {
    // order[r] = bit position with rank r + 1
    order: Vec<usize>,
    // inverse[pos] = zero-based rank of pos
    inverse: Vec<usize>,
}

impl RankPermutation {
    /// Stable sort of `|reliability|` ascending; equal values keep index
    /// order.
    pub fn from_reliabilities(reliabilities: &[f64]) -> Self {
        // bit patterns of non-negative floats order like the floats; the
        // index in the low half breaks ties
        let n = reliabilities.len();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        if n <= 64 {
            let mut keys = [0u128; 64];
            for (k, (i, r)) in keys.iter_mut().zip(reliabilities.iter().enumerate()) {
                *k = u128::from(r.abs().to_bits()) << 64 | i as u128;
            }
            keys[..n].sort_unstable();
            order.extend(keys[..n].iter().map(|&k| k as u64 as usize));
        } else {
            let keys: Vec<u64> = reliabilities.iter().map(|r| r.abs().to_bits()).collect();
            order.extend(0..n);
            order.sort_by_key(|&i| keys[i]);
        }
        Self::from_order(order)
    }

    pub fn from_order(order: Vec<usize>) -> Self {
        let mut inverse = vec![0; order.len()];
        for (r, &p) in order.iter().enumerate() {
            inverse[p] = r;
        }
        RankPermutation { order, inverse }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Bit position holding 1-based rank `rank`.
    #[inline]
    pub fn position(&self, rank: u16) -> usize {
        self.order[usize::from(rank) - 1]
    }

    /// 1-based rank of bit position `pos`.
    pub fn rank_of(&self, pos: usize) -> usize {
        self.inverse[pos] + 1
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Reliabilities rearranged into ascending rank order.
    pub fn sorted(&self, reliabilities: &[f64]) -> Vec<f64> {
        self.order.iter().map(|&p| reliabilities[p].abs()).collect()
    }
}

/// Reliability model `r_i ~ beta * (c + i)` for rank `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineModel {
    pub c: u32,
    pub beta: f64,
}

/// Fits a line through `(1, r_1)` and `(h, r_h)` with `h = floor(n / 2)`:
/// `beta = (r_h - r_1) / (h - 1)` and `c = max(0, round((r_1 - beta) / beta))`,
/// capped at `n`.
///
/// When the slope is degenerate (`beta <= 1e-9 * max(r)`, or every value is
/// zero) the reliabilities carry no ordering information beyond Hamming
/// weight, so `c` is set to the cap. Inputs shorter than four values have no
/// second fit point and return the origin line.
pub fn fit_line(sorted: &[f64]) -> LineModel {
    let n = sorted.len();
    if n < 4 {
        return LineModel { c: 0, beta: 1.0 };
    }
    let h = n / 2;
    let r1 = sorted[0];
    let rh = sorted[h - 1];
    let beta = (rh - r1) / (h - 1) as f64;
    let max = sorted.iter().copied().fold(0.0f64, f64::max);
    let eps = if max > 0.0 {
        1e-9 * max
    } else {
        f64::MIN_POSITIVE
    };
    if !(beta > eps) {
        return LineModel {
            c: n as u32,
            beta: eps,
        };
    }
    let c = ((r1 - beta) / beta).round().clamp(0.0, n as f64) as u32;
    LineModel { c, beta }
}

/// Output of [`grand_list_decode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListDecodeResult {
    /// Distinct codewords in the order they were found.
    pub codewords: Vec<BitVector>,
    /// Zero-based query index at which each codeword was found.
    pub found_at: Vec<u64>,
    pub queries_used: u64,
    /// True when the query cap stopped the search short of `L` codewords.
    pub truncated: bool,
}

/// Default query budget: eight times the expected guesswork
/// `2^(n-k) * L` of a random code.
pub fn default_query_cap(n: usize, k: usize, list_size: usize) -> u64 {
    let base = 1u64.checked_shl((n - k) as u32).unwrap_or(u64::MAX);
    base.saturating_mul(list_size as u64).saturating_mul(8)
}

/// Word-level result used on the hot path (`n <= 64`).
#[derive(Debug, Clone, Default)]
pub struct WordListResult {
    pub codewords: Vec<u64>,
    pub found_at: Vec<u64>,
    pub queries_used: u64,
    pub truncated: bool,
}

/// GRAND list decoding on packed words: queries noise effects from
/// `source` in order, keeping each `hard ^ effect` that has zero syndrome,
/// until `list_size` codewords are found or `query_cap` queries are spent.
///
/// The syndrome of each query is updated incrementally from the syndrome of
/// `hard`, so a query costs one XOR per flipped bit.
pub fn grand_list_decode_word<S: PatternSource>(
    code: &LinearCode,
    hard: u64,
    ranks: &RankPermutation,
    source: &mut S,
    list_size: usize,
    query_cap: u64,
    out: &mut WordListResult,
) {
    let n = code.n();
    assert!(n <= 64, "word-level decoding needs n <= 64");
    assert_eq!(ranks.len(), n);
    let cols = code
        .syndrome_columns()
        .expect("word-level decoding needs n - k <= 64");
    let mut rank_cols = [0u64; 64];
    let mut rank_mask = [0u64; 64];
    for (r, &p) in ranks.order().iter().enumerate() {
        rank_cols[r] = cols[p];
        rank_mask[r] = 1u64 << p;
    }
    let s0 = code.syndrome_word(hard);
    out.codewords.clear();
    out.found_at.clear();
    out.queries_used = 0;
    out.truncated = false;
    while out.codewords.len() < list_size {
        if out.queries_used >= query_cap {
            out.truncated = true;
            break;
        }
        let Some(pattern) = source.next_pattern() else {
            break;
        };
        let mut s = s0;
        for &f in pattern {
            s ^= rank_cols[usize::from(f) - 1];
        }
        if s == 0 {
            let effect = pattern
                .iter()
                .fold(0u64, |m, &f| m | rank_mask[usize::from(f) - 1]);
            out.codewords.push(hard ^ effect);
            out.found_at.push(out.queries_used);
        }
        out.queries_used += 1;
    }
}

/// GRAND list decoding of a hard-decision word.
pub fn grand_list_decode<S: PatternSource>(
    code: &LinearCode,
    hard: &BitVector,
    ranks: &RankPermutation,
    source: &mut S,
    list_size: usize,
    query_cap: u64,
) -> ListDecodeResult {
    assert_eq!(hard.len(), code.n(), "hard word length");
    assert!(list_size >= 1 && query_cap >= 1);
    if code.n() <= 64 && code.syndrome_columns().is_some() {
        let mut out = WordListResult::default();
        grand_list_decode_word(
            code,
            hard.to_u64(),
            ranks,
            source,
            list_size,
            query_cap,
            &mut out,
        );
        return ListDecodeResult {
            codewords: out
                .codewords
                .iter()
                .map(|&w| BitVector::from_u64(w, code.n()))
                .collect(),
            found_at: out.found_at,
            queries_used: out.queries_used,
            truncated: out.truncated,
        };
    }
    // general path for long codes
    let mut result = ListDecodeResult {
        codewords: Vec::new(),
        found_at: Vec::new(),
        queries_used: 0,
        truncated: false,
    };
    while result.codewords.len() < list_size {
        if result.queries_used >= query_cap {
            result.truncated = true;
            break;
        }
        let Some(pattern) = source.next_pattern() else {
            break;
        };
        let mut candidate = hard.clone();
        for &f in pattern {
            candidate.flip(ranks.position(f));
        }
        if code.is_codeword(&candidate).expect("length checked") {
            result.codewords.push(candidate);
            result.found_at.push(result.queries_used);
        }
        result.queries_used += 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_ebch, build_rlc};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fit_line_origin() {
        let r: Vec<f64> = (1..=16).map(f64::from).collect();
        let m = fit_line(&r);
        assert_eq!(m.c, 0);
        assert!((m.beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_line_with_intercept() {
        for n in [8usize, 16, 32] {
            let r: Vec<f64> = (1..=n).map(|i| 5.0 + i as f64).collect();
            let m = fit_line(&r);
            assert_eq!(m.c, 5, "n={n}");
            assert!((m.beta - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fit_line_degenerate() {
        let m = fit_line(&[2.5; 10]);
        assert_eq!(m.c, 10);
        assert!(m.beta > 0.0);
        let m = fit_line(&[0.0; 8]);
        assert_eq!(m.c, 8);
        assert!(m.beta > 0.0);
    }

    #[test]
    fn fit_line_caps_c_and_rounds_half_away() {
        // beta = 1e-3, r1 = 10 -> c would be ~1e4
        let r: Vec<f64> = (0..12).map(|i| 10.0 + 1e-3 * i as f64).collect();
        assert_eq!(fit_line(&r).c, 12);
        // (r1 - beta) / beta = 2.5 exactly -> 3
        let r = [3.5, 4.5, 5.5, 6.5, 7.5, 8.5];
        assert_eq!(fit_line(&r).c, 3);
    }

    #[test]
    fn statistic_on_patterns() {
        let r = [0.5, 1.0, 2.0, 4.0];
        assert_eq!(statistic_f(&[], &r), 0.0);
        assert_eq!(statistic_f(&[1], &r), 0.5);
        assert_eq!(statistic_f(&[2, 4], &r), 5.0);
    }

    #[test]
    fn rank_permutation_is_stable() {
        let p = RankPermutation::from_reliabilities(&[3.0, -1.0, 1.0, 0.5]);
        assert_eq!(p.order(), &[3, 1, 2, 0]);
        assert_eq!(p.rank_of(0), 4);
        assert_eq!(p.position(1), 3);
        assert_eq!(p.sorted(&[3.0, -1.0, 1.0, 0.5]), vec![0.5, 1.0, 1.0, 3.0]);
    }

    #[test]
    fn codeword_input_is_found_first() {
        let code = build_ebch(5, 1).unwrap();
        let c = code.generator().row(4).clone();
        let ranks = RankPermutation::from_order((0..32).collect());
        let mut g = OneLineGenerator::basic(32);
        let res = grand_list_decode(&code, &c, &ranks, &mut g, 1, 1000);
        assert_eq!(res.codewords, vec![c]);
        assert_eq!(res.queries_used, 1);
        assert!(!res.truncated);
    }

    #[test]
    fn least_reliable_flip_is_second_query() {
        let code = build_ebch(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let msg = BitVector::from_bools((0..26).map(|_| rng.random_bool(0.5)));
        let c = code.encode(&msg).unwrap();
        let rel: Vec<f64> = (0..32).map(|_| rng.random_range(0.5..3.0)).collect();
        let ranks = RankPermutation::from_reliabilities(&rel);
        let mut y = c.clone();
        y.flip(ranks.position(1));
        for c_param in [0, 3, 32] {
            let mut g = OneLineGenerator::new(32, c_param);
            let res = grand_list_decode(&code, &y, &ranks, &mut g, 1, 1000);
            assert_eq!(res.codewords, vec![c.clone()]);
            assert_eq!(res.queries_used, 2);
        }
    }

    #[test]
    fn list_is_distinct_valid_and_weight_ordered() {
        let code = build_ebch(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let y = BitVector::from_bools((0..32).map(|_| rng.random_bool(0.5)));
            let rel: Vec<f64> = (0..32).map(|_| rng.random_range(0.0..4.0)).collect();
            let ranks = RankPermutation::from_reliabilities(&rel);
            let mut g = OneLineGenerator::new(32, 2);
            let res = grand_list_decode(&code, &y, &ranks, &mut g, 8, 1 << 20);
            assert_eq!(res.codewords.len(), 8);
            for (i, cw) in res.codewords.iter().enumerate() {
                assert!(code.is_codeword(cw).unwrap());
                assert!(!res.codewords[..i].contains(cw));
            }
            let weights: Vec<u64> = res
                .codewords
                .iter()
                .map(|cw| {
                    let e = cw.xor(&y).unwrap();
                    let mut ranks_flipped: Vec<u16> =
                        e.ones().map(|p| ranks.rank_of(p) as u16).collect();
                    ranks_flipped.sort_unstable();
                    NoisePattern::new(ranks_flipped).total_weight(2)
                })
                .collect();
            assert!(weights.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn query_cap_truncates() {
        let code = build_rlc(20, 10, 4, None).unwrap();
        let y = BitVector::from_u64(0xA5A5A, 20);
        let ranks = RankPermutation::from_order((0..20).collect());
        let mut g = OneLineGenerator::basic(20);
        let res = grand_list_decode(&code, &y, &ranks, &mut g, 64, 100);
        assert!(res.truncated);
        assert_eq!(res.queries_used, 100);
    }

    #[test]
    fn default_cap() {
        assert_eq!(default_query_cap(32, 26, 16), 64 * 16 * 8);
    }

    #[test]
    fn general_path_matches_word_path() {
        let code = build_ebch(5, 1).unwrap();
        let y = BitVector::from_u64(0xDEADBEEF, 32);
        let ranks = RankPermutation::from_order((0..32).rev().collect());
        let fast = grand_list_decode(
            &code,
            &y,
            &ranks,
            &mut OneLineGenerator::new(32, 1),
            4,
            10_000,
        );
        // force the general path through a manual loop
        let mut g = OneLineGenerator::new(32, 1);
        let mut found = Vec::new();
        let mut q = 0;
        while found.len() < 4 {
            let p = g.next_pattern().unwrap().to_vec();
            let mut cand = y.clone();
            for f in p {
                cand.flip(ranks.position(f));
            }
            if code.is_codeword(&cand).unwrap() {
                found.push(cand);
            }
            q += 1;
        }
        assert_eq!(fast.codewords, found);
        assert_eq!(fast.queries_used, q);
    }
}
