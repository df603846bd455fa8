//! Memoised query orders.

use std::collections::HashMap;

use super::{OneLineGenerator, PatternSource, RankPermutation, WordListResult};
use crate::codes::LinearCode;

const CHUNK: usize = 256;

#[derive(Debug, Clone)]
struct Prefix {
    flat: Vec<u16>,
    bounds: Vec<(u32, u32)>,
    // bit r - 1 set for each flipped rank r; kept only for n <= 64
    masks: Vec<u64>,
    generator: OneLineGenerator,
    exhausted: bool,
}

impl Prefix {
    fn new(n: usize, c: u32) -> Self {
        Prefix {
            flat: Vec::new(),
            bounds: Vec::new(),
            masks: Vec::new(),
            generator: OneLineGenerator::new(n, c),
            exhausted: false,
        }
    }

    #[inline]
    fn pattern(&self, i: usize) -> &[u16] {
        let (start, end) = self.bounds[i];
        &self.flat[start as usize..end as usize]
    }

    /// Grows the prefix to hold pattern `i`, if the order is that long.
    fn extend_to(&mut self, i: usize) -> bool {
        let small = self.generator.n() <= 64;
        while self.bounds.len() <= i {
            if self.exhausted {
                return false;
            }
            match self.generator.next_pattern() {
                Some(p) => {
                    let start = self.flat.len() as u32;
                    self.flat.extend_from_slice(p);
                    self.bounds.push((start, self.flat.len() as u32));
                    if small {
                        self.masks
                            .push(p.iter().fold(0u64, |m, &r| m | 1 << (r - 1)));
                    }
                }
                None => self.exhausted = true,
            }
        }
        true
    }
}

/// Prefixes of every 1-line query order requested so far, keyed by `(n, c)`.
/// Prefixes grow on demand.
#[derive(Debug, Clone, Default)]
pub struct PatternCache {
    n: usize,
    orders: HashMap<u32, Prefix>,
}

impl PatternCache {
    pub fn new(n: usize) -> Self {
        PatternCache {
            n,
            orders: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Patterns held for intercept `c`.
    pub fn cached_len(&self, c: u32) -> usize {
        self.orders.get(&c).map_or(0, |p| p.bounds.len())
    }

    /// A stream identical to `OneLineGenerator::new(n, c)`.
    pub fn source(&mut self, c: u32) -> CachedSource<'_> {
        let n = self.n;
        CachedSource {
            prefix: self.orders.entry(c).or_insert_with(|| Prefix::new(n, c)),
            next: 0,
        }
    }
}

impl PatternCache {
    /// Same result as [`super::grand_list_decode_word`] fed by
    /// `OneLineGenerator::new(n, c)`, replaying cached rank masks.
    #[allow(clippy::too_many_arguments)]
    pub fn list_decode_word(
        &mut self,
        c: u32,
        code: &LinearCode,
        hard: u64,
        ranks: &RankPermutation,
        list_size: usize,
        query_cap: u64,
        out: &mut WordListResult,
    ) {
        let n = self.n;
        assert!(
            n <= 64 && code.n() == n,
            "word-level decoding needs n <= 64"
        );
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
        let prefix = self.orders.entry(c).or_insert_with(|| Prefix::new(n, c));
        let cap = usize::try_from(query_cap).unwrap_or(usize::MAX);
        let mut i = 0usize;
        while out.codewords.len() < list_size {
            if i >= cap {
                out.truncated = true;
                break;
            }
            if i >= prefix.masks.len() {
                prefix.extend_to(i.saturating_add(CHUNK).min(cap - 1));
                if i >= prefix.masks.len() {
                    break;
                }
            }
            let end = prefix.masks.len().min(cap);
            for &mask in &prefix.masks[i..end] {
                let mut m = mask;
                let mut s = s0;
                while m != 0 {
                    s ^= rank_cols[(m.trailing_zeros() & 63) as usize];
                    m &= m - 1;
                }
                i += 1;
                if s == 0 {
                    out.codewords.push(hard ^ bits_of(mask, &rank_mask));
                    out.found_at.push(i as u64 - 1);
                    if out.codewords.len() == list_size {
                        break;
                    }
                }
            }
        }
        out.queries_used = i as u64;
    }
}

#[inline]
fn bits_of(mut ranks: u64, rank_mask: &[u64; 64]) -> u64 {
    let mut e = 0;
    while ranks != 0 {
        e |= rank_mask[ranks.trailing_zeros() as usize];
        ranks &= ranks - 1;
    }
    e
}

pub struct CachedSource<'a> {
    prefix: &'a mut Prefix,
    next: usize,
}

impl PatternSource for CachedSource<'_> {
    #[inline]
    fn next_pattern(&mut self) -> Option<&[u16]> {
        let i = self.next;
        if i >= self.prefix.bounds.len() && !self.prefix.extend_to(i) {
            return None;
        }
        self.next += 1;
        Some(self.prefix.pattern(i))
    }
}
