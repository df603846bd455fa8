//! Chase-II list decoding over a syndrome-table bounded-distance decoder.

use std::collections::HashMap;

use thiserror::Error;

use crate::bitlinalg::BitVector;
use crate::codes::LinearCode;
use crate::grand::RankPermutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChaseError {
    #[error("syndrome tables need n <= 64 and n - k <= 64, got n={n} n-k={r}")]
    TooLong { n: usize, r: usize },
    #[error("radius {t} is not uniquely decodable: two errors of weight <= {t} share a syndrome")]
    AmbiguousRadius { t: usize },
    #[error("minimum distance unknown; pass an explicit radius")]
    UnknownDistance,
}

#[derive(Debug, Clone)]
enum Storage {
    // indexed by syndrome, u64::MAX marks an uncorrectable syndrome
    Dense(Vec<u64>),
    Sparse(HashMap<u64, u64>),
}

/// Coset leaders of weight at most `t`, keyed by syndrome.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    radius: usize,
    storage: Storage,
}

const NONE: u64 = u64::MAX;

impl SyndromeTable {
    /// Table for the radius `floor((d_min - 1) / 2)` of a code with known
    /// minimum distance.
    pub fn for_code(code: &LinearCode) -> Result<Self, ChaseError> {
        let t = code
            .correction_radius()
            .ok_or(ChaseError::UnknownDistance)?;
        Self::build(code, t)
    }

    pub fn build(code: &LinearCode, t: usize) -> Result<Self, ChaseError> {
        let n = code.n();
        let r = n - code.k();
        let cols = match code.syndrome_columns() {
            Some(c) if n <= 64 => c,
            _ => return Err(ChaseError::TooLong { n, r }),
        };
        let mut entries: Vec<(u64, u64)> = vec![(0, 0)];
        let mut positions = Vec::with_capacity(t);
        for w in 1..=t.min(n) {
            collect_patterns(cols, w, 0, &mut positions, &mut entries);
        }
        let storage = if r <= 20 {
            let mut dense = vec![NONE; 1 << r];
            for &(s, e) in &entries {
                if dense[s as usize] != NONE {
                    return Err(ChaseError::AmbiguousRadius { t });
                }
                dense[s as usize] = e;
            }
            Storage::Dense(dense)
        } else {
            let mut map = HashMap::with_capacity(entries.len());
            for &(s, e) in &entries {
                if map.insert(s, e).is_some() {
                    return Err(ChaseError::AmbiguousRadius { t });
                }
            }
            Storage::Sparse(map)
        };
        Ok(SyndromeTable { radius: t, storage })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|&&e| e != NONE).count(),
            Storage::Sparse(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn leader(&self, syndrome: u64) -> Option<u64> {
        match &self.storage {
            Storage::Dense(d) => d.get(syndrome as usize).copied().filter(|&e| e != NONE),
            Storage::Sparse(m) => m.get(&syndrome).copied(),
        }
    }
}

fn collect_patterns(
    cols: &[u64],
    w: usize,
    start: usize,
    positions: &mut Vec<usize>,
    out: &mut Vec<(u64, u64)>,
) {
    if positions.len() == w {
        let s = positions.iter().fold(0, |s, &p| s ^ cols[p]);
        let e = positions.iter().fold(0, |e, &p| e | 1u64 << p);
        out.push((s, e));
        return;
    }
    for p in start..cols.len() {
        positions.push(p);
        collect_patterns(cols, w, p + 1, positions, out);
        positions.pop();
    }
}

/// Word-level bounded-distance decoding.
#[inline]
pub fn bounded_distance_decode_word(
    code: &LinearCode,
    table: &SyndromeTable,
    hard: u64,
) -> Option<u64> {
    table.leader(code.syndrome_word(hard)).map(|e| hard ^ e)
}

/// Returns the unique codeword within distance `t` of `hard`, if any.
pub fn bounded_distance_decode(
    code: &LinearCode,
    table: &SyndromeTable,
    hard: &BitVector,
) -> Option<BitVector> {
    assert_eq!(hard.len(), code.n());
    bounded_distance_decode_word(code, table, hard.to_u64())
        .map(|w| BitVector::from_u64(w, code.n()))
}

/// Chase-II on packed words: flips every combination of the `rho` least
/// reliable positions of `hard`, bounded-distance decodes each test word and
/// keeps distinct successes in test-pattern order. `out` is cleared first.
pub fn chase_list_decode_word(
    code: &LinearCode,
    table: &SyndromeTable,
    hard: u64,
    ranks: &RankPermutation,
    rho: usize,
    out: &mut Vec<u64>,
) {
    out.clear();
    let rho = rho.min(code.n());
    let lrp: Vec<u64> = ranks.order()[..rho].iter().map(|&p| 1u64 << p).collect();
    for t in 0u32..1 << rho {
        let mut test = hard;
        let mut bits = t;
        while bits != 0 {
            test ^= lrp[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        if let Some(c) = bounded_distance_decode_word(code, table, test) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
}

/// Chase-II list decoding from soft values (positive favours bit 0). The
/// least reliable positions are chosen by `|soft|`, ties to the lowest index.
/// The result may be empty if every test word fails to decode.
pub fn chase_list_decode(
    code: &LinearCode,
    table: &SyndromeTable,
    soft: &[f64],
    rho: usize,
) -> Vec<BitVector> {
    assert_eq!(soft.len(), code.n());
    assert!((1..=16).contains(&rho), "rho must be in 1..=16");
    let hard = crate::channel::hard_decision_word(soft);
    let ranks = RankPermutation::from_reliabilities(soft);
    let mut out = Vec::with_capacity(1 << rho);
    chase_list_decode_word(code, table, hard, &ranks, rho, &mut out);
    out.into_iter()
        .map(|w| BitVector::from_u64(w, code.n()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::modulate;
    use crate::codes::{build_bch, build_ebch};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_codeword(code: &LinearCode, rng: &mut ChaCha8Rng) -> BitVector {
        let m = BitVector::from_bools((0..code.k()).map(|_| rng.random_bool(0.5)));
        code.encode(&m).unwrap()
    }

    #[test]
    fn codeword_decodes_to_itself() {
        let code = build_ebch(5, 1).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        let c = code.generator().row(0).clone();
        assert_eq!(bounded_distance_decode(&code, &table, &c), Some(c));
    }

    #[test]
    fn ebch_corrects_every_single_error() {
        let code = build_ebch(5, 1).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        assert_eq!(table.radius(), 1);
        assert_eq!(table.len(), 33);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let c = random_codeword(&code, &mut rng);
            for i in 0..code.n() {
                let mut y = c.clone();
                y.flip(i);
                assert_eq!(bounded_distance_decode(&code, &table, &y), Some(c.clone()));
            }
        }
    }

    #[test]
    fn bch_31_21_corrects_double_errors() {
        let code = build_bch(5, 2).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        assert_eq!(table.len(), 1 + 31 + 465);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let c = random_codeword(&code, &mut rng);
            for i in 0..31 {
                for j in i..31 {
                    let mut y = c.clone();
                    y.flip(i);
                    if j != i {
                        y.flip(j);
                    }
                    assert_eq!(bounded_distance_decode(&code, &table, &y), Some(c.clone()));
                }
            }
        }
    }

    #[test]
    fn never_decodes_beyond_radius() {
        let code = build_ebch(5, 1).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let y = BitVector::from_bools((0..32).map(|_| rng.random_bool(0.5)));
            if let Some(c) = bounded_distance_decode(&code, &table, &y) {
                assert!(c.hamming_distance(&y) <= 1);
                assert!(code.is_codeword(&c).unwrap());
            }
        }
    }

    #[test]
    fn radius_too_large_is_rejected() {
        let code = build_ebch(5, 1).unwrap();
        assert_eq!(
            SyndromeTable::build(&code, 2).unwrap_err(),
            ChaseError::AmbiguousRadius { t: 2 }
        );
    }

    #[test]
    fn noiseless_input_is_in_list() {
        let code = build_ebch(5, 1).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c = random_codeword(&code, &mut rng);
        let soft = modulate(&c);
        let list = chase_list_decode(&code, &table, &soft, 4);
        assert!(list.contains(&c));
    }

    #[test]
    fn list_is_bounded_distinct_and_valid() {
        let code = build_ebch(5, 1).unwrap();
        let table = SyndromeTable::for_code(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let soft: Vec<f64> = (0..32).map(|_| rng.random_range(-2.0..2.0)).collect();
            for rho in 1..=5 {
                let list = chase_list_decode(&code, &table, &soft, rho);
                assert!(list.len() <= 1 << rho);
                for (i, c) in list.iter().enumerate() {
                    assert!(code.is_codeword(c).unwrap());
                    assert!(!list[..i].contains(c));
                }
                assert_eq!(list, chase_list_decode(&code, &table, &soft, rho));
            }
        }
    }
}
