//! Random linear codes.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CodeError, LinearCode};
use crate::bitlinalg::{BitMatrix, BitVector};

pub const DEFAULT_RLC_REDRAWS: usize = 1000;

/// Random systematic code `[I_k | P]` with `P` drawn from a seeded stream.
///
/// Without `required_d`, every bit of `P` is uniform. With `required_d >= 3`
/// the rows of `P` (the columns of `H` at information positions) are drawn
/// uniformly among distinct vectors of weight at least two, i.e. uniformly
/// over systematic codes with distance at least three; draws repeat until the
/// exact distance matches.
pub fn build_rlc(
    n: usize,
    k: usize,
    seed: u64,
    required_d: Option<usize>,
) -> Result<LinearCode, CodeError> {
    build_rlc_with_budget(n, k, seed, required_d, DEFAULT_RLC_REDRAWS)
}

pub fn build_rlc_with_budget(
    n: usize,
    k: usize,
    seed: u64,
    required_d: Option<usize>,
    redraws: usize,
) -> Result<LinearCode, CodeError> {
    if k == 0 || k >= n {
        return Err(CodeError::Invalid(format!(
            "need 0 < k < n, got n={n} k={k}"
        )));
    }
    let r = n - k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(required) = required_d else {
        let p = draw_uniform(&mut rng, k, r);
        return finish(n, k, p, None);
    };
    if required == 0 || k.min(r) > super::EXHAUSTIVE_LIMIT {
        return Err(CodeError::Invalid(format!(
            "cannot target distance {required} for ({n},{k})"
        )));
    }
    let distinct = required >= 3;
    if distinct && (r >= 64 || (1u64 << r) - 1 - (r as u64) < k as u64) {
        return Err(CodeError::DistanceUnreachable {
            required,
            attempts: 0,
        });
    }
    for _ in 0..redraws {
        let p = if distinct {
            draw_distinct_columns(&mut rng, k, r)
        } else {
            draw_uniform(&mut rng, k, r)
        };
        let code = finish(n, k, p, None)?;
        if code.min_distance()? == required {
            return Ok(code
                .with_d_min(required)
                .with_label(format!("RLC({n},{k},{required})")));
        }
    }
    Err(CodeError::DistanceUnreachable {
        required,
        attempts: redraws,
    })
}

fn draw_uniform(rng: &mut ChaCha8Rng, k: usize, r: usize) -> Vec<BitVector> {
    (0..k)
        .map(|_| BitVector::from_bools((0..r).map(|_| rng.random_bool(0.5))))
        .collect()
}

fn draw_distinct_columns(rng: &mut ChaCha8Rng, k: usize, r: usize) -> Vec<BitVector> {
    let candidates: Vec<u64> = (1u64..1 << r).filter(|v| v.count_ones() >= 2).collect();
    sample(rng, candidates.len(), k)
        .into_iter()
        .map(|i| BitVector::from_u64(candidates[i], r))
        .collect()
}

fn finish(
    n: usize,
    k: usize,
    p: Vec<BitVector>,
    d: Option<usize>,
) -> Result<LinearCode, CodeError> {
    let mut g = BitMatrix::zeros(k, n);
    for (i, row) in p.iter().enumerate() {
        g.set(i, i, true);
        for j in row.ones() {
            g.set(i, k + j, true);
        }
    }
    LinearCode::from_systematic(g, format!("RLC({n},{k})"), d)
}
