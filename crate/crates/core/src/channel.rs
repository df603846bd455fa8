//! BPSK over AWGN.
//!
//! Bit `0` maps to `+1.0` and bit `1` to `-1.0` everywhere in the crate, so a
//! positive LLR favours bit `0`.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::bitlinalg::BitVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("code rate {0} outside (0, 1]")]
    Rate(f64),
    #[error("noise variance must be positive, got {0}")]
    Variance(f64),
}

/// Operating point: Eb/N0 in dB and the code rate that converts it to a
/// per-symbol noise variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    eb_n0_db: f64,
    rate: f64,
    sigma2: f64,
}

impl ChannelSpec {
    pub fn new(eb_n0_db: f64, rate: f64) -> Result<Self, ChannelError> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(ChannelError::Rate(rate));
        }
        let sigma2 = 1.0 / (2.0 * rate * 10f64.powf(eb_n0_db / 10.0));
        Ok(ChannelSpec {
            eb_n0_db,
            rate,
            sigma2,
        })
    }

    pub fn eb_n0_db(&self) -> f64 {
        self.eb_n0_db
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Noise variance per real dimension, unit symbol energy.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

pub fn modulate(bits: &BitVector) -> Vec<f64> {
    bits.iter().map(|b| if b { -1.0 } else { 1.0 }).collect()
}

/// Adds i.i.d. Gaussian noise of variance `sigma2` to every symbol.
pub fn transmit<R: Rng + ?Sized>(x: &[f64], spec: &ChannelSpec, rng: &mut R) -> Vec<f64> {
    let mut y = x.to_vec();
    add_noise(&mut y, spec.sigma2(), rng);
    y
}

pub fn add_noise<R: Rng + ?Sized>(y: &mut [f64], sigma2: f64, rng: &mut R) {
    if sigma2 <= 0.0 {
        return;
    }
    let normal = Normal::new(0.0, sigma2.sqrt()).expect("finite sigma");
    for v in y.iter_mut() {
        *v += normal.sample(rng);
    }
}

/// Channel LLRs `2 y / sigma^2`. Magnitude is the reliability, sign the hard
/// decision.
pub fn llr(y: &[f64], spec: &ChannelSpec) -> Result<Vec<f64>, ChannelError> {
    llr_with_variance(y, spec.sigma2())
}

pub fn llr_with_variance(y: &[f64], sigma2: f64) -> Result<Vec<f64>, ChannelError> {
    if !(sigma2 > 0.0) {
        return Err(ChannelError::Variance(sigma2));
    }
    let scale = 2.0 / sigma2;
    Ok(y.iter().map(|v| v * scale).collect())
}

/// Bit `1` iff the soft value is negative.
pub fn hard_decision(soft: &[f64]) -> BitVector {
    BitVector::from_bools(soft.iter().map(|&v| v < 0.0))
}

/// Packs hard decisions of at most 64 soft values into a word.
#[inline]
pub fn hard_decision_word(soft: &[f64]) -> u64 {
    debug_assert!(soft.len() <= 64);
    soft.iter()
        .enumerate()
        .fold(0u64, |w, (i, &v)| w | (u64::from(v < 0.0) << i))
}
