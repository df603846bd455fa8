//! Binary linear block codes: construction, encoding and membership.
//!
//! Every code is held in systematic form `G = [I_k | P]` with the matching
//! parity-check matrix `H = [P^T | I_{n-k}]`. Codes short enough to fit a
//! machine word additionally cache per-position syndrome columns, which is
//! what the decoders use on their hot path.

mod bch;
mod crc;
mod gf;
mod product;
mod rlc;
mod spec;

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitlinalg::{
    parity_from_systematic, to_systematic, BitError, BitMatrix, BitVector, ColumnPermutation,
};

pub use bch::{build_bch, build_ebch};
pub use crc::{build_crc, koopman_to_generator_poly, poly_degree};
pub use gf::GF2mField;
pub use product::ProductCode;
pub use rlc::{build_rlc, DEFAULT_RLC_REDRAWS};
pub use spec::{BuiltCode, CodeSpec, CodeSpecError};

/// Largest dimension (of the code or its dual) that `min_distance` will
/// enumerate exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 26;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error(transparent)]
    Bits(#[from] BitError),
    #[error("invalid code parameters: {0}")]
    Invalid(String),
    #[error(
        "exhaustive minimum distance needs min(k, n-k) <= {EXHAUSTIVE_LIMIT}, got k={k}, n-k={r}; \
         use min_distance_lower_bound instead"
    )]
    TooLarge { k: usize, r: usize },
    #[error("no code with minimum distance {required} found in {attempts} draws")]
    DistanceUnreachable { required: usize, attempts: usize },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad code file header: {0}")]
    Header(String),
}

/// A systematic binary linear block code.
#[derive(Debug, Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    g_sys: BitMatrix,
    h: BitMatrix,
    label: String,
    d_min: Option<usize>,
    permutation: ColumnPermutation,
    // syndrome contribution of each bit position, bit j of the word = row j of H
    h_columns: Option<Vec<u64>>,
    // generator rows packed into words, when n <= 64
    g_words: Option<Vec<u64>>,
}

impl LinearCode {
    /// Wraps a generator already in `[I_k | P]` form.
    pub fn from_systematic(
        g_sys: BitMatrix,
        label: impl Into<String>,
        d_min: Option<usize>,
    ) -> Result<Self, CodeError> {
        let k = g_sys.rows();
        let n = g_sys.cols();
        if k == 0 || k >= n {
            return Err(CodeError::Invalid(format!(
                "need 0 < k < n, got n={n} k={k}"
            )));
        }
        let h = parity_from_systematic(&g_sys)?;
        let h_columns = (n - k <= 64).then(|| {
            (0..n)
                .map(|c| (0..n - k).fold(0u64, |acc, r| acc | (u64::from(h.get(r, c)) << r)))
                .collect()
        });
        let g_words = (n <= 64).then(|| g_sys.row_iter().map(BitVector::to_u64).collect());
        Ok(LinearCode {
            n,
            k,
            g_sys,
            h,
            label: label.into(),
            d_min,
            permutation: ColumnPermutation::identity(n),
            h_columns,
            g_words,
        })
    }

    /// Accepts any full-rank generator. If systematizing needs column swaps the
    /// code is stored in the permuted (equivalent) coordinates and the
    /// permutation is kept for mapping words back.
    pub fn from_generator(g: &BitMatrix, label: impl Into<String>) -> Result<Self, CodeError> {
        let (g_sys, perm) = to_systematic(g)?;
        let mut code = LinearCode::from_systematic(g_sys, label, None)?;
        code.permutation = perm;
        Ok(code)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn d_min(&self) -> Option<usize> {
        self.d_min
    }

    /// Records a verified minimum distance.
    pub fn with_d_min(mut self, d: usize) -> Self {
        self.d_min = Some(d);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.g_sys
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn permutation(&self) -> &ColumnPermutation {
        &self.permutation
    }

    /// Per-position syndrome columns packed into words; `None` when
    /// `n - k > 64`.
    pub fn syndrome_columns(&self) -> Option<&[u64]> {
        self.h_columns.as_deref()
    }

    /// Bounded-distance decoding radius implied by the known minimum distance.
    pub fn correction_radius(&self) -> Option<usize> {
        self.d_min.map(|d| (d.saturating_sub(1)) / 2)
    }

    pub fn encode(&self, msg: &BitVector) -> Result<BitVector, CodeError> {
        if msg.len() != self.k {
            return Err(BitError::Dimension {
                expected: self.k,
                got: msg.len(),
            }
            .into());
        }
        if let Some(rows) = &self.g_words {
            return Ok(BitVector::from_u64(
                self.encode_word(msg.to_u64(), rows),
                self.n,
            ));
        }
        let mut out = BitVector::zeros(self.n);
        for i in msg.ones() {
            out.xor_assign(self.g_sys.row(i))?;
        }
        Ok(out)
    }

    /// Word-level encoding for `n <= 64`: bit `i` of `msg` is message bit
    /// `i`. `None` for longer codes.
    #[inline]
    pub fn encode_u64(&self, msg: u64) -> Option<u64> {
        self.g_words
            .as_ref()
            .map(|rows| self.encode_word(msg, rows))
    }

    #[inline]
    fn encode_word(&self, mut msg: u64, rows: &[u64]) -> u64 {
        let mut out = 0;
        while msg != 0 {
            let i = msg.trailing_zeros() as usize;
            out ^= rows[i];
            msg &= msg - 1;
        }
        out
    }

    pub fn syndrome(&self, w: &BitVector) -> Result<BitVector, CodeError> {
        Ok(crate::bitlinalg::mat_vec_mul(&self.h, w)?)
    }

    /// Syndrome of a word of at most 64 bits, using the cached columns.
    #[inline]
    pub fn syndrome_word(&self, mut w: u64) -> u64 {
        let cols = self
            .h_columns
            .as_ref()
            .expect("syndrome_word needs n - k <= 64");
        let mut s = 0;
        while w != 0 {
            s ^= cols[w.trailing_zeros() as usize];
            w &= w - 1;
        }
        s
    }

    pub fn is_codeword(&self, w: &BitVector) -> Result<bool, CodeError> {
        if w.len() != self.n {
            return Err(BitError::Dimension {
                expected: self.n,
                got: w.len(),
            }
            .into());
        }
        if self.n <= 64 && self.h_columns.is_some() {
            return Ok(self.syndrome_word(w.to_u64()) == 0);
        }
        Ok(self.syndrome(w)?.is_zero())
    }

    /// Appends an overall parity bit, so every codeword has even weight.
    pub fn extend_with_parity(&self) -> Result<LinearCode, CodeError> {
        let mut rows = Vec::with_capacity(self.k);
        for r in self.g_sys.row_iter() {
            let mut ext = BitVector::zeros(self.n + 1);
            for i in r.ones() {
                ext.set(i, true);
            }
            ext.set(self.n, r.weight() % 2 == 1);
            rows.push(ext);
        }
        let d = self.d_min.map(|d| if d % 2 == 1 { d + 1 } else { d });
        let label = format!("e{}", self.label);
        LinearCode::from_systematic(BitMatrix::from_rows(rows)?, label, d)
    }

    /// Exact weight distribution `A_0..A_n`, enumerating whichever of the code
    /// and its dual is smaller (MacWilliams transform for the dual route).
    pub fn weight_distribution(&self) -> Result<Vec<u128>, CodeError> {
        let r = self.n - self.k;
        if self.k.min(r) > EXHAUSTIVE_LIMIT {
            return Err(CodeError::TooLarge { k: self.k, r });
        }
        if self.k <= r {
            Ok(enumerate_weights(&self.g_sys))
        } else {
            let dual = enumerate_weights(&self.h);
            Ok(macwilliams(&dual, self.n, r))
        }
    }

    /// Exact minimum distance. Errors when both the code and its dual are too
    /// large to enumerate.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        let dist = self.weight_distribution()?;
        Ok(dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &a)| a > 0)
            .map(|(w, _)| w)
            .unwrap_or(0))
    }

    /// Searches for a set of at most `max_weight` columns of `H` summing to
    /// zero. Returns `Exact(w)` for the smallest such set, or
    /// `AtLeast(max_weight + 1)` when none exists.
    pub fn min_distance_lower_bound(&self, max_weight: usize) -> DistanceBound {
        let cols: Vec<BitVector> = (0..self.n).map(|c| self.h.column(c)).collect();
        let zero = BitVector::zeros(self.n - self.k);
        for w in 1..=max_weight.min(self.n) {
            if combination_sums_to(&cols, w, 0, &zero) {
                return DistanceBound::Exact(w);
            }
        }
        DistanceBound::AtLeast(max_weight + 1)
    }

    /// Writes the JSON header line followed by the generator in matrix text.
    pub fn save(&self, path: &Path) -> Result<(), CodeError> {
        let header = CodeFileHeader {
            label: self.label.clone(),
            n: self.n,
            k: self.k,
            d_min: self.d_min,
        };
        let text = format!(
            "{}\n{}",
            serde_json::to_string(&header).expect("header serializes"),
            self.g_sys.to_text()
        );
        fs::write(path, text).map_err(|source| CodeError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CodeError> {
        let text = fs::read_to_string(path).map_err(|source| CodeError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_file_text(&text)
    }

    pub fn from_file_text(text: &str) -> Result<Self, CodeError> {
        let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
        let header: CodeFileHeader =
            serde_json::from_str(first).map_err(|e| CodeError::Header(e.to_string()))?;
        let g = BitMatrix::from_text(rest)?;
        if g.rows() != header.k || g.cols() != header.n {
            return Err(CodeError::Header(format!(
                "header says ({}, {}), matrix is {}x{}",
                header.n,
                header.k,
                g.rows(),
                g.cols()
            )));
        }
        let mut code = LinearCode::from_generator(&g, header.label)?;
        code.d_min = header.d_min;
        Ok(code)
    }
}

/// Outcome of [`LinearCode::min_distance_lower_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Debug, Serialize, Deserialize)]
struct CodeFileHeader {
    label: String,
    n: usize,
    k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_min: Option<usize>,
}

fn combination_sums_to(cols: &[BitVector], w: usize, start: usize, target: &BitVector) -> bool {
    if w == 1 {
        return cols[start..].iter().any(|c| c == target);
    }
    (start..cols.len()).any(|i| {
        let rest = target.xor(&cols[i]).expect("same height");
        combination_sums_to(cols, w - 1, i + 1, &rest)
    })
}

/// Weight distribution of the row space of `g` by Gray-code traversal.
fn enumerate_weights(g: &BitMatrix) -> Vec<u128> {
    let n = g.cols();
    let k = g.rows();
    let mut dist = vec![0u128; n + 1];
    let rows: Vec<&[u64]> = g.row_iter().map(BitVector::words).collect();
    let mut acc = vec![0u64; n.div_ceil(64)];
    dist[0] = 1;
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        for (a, r) in acc.iter_mut().zip(rows[flip]) {
            *a ^= r;
        }
        let w: u32 = acc.iter().map(|x| x.count_ones()).sum();
        dist[w as usize] += 1;
    }
    dist
}

fn binomial(n: usize, r: usize) -> i128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Recovers the code's weight distribution from its dual's via the
/// Krawtchouk form of the MacWilliams identity.
fn macwilliams(dual: &[u128], n: usize, dual_dim: usize) -> Vec<u128> {
    (0..=n)
        .map(|j| {
            let total: i128 = dual
                .iter()
                .enumerate()
                .filter(|(_, &b)| b > 0)
                .map(|(i, &b)| {
                    let kraw: i128 = (0..=j)
                        .map(|s| {
                            let sign = if s % 2 == 0 { 1 } else { -1 };
                            sign * binomial(i, s) * binomial(n - i, j - s)
                        })
                        .sum();
                    b as i128 * kraw
                })
                .sum();
            debug_assert!(total >= 0 && total % (1i128 << dual_dim) == 0);
            (total >> dual_dim) as u128
        })
        .collect()
}

/// Polynomial-ordered systematic generator for the cyclic (or shortened
/// cyclic) code generated by `g_poly`.
///
/// Bit `j` of a codeword is the coefficient of `x^(n-1-j)`, so the message
/// occupies the high-degree coefficients and the parity is
/// `m(x) x^(n-k) mod g(x)`.
pub(crate) fn polynomial_generator(n: usize, g_poly: u128) -> Result<BitMatrix, CodeError> {
    let deg = crc::poly_degree(g_poly)
        .ok_or_else(|| CodeError::Invalid("zero generator polynomial".into()))?;
    if deg == 0 || deg >= n {
        return Err(CodeError::Invalid(format!(
            "generator degree {deg} leaves no information bits at length {n}"
        )));
    }
    let k = n - deg;
    // remainders x^e mod g for e = 0..n-1
    let mut rem = Vec::with_capacity(n);
    let mut r: u128 = 1;
    for _ in 0..n {
        rem.push(r);
        r <<= 1;
        if r >> deg & 1 == 1 {
            r ^= g_poly;
        }
    }
    let mut g = BitMatrix::zeros(k, n);
    for i in 0..k {
        g.set(i, i, true);
        let parity = rem[n - 1 - i];
        for d in 0..deg {
            if parity >> d & 1 == 1 {
                g.set(i, n - 1 - d, true);
            }
        }
    }
    Ok(g)
}
