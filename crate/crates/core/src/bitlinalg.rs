//! Bit-packed vectors and matrices over GF(2).
//!
//! Bits are packed little-endian into `u64` words: bit `i` lives in word
//! `i / 64` at position `i % 64`. Every operation that consumes two operands
//! checks dimensions and reports a [`BitError`] on mismatch.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Upper bound on vector length and matrix dimensions.
pub const MAX_BITS: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BitError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("length {0} exceeds the supported maximum of 65536 bits")]
    TooLong(usize),
    #[error("matrix does not have full row rank (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("matrix is not in systematic form [I | P]")]
    NotSystematic,
    #[error("malformed matrix text at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit vector length {len} too large");
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector of `len <= 64` bits from the low bits of `word`.
    pub fn from_u64(word: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        BitVector {
            len,
            words: if len == 0 { vec![] } else { vec![word & mask] },
        }
    }

    /// Packs a vector of at most 64 bits into one word.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 on a {}-bit vector", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<(), BitError> {
        if other.len != self.len {
            return Err(BitError::Dimension {
                expected: self.len,
                got: other.len,
            });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector, BitError> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVector) -> Result<bool, BitError> {
        if other.len != self.len {
            return Err(BitError::Dimension {
                expected: self.len,
                got: other.len,
            });
        }
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones & 1 == 1)
    }

    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = BitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() > MAX_BITS {
            return Err(BitError::TooLong(s.len()));
        }
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(BitError::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        Ok(v)
    }
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows <= MAX_BITS && cols <= MAX_BITS);
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self, BitError> {
        let cols = rows.first().map_or(0, BitVector::len);
        for r in &rows {
            if r.len() != cols {
                return Err(BitError::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Convenience constructor from `"0101"`-style strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self, BitError> {
        let rows = rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<BitVector>, _>>()?;
        BitMatrix::from_rows(rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVector {
        &mut self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.data.iter().map(|r| r.get(c)))
    }

    pub fn set_column(&mut self, c: usize, v: &BitVector) {
        assert_eq!(v.len(), self.rows);
        for (r, row) in self.data.iter_mut().enumerate() {
            row.set(c, v.get(r));
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    /// `self * other` over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, BitError> {
        if self.cols != other.rows {
            return Err(BitError::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k])?;
            }
        }
        Ok(out)
    }

    /// Row space rank via Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) {
                m.data.swap(rank, p);
                let pivot = m.data[rank].clone();
                for r in 0..m.rows {
                    if r != rank && m.get(r, c) {
                        m.data[r].xor_assign(&pivot).expect("same width");
                    }
                }
                rank += 1;
                if rank == m.rows {
                    break;
                }
            }
        }
        rank
    }

    /// Serializes to the text format: a `rows cols` header, then one row of
    /// `0`/`1` characters per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for row in &self.data {
            s.push_str(&row.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<BitMatrix, BitError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(BitError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| BitError::Parse {
                line: hline,
                msg: format!("bad header: {e}"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(BitError::Parse {
                line: hline,
                msg: "header must be `rows cols`".into(),
            });
        };
        if rows > MAX_BITS || cols > MAX_BITS {
            return Err(BitError::TooLong(rows.max(cols)));
        }
        let mut data = Vec::with_capacity(rows);
        for (line, l) in lines {
            let row: BitVector = l.parse().map_err(|e| match e {
                BitError::Parse { msg, .. } => BitError::Parse { line, msg },
                other => other,
            })?;
            if row.len() != cols {
                return Err(BitError::Parse {
                    line,
                    msg: format!("row has {} bits, expected {cols}", row.len()),
                });
            }
            data.push(row);
        }
        if data.len() != rows {
            return Err(BitError::Parse {
                line: hline,
                msg: format!("header promises {rows} rows, found {}", data.len()),
            });
        }
        Ok(BitMatrix { rows, cols, data })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// GF(2) matrix-vector product `m * v`.
pub fn mat_vec_mul(m: &BitMatrix, v: &BitVector) -> Result<BitVector, BitError> {
    if v.len() != m.cols() {
        return Err(BitError::Dimension {
            expected: m.cols(),
            got: v.len(),
        });
    }
    let mut out = BitVector::zeros(m.rows());
    for (r, row) in m.row_iter().enumerate() {
        if row.dot(v)? {
            out.set(r, true);
        }
    }
    Ok(out)
}

/// Column permutation produced by [`to_systematic`]: column `j` of the
/// systematic matrix is column `perm[j]` of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnPermutation(Vec<usize>);

impl ColumnPermutation {
    pub fn identity(n: usize) -> Self {
        ColumnPermutation((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Maps a word from permuted (systematic) coordinates back to the
    /// original column order.
    pub fn to_original(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(v.len());
        for (j, &src) in self.0.iter().enumerate() {
            out.set(src, v.get(j));
        }
        out
    }

    /// Maps a word in original coordinates into permuted coordinates.
    pub fn to_permuted(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(self.0.iter().map(|&src| v.get(src)))
    }

    pub fn apply_to_columns(&self, m: &BitMatrix) -> BitMatrix {
        let rows = m.row_iter().map(|r| self.to_permuted(r)).collect();
        BitMatrix::from_rows(rows).expect("rows share width")
    }

    pub fn undo_on_columns(&self, m: &BitMatrix) -> BitMatrix {
        let rows = m.row_iter().map(|r| self.to_original(r)).collect();
        BitMatrix::from_rows(rows).expect("rows share width")
    }
}

/// Reduces a full-row-rank generator to `[I_k | P]`.
///
/// Pivots are searched left to right; when column `j < k` has no pivot the
/// first later pivot column is swapped into place. The swap sequence is
/// returned as a [`ColumnPermutation`] so callers can map back to the original
/// bit positions.
pub fn to_systematic(g: &BitMatrix) -> Result<(BitMatrix, ColumnPermutation), BitError> {
    let k = g.rows();
    let n = g.cols();
    let mut m = g.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for r in 0..k {
        // find a pivot in column r, or swap in a later column that has one
        let mut found = None;
        'search: for c in r..n {
            for rr in r..k {
                if m.get(rr, c) {
                    found = Some((rr, c));
                    break 'search;
                }
            }
        }
        let Some((pr, pc)) = found else {
            return Err(BitError::RankDeficient { rank: r, rows: k });
        };
        if pc != r {
            for row in 0..k {
                let a = m.get(row, r);
                let b = m.get(row, pc);
                m.set(row, r, b);
                m.set(row, pc, a);
            }
            perm.swap(r, pc);
        }
        m.data.swap(r, pr);
        let pivot = m.data[r].clone();
        for rr in 0..k {
            if rr != r && m.get(rr, r) {
                m.data[rr].xor_assign(&pivot)?;
            }
        }
    }
    Ok((m, ColumnPermutation(perm)))
}

/// For `G = [I_k | P]` returns `H = [P^T | I_{n-k}]`.
pub fn parity_from_systematic(g_sys: &BitMatrix) -> Result<BitMatrix, BitError> {
    let k = g_sys.rows();
    let n = g_sys.cols();
    if k >= n {
        return Err(BitError::NotSystematic);
    }
    for r in 0..k {
        for c in 0..k {
            if g_sys.get(r, c) != (r == c) {
                return Err(BitError::NotSystematic);
            }
        }
    }
    let mut h = BitMatrix::zeros(n - k, n);
    for r in 0..k {
        for j in 0..n - k {
            if g_sys.get(r, k + j) {
                h.set(j, r, true);
            }
        }
    }
    for j in 0..n - k {
        h.set(j, k + j, true);
    }
    Ok(h)
}
