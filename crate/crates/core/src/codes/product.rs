//! Two-dimensional product codes.

use super::{CodeError, LinearCode};
use crate::bitlinalg::{BitError, BitMatrix, BitVector};

/// Product of a row code `(n1, k1)` and a column code `(n2, k2)`. Codewords
/// are `n2 x n1` arrays whose rows lie in the row code and whose columns lie
/// in the column code.
#[derive(Debug, Clone)]
pub struct ProductCode {
    row_code: LinearCode,
    col_code: LinearCode,
}

impl ProductCode {
    pub fn new(row_code: LinearCode, col_code: LinearCode) -> Self {
        ProductCode { row_code, col_code }
    }

    /// Same component code along both axes.
    pub fn square(code: LinearCode) -> Self {
        ProductCode::new(code.clone(), code)
    }

    pub fn row_code(&self) -> &LinearCode {
        &self.row_code
    }

    pub fn col_code(&self) -> &LinearCode {
        &self.col_code
    }

    pub fn n(&self) -> usize {
        self.row_code.n() * self.col_code.n()
    }

    pub fn k(&self) -> usize {
        self.row_code.k() * self.col_code.k()
    }

    pub fn rate(&self) -> f64 {
        self.row_code.rate() * self.col_code.rate()
    }

    pub fn d_min(&self) -> Option<usize> {
        Some(self.row_code.d_min()? * self.col_code.d_min()?)
    }

    pub fn label(&self) -> String {
        if self.row_code.label() == self.col_code.label() {
            format!("{}^2", self.row_code.label())
        } else {
            format!("{} x {}", self.row_code.label(), self.col_code.label())
        }
    }

    /// Encodes a `k2 x k1` message: rows first, then columns.
    pub fn encode(&self, msg: &BitMatrix) -> Result<BitMatrix, CodeError> {
        let (k1, k2) = (self.row_code.k(), self.col_code.k());
        let (n1, n2) = (self.row_code.n(), self.col_code.n());
        if msg.rows() != k2 || msg.cols() != k1 {
            return Err(BitError::Dimension {
                expected: k2 * k1,
                got: msg.rows() * msg.cols(),
            }
            .into());
        }
        let mut out = BitMatrix::zeros(n2, n1);
        for r in 0..k2 {
            *out.row_mut(r) = self.row_code.encode(msg.row(r))?;
        }
        for c in 0..n1 {
            let top = BitVector::from_bools((0..k2).map(|r| out.get(r, c)));
            let col = self.col_code.encode(&top)?;
            out.set_column(c, &col);
        }
        Ok(out)
    }

    /// Same product, columns encoded before rows.
    pub fn encode_columns_first(&self, msg: &BitMatrix) -> Result<BitMatrix, CodeError> {
        let (k1, k2) = (self.row_code.k(), self.col_code.k());
        let (n1, n2) = (self.row_code.n(), self.col_code.n());
        if msg.rows() != k2 || msg.cols() != k1 {
            return Err(BitError::Dimension {
                expected: k2 * k1,
                got: msg.rows() * msg.cols(),
            }
            .into());
        }
        let mut out = BitMatrix::zeros(n2, n1);
        for c in 0..k1 {
            let col = self.col_code.encode(&msg.column(c))?;
            out.set_column(c, &col);
        }
        for r in 0..n2 {
            let left = out.row(r).slice(0, k1);
            *out.row_mut(r) = self.row_code.encode(&left)?;
        }
        Ok(out)
    }

    /// True iff every row and every column is a component codeword.
    pub fn is_codeword(&self, w: &BitMatrix) -> Result<bool, CodeError> {
        for r in w.row_iter() {
            if !self.row_code.is_codeword(r)? {
                return Ok(false);
            }
        }
        for c in 0..w.cols() {
            if !self.col_code.is_codeword(&w.column(c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Systematic `k2 x k1` corner of a codeword array.
    pub fn message_corner(&self, w: &BitMatrix) -> BitMatrix {
        let (k1, k2) = (self.row_code.k(), self.col_code.k());
        let rows = (0..k2).map(|r| w.row(r).slice(0, k1)).collect();
        BitMatrix::from_rows(rows).expect("uniform width")
    }
}
