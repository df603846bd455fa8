//! Arithmetic in GF(2^m) via log/antilog tables.

use super::CodeError;

/// Default primitive polynomials, indexed by `m`, as bit masks including the
/// leading term.
const PRIMITIVE: [u32; 9] = [
    0,
    0,
    0b111,         // x^2 + x + 1
    0b1011,        // x^3 + x + 1
    0b1_0011,      // x^4 + x + 1
    0b10_0101,     // x^5 + x^2 + 1
    0b100_0011,    // x^6 + x + 1
    0b1000_1001,   // x^7 + x^3 + 1
    0b1_0001_1101, // x^8 + x^4 + x^3 + x^2 + 1
];

#[derive(Debug, Clone)]
pub struct GF2mField {
    m: u32,
    poly: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl GF2mField {
    pub fn new(m: u32) -> Result<Self, CodeError> {
        if !(2..=8).contains(&m) {
            return Err(CodeError::Invalid(format!(
                "field degree m={m} outside 2..=8"
            )));
        }
        Self::with_polynomial(m, PRIMITIVE[m as usize])
    }

    /// Builds the field from an explicit polynomial, rejecting it unless `x`
    /// generates the whole multiplicative group.
    pub fn with_polynomial(m: u32, poly: u32) -> Result<Self, CodeError> {
        if !(2..=8).contains(&m) || poly >> m != 1 {
            return Err(CodeError::Invalid(format!(
                "polynomial {poly:#b} is not of degree {m}"
            )));
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order + 1];
        let mut x: u32 = 1;
        for i in 0..order {
            if i > 0 && x == 1 {
                return Err(CodeError::Invalid(format!(
                    "polynomial {poly:#b} is not primitive (period {i})"
                )));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(CodeError::Invalid(format!(
                "polynomial {poly:#b} is not primitive"
            )));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(GF2mField { m, poly, exp, log })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// Multiplicative group order `2^m - 1`.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// `alpha^e`.
    pub fn alpha_pow(&self, e: usize) -> u16 {
        self.exp[e % self.order()]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: u16) -> usize {
        assert!(x != 0, "log of zero");
        self.log[x as usize] as usize
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Minimal polynomial of `alpha^i` over GF(2), as a bit mask
    /// (bit `d` = coefficient of `x^d`).
    pub fn minimal_polynomial(&self, i: usize) -> u128 {
        let order = self.order();
        let mut coset = vec![i % order];
        let mut e = (2 * i) % order;
        while e != i % order {
            coset.push(e);
            e = (2 * e) % order;
        }
        // product of (x + alpha^e) with coefficients in GF(2^m), low degree first
        let mut coeffs: Vec<u16> = vec![1];
        for &e in &coset {
            let root = self.alpha_pow(e);
            let mut next = vec![0u16; coeffs.len() + 1];
            for (d, &c) in coeffs.iter().enumerate() {
                next[d + 1] ^= c;
                next[d] ^= self.mul(c, root);
            }
            coeffs = next;
        }
        coeffs.iter().enumerate().fold(0u128, |acc, (d, &c)| {
            debug_assert!(c <= 1, "minimal polynomial has a non-binary coefficient");
            acc | (u128::from(c & 1) << d)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antilog_inverts_log() {
        for m in 2..=8 {
            let f = GF2mField::new(m).unwrap();
            for x in 1..=f.order() as u16 {
                assert_eq!(f.alpha_pow(f.log(x)), x);
            }
        }
    }

    #[test]
    fn alpha_has_full_period() {
        let f = GF2mField::new(5).unwrap();
        assert_eq!(f.alpha_pow(31), 1);
        assert!((1..31).all(|e| f.alpha_pow(e) != 1));
    }

    #[test]
    fn non_primitive_polynomial_rejected() {
        // x^4 + x^3 + x^2 + x + 1 has period 5
        assert!(GF2mField::with_polynomial(4, 0b11111).is_err());
    }

    #[test]
    fn minimal_polynomial_of_alpha_is_field_polynomial() {
        for m in 2..=8 {
            let f = GF2mField::new(m).unwrap();
            assert_eq!(f.minimal_polynomial(1), u128::from(f.polynomial()));
        }
    }

    #[test]
    fn minimal_polynomial_of_alpha3_in_gf16() {
        // x^4 + x^3 + x^2 + x + 1 for the field built on x^4 + x + 1
        let f = GF2mField::new(4).unwrap();
        assert_eq!(f.minimal_polynomial(3), 0b11111);
    }
}
