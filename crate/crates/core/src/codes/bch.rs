//! Narrow-sense binary BCH codes and their parity extensions.

use super::gf::GF2mField;
use super::{polynomial_generator, CodeError, LinearCode};

/// Generator polynomial: lcm of the minimal polynomials of
/// `alpha, alpha^2, ..., alpha^(2t)`.
pub fn bch_generator_poly(field: &GF2mField, t: usize) -> u128 {
    let order = field.order();
    let mut seen = vec![false; order];
    let mut g: u128 = 1;
    for i in 1..=2 * t {
        let i = i % order;
        if seen[i] {
            continue;
        }
        // mark the whole cyclotomic coset
        let mut e = i;
        loop {
            seen[e] = true;
            e = (2 * e) % order;
            if e == i {
                break;
            }
        }
        g = poly_mul(g, field.minimal_polynomial(i));
    }
    g
}

fn poly_mul(a: u128, b: u128) -> u128 {
    let mut out = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

/// Binary narrow-sense BCH code of length `2^m - 1` with designed
/// error-correction capability `t`.
pub fn build_bch(m: u32, t: usize) -> Result<LinearCode, CodeError> {
    if !(2..=6).contains(&m) {
        return Err(CodeError::Invalid(format!(
            "BCH needs 2 <= m <= 6, got {m}"
        )));
    }
    if t == 0 {
        return Err(CodeError::Invalid("BCH needs t >= 1".into()));
    }
    let field = GF2mField::new(m)?;
    let n = field.order();
    let g = bch_generator_poly(&field, t);
    let deg = 127 - g.leading_zeros() as usize;
    if deg >= n {
        return Err(CodeError::Invalid(format!(
            "BCH(m={m}, t={t}) generator has degree {deg} >= n={n}, so k <= 0"
        )));
    }
    let k = n - deg;
    let gen = polynomial_generator(n, g)?;
    let mut code = LinearCode::from_systematic(gen, format!("BCH({n},{k})"), None)?;
    let d = code.min_distance()?;
    code = code.with_d_min(d).with_label(format!("BCH({n},{k},{d})"));
    Ok(code)
}

/// BCH code of length `2^m - 1` extended by an overall parity bit.
pub fn build_ebch(m: u32, t: usize) -> Result<LinearCode, CodeError> {
    let base = build_bch(m, t)?;
    let ext = base.extend_with_parity()?;
    let d = ext.d_min().expect("base distance is known");
    let label = format!("eBCH({},{},{d})", ext.n(), ext.k());
    Ok(ext.with_label(label))
}
