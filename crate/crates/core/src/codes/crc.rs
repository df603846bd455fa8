//! CRC codes from polynomials in Koopman notation.

use super::{polynomial_generator, CodeError, LinearCode};

/// Expands Koopman notation (x^0 term implicit) into the full generator
/// polynomial: `(koopman << 1) | 1`.
pub fn koopman_to_generator_poly(koopman: u64) -> u128 {
    (u128::from(koopman) << 1) | 1
}

/// Degree of a nonzero polynomial bit mask.
pub fn poly_degree(poly: u128) -> Option<usize> {
    (poly != 0).then(|| 127 - poly.leading_zeros() as usize)
}

/// Systematic CRC code of length `n`: message followed by the remainder of
/// `m(x) x^deg mod g(x)`.
pub fn build_crc(n: usize, koopman: u64) -> Result<LinearCode, CodeError> {
    if koopman == 0 {
        return Err(CodeError::Invalid(
            "Koopman polynomial must be nonzero".into(),
        ));
    }
    let g = koopman_to_generator_poly(koopman);
    let deg = poly_degree(g).expect("nonzero");
    if n <= deg {
        return Err(CodeError::Invalid(format!(
            "CRC length {n} must exceed the polynomial degree {deg}"
        )));
    }
    let gen = polynomial_generator(n, g)?;
    let k = n - deg;
    let mut code = LinearCode::from_systematic(gen, format!("CRC({n},{k})"), None)?;
    if let Ok(d) = code.min_distance() {
        code = code.with_d_min(d).with_label(format!("CRC({n},{k},{d})"));
    }
    Ok(code)
}
