#![allow(dead_code)]

pub mod checks;
pub mod oracles;

use grand_turbo::bitlinalg::{BitMatrix, BitVector};
use grand_turbo::codes::{LinearCode, ProductCode};
use rand::Rng;

pub fn random_message<R: Rng>(k: usize, rng: &mut R) -> BitVector {
    BitVector::from_bools((0..k).map(|_| rng.random_bool(0.5)))
}

pub fn random_codeword<R: Rng>(code: &LinearCode, rng: &mut R) -> BitVector {
    code.encode(&random_message(code.k(), rng)).unwrap()
}

pub fn random_product_message<R: Rng>(pc: &ProductCode, rng: &mut R) -> BitMatrix {
    let rows = (0..pc.col_code().k())
        .map(|_| random_message(pc.row_code().k(), rng))
        .collect();
    BitMatrix::from_rows(rows).unwrap()
}

/// BPSK image of a codeword array, row-major, scaled by `amplitude`.
pub fn modulated(w: &BitMatrix, amplitude: f64) -> Vec<f64> {
    w.row_iter()
        .flat_map(|r| {
            r.iter()
                .map(move |b| if b { -amplitude } else { amplitude })
        })
        .collect()
}
