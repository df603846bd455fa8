//! Slow, independent reference implementations.

#![allow(dead_code)]

use grand_turbo::bitlinalg::BitVector;
use grand_turbo::codes::LinearCode;

/// All `2^n` noise patterns, as 1-based rank lists, sorted by
/// `f = sum of reliabilities[rank - 1]` with ties broken lexicographically.
pub fn brute_force_pattern_order(reliabilities: &[f64]) -> Vec<Vec<u16>> {
    let n = reliabilities.len();
    assert!(n <= 12, "oracle limited to n <= 12");
    let mut all: Vec<(f64, Vec<u16>)> = (0u32..1 << n)
        .map(|mask| {
            let p: Vec<u16> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i as u16 + 1)
                .collect();
            let f = p.iter().map(|&r| reliabilities[r as usize - 1]).sum();
            (f, p)
        })
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    all.into_iter().map(|(_, p)| p).collect()
}

/// Reliabilities on the line `r_i = c + i`, `i = 1..n`.
pub fn exact_line(n: usize, c: u32) -> Vec<f64> {
    (1..=n).map(|i| f64::from(c) + i as f64).collect()
}

/// Every increasing `w_h`-subset of `{1..n}` summing to `w_l`, in
/// lexicographic order.
pub fn brute_force_subsets(w_h: usize, w_l: u32, n: usize) -> Vec<Vec<u16>> {
    assert!(n <= 20);
    fn rec(
        start: u16,
        n: u16,
        left: usize,
        cur: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
        target: u32,
    ) {
        if left == 0 {
            if cur.iter().map(|&x| u32::from(x)).sum::<u32>() == target {
                out.push(cur.clone());
            }
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, left - 1, cur, out, target);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if w_h == 0 {
        return out;
    }
    rec(1, n as u16, w_h, &mut Vec::new(), &mut out, w_l);
    out
}

/// Exhaustive maximum-likelihood decoding: the codeword whose BPSK image is
/// closest to `soft`, ties to the lexicographically smallest bit string.
pub fn brute_force_ml_decode(code: &LinearCode, soft: &[f64]) -> BitVector {
    let (n, k) = (code.n(), code.k());
    assert!(k <= 12, "oracle limited to k <= 12");
    let g = code.generator();
    let mut best: Option<(f64, Vec<bool>)> = None;
    for m in 0u32..1 << k {
        let mut c = vec![false; n];
        for i in 0..k {
            if m >> i & 1 == 1 {
                for (j, b) in c.iter_mut().enumerate() {
                    *b ^= g.get(i, j);
                }
            }
        }
        let d: f64 = soft
            .iter()
            .zip(&c)
            .map(|(&r, &b)| {
                let x = if b { -1.0 } else { 1.0 };
                (r - x) * (r - x)
            })
            .sum();
        let better = match &best {
            None => true,
            Some((bd, bc)) => d < *bd || (d == *bd && c < *bc),
        };
        if better {
            best = Some((d, c));
        }
    }
    BitVector::from_bools(best.expect("k >= 0").1)
}

/// Systematic CRC encoding by shift-register long division. Bit `j` of the
/// codeword is the coefficient of `x^(n-1-j)`; `poly` includes the leading
/// and constant terms.
pub fn crc_long_division(msg: &[bool], poly: u128, degree: usize) -> Vec<bool> {
    let mut reg = vec![false; msg.len() + degree];
    reg[..msg.len()].copy_from_slice(msg);
    let taps: Vec<bool> = (0..=degree).rev().map(|i| poly >> i & 1 == 1).collect();
    for i in 0..msg.len() {
        if reg[i] {
            for (j, &t) in taps.iter().enumerate() {
                reg[i + j] ^= t;
            }
        }
    }
    let mut out = msg.to_vec();
    out.extend_from_slice(&reg[msg.len()..]);
    out
}

/// Minimum distance by enumerating all `2^k` codewords.
pub fn brute_force_min_distance(code: &LinearCode) -> usize {
    let k = code.k();
    assert!(k <= 20);
    (1u32..1 << k)
        .map(|m| {
            let msg = BitVector::from_bools((0..k).map(|i| m >> i & 1 == 1));
            code.encode(&msg).unwrap().weight()
        })
        .min()
        .unwrap_or(code.n())
}
