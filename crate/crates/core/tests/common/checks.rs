//! Property checks shared by the property tests and the acceptance run.
//! Each returns a short summary on success.

use std::collections::HashSet;

use grand_turbo::bitlinalg::BitVector;
use grand_turbo::chase::{bounded_distance_decode, SyndromeTable};
use grand_turbo::codes::{
    build_bch, build_crc, build_ebch, koopman_to_generator_poly, poly_degree, ProductCode,
};
use grand_turbo::grand::{Landslide, PatternSource};
use grand_turbo::sim::{run_campaign, CampaignConfig, DecoderSpec};
use grand_turbo::turbo::{ComponentDecoder, TurboConfig, TurboDecoder};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracles::{brute_force_subsets, crc_long_division};
use super::{modulated, random_codeword, random_message, random_product_message};

pub type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Row-then-column and column-then-row encodings agree, and every row and
/// column of the result is a component codeword.
pub fn checks_on_checks(frames: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0c);
    let codes = [
        ProductCode::square(build_ebch(5, 1).unwrap()),
        ProductCode::new(build_ebch(4, 1).unwrap(), build_bch(4, 2).unwrap()),
        ProductCode::square(build_crc(32, 0x33).unwrap()),
    ];
    for i in 0..frames {
        let pc = &codes[i % codes.len()];
        let m = random_product_message(pc, &mut rng);
        let a = pc.encode(&m).unwrap();
        let b = pc.encode_columns_first(&m).unwrap();
        ensure(a == b, || {
            format!("{}: encoding order changes the checks", pc.label())
        })?;
        ensure(pc.is_codeword(&a).unwrap(), || {
            format!("{}: invalid array", pc.label())
        })?;
        ensure(pc.message_corner(&a) == m, || "message corner lost".into())?;
    }
    Ok(format!("{frames} frames"))
}

/// Every error pattern within the radius is corrected.
pub fn bounded_distance_exhaustive() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbdd);
    let mut total = 0usize;
    for (code, t) in [
        (build_ebch(5, 1).unwrap(), 1usize),
        (build_bch(5, 2).unwrap(), 2),
    ] {
        let table = SyndromeTable::for_code(&code).map_err(|e| e.to_string())?;
        ensure(table.radius() == t, || {
            format!("{} radius {}", code.label(), table.radius())
        })?;
        let n = code.n();
        for _ in 0..4 {
            let c = random_codeword(&code, &mut rng);
            let mut patterns: Vec<Vec<usize>> = vec![vec![]];
            patterns.extend((0..n).map(|i| vec![i]));
            if t >= 2 {
                for i in 0..n {
                    for j in i + 1..n {
                        patterns.push(vec![i, j]);
                    }
                }
            }
            for p in &patterns {
                let mut y = c.clone();
                for &i in p {
                    y.flip(i);
                }
                let got = bounded_distance_decode(&code, &table, &y);
                ensure(got.as_ref() == Some(&c), || {
                    format!("{} failed on {p:?}", code.label())
                })?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} error patterns"))
}

/// The landslide enumerator agrees with the combinations filter on every
/// feasible `(w_H, w_L)` pair for `n` up to `max_n`.
pub fn landslide_vs_brute_force(max_n: usize) -> CheckResult {
    let mut pairs = 0usize;
    for n in 1..=max_n {
        let mut covered = 0usize;
        for w_h in 1..=n {
            let lo = (w_h * (w_h + 1) / 2) as u32;
            let hi = (w_h * (2 * n - w_h + 1) / 2) as u32;
            for w_l in lo..=hi {
                let mut ls = Landslide::new(w_h, w_l, n);
                let mut got = Vec::new();
                while let Some(p) = ls.next_pattern() {
                    got.push(p.to_vec());
                }
                let want = brute_force_subsets(w_h, w_l, n);
                ensure(got == want, || format!("n={n} w_H={w_h} w_L={w_l}"))?;
                covered += got.len();
                pairs += 1;
            }
        }
        ensure(covered == (1 << n) - 1, || {
            format!("n={n} covers {covered}")
        })?;
    }
    Ok(format!("{pairs} pairs"))
}

/// A noiseless frame keeps its hard decisions through every half-iteration.
pub fn turbo_noiseless_fixed_point(frames: usize) -> CheckResult {
    let pc = ProductCode::square(build_ebch(5, 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1f);
    for decoder in [
        ComponentDecoder::Chase { rho: 4 },
        ComponentDecoder::Orbgrand1 { list_size: 4 },
    ] {
        let mut cfg = TurboConfig::new(decoder);
        cfg.early_stop = false;
        let mut dec = TurboDecoder::new(&pc, cfg).map_err(|e| e.to_string())?;
        for _ in 0..frames {
            let m = random_product_message(&pc, &mut rng);
            let w = pc.encode(&m).unwrap();
            let out = dec.decode(&modulated(&w, 1.0), Some(&w)).unwrap();
            ensure(out.trace.iter().all(|t| t.bit_errors == Some(0)), || {
                format!("{decoder:?} corrupted a noiseless frame")
            })?;
            ensure(out.message == m, || "message changed".into())?;
        }
        let mut stopping = TurboDecoder::new(&pc, TurboConfig::new(decoder)).unwrap();
        let m = random_product_message(&pc, &mut rng);
        let w = pc.encode(&m).unwrap();
        let out = stopping.decode(&modulated(&w, 1.0), None).unwrap();
        ensure(out.iterations_run == 0 && out.message == m, || {
            "no early stop".into()
        })?;
    }
    Ok(format!("{frames} frames per decoder"))
}

/// Identical results with one and with several workers.
pub fn campaign_determinism() -> CheckResult {
    let mut list = CampaignConfig::new(
        "ebch:32,26".parse().unwrap(),
        DecoderSpec::List(ComponentDecoder::Orbgrand1 { list_size: 4 }),
        vec![3.0, 4.0],
    );
    list.min_block_errors = 30;
    list.master_seed = 5;
    let mut turbo = CampaignConfig::new(
        "product:ebch:16,11^2".parse().unwrap(),
        DecoderSpec::Turbo(TurboConfig::new(ComponentDecoder::Chase { rho: 3 })),
        vec![2.5],
    );
    turbo.min_block_errors = 20;
    turbo.master_seed = 6;
    for cfg in [list, turbo] {
        let mut base = None;
        for w in [1usize, 2, 3] {
            let mut c = cfg.clone();
            c.workers = Some(w);
            let r = run_campaign(&c).map_err(|e| e.to_string())?;
            match &base {
                None => base = Some(r.points),
                Some(b) => ensure(*b == r.points, || format!("{} workers differ", w))?,
            }
        }
    }
    Ok("1, 2 and 3 workers agree".into())
}

/// Matrix encoding of CRC codes equals polynomial long division.
pub fn crc_matrix_vs_long_division() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7c);
    let mut words = 0;
    for (n, koopman) in [(32usize, 0x33u64), (24, 0x5b), (16, 0x9), (40, 0x8f)] {
        let code = build_crc(n, koopman).map_err(|e| e.to_string())?;
        let poly = koopman_to_generator_poly(koopman);
        let deg = poly_degree(poly).unwrap();
        for _ in 0..500 {
            let m = random_message(code.k(), &mut rng);
            let want = crc_long_division(&m.iter().collect::<Vec<_>>(), poly, deg);
            let got = code.encode(&m).unwrap();
            ensure(got == BitVector::from_bools(want), || {
                format!("CRC({n}) mismatch")
            })?;
            words += 1;
        }
    }
    Ok(format!("{words} words"))
}

/// Koopman `0x33` expands to a degree-6 generator, giving `k = 26` at
/// `n = 32`.
pub fn koopman_0x33() -> CheckResult {
    let poly = koopman_to_generator_poly(0x33);
    ensure(poly == 0b110_0111, || format!("poly {poly:#b}"))?;
    ensure(poly_degree(poly) == Some(6), || "degree".into())?;
    let code = build_crc(32, 0x33).map_err(|e| e.to_string())?;
    ensure(code.k() == 26, || format!("k={}", code.k()))?;
    Ok(format!("{poly:#b}, {}", code.label()))
}

/// Distinct elements, for seed uniqueness checks.
pub fn all_distinct<T: std::hash::Hash + Eq>(items: impl IntoIterator<Item = T>) -> bool {
    let mut seen = HashSet::new();
    items.into_iter().all(|x| seen.insert(x))
}

fn total_weight(p: &[u16], c: u32) -> u32 {
    c * p.len() as u32 + p.iter().map(|&x| u32::from(x)).sum::<u32>()
}

/// The 1-line generator emits each of the `2^n` patterns once, in
/// non-decreasing total weight.
pub fn generator_exhaustive(n: usize, c: u32) -> CheckResult {
    let mut gen = grand_turbo::grand::OneLineGenerator::new(n, c);
    let mut seen = HashSet::with_capacity(1 << n);
    let mut last = 0u32;
    while let Some(p) = gen.next_pattern() {
        ensure(p.windows(2).all(|w| w[0] < w[1]), || {
            format!("unsorted pattern {p:?}")
        })?;
        ensure(p.iter().all(|&x| x >= 1 && usize::from(x) <= n), || {
            format!("out of range {p:?}")
        })?;
        let wt = total_weight(p, c);
        ensure(wt >= last, || {
            format!("n={n} c={c}: w_T fell from {last} to {wt}")
        })?;
        last = wt;
        let mask = p.iter().fold(0u64, |m, &x| m | 1 << (x - 1));
        ensure(seen.insert(mask), || format!("n={n} c={c}: repeated {p:?}"))?;
    }
    ensure(seen.len() == 1 << n, || {
        format!("n={n} c={c}: {} patterns", seen.len())
    })?;
    Ok(format!("n={n} c={c}: {} patterns", seen.len()))
}

/// On exact-line reliabilities the generator order equals the brute-force
/// likelihood order up to permutations inside each total-weight class.
pub fn generator_matches_oracle(n: usize, c: u32) -> CheckResult {
    let oracle = super::oracles::brute_force_pattern_order(&super::oracles::exact_line(n, c));
    let mut gen = grand_turbo::grand::OneLineGenerator::new(n, c);
    let mut ours = Vec::with_capacity(1 << n);
    while let Some(p) = gen.next_pattern() {
        ours.push(p.to_vec());
    }
    ensure(ours.len() == oracle.len(), || "length".into())?;
    let classes = |seq: &[Vec<u16>]| -> Vec<(u32, Vec<Vec<u16>>)> {
        let mut out: Vec<(u32, Vec<Vec<u16>>)> = Vec::new();
        for p in seq {
            let w = total_weight(p, c);
            match out.last_mut() {
                Some((lw, v)) if *lw == w => v.push(p.clone()),
                _ => out.push((w, vec![p.clone()])),
            }
        }
        for (_, v) in &mut out {
            v.sort();
        }
        out
    };
    ensure(classes(&ours) == classes(&oracle), || {
        format!("n={n} c={c}: order differs")
    })?;
    Ok(format!("n={n} c={c}"))
}
