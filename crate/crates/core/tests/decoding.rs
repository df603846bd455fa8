mod common;

use common::oracles::{brute_force_min_distance, brute_force_ml_decode};
use common::random_codeword;
use grand_turbo::bitlinalg::BitVector;
use grand_turbo::channel::{add_noise, hard_decision, modulate, ChannelSpec};
use grand_turbo::chase::{bounded_distance_decode, chase_list_decode, SyndromeTable};
use grand_turbo::codes::{build_bch, build_crc, build_ebch, build_rlc, LinearCode};
use grand_turbo::grand::{grand_list_decode, OneLineGenerator, RankPermutation};
use grand_turbo::turbo::select_decision;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn noisy(code: &LinearCode, eb_n0: f64, rng: &mut ChaCha8Rng) -> (BitVector, Vec<f64>) {
    let c = random_codeword(code, rng);
    let spec = ChannelSpec::new(eb_n0, code.rate()).unwrap();
    let mut y = modulate(&c);
    add_noise(&mut y, spec.sigma2(), rng);
    (c, y)
}

fn orbgrand_list(code: &LinearCode, y: &[f64], c: u32, l: usize) -> Vec<BitVector> {
    let ranks = RankPermutation::from_reliabilities(y);
    let mut gen = OneLineGenerator::new(code.n(), c);
    grand_list_decode(code, &hard_decision(y), &ranks, &mut gen, l, u64::MAX).codewords
}

#[test]
fn full_codebook_list_gives_ml() {
    let codes = [
        build_bch(4, 2).unwrap(),
        build_ebch(4, 1).unwrap(),
        build_bch(3, 1).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for code in &codes {
        for _ in 0..300 {
            let (_, y) = noisy(code, 1.0, &mut rng);
            let list = orbgrand_list(code, &y, 0, 1 << code.k());
            assert_eq!(list.len(), 1 << code.k());
            let ml = brute_force_ml_decode(code, &y);
            assert_eq!(list[select_decision(&list, &y).unwrap()], ml);
        }
    }
}

#[test]
fn decision_is_ml_whenever_listed() {
    let code = build_bch(4, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut listed = 0;
    for _ in 0..2000 {
        let (_, y) = noisy(&code, 2.0, &mut rng);
        let list = orbgrand_list(&code, &y, 1, 4);
        let ml = brute_force_ml_decode(&code, &y);
        if list.contains(&ml) {
            listed += 1;
            assert_eq!(list[select_decision(&list, &y).unwrap()], ml);
        }
    }
    assert!(listed > 1900, "{listed}");
}

#[test]
fn first_codeword_of_exact_order_is_ml_on_line() {
    // equally spaced reliabilities realise the 1-line model exactly
    let code = build_ebch(4, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let c = random_codeword(&code, &mut rng);
        let mut y = modulate(&c);
        let perm: Vec<usize> = {
            use rand::seq::SliceRandom;
            let mut p: Vec<usize> = (0..16).collect();
            p.shuffle(&mut rng);
            p
        };
        for (rank, &pos) in perm.iter().enumerate() {
            let mag = 0.05 * (rank + 1) as f64;
            y[pos] = if (pos + rank) % 3 == 0 {
                -y[pos] * mag
            } else {
                y[pos] * mag
            };
        }
        // ties in total weight are ties in likelihood, so compare distances
        let list = orbgrand_list(&code, &y, 0, 1);
        let ml = brute_force_ml_decode(&code, &y);
        let d = |w: &BitVector| squared_distance(&modulate(w), &y);
        assert!((d(&list[0]) - d(&ml)).abs() < 1e-9);
    }
}

#[test]
fn hamming_ml_beats_bounded_distance() {
    let code = build_bch(3, 1).unwrap();
    let table = SyndromeTable::for_code(&code).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut ml_err, mut bdd_err) = (0, 0);
    for _ in 0..20_000 {
        let (c, y) = noisy(&code, 3.0, &mut rng);
        let hard = hard_decision(&y);
        let bdd = bounded_distance_decode(&code, &table, &hard).expect("perfect code");
        let ml = brute_force_ml_decode(&code, &y);
        bdd_err += usize::from(bdd != c);
        ml_err += usize::from(ml != c);
        if hard.hamming_distance(&c) == 0 {
            assert_eq!(bdd, c);
        }
        // Chase over every position reaches the whole codebook
        let list = chase_list_decode(&code, &table, &y, 7);
        assert_eq!(list.len(), 16);
        assert_eq!(list[select_decision(&list, &y).unwrap()], ml);
    }
    assert!(ml_err < bdd_err, "ml {ml_err} bdd {bdd_err}");
}

#[test]
fn list_is_prefix_of_longer_list() {
    let code = build_ebch(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let (_, y) = noisy(&code, 2.0, &mut rng);
        for c in [0, 2] {
            let short = orbgrand_list(&code, &y, c, 4);
            let long = orbgrand_list(&code, &y, c, 8);
            assert_eq!(short[..], long[..4]);
        }
    }
}

#[test]
fn listed_words_are_distinct_codewords() {
    let code = build_rlc(24, 14, 3, Some(4)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let (_, y) = noisy(&code, 2.0, &mut rng);
        let list = orbgrand_list(&code, &y, 1, 8);
        assert_eq!(list.len(), 8);
        for (i, w) in list.iter().enumerate() {
            assert!(code.is_codeword(w).unwrap());
            assert!(!list[..i].contains(w));
        }
    }
}

#[test]
fn distances_match_enumeration() {
    let codes = [
        (build_bch(3, 1).unwrap(), 3),
        (build_bch(4, 2).unwrap(), 5),
        (build_ebch(4, 1).unwrap(), 4),
        (build_ebch(4, 2).unwrap(), 6),
        (build_bch(5, 3).unwrap(), 7),
    ];
    for (code, d) in &codes {
        assert_eq!(brute_force_min_distance(code), *d, "{}", code.label());
        assert_eq!(code.min_distance().unwrap(), *d, "{}", code.label());
    }
    let crc = build_crc(20, 0x33).unwrap();
    assert_eq!(crc.min_distance().unwrap(), brute_force_min_distance(&crc));
    let rlc = build_rlc(20, 12, 4, None).unwrap();
    assert_eq!(rlc.min_distance().unwrap(), brute_force_min_distance(&rlc));
}
