mod common;

use common::checks;

fn run(check: checks::CheckResult) {
    if let Err(e) = check {
        panic!("{e}");
    }
}

#[test]
fn product_checks_on_checks() {
    run(checks::checks_on_checks(1000));
}

#[test]
fn bounded_distance_corrects_within_radius() {
    run(checks::bounded_distance_exhaustive());
}

#[test]
fn landslide_matches_combinations() {
    run(checks::landslide_vs_brute_force(14));
}

#[test]
fn turbo_keeps_noiseless_frames() {
    run(checks::turbo_noiseless_fixed_point(100));
}

#[test]
fn campaigns_ignore_worker_count() {
    run(checks::campaign_determinism());
}

#[test]
fn crc_matches_long_division() {
    run(checks::crc_matrix_vs_long_division());
}

#[test]
fn koopman_0x33() {
    run(checks::koopman_0x33());
}
