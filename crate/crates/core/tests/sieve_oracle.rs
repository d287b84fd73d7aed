//! The segmented sieve against independent divisor-count oracles.

use orbitlab_core::sieve::{max_tau_range, tau_moment_range};
use orbitlab_core::{divisor_count, sieve_block, tau_moment_sum, SieveMethod, TauSieve};
use proptest::prelude::*;

/// Counts divisor pairs `(d, n / d)` with `d <= sqrt(n)`.
fn trial_division_tau(n: u64) -> u64 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}

/// `sum_{n <= x} tau(n) = 2 sum_{d <= sqrt x} floor(x / d) - floor(sqrt x)^2`.
fn hyperbola_sum(x: u64) -> u64 {
    let r = x.isqrt();
    2 * (1..=r).map(|d| x / d).sum::<u64>() - r * r
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[test]
fn matches_trial_division_up_to_1e5() {
    let block = sieve_block(1, 100_001).unwrap();
    for (n, tau) in block.iter() {
        assert_eq!(tau as u64, trial_division_tau(n), "n = {n}");
    }
}

#[test]
fn plain_and_hyperbola_paths_agree() {
    for (lo, hi) in [(1u64, 5000u64), (999_000, 1_001_000), (20_000_000, 20_004_096)] {
        let fast = TauSieve::new(1 << 16).unwrap().sieve_block(lo, hi).unwrap();
        let plain = TauSieve::new(1 << 16)
            .unwrap()
            .with_method(SieveMethod::Plain)
            .sieve_block(lo, hi)
            .unwrap();
        assert_eq!(fast, plain, "[{lo}, {hi})");
    }
}

#[test]
fn block_size_does_not_matter() {
    let reference = sieve_block(1, 200_001).unwrap().into_counts();
    for bs in [64u64, 1000, 1 << 16] {
        let sieve = TauSieve::new(bs).unwrap();
        let mut got = Vec::new();
        sieve
            .for_each_block(1, 200_001, |lo, counts| {
                assert_eq!(lo as usize, got.len() + 1);
                assert!(counts.len() as u64 <= bs);
                got.extend_from_slice(counts);
            })
            .unwrap();
        assert_eq!(got, reference, "block size {bs}");
    }
}

#[test]
fn large_offsets_match_trial_division() {
    let lo = 10u64.pow(12) - 500;
    let block = sieve_block(lo, lo + 1000).unwrap();
    for (n, tau) in block.iter() {
        assert_eq!(tau as u64, divisor_count(n).unwrap(), "n = {n}");
    }
    // 963761198400 has 6720 divisors, the record below 10^12.
    assert_eq!(divisor_count(963_761_198_400).unwrap(), 6720);
    let b = sieve_block(963_761_198_400, 963_761_198_401).unwrap();
    assert_eq!(b.get(963_761_198_400), Some(6720));
}

#[test]
fn summatory_function_matches_hyperbola_formula() {
    for x in [1u64, 2, 10, 99, 1000, 10_000, 123_457, 1_000_000] {
        assert_eq!(tau_moment_sum(x, 1).unwrap(), hyperbola_sum(x), "x = {x}");
    }
    assert_eq!(hyperbola_sum(10_000), 93_668);
    assert_eq!(hyperbola_sum(1_000_000), 13_970_034);
}

#[test]
fn average_order_band() {
    for (x, band) in [(10_000u64, 1_000.0), (1_000_000, 10_000.0)] {
        let s = tau_moment_sum(x, 1).unwrap() as f64;
        let xf = x as f64;
        let main = xf * xf.ln() + (2.0 * EULER_GAMMA - 1.0) * xf;
        assert!((s - main).abs() <= band, "x = {x}: {s} vs {main}");
    }
}

#[test]
fn second_moment_and_maxima_match_direct_sums() {
    let (lo, hi) = (4_000u64, 32_001u64);
    let taus: Vec<u64> = (lo..hi).map(trial_division_tau).collect();
    assert_eq!(
        tau_moment_range(lo, hi, 2).unwrap(),
        taus.iter().map(|t| t * t).sum::<u64>()
    );
    assert_eq!(max_tau_range(lo, hi).unwrap() as u64, *taus.iter().max().unwrap());
}

proptest! {
    #[test]
    fn multiplicative_on_coprime_pairs(m in 1u64..200_000, n in 1u64..200_000) {
        let g = {
            let (mut a, mut b) = (m, n);
            while b != 0 { (a, b) = (b, a % b); }
            a
        };
        prop_assume!(g == 1);
        let mn = divisor_count(m * n).unwrap();
        prop_assert_eq!(mn, divisor_count(m).unwrap() * divisor_count(n).unwrap());
    }

    #[test]
    fn any_window_matches_trial_division(lo in 1u64..5_000_000_000, len in 1u64..300, bs in 1u64..97) {
        let mut got = Vec::new();
        TauSieve::new(bs)
            .unwrap()
            .for_each_block(lo, lo + len, |_, c| got.extend_from_slice(c))
            .unwrap();
        for (i, &tau) in got.iter().enumerate() {
            prop_assert_eq!(tau as u64, trial_division_tau(lo + i as u64));
        }
    }
}
