//! Orbit invariants on random starts, checked against a naive walk.

use std::sync::OnceLock;

use orbitlab_core::scale::HittingCheck;
use orbitlab_core::{
    divisor_count, run_orbit, sieve_block, OrbitWalker, RunOptions, SegmentCapture, SieveSource, TableSource,
    TauSieve, WalkState,
};
use proptest::prelude::*;

const TABLE_MAX: u64 = 1_000_000;

fn table() -> &'static [u16] {
    static TABLE: OnceLock<Vec<u16>> = OnceLock::new();
    TABLE.get_or_init(|| sieve_block(1, TABLE_MAX + 1).unwrap().into_counts())
}

/// `n_0, ..., n_{a(x)}` by repeated trial division.
fn naive_orbit(x: u64) -> Vec<i64> {
    let mut out = vec![x as i64];
    let mut n = x as i64;
    while n > 0 {
        n -= divisor_count(n as u64).unwrap() as i64;
        out.push(n);
    }
    out
}

fn capture_all(block_size: u64) -> RunOptions {
    RunOptions {
        block_size,
        capture: SegmentCapture::All,
        ..RunOptions::default()
    }
}

#[test]
fn first_orbit_lengths() {
    for (x, a) in [(10u64, 3u64), (100, 19), (1000, 116), (10_000, 962), (100_000, 7534), (1_000_000, 65_059)] {
        let s = OrbitWalker::new(x, TableSource::new(table()), &RunOptions::default())
            .unwrap()
            .finish()
            .unwrap()
            .summary;
        assert_eq!(s.a_x, a, "x = {x}");
        assert_eq!(s.a_x as usize, naive_orbit(x).len() - 1);
    }
}

#[test]
fn maximal_start_is_accepted_and_beyond_is_not() {
    assert!(WalkState::new(orbitlab_core::orbit::MAX_START).is_ok());
    assert!(WalkState::new(orbitlab_core::orbit::MAX_START + 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn energy_identity_and_baseline_bounds(x in 1u64..=TABLE_MAX) {
        let s = OrbitWalker::new(x, TableSource::new(table()), &RunOptions::default())
            .unwrap()
            .finish()
            .unwrap()
            .summary;
        prop_assert!(s.energy_identity_holds());
        prop_assert!(s.within_baseline_bounds());
        prop_assert_eq!(s.total_energy as i64, x as i64 - s.n_final);
    }

    #[test]
    fn crossings_telescope_and_respect_the_bounds(x in 3u64..60_000, bs in 16u64..5000) {
        let orbit = naive_orbit(x);
        prop_assert!(orbit.windows(2).all(|w| w[1] < w[0]));
        let run = run_orbit(x, &capture_all(bs)).unwrap();
        let s = &run.summary;
        prop_assert_eq!(s.a_x as usize, orbit.len() - 1);
        let mut prev_jm = None;
        for rec in &s.dyadic {
            let (jp, jm) = (rec.j_plus as usize, rec.j_minus as usize);
            prop_assert_eq!(rec.energy as i64, orbit[jp] - orbit[jm]);
            // Records run from the top scale down, so each crossing starts where
            // the one above ended.
            if let Some(p) = prev_jm {
                prop_assert_eq!(rec.j_plus, p);
            }
            prev_jm = Some(rec.j_minus);
            let n = rec.scale;
            if rec.complete && !rec.skipped() {
                let gap = (rec.energy as i64 - n as i64).unsigned_abs();
                prop_assert!(gap <= 2 * rec.delta as u64, "N = {}: energy {} delta {}", n, rec.energy, rec.delta);
            }
            if let Some(seg) = run.segment(n) {
                for level in [2u64, 3, 5, 8, 13, 40] {
                    prop_assert!(HittingCheck::new(seg, level, rec.delta as u64).holds());
                }
                prop_assert!(seg.values().all(|v| v > n && v <= 2 * n));
            }
        }
    }

    #[test]
    fn checkpoint_resume_is_bit_identical(x in 1_000u64..300_000, frac in 0.0f64..1.0, bs1 in 50u64..100_000, bs2 in 50u64..100_000) {
        let opts = RunOptions { block_size: bs1, ..RunOptions::default() };
        let full = run_orbit(x, &opts).unwrap().summary;
        let pause_at = (frac * full.a_x as f64) as u64;
        let mut first = OrbitWalker::new(x, SieveSource::new(TauSieve::new(bs1).unwrap()), &opts).unwrap();
        first.advance(pause_at, i64::MIN).unwrap();
        let bytes = first.state().to_bytes();
        let restored = WalkState::from_bytes(&bytes).unwrap();
        prop_assert_eq!(&restored, first.state());
        let opts2 = RunOptions { block_size: bs2, ..RunOptions::default() };
        let resumed = OrbitWalker::from_state(restored, SieveSource::new(TauSieve::new(bs2).unwrap()), &opts2)
            .finish()
            .unwrap()
            .summary;
        prop_assert_eq!(resumed, full);
    }
}
