//! Model-progression sampling and single-level concentration.

use orbitlab_core::ladder::{
    concentration_ratio, default_level, energy_by_dyadic_tau_range, level_sweep, orbit_scale_concentration,
    sample_progressions, tau_histogram, BandMode, SamplerConfig,
};
use orbitlab_core::{divisor_count, orbit_segment, OrbitPoint, Segment};
use proptest::prelude::*;

fn config(scale: u64, level: u64, count: u64, seed: u64) -> SamplerConfig {
    let mut c = SamplerConfig::new(scale, level, count, vec![0.05, 0.1, 0.3, 0.6], seed);
    c.keep_values = true;
    c
}

#[test]
fn samples_use_exact_divisor_counts() {
    let report = sample_progressions(&config(10_000, 9, 20, 7)).unwrap();
    for s in &report.samples {
        let taus = s.taus.as_ref().unwrap();
        assert_eq!(s.len, 999); // floor(0.9 * floor(10000 / 9))
        assert!(s.start - (s.len - 1) * 9 > 10_000 && s.start <= 20_000);
        for (m, &t) in s.values().zip(taus) {
            assert_eq!(t as u64, divisor_count(m).unwrap(), "m = {m}");
        }
        assert_eq!(s.energy, taus.iter().map(|&t| t as u64).sum::<u64>());
        for (k, &eps) in report.config.eps.iter().enumerate() {
            assert_eq!(s.ratio(k), concentration_ratio(taus, 9, eps).unwrap());
        }
    }
}

#[test]
fn levels_around_log_scale() {
    assert_eq!(default_level(10_000), 9);
    assert_eq!(default_level(100_000), 12);
    assert_eq!(level_sweep(10_000), (7..=12).collect::<Vec<_>>());
}

#[test]
fn oversized_progressions_are_refused() {
    let mut c = config(100, 10, 1, 0);
    c.length_factor = 1.0;
    assert!(sample_progressions(&c).is_err());
}

#[test]
fn orbit_scan_partitions_energy() {
    let seg = orbit_segment(1_000_000, 1 << 18).unwrap();
    for mode in [BandMode::ExactLevel, BandMode::DyadicBand] {
        let scan = orbit_scale_concentration(&seg, mode).unwrap();
        assert_eq!(scan.levels.values().sum::<u64>(), seg.energy());
        assert_eq!(scan.total, seg.energy());
        assert!(scan.levels.values().all(|&e| e <= scan.max_energy()));
        assert!(scan.max_frac > 0.0 && scan.max_frac < 0.9);
    }
    let exact = orbit_scale_concentration(&seg, BandMode::ExactLevel).unwrap();
    assert!(exact.smoothed_max_frac.unwrap() >= exact.max_frac);
    // tau = 1 only at n = 1, far below the crossing.
    assert!(!exact.levels.contains_key(&1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ratios_grow_with_eps(seed in any::<u64>(), n in 2_000u64..50_000) {
        let level = default_level(n);
        let r = sample_progressions(&config(n, level, 5, seed)).unwrap();
        for s in &r.samples {
            for k in 1..r.config.eps.len() {
                prop_assert!(s.ratio(k) >= s.ratio(k - 1));
            }
            prop_assert!(s.ratio(r.config.eps.len() - 1) <= 1.0);
        }
        for k in 1..r.max_ratio.len() {
            prop_assert!(r.max_ratio[k] >= r.max_ratio[k - 1]);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_prefix_stable(seed in any::<u64>(), count in 1u64..12) {
        let a = sample_progressions(&config(20_000, 10, count, seed)).unwrap();
        let b = sample_progressions(&config(20_000, 10, count, seed)).unwrap();
        prop_assert_eq!(&a, &b);
        let more = sample_progressions(&config(20_000, 10, count + 5, seed)).unwrap();
        prop_assert_eq!(&a.samples[..], &more.samples[..count as usize]);
    }

    #[test]
    fn histogram_shares_sum_to_one(seed in any::<u64>(), width in 1u64..10) {
        let r = sample_progressions(&config(5_000, 9, 6, seed)).unwrap();
        let h = tau_histogram(&r.samples, width).unwrap();
        let total: f64 = h.fractions.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(h.modal_fraction() <= 1.0);
    }

    #[test]
    fn level_energies_sum_and_pigeonhole(taus in prop::collection::vec(1u16..3000, 1..200)) {
        let mut n = 1u64 << 40;
        let points: Vec<OrbitPoint> = taus.iter().map(|&tau| {
            let p = OrbitPoint { n, tau };
            n -= tau as u64;
            p
        }).collect();
        let seg = Segment::new(1 << 39, 0, points);
        let scan = orbit_scale_concentration(&seg, BandMode::ExactLevel).unwrap();
        let sum: u64 = scan.levels.iter().map(|(_, &e)| e).sum();
        prop_assert_eq!(sum, seg.energy());
        for (&t, &e) in &scan.levels {
            prop_assert_eq!(e % t, 0);
        }
        let dy = energy_by_dyadic_tau_range(&seg).unwrap();
        prop_assert_eq!(dy.total, seg.energy());
        prop_assert!(dy.pigeonhole_holds());
        prop_assert!(dy.ranges.len() <= 12);
    }
}
