//! Energy concentration along model progressions and along the orbit.
//!
//! Model progressions are `m_i = a - i T` for `0 <= i < r` inside `(N, 2N]`.
//! For each progression the concentration ratio
//! `R_eps = sum_{|tau(m_i) - T| <= eps T} tau(m_i) / sum_i tau(m_i)` measures how
//! much of its energy sits near the level `T`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::orbit::Segment;
use crate::rng::{sample_rng, uniform_inclusive};
use crate::sieve::TauSieve;

/// Whether `tau` lies in the band `|tau - T| <= eps T`.
#[inline]
fn in_band(tau: u64, level: u64, eps: f64) -> bool {
    libm::fabs(tau as f64 - level as f64) <= eps * level as f64
}

/// `R_eps` for one list of divisor counts.
pub fn concentration_ratio(taus: &[u16], level: u64, eps: f64) -> Result<f64> {
    if level == 0 || !(eps >= 0.0) {
        return Err(Error::invalid("level must be >= 1 and eps >= 0"));
    }
    let total: u64 = taus.iter().map(|&t| t as u64).sum();
    if total == 0 {
        return Err(Error::invalid("concentration ratio of zero total energy"));
    }
    let band: u64 = taus
        .iter()
        .map(|&t| t as u64)
        .filter(|&t| in_band(t, level, eps))
        .sum();
    Ok(band as f64 / total as f64)
}

/// `round(ln N)`, the default level for scale `N`.
pub fn default_level(scale: u64) -> u64 {
    libm::round(libm::log(scale as f64)).max(1.0) as u64
}

/// Integer levels in `[ln N - 3, ln N + 3]`.
pub fn level_sweep(scale: u64) -> Vec<u64> {
    let l = libm::log(scale as f64);
    let lo = libm::ceil(l - 3.0).max(1.0) as u64;
    let hi = libm::floor(l + 3.0).max(1.0) as u64;
    (lo..=hi).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub scale: u64,
    pub level: u64,
    pub count: u64,
    pub eps: Vec<f64>,
    pub seed: u64,
    /// Progression length as a share of `floor(N / T)`.
    pub length_factor: f64,
    /// Keep every `tau(m_i)` on each sample.
    pub keep_values: bool,
}

impl SamplerConfig {
    pub fn new(scale: u64, level: u64, count: u64, eps: Vec<f64>, seed: u64) -> Self {
        SamplerConfig {
            scale,
            level,
            count,
            eps,
            seed,
            length_factor: 0.9,
            keep_values: false,
        }
    }

    /// `r = floor(length_factor * floor(N / T))`.
    pub fn length(&self) -> u64 {
        libm::floor(self.length_factor * (self.scale / self.level) as f64) as u64
    }

    fn validate(&self) -> Result<u64> {
        if self.level == 0 || self.count == 0 || self.scale < 2 {
            return Err(Error::invalid("sampler needs N >= 2, T >= 1 and count >= 1"));
        }
        if self.eps.iter().any(|e| !(*e >= 0.0)) {
            return Err(Error::invalid("eps values must be >= 0"));
        }
        if !(self.length_factor > 0.0) {
            return Err(Error::invalid("length factor must be positive"));
        }
        let r = self.length();
        if r == 0 {
            return Err(Error::invalid("progression length is zero"));
        }
        if r.saturating_mul(self.level) >= self.scale {
            return Err(Error::invalid(alloc::format!(
                "progression of {r} steps of {} leaves the scale ({}, {}]",
                self.level,
                self.scale,
                2 * self.scale
            )));
        }
        Ok(r)
    }
}

/// One model progression and its energy statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgressionSample {
    pub index: u64,
    pub scale: u64,
    pub level: u64,
    /// `m_0 = a`.
    pub start: u64,
    pub len: u64,
    pub energy: u64,
    /// Band energy per entry of the configured `eps` list.
    pub band_energy: Vec<u64>,
    /// `hist[t]` is the energy of points with `tau(m_i) = t`.
    pub hist: Vec<u64>,
    /// `tau(m_i)` in progression order, when requested.
    pub taus: Option<Vec<u16>>,
}

impl ProgressionSample {
    pub fn ratio(&self, k: usize) -> f64 {
        self.band_energy[k] as f64 / self.energy as f64
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        let (a, t) = (self.start, self.level);
        (0..self.len).map(move |i| a - i * t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerReport {
    pub config: SamplerConfig,
    pub samples: Vec<ProgressionSample>,
    /// `max R_eps` over samples, per `eps`.
    pub max_ratio: Vec<f64>,
}

/// Draws `count` progressions and evaluates their concentration ratios.
///
/// Starts are drawn uniformly from `[N + rT + 1, 2N]` with the per-sample
/// generators of [`crate::rng`]. Divisor counts come from one ascending sieve
/// pass over the union of the progressions.
pub fn sample_progressions(config: &SamplerConfig) -> Result<SamplerReport> {
    let r = config.validate()?;
    let (n, t) = (config.scale, config.level);
    let lo_start = n + r * t + 1;
    let hi_start = 2 * n;
    let mut samples: Vec<ProgressionSample> = (0..config.count)
        .map(|index| {
            let mut rng = sample_rng(config.seed, index);
            let start = uniform_inclusive(&mut rng, lo_start, hi_start);
            ProgressionSample {
                index,
                scale: n,
                level: t,
                start,
                len: r,
                energy: 0,
                band_energy: vec![0; config.eps.len()],
                hist: Vec::new(),
                taus: config.keep_values.then(|| vec![0; r as usize]),
            }
        })
        .collect();

    let cover_lo = samples.iter().map(|s| s.start - (r - 1) * t).min().unwrap();
    let cover_hi = samples.iter().map(|s| s.start).max().unwrap() + 1;
    TauSieve::default().for_each_block(cover_lo, cover_hi, |block_lo, counts| {
        let block_hi = block_lo + counts.len() as u64;
        for s in samples.iter_mut() {
            // indices i with block_lo <= start - i t < block_hi
            if s.start < block_lo {
                continue;
            }
            let i_min = if s.start >= block_hi {
                (s.start - block_hi) / t + 1
            } else {
                0
            };
            let i_max = ((s.start - block_lo) / t).min(r - 1);
            let mut i = i_min;
            while i <= i_max {
                let m = s.start - i * t;
                let tau = counts[(m - block_lo) as usize];
                let tv = tau as u64;
                s.energy += tv;
                for (k, &eps) in config.eps.iter().enumerate() {
                    if in_band(tv, t, eps) {
                        s.band_energy[k] += tv;
                    }
                }
                if s.hist.len() <= tau as usize {
                    s.hist.resize(tau as usize + 1, 0);
                }
                s.hist[tau as usize] += tv;
                if let Some(v) = s.taus.as_mut() {
                    v[i as usize] = tau;
                }
                i += 1;
            }
        }
    })?;

    let max_ratio = (0..config.eps.len())
        .map(|k| samples.iter().map(|s| s.ratio(k)).fold(0.0, f64::max))
        .collect();
    Ok(SamplerReport {
        config: config.clone(),
        samples,
        max_ratio,
    })
}

/// Energy-weighted histogram of divisor counts, averaged over samples.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyHistogram {
    pub bin_width: u64,
    /// `fractions[b]` is the mean share of sample energy with `tau` in `[b w, (b + 1) w)`.
    pub fractions: Vec<f64>,
}

impl EnergyHistogram {
    /// Largest averaged bin share.
    pub fn modal_fraction(&self) -> f64 {
        self.fractions.iter().copied().fold(0.0, f64::max)
    }

    pub fn modal_bin(&self) -> Option<usize> {
        let m = self.modal_fraction();
        self.fractions.iter().position(|&f| f == m)
    }
}

pub fn tau_histogram(samples: &[ProgressionSample], bin_width: u64) -> Result<EnergyHistogram> {
    if samples.is_empty() || bin_width == 0 {
        return Err(Error::invalid("histogram needs samples and a positive bin width"));
    }
    let max_tau = samples.iter().map(|s| s.hist.len()).max().unwrap_or(0) as u64;
    let bins = (max_tau.max(1) - 1) / bin_width + 1;
    let mut fractions = vec![0.0; bins as usize];
    for s in samples {
        for (tau, &e) in s.hist.iter().enumerate() {
            fractions[(tau as u64 / bin_width) as usize] += e as f64 / s.energy as f64;
        }
    }
    let k = samples.len() as f64;
    for f in fractions.iter_mut() {
        *f /= k;
    }
    Ok(EnergyHistogram {
        bin_width,
        fractions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandMode {
    /// One level per divisor count value.
    ExactLevel,
    /// Level `k` collects `2^k <= tau < 2^(k+1)`.
    DyadicBand,
}

/// Energy per divisor-count level on one crossing.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationScan {
    pub scale: u64,
    pub mode: BandMode,
    /// Level key (the value of tau, or the dyadic exponent) to energy.
    pub levels: BTreeMap<u64, u64>,
    pub total: u64,
    /// Level carrying the most energy; ties go to the smaller level.
    pub argmax: u64,
    /// `max E / N`.
    pub max_frac: f64,
    /// `max_T (E(T-1) + E(T) + E(T+1)) / N`, exact-level mode only.
    pub smoothed_max_frac: Option<f64>,
}

impl ConcentrationScan {
    pub fn max_energy(&self) -> u64 {
        self.levels.get(&self.argmax).copied().unwrap_or(0)
    }
}

fn dyadic_key(tau: u16) -> u64 {
    (15 - tau.leading_zeros()) as u64
}

/// Per-level energies on a crossing and the largest single-level share of `N`.
pub fn orbit_scale_concentration(segment: &Segment, mode: BandMode) -> Result<ConcentrationScan> {
    if segment.is_empty() {
        return Err(Error::NoCrossing {
            x: 0,
            scale: segment.scale,
        });
    }
    let mut levels = BTreeMap::new();
    for t in segment.taus() {
        let key = match mode {
            BandMode::ExactLevel => t as u64,
            BandMode::DyadicBand => dyadic_key(t),
        };
        *levels.entry(key).or_insert(0u64) += t as u64;
    }
    let total = levels.values().sum();
    let (&argmax, &best) = levels
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .unwrap();
    let n = segment.scale as f64;
    let smoothed_max_frac = (mode == BandMode::ExactLevel).then(|| {
        let get = |k: u64| levels.get(&k).copied().unwrap_or(0);
        levels
            .keys()
            .map(|&k| get(k.saturating_sub(1)) * (k > 0) as u64 + get(k) + get(k + 1))
            .max()
            .unwrap_or(0) as f64
            / n
    });
    Ok(ConcentrationScan {
        scale: segment.scale,
        mode,
        levels,
        total,
        argmax,
        max_frac: best as f64 / n,
        smoothed_max_frac,
    })
}

/// Segment energy partitioned by `2^k <= tau < 2^(k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicTauEnergy {
    pub ranges: BTreeMap<u64, u64>,
    pub total: u64,
    pub argmax: u64,
}

impl DyadicTauEnergy {
    /// `E(argmax) * #nonempty ranges >= total`.
    pub fn pigeonhole_holds(&self) -> bool {
        self.ranges[&self.argmax] * self.ranges.len() as u64 >= self.total
    }
}

pub fn energy_by_dyadic_tau_range(segment: &Segment) -> Result<DyadicTauEnergy> {
    let scan = orbit_scale_concentration(segment, BandMode::DyadicBand)?;
    Ok(DyadicTauEnergy {
        ranges: scan.levels,
        total: scan.total,
        argmax: scan.argmax,
    })
}
