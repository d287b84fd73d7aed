//! Normalized ratio tables, the logarithmic integral, and large-value reductions.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::float::KahanSum;
use crate::orbit::{OrbitPoint, Segment};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Principal-value logarithmic integral `li(x) = PV int_0^x dt / ln t`, for `x >= 2`.
///
/// Ramanujan's series
/// `gamma + ln ln x + sqrt(x) * sum_{n>=1} (-1)^(n-1) (ln x)^n / (n! 2^(n-1)) * sum_{k<=(n-1)/2} 1/(2k+1)`,
/// summed with compensation until the terms stop contributing.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::invalid("log_integral needs finite x >= 2"));
    }
    let lx = libm::log(x);
    let mut sum = KahanSum::default();
    // coeff = (ln x)^n / (n! 2^(n-1)), inner = sum_{k <= (n-1)/2} 1/(2k+1)
    let mut coeff = lx;
    let mut inner = 1.0;
    let mut n = 1u32;
    loop {
        let term = coeff * inner;
        if n % 2 == 1 {
            sum.add(term);
        } else {
            sum.add(-term);
        }
        if n as f64 > lx && libm::fabs(term) <= 1e-17 * libm::fabs(sum.value()) {
            break;
        }
        if n > 1000 {
            break;
        }
        n += 1;
        coeff *= lx / (2.0 * n as f64);
        if n % 2 == 1 {
            inner += 1.0 / (n as f64);
        }
    }
    Ok(EULER_GAMMA + libm::log(lx) + libm::sqrt(x) * sum.value())
}

/// One row of the heuristic comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub x: u64,
    pub a_x: u64,
    /// `a(x) / (x / ln x)`.
    pub r_log: f64,
    /// `a(x) / (x / (ln x + ln ln x))`.
    pub r_loglog: f64,
    /// `a(x) / li(x)`.
    pub r_li: f64,
}

impl RatioRow {
    pub fn new(x: u64, a_x: u64) -> Result<Self> {
        if x < 10 {
            return Err(Error::invalid("ratio rows need x >= 10"));
        }
        let xf = x as f64;
        let lx = libm::log(xf);
        let a = a_x as f64;
        Ok(RatioRow {
            x,
            a_x,
            r_log: a * lx / xf,
            r_loglog: a * (lx + libm::log(lx)) / xf,
            r_li: a / log_integral(xf)?,
        })
    }
}

pub fn ratio_table(rows: &[(u64, u64)]) -> Result<Vec<RatioRow>> {
    rows.iter().map(|&(x, a)| RatioRow::new(x, a)).collect()
}

/// `v` formatted with `places` decimals, rounding the exact binary value
/// half-to-even.
pub fn format_rounded(v: f64, places: usize) -> String {
    alloc::format!("{v:.places$}")
}

/// `v` rounded half-to-even at `places` decimals.
pub fn round_half_even(v: f64, places: usize) -> f64 {
    format_rounded(v, places).parse().unwrap_or(v)
}

/// `(ln N)^A`.
pub fn log_cutoff(scale: u64, exponent: f64) -> f64 {
    libm::pow(libm::log(scale as f64), exponent)
}

/// Energy of the large divisor values on one crossing versus its majorant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailReport {
    pub scale: u64,
    pub exponent: f64,
    /// `(ln N)^A`.
    pub cutoff: f64,
    /// `sum tau(n_j)` over visited points with `tau > cutoff`.
    pub tail_energy: u64,
    pub tail_visits: u64,
    /// `sum tau(n)^2` over `N/2 < n <= 4N`.
    pub window_tau_sq: u64,
    /// `window_tau_sq / cutoff`.
    pub bound: f64,
}

impl TailReport {
    /// `tail_energy <= window_tau_sq / cutoff`, compared as `tail_energy * cutoff <= window_tau_sq`.
    pub fn holds(&self) -> bool {
        self.tail_energy as f64 * self.cutoff <= self.window_tau_sq as f64
    }

    pub fn tail_fraction(&self) -> f64 {
        self.tail_energy as f64 / self.scale as f64
    }
}

/// `sum tau(n)^2` over `(N/2, 4N]`.
pub fn window_tau_sq(scale: u64) -> Result<u64> {
    if scale == 0 {
        return Err(Error::invalid("scale must be >= 1"));
    }
    crate::sieve::tau_moment_range(scale / 2 + 1, 4 * scale + 1, 2)
}

pub fn tail_energy(segment: &Segment, exponent: f64) -> Result<TailReport> {
    let window = window_tau_sq(segment.scale)?;
    tail_energy_with_window(segment, exponent, window)
}

/// As [`tail_energy`], reusing a precomputed `sum tau^2` over `(N/2, 4N]`.
pub fn tail_energy_with_window(segment: &Segment, exponent: f64, window: u64) -> Result<TailReport> {
    if segment.scale < 2 {
        return Err(Error::invalid("tail energy needs scale >= 2"));
    }
    if !(exponent > 0.0) {
        return Err(Error::invalid("tail exponent must be positive"));
    }
    let cutoff = log_cutoff(segment.scale, exponent);
    let (mut tail_energy, mut tail_visits) = (0u64, 0u64);
    for p in &segment.points {
        if p.tau as f64 > cutoff {
            tail_energy += p.tau as u64;
            tail_visits += 1;
        }
    }
    Ok(TailReport {
        scale: segment.scale,
        exponent,
        cutoff,
        tail_energy,
        tail_visits,
        window_tau_sq: window,
        bound: window as f64 / cutoff,
    })
}

/// A crossing split at a divisor-count cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedSplit {
    pub cutoff: f64,
    /// Points with `tau <= cutoff`, in orbit order.
    pub kept: Vec<OrbitPoint>,
    pub kept_energy: u64,
    pub discarded_visits: u64,
    pub discarded_energy: u64,
}

/// Keeps the points with `tau <= cutoff` and tallies the energy of the rest.
pub fn bounded_restrict(segment: &Segment, cutoff: f64) -> BoundedSplit {
    let mut split = BoundedSplit {
        cutoff,
        kept: Vec::new(),
        kept_energy: 0,
        discarded_visits: 0,
        discarded_energy: 0,
    };
    for &p in &segment.points {
        if p.tau as f64 <= cutoff {
            split.kept.push(p);
            split.kept_energy += p.tau as u64;
        } else {
            split.discarded_visits += 1;
            split.discarded_energy += p.tau as u64;
        }
    }
    split
}

/// [`bounded_restrict`] at the cutoff `(ln N)^A`.
pub fn bounded_restrict_log(segment: &Segment, exponent: f64) -> BoundedSplit {
    bounded_restrict(segment, log_cutoff(segment.scale, exponent))
}

/// Visits with `tau >= level` on one crossing against the bound `(N + 2 Delta_N) / level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HittingCheck {
    pub scale: u64,
    pub level: u64,
    pub visits: u64,
    pub delta: u64,
}

impl HittingCheck {
    pub fn new(segment: &Segment, level: u64, delta: u64) -> Self {
        let visits = segment.taus().filter(|&t| t as u64 >= level).count() as u64;
        HittingCheck {
            scale: segment.scale,
            level,
            visits,
            delta,
        }
    }

    /// `visits * level <= N + 2 Delta_N`.
    pub fn holds(&self) -> bool {
        self.visits * self.level <= self.scale + 2 * self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn seg(scale: u64, pts: &[(u64, u16)]) -> Segment {
        Segment::new(
            scale,
            0,
            pts.iter().map(|&(n, tau)| OrbitPoint { n, tau }).collect(),
        )
    }

    #[test]
    fn li_reference_points() {
        // Values from a quadrature oracle (see the tests/ directory).
        assert!((log_integral(2.0).unwrap() - 1.045_163_780_117_492_8).abs() < 1e-12);
        assert!((log_integral(1e4).unwrap() / 1_246.137_215_899_388_5 - 1.0).abs() < 1e-12);
        assert!(log_integral(1.5).is_err());
        assert!(log_integral(f64::NAN).is_err());
    }

    #[test]
    fn table_rows() {
        let r = RatioRow::new(10_000, 962).unwrap();
        assert_eq!(format_rounded(r.r_log, 4), "0.8860");
        assert_eq!(format_rounded(r.r_loglog, 4), "1.0996");
        let r = RatioRow::new(10, 3).unwrap();
        assert_eq!(format_rounded(r.r_log, 4), "0.6908");
        assert_eq!(format_rounded(r.r_loglog, 4), "0.9410");
        assert!(RatioRow::new(9, 3).is_err());
    }

    #[test]
    fn half_even_display() {
        assert_eq!(format_rounded(0.125, 2), "0.12");
        assert_eq!(format_rounded(0.375, 2), "0.38");
        assert_eq!(round_half_even(2.5, 0), 2.0);
    }

    #[test]
    fn restrict_examples() {
        let s = seg(8, &[(10, 4)]);
        let split = bounded_restrict(&s, 3.0);
        assert!(split.kept.is_empty());
        assert_eq!(split.discarded_energy, 4);
        let split = bounded_restrict(&s, 4.0);
        assert_eq!(split.kept, vec![OrbitPoint { n: 10, tau: 4 }]);
        assert_eq!(split.discarded_energy, 0);
    }

    #[test]
    fn tail_examples() {
        let s = seg(1000, &[(1990, 4), (1986, 6), (1980, 12)]);
        let all_small = tail_energy_with_window(&s, 4.0, 1_000_000).unwrap();
        assert_eq!(all_small.tail_energy, 0);
        // cutoff (ln 1000)^0.5 ~ 2.63 lies below every tau
        let degenerate = tail_energy_with_window(&s, 0.5, 1_000_000).unwrap();
        assert_eq!(degenerate.tail_energy, s.energy());
        assert!(degenerate.holds());
        assert!(tail_energy_with_window(&s, 0.0, 1).is_err());
    }

    #[test]
    fn hitting_counts() {
        let s = seg(8, &[(16, 5), (11, 2), (9, 3)]);
        let h = HittingCheck::new(&s, 3, 6);
        assert_eq!(h.visits, 2);
        assert!(h.holds());
    }
}
