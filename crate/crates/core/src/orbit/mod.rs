//! The orbit `n_0 = x`, `n_{j+1} = n_j - tau(n_j)`, walked downward in one pass.
//!
//! The walk records the orbit length `a(x)` (the first `k` with `n_k <= 0`), the
//! total energy `sum tau(n_j)`, and one [`DyadicRecord`] per scale `N = 2^k < x`.
//! The crossing of `I_N = (N, 2N]` runs from `j_plus = min{j : n_j <= 2N}` to
//! `j_minus = min{j : n_j <= N}`; its visited points are exactly the orbit values
//! lying in `I_N`.

mod checkpoint;
mod source;

use alloc::vec;
use alloc::vec::Vec;

pub use checkpoint::{CHECKPOINT_MAGIC, CHECKPOINT_VERSION};
pub use source::{BlockView, SieveSource, TableSource, TauSource};

use crate::error::{Error, Result};
use crate::sieve::{TauSieve, DEFAULT_BLOCK_SIZE};

/// Largest start value accepted. Divisor counts below it fit in 16 bits.
pub const MAX_START: u64 = 100_000_000_000_000_000;

/// Default checkpoint cadence in steps.
pub const DEFAULT_CHECKPOINT_EVERY: u64 = 1 << 26;

/// One step of the recursion: `n - tau(n)`.
pub fn orbit_step(n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::invalid("orbit_step needs n >= 1"));
    }
    Ok(n - crate::sieve::divisor_count(n as u64)? as i64)
}

/// `(n_j, tau(n_j))` for one orbit point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitPoint {
    pub n: u64,
    pub tau: u16,
}

/// The visited points of one dyadic crossing, in orbit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// `N` for the interval `(N, 2N]`.
    pub scale: u64,
    /// Index of the first point, `j_plus(N)`.
    pub j_plus: u64,
    pub points: Vec<OrbitPoint>,
}

impl Segment {
    pub fn new(scale: u64, j_plus: u64, points: Vec<OrbitPoint>) -> Self {
        Segment {
            scale,
            j_plus,
            points,
        }
    }

    /// Builds a segment from bare values, computing `tau` by trial division.
    pub fn from_values(scale: u64, values: &[u64]) -> Result<Self> {
        let table = crate::sieve::PrimeTable::for_max(values.iter().copied().max().unwrap_or(1));
        let points = values
            .iter()
            .map(|&n| {
                Ok(OrbitPoint {
                    n,
                    tau: table.divisor_count(n)? as u16,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Segment::new(scale, 0, points))
    }

    /// `V(N)`.
    pub fn visits(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn energy(&self) -> u64 {
        self.points.iter().map(|p| p.tau as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.points.iter().map(|p| p.n)
    }

    pub fn taus(&self) -> impl Iterator<Item = u16> + '_ {
        self.points.iter().map(|p| p.tau)
    }
}

/// Per-scale statistics of one crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicRecord {
    pub scale: u64,
    pub j_plus: u64,
    pub j_minus: u64,
    /// `V(N) = j_minus - j_plus`.
    pub visits: u64,
    /// `sum tau(n_j)` over the crossing, equal to `n_{j_plus} - n_{j_minus}`.
    pub energy: u64,
    pub sum_tau_sq: u64,
    /// `Delta_N = max tau(n)` over `(N/2, 4N]`.
    pub delta: u16,
    /// False when part of `(N/2, 4N]` above the start was too long to side-sieve and
    /// `delta` is the maximum over the sieved part only.
    pub delta_exact: bool,
    /// True when the walk entered the interval from above, i.e. `x > 2N`.
    pub complete: bool,
}

impl DyadicRecord {
    /// The orbit jumped over `(N, 2N]` without landing in it.
    pub fn skipped(&self) -> bool {
        self.visits == 0
    }

    /// Exact mean `energy / visits` as a fraction.
    pub fn mean_tau_ratio(&self) -> (u64, u64) {
        (self.energy, self.visits)
    }

    pub fn mean_tau(&self) -> f64 {
        if self.visits == 0 {
            return 0.0;
        }
        self.energy as f64 / self.visits as f64
    }

    /// Exact population variance as `(numerator, denominator)`:
    /// `(V * sum tau^2 - energy^2) / V^2`.
    pub fn var_tau_ratio(&self) -> (u128, u128) {
        let v = self.visits as u128;
        let e = self.energy as u128;
        (v * self.sum_tau_sq as u128 - e * e, v * v)
    }

    pub fn var_tau(&self) -> f64 {
        let (num, den) = self.var_tau_ratio();
        if den == 0 {
            return 0.0;
        }
        num as f64 / den as f64
    }
}

/// Result of a finished walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub x: u64,
    /// Orbit length `a(x)`.
    pub a_x: u64,
    /// `n_{a(x)}`, in `(-tau(n_{a(x)-1}), 0]`.
    pub n_final: i64,
    pub total_energy: u64,
    /// `tau(n_{a(x)-1})`.
    pub last_tau: u16,
    /// `max tau(n)` for `1 <= n <= x`.
    pub max_tau: u16,
    /// Records ordered from the largest scale down to `N = 1`.
    pub dyadic: Vec<DyadicRecord>,
}

impl OrbitSummary {
    pub fn record(&self, scale: u64) -> Option<&DyadicRecord> {
        self.dyadic.iter().find(|r| r.scale == scale)
    }

    /// `x / max tau <= a(x) <= ceil(x / 2)`, checked in integers.
    pub fn within_baseline_bounds(&self) -> bool {
        let lower_ok = self.a_x * self.max_tau as u64 >= self.x;
        let upper_ok = self.x < 2 || self.a_x <= self.x.div_ceil(2);
        lower_ok && upper_ok
    }

    /// `total_energy = x - n_final` and `0 >= n_final > -tau(n_{a(x)-1})`.
    pub fn energy_identity_holds(&self) -> bool {
        self.x as i128 - self.n_final as i128 == self.total_energy as i128
            && self.n_final <= 0
            && self.n_final > -(self.last_tau as i64)
    }
}

/// Which crossings keep their visited points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SegmentCapture {
    #[default]
    None,
    All,
    Scales(Vec<u64>),
}

impl SegmentCapture {
    fn wants(&self, scale: u64) -> bool {
        match self {
            SegmentCapture::None => false,
            SegmentCapture::All => true,
            SegmentCapture::Scales(s) => s.contains(&scale),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub block_size: u64,
    /// Steps between checkpoint callbacks in [`OrbitWalker::run_with_checkpoints`].
    pub checkpoint_every: u64,
    pub capture: SegmentCapture,
    /// Longest range above `x` that is sieved to make `Delta_N` exact on the top scales.
    pub exact_delta_limit: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            block_size: DEFAULT_BLOCK_SIZE,
            checkpoint_every: DEFAULT_CHECKPOINT_EVERY,
            capture: SegmentCapture::None,
            exact_delta_limit: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRun {
    pub summary: OrbitSummary,
    pub segments: Vec<Segment>,
}

impl OrbitRun {
    pub fn segment(&self, scale: u64) -> Option<&Segment> {
        self.segments.iter().find(|s| s.scale == scale)
    }
}

/// Running totals for one scale `2^level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ScaleTally {
    pub(crate) level: u32,
    pub(crate) j_plus: u64,
    pub(crate) j_minus: u64,
    pub(crate) visits: u64,
    pub(crate) energy: u64,
    pub(crate) sum_tau_sq: u64,
}

impl ScaleTally {
    fn open(level: u32, j_plus: u64) -> Self {
        ScaleTally {
            level,
            j_plus,
            j_minus: 0,
            visits: 0,
            energy: 0,
            sum_tau_sq: 0,
        }
    }

    fn scale(&self) -> u64 {
        1 << self.level
    }
}

/// Everything needed to continue a walk: the resumable part of a checkpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkState {
    pub(crate) x: u64,
    pub(crate) n: i64,
    pub(crate) steps: u64,
    pub(crate) energy: u64,
    pub(crate) last_tau: u16,
    /// Lowest integer whose divisor count has been folded into `piece_max`.
    pub(crate) sieved_lo: u64,
    pub(crate) open: Option<ScaleTally>,
    pub(crate) closed: Vec<ScaleTally>,
    /// `piece_max[k]` is the max of tau over `(2^(k-1), 2^k]` seen so far; `piece_max[0]` is `{1}`.
    pub(crate) piece_max: Vec<u16>,
}

/// Index `k` of the piece `(2^(k-1), 2^k]` containing `m >= 1`.
#[inline]
fn piece_of(m: u64) -> usize {
    if m <= 1 {
        0
    } else {
        (64 - (m - 1).leading_zeros()) as usize
    }
}

impl WalkState {
    pub fn new(x: u64) -> Result<Self> {
        if x == 0 {
            return Err(Error::invalid("orbit start must be >= 1"));
        }
        if x > MAX_START {
            return Err(Error::invalid(alloc::format!(
                "orbit start {x} exceeds the supported maximum {MAX_START}"
            )));
        }
        let open = (x >= 2).then(|| ScaleTally::open(piece_of(x) as u32 - 1, 0));
        Ok(WalkState {
            x,
            n: x as i64,
            steps: 0,
            energy: 0,
            last_tau: 0,
            sieved_lo: x + 1,
            open,
            closed: Vec::new(),
            piece_max: vec![0; piece_of(x) + 1],
        })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// Current orbit value `n_j`.
    pub fn current(&self) -> i64 {
        self.n
    }

    /// Current step index `j`.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn energy(&self) -> u64 {
        self.energy
    }

    pub fn is_finished(&self) -> bool {
        self.n <= 0
    }

    fn fold_block(&mut self, view: BlockView<'_>) {
        let hi = (view.lo + view.counts.len() as u64).min(self.sieved_lo);
        let mut m = view.lo;
        while m < hi {
            let k = piece_of(m);
            let piece_hi = if k == 0 { 2 } else { (1u64 << k) + 1 };
            let end = piece_hi.min(hi);
            let slice = &view.counts[(m - view.lo) as usize..(end - view.lo) as usize];
            if let Some(&mx) = slice.iter().max() {
                self.piece_max[k] = self.piece_max[k].max(mx);
            }
            m = end;
        }
        self.sieved_lo = self.sieved_lo.min(view.lo);
    }

    /// Closes every open scale whose lower end `N` is `>= n`.
    #[inline]
    fn arrive(&mut self, j: u64, n: i64) {
        while let Some(open) = self.open {
            if n > open.scale() as i64 {
                break;
            }
            let mut done = open;
            done.j_minus = j;
            self.closed.push(done);
            self.open = (open.level > 0).then(|| ScaleTally::open(open.level - 1, j));
        }
    }
}

/// Streams the orbit downward from a [`WalkState`], pulling blocks from a [`TauSource`].
pub struct OrbitWalker<S> {
    state: WalkState,
    source: S,
    block_lo: u64,
    capture: SegmentCapture,
    capture_from: u64,
    segments: Vec<Segment>,
    current: Option<Segment>,
    exact_delta_limit: u64,
}

impl<S: TauSource> OrbitWalker<S> {
    pub fn new(x: u64, source: S, options: &RunOptions) -> Result<Self> {
        Ok(Self::from_state(WalkState::new(x)?, source, options))
    }

    /// Continues a walk from a saved state. Crossings already open when the state
    /// was saved are not captured as segments.
    pub fn from_state(state: WalkState, source: S, options: &RunOptions) -> Self {
        let capture_from = state.steps;
        let mut walker = OrbitWalker {
            state,
            source,
            block_lo: 0,
            capture: options.capture.clone(),
            capture_from,
            segments: Vec::new(),
            current: None,
            exact_delta_limit: options.exact_delta_limit,
        };
        if walker.state.steps == 0 {
            walker.begin_segment();
        }
        walker
    }

    pub fn state(&self) -> &WalkState {
        &self.state
    }

    fn begin_segment(&mut self) {
        self.current = match self.state.open {
            Some(open) if open.j_plus >= self.capture_from && self.capture.wants(open.scale()) => {
                Some(Segment::new(open.scale(), open.j_plus, Vec::new()))
            }
            _ => None,
        };
    }

    /// Loads blocks downward until one contains `n`. Loads stay contiguous with
    /// what has already been folded, so a step that jumps past the bottom of a
    /// block cannot leave integers out of the divisor-count maxima.
    fn load_covering(&mut self, n: u64) -> Result<()> {
        let mut hi = if n < self.state.sieved_lo {
            self.state.sieved_lo
        } else {
            n + 1
        };
        loop {
            let view = self.source.load_below(hi)?;
            let lo = view.lo;
            self.state.fold_block(view);
            self.block_lo = lo;
            if lo <= n {
                return Ok(());
            }
            hi = lo;
        }
    }

    /// Walks at most `max_steps` steps, stopping early once `n_j <= floor` or the
    /// orbit terminates. Returns true when the orbit has terminated.
    pub fn advance(&mut self, max_steps: u64, floor: i64) -> Result<bool> {
        let mut budget = max_steps;
        while self.state.n > 0 && self.state.n > floor && budget > 0 {
            let n = self.state.n as u64;
            if n < self.block_lo || self.block_lo == 0 {
                self.load_covering(n)?;
            }
            let tau = self.source.tau(n);
            if let Some(open) = self.state.open.as_mut() {
                open.visits += 1;
                open.energy += tau as u64;
                open.sum_tau_sq += tau as u64 * tau as u64;
            }
            if let Some(seg) = self.current.as_mut() {
                seg.points.push(OrbitPoint { n, tau });
            }
            self.state.energy += tau as u64;
            self.state.last_tau = tau;
            self.state.steps += 1;
            self.state.n -= tau as i64;
            budget -= 1;

            let before = self.state.closed.len();
            self.state.arrive(self.state.steps, self.state.n);
            if self.state.closed.len() != before {
                if let Some(seg) = self.current.take() {
                    self.segments.push(seg);
                }
                self.begin_segment();
            }
        }
        Ok(self.state.n <= 0)
    }

    /// Runs to completion, calling `on_checkpoint` every `every` steps with the
    /// resumable state. An error from the callback stops the walk with the walker
    /// intact, so the caller can retry or save elsewhere.
    pub fn run_with_checkpoints<E, F>(&mut self, every: u64, mut on_checkpoint: F) -> Result<(), E>
    where
        E: From<Error>,
        F: FnMut(&WalkState) -> Result<(), E>,
    {
        let every = every.max(1);
        while !self.advance(every, i64::MIN)? {
            on_checkpoint(&self.state)?;
        }
        Ok(())
    }

    /// Finishes the walk (if needed) and assembles the summary and captured segments.
    pub fn finish(mut self) -> Result<OrbitRun> {
        self.advance(u64::MAX, i64::MIN)?;
        let summary = summarize(&mut self.state, self.exact_delta_limit)?;
        Ok(OrbitRun {
            summary,
            segments: self.segments,
        })
    }
}

/// Builds the summary of a finished state, sieving whatever is still needed for
/// the divisor-count maxima.
pub(crate) fn summarize(state: &mut WalkState, exact_delta_limit: u64) -> Result<OrbitSummary> {
    debug_assert!(state.is_finished());
    let sieve = TauSieve::default();
    if state.sieved_lo > 1 {
        let hi = state.sieved_lo;
        sieve.for_each_block(1, hi, |lo, counts| state.fold_block(BlockView { lo, counts }))?;
    }
    let x = state.x;
    let max_tau = state.piece_max.iter().copied().max().unwrap_or(1);

    // Maxima per piece above x, for the top scales' (N/2, 4N] windows.
    let top_level = state.closed.first().map(|t| t.level).unwrap_or(0);
    let window_top = 1u64 << (top_level + 2);
    let mut upper_max: Vec<u16> = vec![0; piece_of(window_top) + 1];
    let upper_exact = window_top <= x || window_top - x <= exact_delta_limit;
    if window_top > x && upper_exact {
        sieve.for_each_block(x + 1, window_top + 1, |lo, counts| {
            for (i, &t) in counts.iter().enumerate() {
                let k = piece_of(lo + i as u64);
                upper_max[k] = upper_max[k].max(t);
            }
        })?;
    }

    let dyadic = state
        .closed
        .iter()
        .map(|t| {
            let n = t.scale();
            let pieces = t.level as usize..=t.level as usize + 2;
            let mut delta = 0u16;
            for k in pieces {
                delta = delta
                    .max(state.piece_max.get(k).copied().unwrap_or(0))
                    .max(upper_max.get(k).copied().unwrap_or(0));
            }
            DyadicRecord {
                scale: n,
                j_plus: t.j_plus,
                j_minus: t.j_minus,
                visits: t.visits,
                energy: t.energy,
                sum_tau_sq: t.sum_tau_sq,
                delta,
                delta_exact: 4 * n <= x || upper_exact,
                complete: x > 2 * n,
            }
        })
        .collect();

    Ok(OrbitSummary {
        x,
        a_x: state.steps,
        n_final: state.n,
        total_energy: state.energy,
        last_tau: state.last_tau,
        max_tau,
        dyadic,
    })
}

/// Walks the orbit from `x` to termination with on-demand block sieving.
pub fn run_orbit(x: u64, options: &RunOptions) -> Result<OrbitRun> {
    let source = SieveSource::new(TauSieve::new(options.block_size)?);
    OrbitWalker::new(x, source, options)?.finish()
}

/// The visited points `(n_j, tau(n_j))` for `j_plus(N) <= j < j_minus(N)`.
///
/// Walks only as far as the crossing requires.
pub fn orbit_segment(x: u64, scale: u64) -> Result<Segment> {
    if scale < 2 {
        return Err(Error::invalid("segment scale must be >= 2"));
    }
    if scale >= x {
        return Err(Error::NoCrossing { x, scale });
    }
    let options = RunOptions {
        capture: SegmentCapture::Scales(vec![scale]),
        ..RunOptions::default()
    };
    let sieve = TauSieve::new(options.block_size)?;
    let mut walker = OrbitWalker::new(x, SieveSource::new(sieve), &options)?;
    walker.advance(u64::MAX, scale as i64)?;
    let seg = walker
        .segments
        .pop()
        .or_else(|| walker.current.take())
        .filter(|s| s.scale == scale && !s.is_empty());
    seg.ok_or(Error::NoCrossing { x, scale })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_walk(x: u64) -> Vec<i64> {
        let mut out = vec![x as i64];
        let mut n = x as i64;
        while n > 0 {
            n = orbit_step(n).unwrap();
            out.push(n);
        }
        out
    }

    #[test]
    fn single_steps() {
        assert_eq!(orbit_step(2).unwrap(), 0);
        assert_eq!(orbit_step(10).unwrap(), 6);
        assert_eq!(orbit_step(6).unwrap(), 2);
        assert!(orbit_step(0).is_err());
        assert!(orbit_step(-3).is_err());
    }

    #[test]
    fn small_orbits() {
        let one = run_orbit(1, &RunOptions::default()).unwrap().summary;
        assert_eq!((one.a_x, one.n_final), (1, 0));
        assert!(one.dyadic.is_empty());

        let ten = run_orbit(10, &RunOptions::default()).unwrap().summary;
        assert_eq!(ten.a_x, 3);
        assert_eq!(ten.n_final, 0);
        assert_eq!(ten.total_energy, 10);
        assert_eq!(ten.last_tau, 2);

        let big = run_orbit(10_000, &RunOptions::default()).unwrap().summary;
        assert_eq!(big.a_x, 962);
        assert!(big.energy_identity_holds());
        assert!(big.within_baseline_bounds());
    }

    #[test]
    fn rejects_zero_start() {
        assert!(run_orbit(0, &RunOptions::default()).is_err());
    }

    #[test]
    fn segments_of_ten() {
        let s = orbit_segment(10, 4).unwrap();
        assert_eq!(s.points, vec![OrbitPoint { n: 6, tau: 4 }]);
        assert_eq!(s.j_plus, 1);
        let s = orbit_segment(10, 8).unwrap();
        assert_eq!(s.points, vec![OrbitPoint { n: 10, tau: 4 }]);
        assert_eq!(s.j_plus, 0);
        assert!(matches!(orbit_segment(10, 16), Err(Error::NoCrossing { .. })));
        assert!(orbit_segment(10, 1).is_err());
    }

    #[test]
    fn records_match_brute_force() {
        // Tiny blocks make steps jump past block boundaries.
        for (x, block_size) in [2u64, 3, 7, 10, 17, 64, 65, 100, 1000, 4097, 12345]
            .into_iter()
            .flat_map(|x| [(x, 1u64), (x, 3), (x, 37)])
        {
            let orbit = brute_walk(x);
            let run = run_orbit(
                x,
                &RunOptions {
                    block_size,
                    capture: SegmentCapture::All,
                    ..RunOptions::default()
                },
            )
            .unwrap();
            let s = &run.summary;
            assert_eq!(s.a_x as usize, orbit.len() - 1, "x = {x}");
            assert_eq!(s.n_final, *orbit.last().unwrap());
            for rec in &s.dyadic {
                let n = rec.scale as i64;
                let jp = orbit.iter().position(|&v| v <= 2 * n).unwrap() as u64;
                let jm = orbit.iter().position(|&v| v <= n).unwrap() as u64;
                assert_eq!((rec.j_plus, rec.j_minus), (jp, jm), "x = {x}, N = {n}");
                assert_eq!(rec.visits, jm - jp);
                assert_eq!(rec.energy as i64, orbit[jp as usize] - orbit[jm as usize]);
                let lo = rec.scale / 2 + 1;
                let hi = 4 * rec.scale;
                let delta = (lo..=hi)
                    .map(|m| crate::sieve::divisor_count(m).unwrap())
                    .max()
                    .unwrap();
                assert_eq!(rec.delta as u64, delta, "x = {x}, N = {n}");
                assert!(rec.delta_exact);
            }
            let total: u64 = s.dyadic.iter().map(|r| r.visits).sum();
            let below_two = orbit.iter().filter(|&&v| v >= 1 && v <= 1).count() as u64;
            assert_eq!(total + below_two, s.a_x);
            for seg in &run.segments {
                let rec = s.record(seg.scale).unwrap();
                assert_eq!(seg.visits(), rec.visits);
                assert_eq!(seg.energy(), rec.energy);
            }
        }
    }

    #[test]
    fn delta_window_above_start_is_flagged_when_not_sieved() {
        let opts = RunOptions {
            exact_delta_limit: 0,
            ..RunOptions::default()
        };
        let s = run_orbit(1000, &opts).unwrap().summary;
        for rec in &s.dyadic {
            assert_eq!(rec.delta_exact, 4 * rec.scale <= 1000, "N = {}", rec.scale);
        }
    }

    #[test]
    fn pausing_does_not_change_the_result() {
        let opts = RunOptions {
            block_size: 1000,
            ..RunOptions::default()
        };
        let full = run_orbit(50_000, &opts).unwrap().summary;
        let mut walker =
            OrbitWalker::new(50_000, SieveSource::new(TauSieve::new(1000).unwrap()), &opts).unwrap();
        let mut pauses = 0;
        while !walker.advance(777, i64::MIN).unwrap() {
            pauses += 1;
        }
        assert!(pauses > 3);
        assert_eq!(walker.finish().unwrap().summary, full);
    }

    #[test]
    fn table_source_matches_sieve_source() {
        let table = crate::sieve::sieve_block(1, 20_001).unwrap().into_counts();
        for x in [1u64, 2, 999, 20_000] {
            let opts = RunOptions::default();
            let a = OrbitWalker::new(x, TableSource::new(&table), &opts)
                .unwrap()
                .finish()
                .unwrap();
            assert_eq!(a, run_orbit(x, &opts).unwrap());
        }
    }
}
