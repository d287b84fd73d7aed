//! Segmented divisor-count sieve.
//!
//! A block `[lo, hi)` is filled by adding one divisor-pair contribution per
//! multiple: for every `d <= sqrt(hi - 1)` each multiple `m = d * k` with
//! `k > d` gains 2 and the square `d * d` gains 1. The plain path that adds 1
//! at every multiple of every `d < hi` is kept for cross-checking.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default number of entries per sieved block.
pub const DEFAULT_BLOCK_SIZE: u64 = 1 << 22;

/// Divisor counts for the half-open range `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauBlock {
    lo: u64,
    counts: Vec<u16>,
}

impl TauBlock {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.counts.len() as u64
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[u16] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u16> {
        self.counts
    }

    /// `tau(n)` for `n` inside the block.
    pub fn get(&self, n: u64) -> Option<u16> {
        n.checked_sub(self.lo)
            .and_then(|i| self.counts.get(i as usize).copied())
    }

    /// Iterates `(n, tau(n))` over the block.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u16)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &t)| (self.lo + i as u64, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SieveMethod {
    /// Divisor-pair counting up to `sqrt(hi)`.
    #[default]
    Hyperbola,
    /// One increment per multiple of every `d < hi`. Cost grows with `hi`, not
    /// with the block length; only sensible for small ranges.
    Plain,
}

/// Sieve configuration: maximum block length and the counting method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauSieve {
    block_size: u64,
    method: SieveMethod,
}

impl Default for TauSieve {
    fn default() -> Self {
        TauSieve {
            block_size: DEFAULT_BLOCK_SIZE,
            method: SieveMethod::Hyperbola,
        }
    }
}

impl TauSieve {
    pub fn new(block_size: u64) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::invalid("block size must be positive"));
        }
        Ok(TauSieve {
            block_size,
            method: SieveMethod::Hyperbola,
        })
    }

    pub fn with_method(mut self, method: SieveMethod) -> Self {
        self.method = method;
        self
    }

    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    pub fn method(&self) -> SieveMethod {
        self.method
    }

    pub fn sieve_block(&self, lo: u64, hi: u64) -> Result<TauBlock> {
        let mut counts = Vec::new();
        self.sieve_into(lo, hi, &mut counts)?;
        Ok(TauBlock { lo, counts })
    }

    /// Fills `out` with `tau(lo..hi)`, reusing its allocation.
    pub fn sieve_into(&self, lo: u64, hi: u64, out: &mut Vec<u16>) -> Result<()> {
        check_range(lo, hi)?;
        if hi - lo > self.block_size {
            return Err(Error::invalid(alloc::format!(
                "range [{lo}, {hi}) exceeds the block size {}",
                self.block_size
            )));
        }
        out.clear();
        out.resize((hi - lo) as usize, 0);
        match self.method {
            SieveMethod::Hyperbola => fill_hyperbola(lo, hi, out),
            SieveMethod::Plain => fill_plain(lo, hi, out),
        }
        Ok(())
    }

    /// Streams `[lo, hi)` as consecutive ascending blocks of at most `block_size` entries.
    pub fn for_each_block<F>(&self, lo: u64, hi: u64, mut f: F) -> Result<()>
    where
        F: FnMut(u64, &[u16]),
    {
        check_range(lo, hi)?;
        let mut buf = Vec::new();
        let mut start = lo;
        while start < hi {
            let end = hi.min(start + self.block_size);
            self.sieve_into(start, end, &mut buf)?;
            f(start, &buf);
            start = end;
        }
        Ok(())
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || lo >= hi {
        return Err(Error::invalid(alloc::format!(
            "sieve range [{lo}, {hi}) must satisfy 1 <= lo < hi"
        )));
    }
    Ok(())
}

fn fill_hyperbola(lo: u64, hi: u64, out: &mut [u16]) {
    let dmax = (hi - 1).isqrt();
    for d in 1..=dmax {
        let sq = d * d;
        if sq >= lo {
            out[(sq - lo) as usize] += 1;
        }
        let k0 = (d + 1).max(lo.div_ceil(d));
        let mut m = k0 * d;
        while m < hi {
            out[(m - lo) as usize] += 2;
            m += d;
        }
    }
}

fn fill_plain(lo: u64, hi: u64, out: &mut [u16]) {
    for d in 1..hi {
        let mut m = lo.div_ceil(d) * d;
        while m < hi {
            out[(m - lo) as usize] += 1;
            m += d;
        }
    }
}

/// Sieves `[lo, hi)` with the default configuration.
pub fn sieve_block(lo: u64, hi: u64) -> Result<TauBlock> {
    TauSieve::default().sieve_block(lo, hi)
}

/// Primes up to a limit, used for trial-division divisor counting.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// All primes `<= limit`, by a plain Eratosthenes sieve.
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        PrimeTable { limit, primes }
    }

    /// Table large enough to count divisors of anything up to `n_max`.
    pub fn for_max(n_max: u64) -> Self {
        Self::new(n_max.isqrt())
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of divisors of `n` from its factorization by trial division.
    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::invalid("divisor_count needs n >= 1"));
        }
        if n.isqrt() > self.limit {
            return Err(Error::invalid(alloc::format!(
                "prime table up to {} cannot factor {n}",
                self.limit
            )));
        }
        let mut rest = n;
        let mut count = 1u64;
        for &p in &self.primes {
            if p * p > rest {
                break;
            }
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            count *= e + 1;
        }
        if rest > 1 {
            count *= 2;
        }
        Ok(count)
    }
}

/// Number of positive divisors of `n` by trial division (reference path).
pub fn divisor_count(n: u64) -> Result<u64> {
    PrimeTable::for_max(n).divisor_count(n)
}

/// Exact `sum_{n <= x} tau(n)^power` for `power` in `{1, 2}`, streamed block by block.
pub fn tau_moment_sum(x: u64, power: u32) -> Result<u64> {
    tau_moment_range(1, x + 1, power)
}

/// Exact `sum_{lo <= n < hi} tau(n)^power` for `power` in `{1, 2}`.
pub fn tau_moment_range(lo: u64, hi: u64, power: u32) -> Result<u64> {
    if !(1..=2).contains(&power) {
        return Err(Error::invalid("moment power must be 1 or 2"));
    }
    let mut total = 0u64;
    TauSieve::default().for_each_block(lo, hi, |_, counts| {
        total += if power == 1 {
            counts.iter().map(|&t| t as u64).sum::<u64>()
        } else {
            counts.iter().map(|&t| (t as u64) * (t as u64)).sum::<u64>()
        };
    })?;
    Ok(total)
}

/// Largest `tau(n)` for `lo <= n < hi`.
pub fn max_tau_range(lo: u64, hi: u64) -> Result<u16> {
    let mut best = 0u16;
    TauSieve::default().for_each_block(lo, hi, |_, counts| {
        if let Some(&m) = counts.iter().max() {
            best = best.max(m);
        }
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).count() as u64
    }

    #[test]
    fn small_blocks() {
        assert_eq!(sieve_block(1, 2).unwrap().counts(), &[1]);
        assert_eq!(sieve_block(10, 13).unwrap().counts(), &[4, 2, 6]);
        assert_eq!(sieve_block(100, 101).unwrap().counts(), &[9]);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(sieve_block(0, 5).is_err());
        assert!(sieve_block(5, 5).is_err());
        assert!(sieve_block(6, 5).is_err());
        let s = TauSieve::new(8).unwrap();
        assert!(s.sieve_block(1, 10).is_err());
        assert!(s.sieve_block(1, 9).is_ok());
        assert!(TauSieve::new(0).is_err());
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(divisor_count(1 << 10).unwrap(), 11);
        assert!(divisor_count(0).is_err());
        assert!(PrimeTable::new(10).divisor_count(1_000_000).is_err());
    }

    #[test]
    fn trial_division_matches_brute_force() {
        let table = PrimeTable::for_max(3000);
        for n in 1..3000 {
            assert_eq!(table.divisor_count(n).unwrap(), brute(n), "n = {n}");
        }
    }

    #[test]
    fn plain_and_hyperbola_agree() {
        let plain = TauSieve::default().with_method(SieveMethod::Plain);
        for (lo, hi) in [(1, 500), (37, 1200), (999, 1000), (4096, 4200)] {
            assert_eq!(
                plain.sieve_block(lo, hi).unwrap(),
                sieve_block(lo, hi).unwrap(),
                "[{lo}, {hi})"
            );
        }
    }

    #[test]
    fn moment_sums() {
        assert_eq!(tau_moment_sum(1, 1).unwrap(), 1);
        assert_eq!(tau_moment_sum(10, 1).unwrap(), 27);
        // 1 + 4 + 4 + 9 + 4 + 16 + 4 + 16 + 9 + 16
        assert_eq!(tau_moment_sum(10, 2).unwrap(), 83);
        assert!(tau_moment_sum(10, 3).is_err());
    }

    #[test]
    fn primes_and_one() {
        let block = sieve_block(1, 2000).unwrap();
        let table = PrimeTable::new(2000);
        for (n, t) in block.iter() {
            assert_eq!(t == 1, n == 1);
            assert_eq!(t == 2, table.primes().binary_search(&n).is_ok(), "n = {n}");
        }
    }
}
