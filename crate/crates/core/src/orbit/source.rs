use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sieve::TauSieve;

/// A window of divisor counts `[lo, lo + counts.len())`.
#[derive(Debug, Clone, Copy)]
pub struct BlockView<'a> {
    pub lo: u64,
    pub counts: &'a [u16],
}

/// Supplies divisor counts to the downward orbit walk.
///
/// The walker only ever asks for ranges strictly below the previous one, so a
/// source may discard everything at or above `hi` once `load_below(hi)` is called.
pub trait TauSource {
    /// Makes a non-empty range `[lo, hi)` available and returns it. `hi >= 2`.
    fn load_below(&mut self, hi: u64) -> Result<BlockView<'_>>;

    /// `tau(n)` for `n` in the most recently loaded range.
    fn tau(&self, n: u64) -> u16;
}

/// Sieves one block at a time on demand.
#[derive(Debug, Clone)]
pub struct SieveSource {
    sieve: TauSieve,
    lo: u64,
    buf: Vec<u16>,
}

impl SieveSource {
    pub fn new(sieve: TauSieve) -> Self {
        SieveSource {
            sieve,
            lo: 0,
            buf: Vec::new(),
        }
    }
}

impl TauSource for SieveSource {
    fn load_below(&mut self, hi: u64) -> Result<BlockView<'_>> {
        let lo = hi.saturating_sub(self.sieve.block_size()).max(1);
        self.sieve.sieve_into(lo, hi, &mut self.buf)?;
        self.lo = lo;
        Ok(BlockView {
            lo,
            counts: &self.buf,
        })
    }

    #[inline]
    fn tau(&self, n: u64) -> u16 {
        self.buf[(n - self.lo) as usize]
    }
}

/// A precomputed table of `tau(1..=max)`, shared across many walks.
#[derive(Debug, Clone, Copy)]
pub struct TableSource<'a> {
    table: &'a [u16],
}

impl<'a> TableSource<'a> {
    /// `table[i]` must be `tau(i + 1)`.
    pub fn new(table: &'a [u16]) -> Self {
        TableSource { table }
    }
}

impl TauSource for TableSource<'_> {
    fn load_below(&mut self, hi: u64) -> Result<BlockView<'_>> {
        if hi < 2 || hi - 1 > self.table.len() as u64 {
            return Err(Error::invalid(alloc::format!(
                "tau table covers [1, {}] but {} was requested",
                self.table.len(),
                hi - 1
            )));
        }
        Ok(BlockView {
            lo: 1,
            counts: &self.table[..(hi - 1) as usize],
        })
    }

    #[inline]
    fn tau(&self, n: u64) -> u16 {
        self.table[(n - 1) as usize]
    }
}
