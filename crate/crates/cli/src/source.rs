//! A divisor-count source that sieves the next lower blocks on worker threads.
//!
//! The walker consumes blocks strictly downward and contiguously. When a block is
//! requested that is not already queued, the source sieves a batch of `threads`
//! consecutive blocks below it at once, one per scoped worker. Blocks are the
//! same `[hi - block_size, hi)` windows a single-threaded source would produce,
//! so the walk is bit-identical for any worker count.

use std::collections::VecDeque;
use std::io::Write;

use orbitlab_core::{BlockView, Result, TauSieve, TauSource};

pub struct PrefetchSource {
    sieve: TauSieve,
    threads: usize,
    queue: VecDeque<(u64, Vec<u16>)>,
    lo: u64,
    current: Vec<u16>,
    spare: Vec<Vec<u16>>,
    progress: Progress,
}

/// Reports the number of sieved integers on standard error.
#[derive(Debug, Clone, Default)]
pub struct Progress {
    every: u64,
    sieved: u64,
    next: u64,
}

impl Progress {
    /// `every == 0` disables reporting.
    pub fn new(every: u64) -> Self {
        Progress {
            every,
            sieved: 0,
            next: every,
        }
    }

    pub fn add(&mut self, count: u64, lo: u64) {
        self.sieved += count;
        if self.every > 0 && self.sieved >= self.next {
            let _ = writeln!(
                std::io::stderr(),
                "orbitlab: sieved {} integers, now below {}",
                self.sieved,
                lo
            );
            while self.next <= self.sieved {
                self.next += self.every;
            }
        }
    }

    pub fn sieved(&self) -> u64 {
        self.sieved
    }
}

impl PrefetchSource {
    pub fn new(sieve: TauSieve, threads: usize, progress: Progress) -> Self {
        PrefetchSource {
            sieve,
            threads: threads.max(1),
            queue: VecDeque::new(),
            lo: 0,
            current: Vec::new(),
            spare: Vec::new(),
            progress,
        }
    }

    pub fn progress(&self) -> &Progress {
        &self.progress
    }

    fn refill(&mut self, hi: u64) -> Result<()> {
        self.spare.extend(self.queue.drain(..).map(|(_, v)| v));
        let bs = self.sieve.block_size();
        let mut ranges = Vec::with_capacity(self.threads);
        let mut top = hi;
        while ranges.len() < self.threads && top > 1 {
            let lo = top.saturating_sub(bs).max(1);
            ranges.push((lo, top));
            top = lo;
        }
        let mut bufs: Vec<Vec<u16>> = ranges.iter().map(|_| self.spare.pop().unwrap_or_default()).collect();
        let sieve = &self.sieve;
        if ranges.len() == 1 {
            sieve.sieve_into(ranges[0].0, ranges[0].1, &mut bufs[0])?;
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .iter()
                    .zip(bufs.iter_mut())
                    .map(|(&(lo, hi), buf)| scope.spawn(move || sieve.sieve_into(lo, hi, buf)))
                    .collect();
                handles
                    .into_iter()
                    .try_for_each(|h| h.join().expect("sieve worker panicked"))
            })?;
        }
        for (&(lo, hi), buf) in ranges.iter().zip(bufs) {
            self.progress.add(hi - lo, lo);
            self.queue.push_back((lo, buf));
        }
        Ok(())
    }
}

impl TauSource for PrefetchSource {
    fn load_below(&mut self, hi: u64) -> Result<BlockView<'_>> {
        let queued = self
            .queue
            .front()
            .is_some_and(|(lo, buf)| lo + buf.len() as u64 == hi);
        if !queued {
            self.refill(hi)?;
        }
        let (lo, buf) = self.queue.pop_front().expect("refill queues at least one block");
        let old = std::mem::replace(&mut self.current, buf);
        self.spare.push(old);
        self.lo = lo;
        Ok(BlockView {
            lo,
            counts: &self.current,
        })
    }

    #[inline]
    fn tau(&self, n: u64) -> u16 {
        self.current[(n - self.lo) as usize]
    }
}
