//! Core algorithms for the divisor-function orbit `n -> n - tau(n)`.
//!
//! This crate is `no_std` (it needs `alloc`) and performs no IO. It provides:
//!
//! * [`sieve`]: exact divisor counts over integer ranges via a segmented sieve.
//! * [`orbit`]: the orbit walker, orbit length `a(x)`, energy and dyadic-scale records,
//!   and the fixed-width checkpoint codec.
//! * [`scale`]: heuristic ratio tables, the logarithmic integral, tail energy and
//!   bounded-divisor restriction.
//! * [`mixing`]: residue distributions, divisor discrepancy, Fourier bias, phase
//!   increments, residue concentration and ladder detection on orbit segments.
//! * [`ladder`]: concentration ratios along random model progressions and
//!   single-level energy concentration along the orbit.
//!
//! File formats, threading and the command line live in the `orbitlab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod ladder;
pub mod mixing;
pub mod orbit;
pub mod rng;
pub mod scale;
pub mod sieve;

mod float;

pub use error::{Error, Result};
pub use orbit::{
    orbit_segment, orbit_step, run_orbit, BlockView, DyadicRecord, OrbitPoint, OrbitRun,
    OrbitSummary, OrbitWalker, RunOptions, Segment, SegmentCapture, SieveSource, TableSource,
    TauSource, WalkState,
};
pub use sieve::{divisor_count, sieve_block, tau_moment_sum, PrimeTable, SieveMethod, TauBlock, TauSieve};
