//! Fixed-width little-endian encoding of [`WalkState`].
//!
//! Layout: magic (8 bytes), version (u32), x, n (i64), steps, energy (u64 each),
//! last_tau (u16), sieved_lo (u64), open flag (u8) followed by an open tally,
//! closed tally count (u32) and tallies, piece count (u32) and u16 maxima, and a
//! trailing CRC-32 of everything before it. A tally is level (u32) then j_plus,
//! j_minus, visits, energy, sum_tau_sq (u64 each).
//!
//! The block size is not part of the state; a walk may resume with any block size.

use alloc::format;
use alloc::vec::Vec;

use super::{ScaleTally, WalkState};
use crate::error::{Error, Result};

pub const CHECKPOINT_MAGIC: [u8; 8] = *b"ORBWALK\0";
pub const CHECKPOINT_VERSION: u32 = 1;

const TALLY_BYTES: usize = 4 + 5 * 8;

impl WalkState {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(
            64 + TALLY_BYTES * (self.closed.len() + 1) + 2 * self.piece_max.len(),
        );
        out.extend_from_slice(&CHECKPOINT_MAGIC);
        out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.x.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.steps.to_le_bytes());
        out.extend_from_slice(&self.energy.to_le_bytes());
        out.extend_from_slice(&self.last_tau.to_le_bytes());
        out.extend_from_slice(&self.sieved_lo.to_le_bytes());
        match &self.open {
            Some(t) => {
                out.push(1);
                put_tally(&mut out, t);
            }
            None => out.push(0),
        }
        out.extend_from_slice(&(self.closed.len() as u32).to_le_bytes());
        for t in &self.closed {
            put_tally(&mut out, t);
        }
        out.extend_from_slice(&(self.piece_max.len() as u32).to_le_bytes());
        for m in &self.piece_max {
            out.extend_from_slice(&m.to_le_bytes());
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 12 {
            return Err(Error::Checkpoint("file too short".into()));
        }
        let (body, crc) = bytes.split_at(bytes.len() - 4);
        if body[..8] != CHECKPOINT_MAGIC {
            return Err(Error::Checkpoint("not an orbit checkpoint (bad magic)".into()));
        }
        let version = u32::from_le_bytes(body[8..12].try_into().unwrap());
        if version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!(
                "version {version} is not supported (expected {CHECKPOINT_VERSION})"
            )));
        }
        if crc32fast::hash(body) != u32::from_le_bytes(crc.try_into().unwrap()) {
            return Err(Error::Checkpoint("checksum mismatch".into()));
        }

        let mut r = Reader { buf: body, pos: 12 };
        let x = r.u64()?;
        let n = r.u64()? as i64;
        let steps = r.u64()?;
        let energy = r.u64()?;
        let last_tau = r.u16()?;
        let sieved_lo = r.u64()?;
        let open = match r.u8()? {
            0 => None,
            1 => Some(r.tally()?),
            f => return Err(Error::Checkpoint(format!("bad open-scale flag {f}"))),
        };
        let closed_len = r.u32()? as usize;
        if closed_len > 64 {
            return Err(Error::Checkpoint(format!("{closed_len} closed scales is impossible")));
        }
        let closed = (0..closed_len).map(|_| r.tally()).collect::<Result<Vec<_>>>()?;
        let pieces = r.u32()? as usize;
        if pieces > 66 {
            return Err(Error::Checkpoint(format!("{pieces} pieces is impossible")));
        }
        let piece_max = (0..pieces).map(|_| r.u16()).collect::<Result<Vec<_>>>()?;
        if r.pos != body.len() {
            return Err(Error::Checkpoint("trailing bytes".into()));
        }

        let state = WalkState {
            x,
            n,
            steps,
            energy,
            last_tau,
            sieved_lo,
            open,
            closed,
            piece_max,
        };
        state.validate()?;
        Ok(state)
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Checkpoint(format!("inconsistent state: {what}")));
        let fresh = WalkState::new(self.x).map_err(|e| Error::Checkpoint(format!("{e}")))?;
        if self.piece_max.len() != fresh.piece_max.len() {
            return bad("piece table length");
        }
        if self.x as i128 - self.n as i128 != self.energy as i128 {
            return bad("energy does not match displacement");
        }
        if self.steps > self.energy || (self.steps == 0) != (self.n as u64 == self.x) {
            return bad("step count");
        }
        if self.sieved_lo == 0 || self.sieved_lo > self.x + 1 {
            return bad("sieved range");
        }
        Ok(())
    }
}

fn put_tally(out: &mut Vec<u8>, t: &ScaleTally) {
    out.extend_from_slice(&t.level.to_le_bytes());
    for v in [t.j_plus, t.j_minus, t.visits, t.energy, t.sum_tau_sq] {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const K: usize>(&mut self) -> Result<[u8; K]> {
        let end = self.pos + K;
        let bytes = self
            .buf
            .get(self.pos..end)
            .ok_or_else(|| Error::Checkpoint("truncated".into()))?;
        self.pos = end;
        Ok(bytes.try_into().unwrap())
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take::<1>()?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take()?))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take()?))
    }

    fn tally(&mut self) -> Result<ScaleTally> {
        let level = self.u32()?;
        if level > 62 {
            return Err(Error::Checkpoint(format!("scale level {level} out of range")));
        }
        Ok(ScaleTally {
            level,
            j_plus: self.u64()?,
            j_minus: self.u64()?,
            visits: self.u64()?,
            energy: self.u64()?,
            sum_tau_sq: self.u64()?,
        })
    }
}
