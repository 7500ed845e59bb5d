//! Binary sieve files.
//!
//! All integers are little-endian.
//!
//! ```text
//! offset  size  field
//!      0     8  magic "ACMSIEVE"
//!      8     4  format version (1)
//!     12     4  reserved, zero
//!     16     8  a
//!     24     8  b
//!     32     8  limit
//!     40     8  member slots k = 0 ..= (limit - a) / b, or 0 when limit < a
//!     48   8*w  reducible bitset, w = ceil(slots / 64) words; bit k marks a + k*b
//! ```

use std::io::{Read, Write};

use acm_core::bits::BitSet;
use acm_core::{Acm, AtomSieve};

use crate::error::{LabError, Result};

pub const MAGIC: &[u8; 8] = b"ACMSIEVE";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 48;

pub fn write_sieve(sieve: &AtomSieve, mut out: impl Write) -> Result<()> {
    let acm = sieve.acm();
    let bits = sieve.reducible_bits();
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(MAGIC);
    header.extend_from_slice(&VERSION.to_le_bytes());
    header.extend_from_slice(&0u32.to_le_bytes());
    for v in [acm.a(), acm.b(), sieve.limit(), bits.len() as u64] {
        header.extend_from_slice(&v.to_le_bytes());
    }
    out.write_all(&header)?;
    let mut body = Vec::with_capacity(bits.words().len() * 8);
    for w in bits.words() {
        body.extend_from_slice(&w.to_le_bytes());
    }
    out.write_all(&body)?;
    out.flush()?;
    Ok(())
}

pub fn read_sieve(mut input: impl Read) -> Result<AtomSieve> {
    let mut header = [0u8; HEADER_LEN];
    input
        .read_exact(&mut header)
        .map_err(|_| LabError::Format("truncated header".into()))?;
    if &header[..8] != MAGIC {
        return Err(LabError::Format("bad magic".into()));
    }
    let word = |at: usize| u64::from_le_bytes(header[at..at + 8].try_into().expect("8 bytes"));
    let version = u32::from_le_bytes(header[8..12].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(LabError::Format(format!("unsupported version {version}")));
    }
    let (a, b, limit, slots) = (word(16), word(24), word(32), word(40));
    let acm = Acm::new(a, b).map_err(|e| LabError::Format(e.to_string()))?;
    let slots = usize::try_from(slots).map_err(|_| LabError::Format("slot count overflows".into()))?;
    let mut body = Vec::new();
    input.read_to_end(&mut body)?;
    if body.len() != slots.div_ceil(64) * 8 {
        return Err(LabError::Format(format!(
            "expected {} bitset bytes, found {}",
            slots.div_ceil(64) * 8,
            body.len()
        )));
    }
    let words = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    let bits = BitSet::from_words(words, slots).ok_or_else(|| LabError::Format("bitset length mismatch".into()))?;
    AtomSieve::from_parts(acm, limit, bits).map_err(|e| LabError::Format(e.to_string()))
}
