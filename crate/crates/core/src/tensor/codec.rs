//! Versioned binary layout for canonical tensors.
//!
//! ```text
//! magic    4 bytes  "SUNT"
//! version  u16 LE   FORMAT_VERSION
//! kind     u8       1 = symmetric, 2 = antisymmetric
//! n        u16 LE   su(n) parameter (0 when not tied to an algebra)
//! m        u16 LE   rank
//! dim      u16 LE   index range
//! count    u64 LE   number of entries
//! entries  count x (m x u16 LE index, f64 LE value), strictly increasing tuples
//! ```
//!
//! Values are written as raw IEEE-754 bits, so decode(encode(t)) is bit-exact.

use crate::error::{Error, Result};

use super::tuple::{self, Key};
use super::{AltTensor, SymTensor};

pub const MAGIC: &[u8; 4] = b"SUNT";
pub const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: usize = 4 + 2 + 1 + 2 + 2 + 2 + 8;

#[derive(Clone, Debug, PartialEq)]
pub enum CanonicalTensor {
    Sym(SymTensor),
    Alt(AltTensor),
}

impl CanonicalTensor {
    fn kind_byte(&self) -> u8 {
        match self {
            CanonicalTensor::Sym(_) => 1,
            CanonicalTensor::Alt(_) => 2,
        }
    }

    fn parts(&self) -> (usize, usize, &[Key], &[f64]) {
        match self {
            CanonicalTensor::Sym(t) => {
                let (k, v) = t.raw_parts();
                (t.rank(), t.dim(), k, v)
            }
            CanonicalTensor::Alt(t) => {
                let (k, v) = t.raw_parts();
                (t.rank(), t.dim(), k, v)
            }
        }
    }
}

pub fn encode(n: u16, t: &CanonicalTensor) -> Vec<u8> {
    let (rank, dim, keys, vals) = t.parts();
    let mut out = Vec::with_capacity(HEADER_LEN + keys.len() * (2 * rank + 8));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(t.kind_byte());
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&(rank as u16).to_le_bytes());
    out.extend_from_slice(&(dim as u16).to_le_bytes());
    out.extend_from_slice(&(keys.len() as u64).to_le_bytes());
    let mut idx = vec![0usize; rank];
    for (&k, &v) in keys.iter().zip(vals) {
        tuple::unpack_into(k, &mut idx);
        for &i in &idx {
            out.extend_from_slice(&(i as u16).to_le_bytes());
        }
        out.extend_from_slice(&v.to_bits().to_le_bytes());
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.pos + k > self.buf.len() {
            return Err(Error::Decode(format!("truncated at byte {}", self.pos)));
        }
        let s = &self.buf[self.pos..self.pos + k];
        self.pos += k;
        Ok(s)
    }
    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Decodes and validates; returns the stored `n` alongside the tensor.
pub fn decode(bytes: &[u8]) -> Result<(u16, CanonicalTensor)> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Decode("bad magic".into()));
    }
    let version = r.u16()?;
    if version != FORMAT_VERSION {
        return Err(Error::Decode(format!("unsupported version {version}")));
    }
    let kind = r.take(1)?[0];
    let n = r.u16()?;
    let rank = r.u16()? as usize;
    let dim = r.u16()? as usize;
    let count = r.u64()? as usize;
    if rank > tuple::MAX_RANK || dim > tuple::MAX_DIM {
        return Err(Error::Decode(format!("rank {rank} / dim {dim} out of range")));
    }
    let expected = HEADER_LEN + count.saturating_mul(2 * rank + 8);
    if bytes.len() != expected {
        return Err(Error::Decode(format!("length {} != expected {expected}", bytes.len())));
    }
    let mut pairs = Vec::with_capacity(count);
    let mut idx = vec![0usize; rank];
    let mut prev: Option<Key> = None;
    for _ in 0..count {
        for i in idx.iter_mut() {
            *i = r.u16()? as usize;
            if *i >= dim {
                return Err(Error::Decode(format!("index {i} >= dim {dim}")));
            }
        }
        let canonical = match kind {
            1 => idx.windows(2).all(|w| w[0] <= w[1]),
            2 => idx.windows(2).all(|w| w[0] < w[1]),
            _ => return Err(Error::Decode(format!("unknown kind {kind}"))),
        };
        if !canonical {
            return Err(Error::Decode(format!("non-canonical tuple {idx:?}")));
        }
        let key = tuple::pack(&idx);
        if prev.is_some_and(|p| p >= key) {
            return Err(Error::Decode("entries not strictly sorted".into()));
        }
        prev = Some(key);
        let v = f64::from_bits(r.u64()?);
        if !v.is_finite() {
            return Err(Error::Decode("non-finite value".into()));
        }
        pairs.push((key, v));
    }
    let t = match kind {
        1 => CanonicalTensor::Sym(SymTensor::from_key_pairs(rank, dim, pairs)),
        _ => CanonicalTensor::Alt(AltTensor::from_key_pairs(rank, dim, pairs)),
    };
    // from_key_pairs prunes; a well-formed file never contains prunable entries
    let stored = match &t {
        CanonicalTensor::Sym(s) => s.len(),
        CanonicalTensor::Alt(a) => a.len(),
    };
    if stored != count {
        return Err(Error::Decode("file contains zero or prunable entries".into()));
    }
    Ok((n, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let s = SymTensor::from_entries(3, 5, vec![(vec![0, 1, 4], 0.1 + 0.2), (vec![2, 2, 3], -1.0 / 3.0)]);
        let t = CanonicalTensor::Sym(s);
        let bytes = encode(4, &t);
        let (n, back) = decode(&bytes).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, t);
        assert_eq!(encode(4, &back), bytes);
    }

    #[test]
    fn corrupt_inputs_rejected() {
        let a = AltTensor::from_entries(2, 3, vec![(vec![0, 1], 1.0)]);
        let bytes = encode(2, &CanonicalTensor::Alt(a));
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(decode(&bad).is_err());
        let mut bad = bytes.clone();
        bad[4] = 9;
        assert!(decode(&bad).is_err());
        // swap the two indices so the tuple is no longer increasing
        let mut bad = bytes.clone();
        let off = HEADER_LEN;
        bad.swap(off, off + 2);
        assert!(decode(&bad).is_err());
    }
}
