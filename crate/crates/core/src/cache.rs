//! On-disk transposition table.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! u8        format version
//! u16       artifact version length, then that many UTF-8 bytes
//! [u8; 32]  SHA-256 of everything after this field
//! u64       entry count
//! entries   u32 record length, then the record:
//!           u8 to_move (0 Maker, 1 Breaker), u16 value,
//!           u16 component count, u16 per component (kind << 14 | len)
//! ```
//!
//! Entries are written in key order, so saving the same table twice gives
//! identical bytes.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::CacheError;
use crate::solver::{decode_component, tag_player, Key, Solver};

pub const FORMAT_VERSION: u8 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub format_version: u8,
    pub artifact_version: String,
}

pub fn encode(entries: &[(Key, u16)]) -> Vec<u8> {
    let mut sorted: Vec<&(Key, u16)> = entries.iter().collect();
    sorted.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let mut body = Vec::with_capacity(8 + sorted.len() * 16);
    body.extend_from_slice(&(sorted.len() as u64).to_le_bytes());
    for (key, value) in sorted {
        let ncomp = key.len() - 1;
        let record_len = 1 + 2 + 2 + 2 * ncomp;
        body.extend_from_slice(&(record_len as u32).to_le_bytes());
        body.push(key[0] as u8);
        body.extend_from_slice(&value.to_le_bytes());
        body.extend_from_slice(&(ncomp as u16).to_le_bytes());
        for c in &key[1..] {
            body.extend_from_slice(&c.to_le_bytes());
        }
    }

    let mut out = Vec::with_capacity(body.len() + 64);
    out.push(FORMAT_VERSION);
    out.extend_from_slice(&(ARTIFACT_VERSION.len() as u16).to_le_bytes());
    out.extend_from_slice(ARTIFACT_VERSION.as_bytes());
    out.extend_from_slice(&Sha256::digest(&body));
    out.extend_from_slice(&body);
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
        let end = self.at.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| CacheError::Corrupt(format!("truncated at byte {}", self.at)))?;
        let s = &self.buf[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16, CacheError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, CacheError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CacheError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> Result<(CacheHeader, Vec<(Key, u16)>), CacheError> {
    match bytes.first() {
        Some(&FORMAT_VERSION) => {}
        found => return Err(CacheError::VersionMismatch { expected: FORMAT_VERSION, found: found.copied() }),
    }
    let mut r = Reader { buf: bytes, at: 1 };
    let vlen = r.u16()? as usize;
    let artifact_version = String::from_utf8(r.take(vlen)?.to_vec())
        .map_err(|_| CacheError::Corrupt("artifact version is not UTF-8".into()))?;
    let checksum = r.take(32)?;
    let body = &bytes[r.at..];
    if Sha256::digest(body).as_slice() != checksum {
        return Err(CacheError::Checksum);
    }

    let count = r.u64()?;
    let mut entries = Vec::with_capacity(count.min(1 << 24) as usize);
    for _ in 0..count {
        let len = r.u32()? as usize;
        let record = r.take(len)?;
        let mut rr = Reader { buf: record, at: 0 };
        let to_move = rr.take(1)?[0];
        let value = rr.u16()?;
        let ncomp = rr.u16()? as usize;
        if tag_player(u16::from(to_move)).is_none() {
            return Err(CacheError::Corrupt(format!("bad to_move tag {to_move}")));
        }
        let mut key = Vec::with_capacity(ncomp + 1);
        key.push(u16::from(to_move));
        for _ in 0..ncomp {
            let c = rr.u16()?;
            if decode_component(c).is_none() {
                return Err(CacheError::Corrupt(format!("bad component code {c:#06x}")));
            }
            key.push(c);
        }
        if rr.at != record.len() {
            return Err(CacheError::Corrupt("record length mismatch".into()));
        }
        if key[1..].windows(2).any(|w| w[0] > w[1]) || ncomp == 0 {
            return Err(CacheError::Corrupt("record is not a canonical position".into()));
        }
        entries.push((key.into_boxed_slice(), value));
    }
    if r.at != bytes.len() {
        return Err(CacheError::Corrupt("trailing bytes".into()));
    }
    Ok((CacheHeader { format_version: FORMAT_VERSION, artifact_version }, entries))
}

impl Solver {
    pub fn cache_bytes(&self) -> Vec<u8> {
        let entries: Vec<(Key, u16)> = self.memo.iter().map(|(k, v)| (k.clone(), *v)).collect();
        encode(&entries)
    }

    pub fn save_cache(&self, path: impl AsRef<Path>) -> Result<(), CacheError> {
        let path = path.as_ref();
        fs::write(path, self.cache_bytes()).map_err(|source| CacheError::Io { path: path.to_path_buf(), source })
    }

    /// Merges a saved table into this solver. Returns the number of entries
    /// read.
    pub fn load_cache(&mut self, path: impl AsRef<Path>) -> Result<usize, CacheError> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|source| CacheError::Io { path: path.to_path_buf(), source })?;
        self.load_cache_bytes(&bytes)
    }

    pub fn load_cache_bytes(&mut self, bytes: &[u8]) -> Result<usize, CacheError> {
        let (_, entries) = decode(bytes)?;
        let n = entries.len();
        for (k, v) in entries {
            self.insert_raw(k, v);
        }
        Ok(n)
    }
}

/// Writes `solver`'s table to `path`.
pub fn cache_save(solver: &Solver, path: impl AsRef<Path>) -> Result<(), CacheError> {
    solver.save_cache(path)
}

/// Reads a table from `path` into a fresh solver.
pub fn cache_load(path: impl AsRef<Path>) -> Result<Solver, CacheError> {
    let mut s = Solver::new();
    s.load_cache(path)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{Player, Position};

    fn warm() -> Solver {
        let mut s = Solver::new();
        s.solve_cycle(12).unwrap();
        s.solve(&Position::parse("G3,H2", Player::Maker).unwrap()).unwrap();
        s
    }

    #[test]
    fn round_trip_preserves_entries() {
        let s = warm();
        let bytes = s.cache_bytes();
        let mut t = Solver::new();
        assert_eq!(t.load_cache_bytes(&bytes).unwrap(), s.memo_len());
        assert_eq!(t.cache_bytes(), bytes);
    }

    #[test]
    fn empty_input_is_version_mismatch() {
        assert!(matches!(decode(&[]), Err(CacheError::VersionMismatch { found: None, .. })));
        assert!(matches!(decode(&[9, 0, 0]), Err(CacheError::VersionMismatch { found: Some(9), .. })));
    }

    #[test]
    fn flipped_byte_is_checksum_error() {
        let mut bytes = warm().cache_bytes();
        let last = bytes.len() - 1;
        bytes[last] ^= 0x01;
        assert!(matches!(decode(&bytes), Err(CacheError::Checksum)));
    }

    #[test]
    fn truncated_header_is_corrupt() {
        let bytes = warm().cache_bytes();
        assert!(matches!(decode(&bytes[..10]), Err(CacheError::Corrupt(_))));
    }
}
