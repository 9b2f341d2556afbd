//! Binary FSGIM container.
//!
//! All integers and floats are little-endian; floats are raw IEEE-754
//! binary64, so a round trip is bit-exact.
//!
//! ```text
//! header (100 bytes)
//!   magic        [u8; 8]  b"SGFSGIM\0"
//!   version      u32      1
//!   alpha        f64
//!   n            u64      grid degree (n + 1 nodes)
//!   lambda       f64
//!   n_q          u64      quadrature degree (n_q + 1 nodes)
//!   lambda_q     f64
//!   m            u64      number of evaluation points (matrix rows)
//!   payload_len  u64      bytes following the header
//!   sha256       [u8; 32] SHA-256 of the payload
//! payload
//!   grid nodes   f64 × (n + 1)
//!   quad nodes   f64 × (n_q + 1)
//!   quad weights f64 × (n_q + 1)
//!   points       f64 × m
//!   generator    f64 × m(n + 1), row-major
//!   scaled       f64 × m(n + 1), row-major
//!   fingerprint  u64      grid node fingerprint
//!   version_len  u32
//!   version      UTF-8 × version_len   library version that built it
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grids::{fingerprint, GridId, QuadSpec};
use crate::rlfi::{BuildMeta, FracOrder, Fsgim};

pub const MAGIC: [u8; 8] = *b"SGFSGIM\0";
pub const SCHEMA_VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 8 * 7 + 32;

fn push_f64s(buf: &mut Vec<u8>, xs: &[f64]) {
    for x in xs {
        buf.extend_from_slice(&x.to_le_bytes());
    }
}

/// Writes `q` to `sink`.
pub fn save_fsgim(q: &Fsgim, mut sink: impl Write) -> Result<()> {
    let mut payload = Vec::with_capacity(8 * (q.generator.len() * 2 + q.points.len() + 64));
    push_f64s(&mut payload, &q.grid_nodes);
    push_f64s(&mut payload, &q.quad_nodes);
    push_f64s(&mut payload, &q.quad_weights);
    push_f64s(&mut payload, &q.points);
    push_f64s(&mut payload, &q.generator);
    push_f64s(&mut payload, &q.scaled);
    payload.extend_from_slice(&q.grid.fingerprint.to_le_bytes());
    let version = q.meta.version.as_bytes();
    payload.extend_from_slice(&(version.len() as u32).to_le_bytes());
    payload.extend_from_slice(version);

    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(&MAGIC);
    header.extend_from_slice(&SCHEMA_VERSION.to_le_bytes());
    header.extend_from_slice(&q.alpha.value().to_le_bytes());
    header.extend_from_slice(&(q.grid.n as u64).to_le_bytes());
    header.extend_from_slice(&q.grid.lambda.to_le_bytes());
    header.extend_from_slice(&(q.quad.n_q as u64).to_le_bytes());
    header.extend_from_slice(&q.quad.lambda_q.to_le_bytes());
    header.extend_from_slice(&(q.points.len() as u64).to_le_bytes());
    header.extend_from_slice(&(payload.len() as u64).to_le_bytes());
    header.extend_from_slice(&Sha256::digest(&payload));
    debug_assert_eq!(header.len(), HEADER_LEN);

    sink.write_all(&header)?;
    sink.write_all(&payload)?;
    sink.flush()?;
    Ok(())
}

pub fn save_fsgim_file(q: &Fsgim, path: impl AsRef<Path>) -> Result<()> {
    save_fsgim(q, BufWriter::new(File::create(path)?))
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Malformed(format!("field at offset {} runs past the payload", self.pos)))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn f64s(&mut self, count: usize) -> Result<Vec<f64>> {
        let len = count.checked_mul(8).ok_or_else(|| Error::Malformed("vector length overflows".into()))?;
        Ok(self.take(len)?.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect())
    }
}

fn to_usize(v: u64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Malformed(format!("{what} = {v} does not fit in memory")))
}

/// Reads an FSGIM written by [`save_fsgim`]. Truncated or corrupted files
/// fail the checksum; files from another schema version are rejected
/// before the payload is inspected.
pub fn load_fsgim(mut source: impl Read) -> Result<Fsgim> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;

    let magic_len = bytes.len().min(MAGIC.len());
    if bytes[..magic_len] != MAGIC[..magic_len] {
        return Err(Error::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Checksum(format!("file truncated: {} bytes, header alone needs {HEADER_LEN}", bytes.len())));
    }
    let mut h = Cursor { buf: &bytes[..HEADER_LEN], pos: MAGIC.len() };
    let version = h.u32()?;
    if version != SCHEMA_VERSION {
        return Err(Error::SchemaVersion { found: version, supported: SCHEMA_VERSION });
    }
    let alpha = h.f64()?;
    let n = to_usize(h.u64()?, "n")?;
    let lambda = h.f64()?;
    let n_q = to_usize(h.u64()?, "n_q")?;
    let lambda_q = h.f64()?;
    let m = to_usize(h.u64()?, "m")?;
    let payload_len = to_usize(h.u64()?, "payload_len")?;
    let digest = h.take(32)?;

    let payload = &bytes[HEADER_LEN..];
    if payload.len() != payload_len {
        return Err(Error::Checksum(format!(
            "payload is {} bytes but the header records {payload_len}{}",
            payload.len(),
            if payload.len() < payload_len { " (file truncated)" } else { "" }
        )));
    }
    if Sha256::digest(payload)[..] != digest[..] {
        return Err(Error::Checksum("SHA-256 of the payload does not match the header".into()));
    }

    let alpha = FracOrder::new(alpha).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut p = Cursor { buf: payload, pos: 0 };
    let grid_nodes = p.f64s(n + 1)?;
    let quad_nodes = p.f64s(n_q + 1)?;
    let quad_weights = p.f64s(n_q + 1)?;
    let points = p.f64s(m)?;
    let cells = m.checked_mul(n + 1).ok_or_else(|| Error::Malformed("matrix size overflows".into()))?;
    let generator = p.f64s(cells)?;
    let scaled = p.f64s(cells)?;
    let fp = p.u64()?;
    let vlen = p.u32()? as usize;
    let version = std::str::from_utf8(p.take(vlen)?)
        .map_err(|e| Error::Malformed(format!("build version is not UTF-8: {e}")))?
        .to_string();
    if p.pos != payload.len() {
        return Err(Error::Malformed(format!("{} trailing payload bytes", payload.len() - p.pos)));
    }
    if fingerprint(n, lambda, &grid_nodes) != fp {
        return Err(Error::Malformed("stored grid fingerprint does not match the stored nodes".into()));
    }

    Ok(Fsgim {
        alpha,
        grid: GridId { n, lambda, fingerprint: fp },
        quad: QuadSpec::new(n_q, lambda_q),
        grid_nodes,
        quad_nodes,
        quad_weights,
        points,
        generator,
        scaled,
        meta: BuildMeta { version },
    })
}

pub fn load_fsgim_file(path: impl AsRef<Path>) -> Result<Fsgim> {
    load_fsgim(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{Grid, QuadRule};
    use crate::rlfi::build_fsgim;

    fn sample() -> Fsgim {
        let points: Vec<f64> = (0..=7).map(|i| i as f64 / 7.0).collect();
        build_fsgim(
            &Grid::new(6, 0.25).unwrap(),
            &QuadRule::new(9, -0.1).unwrap(),
            FracOrder::new(0.3).unwrap(),
            &points,
        )
        .unwrap()
    }

    fn bytes_of(q: &Fsgim) -> Vec<u8> {
        let mut buf = Vec::new();
        save_fsgim(q, &mut buf).unwrap();
        buf
    }

    fn same_bits(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let q = sample();
        let buf = bytes_of(&q);
        let r = load_fsgim(&buf[..]).unwrap();
        assert_eq!(r, q);
        assert!(same_bits(r.generator(), q.generator()));
        assert!(same_bits(r.scaled(), q.scaled()));
        assert!(same_bits(r.points(), q.points()));
        assert_eq!(r.alpha().value().to_bits(), q.alpha().value().to_bits());
        assert_eq!(r.meta(), q.meta());
        assert_eq!(bytes_of(&r), buf);
    }

    #[test]
    fn truncation_is_a_checksum_error() {
        let buf = bytes_of(&sample());
        for cut in [buf.len() - 1, buf.len() - 100, HEADER_LEN + 3, HEADER_LEN - 1, 20, 4] {
            match load_fsgim(&buf[..cut]) {
                Err(Error::Checksum(_)) => {}
                other => panic!("cut {cut}: expected checksum error, got {other:?}"),
            }
        }
    }

    #[test]
    fn corruption_is_a_checksum_error() {
        let mut buf = bytes_of(&sample());
        let i = HEADER_LEN + 40;
        buf[i] ^= 0x01;
        assert!(matches!(load_fsgim(&buf[..]), Err(Error::Checksum(_))));
    }

    #[test]
    fn schema_version_mismatch_is_descriptive() {
        let mut buf = bytes_of(&sample());
        buf[8..12].copy_from_slice(&7u32.to_le_bytes());
        let err = load_fsgim(&buf[..]).unwrap_err();
        assert!(matches!(err, Error::SchemaVersion { found: 7, supported: 1 }));
        assert!(err.to_string().contains("version 7"));
    }

    #[test]
    fn bad_magic() {
        let mut buf = bytes_of(&sample());
        buf[0] = b'X';
        assert!(matches!(load_fsgim(&buf[..]), Err(Error::BadMagic)));
    }

    #[test]
    fn file_round_trip() {
        let q = sample();
        let path = std::env::temp_dir().join(format!("sgfrac-io-{}.fsgim", std::process::id()));
        save_fsgim_file(&q, &path).unwrap();
        let r = load_fsgim_file(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(r, q);
    }
}
