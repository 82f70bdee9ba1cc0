//! On-disk formats.
//!
//! Grid (`GOLB`): magic, u32 LE width, u32 LE height, u32 reserved zero,
//! then the row-packed words as u64 LE, rows in order.
//!
//! Points (`PTS2`): magic, u32 LE count, u64 reserved zero, then `count`
//! pairs of f64 LE `(x, y)`.
//!
//! Text files are raw bytes with no header.

use std::fs;
use std::path::Path;

use crate::error::{Error, FormatError, Result};
use crate::gol::{pack_rows, unpack_rows, ByteGrid, RowPackedGrid};
use crate::knn::{Point, PointCloud};

pub const GRID_MAGIC: &[u8; 4] = b"GOLB";
pub const POINTS_MAGIC: &[u8; 4] = b"PTS2";
pub const HEADER_LEN: usize = 16;

fn u32_at(bytes: &[u8], offset: usize) -> u32 {
    u32::from_le_bytes(bytes[offset..offset + 4].try_into().expect("4 bytes"))
}

fn u64_at(bytes: &[u8], offset: usize) -> u64 {
    u64::from_le_bytes(bytes[offset..offset + 8].try_into().expect("8 bytes"))
}

fn check_header(bytes: &[u8], magic: &[u8; 4]) -> Result<(), FormatError> {
    let truncated = || FormatError::Truncated {
        offset: 0,
        needed: HEADER_LEN as u64,
        available: bytes.len() as u64,
    };
    if bytes.len() < magic.len() {
        return Err(truncated());
    }
    if &bytes[..4] != magic {
        return Err(FormatError::BadMagic {
            offset: 0,
            expected: String::from_utf8_lossy(magic).into_owned(),
            found: String::from_utf8_lossy(&bytes[..4]).into_owned(),
        });
    }
    if bytes.len() < HEADER_LEN {
        return Err(truncated());
    }
    Ok(())
}

/// Checks that exactly `payload` bytes follow the header.
fn check_payload(bytes: &[u8], payload: u64) -> Result<(), FormatError> {
    let available = (bytes.len() - HEADER_LEN) as u64;
    if available < payload {
        return Err(FormatError::Truncated {
            offset: HEADER_LEN as u64,
            needed: payload,
            available,
        });
    }
    if available > payload {
        return Err(FormatError::TrailingBytes {
            offset: HEADER_LEN as u64 + payload,
            extra: available - payload,
        });
    }
    Ok(())
}

pub fn encode_grid(grid: &ByteGrid) -> Result<Vec<u8>> {
    let packed = pack_rows(grid)?;
    encode_row_grid(&packed)
}

pub fn encode_row_grid(grid: &RowPackedGrid) -> Result<Vec<u8>> {
    let dim = |v: usize, name| {
        u32::try_from(v).map_err(|_| Error::parameter(name, format!("{v} does not fit in u32")))
    };
    let (width, height) = (dim(grid.width(), "width")?, dim(grid.height(), "height")?);
    let mut out = Vec::with_capacity(HEADER_LEN + grid.words().len() * 8);
    out.extend_from_slice(GRID_MAGIC);
    out.extend_from_slice(&width.to_le_bytes());
    out.extend_from_slice(&height.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    for word in grid.words() {
        out.extend_from_slice(&word.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_row_grid(bytes: &[u8]) -> Result<RowPackedGrid, FormatError> {
    check_header(bytes, GRID_MAGIC)?;
    let width = u32_at(bytes, 4);
    let height = u32_at(bytes, 8);
    if width == 0 || !width.is_multiple_of(64) {
        return Err(FormatError::Header {
            offset: 4,
            reason: format!("width {width} is not a positive multiple of 64"),
        });
    }
    if height == 0 {
        return Err(FormatError::Header {
            offset: 8,
            reason: "height is zero".into(),
        });
    }
    let reserved = u32_at(bytes, 12);
    if reserved != 0 {
        return Err(FormatError::Header {
            offset: 12,
            reason: format!("reserved field is {reserved}, expected 0"),
        });
    }
    let words = u64::from(width / 64) * u64::from(height);
    check_payload(bytes, words * 8)?;
    let words = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|w| u64::from_le_bytes(w.try_into().expect("8 bytes")))
        .collect();
    Ok(
        RowPackedGrid::from_words(width as usize, height as usize, words)
            .expect("header dimensions checked"),
    )
}

pub fn decode_grid(bytes: &[u8]) -> Result<ByteGrid, FormatError> {
    decode_row_grid(bytes).map(|g| unpack_rows(&g))
}

pub fn encode_points(cloud: &PointCloud) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + cloud.len() * 16);
    out.extend_from_slice(POINTS_MAGIC);
    out.extend_from_slice(&(cloud.len() as u32).to_le_bytes());
    out.extend_from_slice(&0u64.to_le_bytes());
    for p in cloud.points() {
        out.extend_from_slice(&p.x.to_le_bytes());
        out.extend_from_slice(&p.y.to_le_bytes());
    }
    out
}

pub fn decode_points(bytes: &[u8]) -> Result<PointCloud, FormatError> {
    check_header(bytes, POINTS_MAGIC)?;
    let count = u32_at(bytes, 4);
    if count == 0 {
        return Err(FormatError::Header {
            offset: 4,
            reason: "point count is zero".into(),
        });
    }
    let reserved = u64_at(bytes, 8);
    if reserved != 0 {
        return Err(FormatError::Header {
            offset: 8,
            reason: format!("reserved field is {reserved}, expected 0"),
        });
    }
    check_payload(bytes, u64::from(count) * 16)?;
    let mut points = Vec::with_capacity(count as usize);
    for (i, pair) in bytes[HEADER_LEN..].chunks_exact(16).enumerate() {
        let x = f64::from_le_bytes(pair[..8].try_into().expect("8 bytes"));
        let y = f64::from_le_bytes(pair[8..].try_into().expect("8 bytes"));
        if !x.is_finite() || !y.is_finite() {
            return Err(FormatError::Header {
                offset: (HEADER_LEN + i * 16) as u64,
                reason: format!("point {i} has a non-finite coordinate"),
            });
        }
        points.push(Point::new(x, y));
    }
    Ok(PointCloud::new(points).expect("count and coordinates checked"))
}

pub fn write_grid(path: impl AsRef<Path>, grid: &ByteGrid) -> Result<()> {
    fs::write(path, encode_grid(grid)?)?;
    Ok(())
}

pub fn read_grid(path: impl AsRef<Path>) -> Result<ByteGrid> {
    Ok(decode_grid(&fs::read(path)?)?)
}

pub fn write_points(path: impl AsRef<Path>, cloud: &PointCloud) -> Result<()> {
    fs::write(path, encode_points(cloud))?;
    Ok(())
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointCloud> {
    Ok(decode_points(&fs::read(path)?)?)
}

pub fn write_text(path: impl AsRef<Path>, text: &[u8]) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

pub fn read_text(path: impl AsRef<Path>) -> Result<Vec<u8>> {
    Ok(fs::read(path)?)
}
