use std::io::{self, Write};

use crate::error::{Error, Result};

/// Inclusive byte-value range `from..=to`; one bin per value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct CharRange {
    from: u8,
    to: u8,
}

impl CharRange {
    /// Printable ASCII, 32..=127.
    pub const PRINTABLE: CharRange = CharRange { from: 32, to: 127 };

    pub fn new(from: u8, to: u8) -> Result<Self> {
        if from > to {
            return Err(Error::parameter(
                "range",
                format!("from ({from}) is greater than to ({to})"),
            ));
        }
        Ok(CharRange { from, to })
    }

    pub fn from(self) -> u8 {
        self.from
    }

    pub fn to(self) -> u8 {
        self.to
    }

    pub fn bin_count(self) -> usize {
        usize::from(self.to - self.from) + 1
    }

    /// Bin index of `byte`, if it falls in the range.
    #[inline(always)]
    pub fn bin(self, byte: u8) -> Option<usize> {
        let i = usize::from(byte.wrapping_sub(self.from));
        (i < self.bin_count()).then_some(i)
    }

    pub fn contains(self, byte: u8) -> bool {
        (self.from..=self.to).contains(&byte)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Histogram {
    range: CharRange,
    bins: Vec<u64>,
}

impl Histogram {
    pub fn empty(range: CharRange) -> Self {
        Histogram {
            range,
            bins: vec![0; range.bin_count()],
        }
    }

    pub fn from_bins(range: CharRange, bins: Vec<u64>) -> Result<Self> {
        if bins.len() != range.bin_count() {
            return Err(Error::parameter(
                "bins",
                format!(
                    "expected {} bins for range {}..={}, got {}",
                    range.bin_count(),
                    range.from,
                    range.to,
                    bins.len()
                ),
            ));
        }
        Ok(Histogram { range, bins })
    }

    pub fn range(&self) -> CharRange {
        self.range
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    /// Count for a byte value; zero outside the range.
    pub fn count(&self, byte: u8) -> u64 {
        self.range.bin(byte).map_or(0, |i| self.bins[i])
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    /// First bin (as a byte value) where the two histograms disagree.
    pub fn first_difference(&self, other: &Histogram) -> Option<u8> {
        if self.range != other.range {
            return Some(self.range.from.min(other.range.from));
        }
        self.bins
            .iter()
            .zip(&other.bins)
            .position(|(a, b)| a != b)
            .map(|i| self.range.from + i as u8)
    }

    /// One `<byte value>\t<count>` line per bin, ascending.
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (i, count) in self.bins.iter().enumerate() {
            writeln!(out, "{}\t{count}", usize::from(self.range.from) + i)?;
        }
        Ok(())
    }
}
