use serde::{Deserialize, Serialize};

use super::gen::{gen_grid, gen_points_with};
use super::rng::SeededRng;
use super::text::{gen_lorem, repeat_to, to_hexdump};
use crate::error::{Error, Result};
use crate::gol::{pack_rows, ByteGrid};
use crate::histogram::CharRange;
use crate::knn::{PointCloud, TopK};

/// Where histogram text comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum TextSource {
    Lorem,
    /// Hex dump of Lorem text, cut to the requested length.
    Hexdump,
    /// One byte value repeated.
    Repeated {
        byte: u8,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextSpec {
    pub seed: u64,
    pub bytes: usize,
    pub source: TextSource,
    /// Generate this many bytes and repeat them up to `bytes`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeat_unit: Option<usize>,
    pub range: CharRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub seed: u64,
    pub width: usize,
    pub height: usize,
    pub density: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnSpec {
    pub seed: u64,
    /// Data points.
    pub n: usize,
    /// Query points.
    pub m: usize,
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Everything needed to regenerate one benchmark input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "task")]
pub enum WorkloadSpec {
    Histogram(TextSpec),
    Gol(GridSpec),
    Knn(KnnSpec),
}

/// A generated input, resident in memory.
#[derive(Debug, Clone)]
pub enum Workload {
    Text {
        text: Vec<u8>,
        range: CharRange,
    },
    Grid {
        grid: ByteGrid,
        iterations: usize,
    },
    Points {
        data: PointCloud,
        queries: PointCloud,
        k: TopK,
    },
}

pub fn gen_text(seed: u64, bytes: usize, source: TextSource) -> Vec<u8> {
    match source {
        TextSource::Lorem => gen_lorem(seed, bytes),
        TextSource::Hexdump => {
            let mut dump = to_hexdump(&gen_lorem(seed, bytes / 3 + 1));
            dump.truncate(bytes);
            dump
        }
        TextSource::Repeated { byte } => vec![byte; bytes],
    }
}

impl WorkloadSpec {
    pub fn task_name(&self) -> &'static str {
        match self {
            WorkloadSpec::Histogram(_) => "histogram",
            WorkloadSpec::Gol(_) => "gol",
            WorkloadSpec::Knn(_) => "knn",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            WorkloadSpec::Histogram(s) => s.seed,
            WorkloadSpec::Gol(s) => s.seed,
            WorkloadSpec::Knn(s) => s.seed,
        }
    }

    /// Checks every downstream engine precondition without generating.
    pub fn validate(&self) -> Result<()> {
        match self {
            WorkloadSpec::Histogram(s) => {
                if s.repeat_unit == Some(0) && s.bytes > 0 {
                    return Err(Error::parameter("repeat_unit", "must be at least 1"));
                }
            }
            WorkloadSpec::Gol(s) => {
                if s.width == 0 || s.width % 64 != 0 {
                    return Err(Error::parameter(
                        "width",
                        format!("{} is not a positive multiple of 64", s.width),
                    ));
                }
                if s.height == 0 {
                    return Err(Error::parameter("height", "must be at least 1"));
                }
                if !(0.0..=1.0).contains(&s.density) {
                    return Err(Error::parameter(
                        "density",
                        format!("{} is not in [0, 1]", s.density),
                    ));
                }
            }
            WorkloadSpec::Knn(s) => {
                TopK::new(s.k)?;
                if s.n < s.k {
                    return Err(Error::InsufficientData {
                        needed: s.k,
                        available: s.n,
                    });
                }
                if s.m == 0 {
                    return Err(Error::parameter("m", "must be at least 1"));
                }
                if !(s.lo.is_finite() && s.hi.is_finite() && s.lo < s.hi) {
                    return Err(Error::parameter(
                        "bounds",
                        format!("need finite lo < hi, got [{}, {})", s.lo, s.hi),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Workload> {
        self.validate()?;
        Ok(match self {
            WorkloadSpec::Histogram(s) => {
                let text = match s.repeat_unit {
                    Some(unit) if unit < s.bytes => {
                        repeat_to(&gen_text(s.seed, unit, s.source), s.bytes)
                    }
                    _ => gen_text(s.seed, s.bytes, s.source),
                };
                Workload::Text {
                    text,
                    range: s.range,
                }
            }
            WorkloadSpec::Gol(s) => Workload::Grid {
                grid: gen_grid(s.seed, s.width, s.height, s.density)?,
                iterations: s.iterations,
            },
            WorkloadSpec::Knn(s) => {
                // Data first, then queries, from one stream.
                let mut rng = SeededRng::new(s.seed);
                let data = gen_points_with(&mut rng, s.n, s.lo, s.hi)?;
                let queries = gen_points_with(&mut rng, s.m, s.lo, s.hi)?;
                Workload::Points {
                    data,
                    queries,
                    k: TopK::new(s.k)?,
                }
            }
        })
    }
}

impl Workload {
    /// Serialized input files: one for text and grids, data then queries for
    /// points.
    pub fn encode(&self) -> Result<Vec<Vec<u8>>> {
        Ok(match self {
            Workload::Text { text, .. } => vec![text.clone()],
            Workload::Grid { grid, .. } => vec![super::io::encode_row_grid(&pack_rows(grid)?)?],
            Workload::Points { data, queries, .. } => {
                vec![
                    super::io::encode_points(data),
                    super::io::encode_points(queries),
                ]
            }
        })
    }
}
