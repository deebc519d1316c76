//! Tables of zero ordinates `τₙ` (zeros `ρ = 1/2 + iτₙ`): ingestion, the
//! binary cache, validation against the Riemann–von Mangoldt counting
//! function, and download of published tables.
//!
//! Ordinates are assumed real, i.e. every zero in the table lies on the
//! critical line. This holds for every published table; the crate does not
//! model off-line zeros.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinate of the first nontrivial zero.
pub const FIRST_ORDINATE: f64 = 14.134_725_141_734_693;

pub const CACHE_MAGIC: &[u8; 4] = b"ZRT1";

/// Digits recorded for tables read back from the binary cache.
const CACHE_DIGITS: u32 = 17;

/// An immutable table of zero ordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    source: String,
    decimal_digits: u32,
    min: f64,
    max: f64,
}

impl ZeroTable {
    /// Wrap raw ordinates. Only finiteness and positivity are enforced here;
    /// ordering and the first-zero window are what [`validate`] reports on.
    pub fn new(
        ordinates: Vec<f64>,
        source: impl Into<String>,
        decimal_digits: u32,
    ) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::EmptyTable);
        }
        if let Some(i) = ordinates.iter().position(|t| !t.is_finite() || *t <= 0.0) {
            return Err(Error::domain(format!(
                "ordinate #{} = {} is not a positive finite number",
                i + 1,
                ordinates[i]
            )));
        }
        let min = ordinates.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ordinates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            ordinates,
            source: source.into(),
            decimal_digits: decimal_digits.max(1),
            min,
            max,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    /// Smallest ordinate (τ₁ for a genuine table).
    pub fn min_ordinate(&self) -> f64 {
        self.min
    }

    /// Largest ordinate, the truncation height of every sum over the table.
    pub fn max_ordinate(&self) -> f64 {
        self.max
    }

    /// First `n` ordinates as a new table.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        let n = n.min(self.len());
        Self::new(
            self.ordinates[..n].to_vec(),
            self.source.clone(),
            self.decimal_digits,
        )
    }

    /// Ordinates from index `start` on.
    pub fn suffix(&self, start: usize) -> Result<Self> {
        let start = start.min(self.len());
        Self::new(
            self.ordinates[start..].to_vec(),
            self.source.clone(),
            self.decimal_digits,
        )
    }

    /// Number of ordinates `≤ t`.
    pub fn count_below(&self, t: f64) -> usize {
        if self.ordinates.windows(2).all(|w| w[0] < w[1]) {
            self.ordinates.partition_point(|&x| x <= t)
        } else {
            self.ordinates.iter().filter(|&&x| x <= t).count()
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub monotone_ok: bool,
    pub first_zero_ok: bool,
    pub max_counting_deviation: f64,
    pub duplicate_count: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.monotone_ok
            && self.first_zero_ok
            && self.duplicate_count == 0
            && self.max_counting_deviation <= 2.0
    }
}

/// Load a table from `path`, either plain text (one ordinate per line, `#`
/// comments, LF or CRLF) or the `ZRT1` binary cache. `limit` keeps the
/// first `limit` ordinates in file order; the result is sorted.
pub fn load_zero_table(path: impl AsRef<Path>, limit: Option<usize>) -> Result<ZeroTable> {
    let path = path.as_ref();
    if limit == Some(0) {
        return Err(Error::domain("limit must be a positive integer"));
    }
    let bytes = fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let source = path.display().to_string();
    if bytes.starts_with(CACHE_MAGIC) {
        let ordinates = decode_cache(&bytes, limit)?;
        return finish(ordinates, source, CACHE_DIGITS);
    }
    let text = String::from_utf8_lossy(&bytes);
    let (ordinates, digits) = parse_text(&text, limit)?;
    finish(ordinates, source, digits)
}

/// Parse plain-text ordinates; returns the values and the largest number of
/// fractional digits seen.
pub fn parse_text(text: &str, limit: Option<usize>) -> Result<(Vec<f64>, u32)> {
    let cap = limit.unwrap_or(usize::MAX);
    let mut ordinates = Vec::new();
    let mut digits = 0u32;
    for (i, raw) in text.split('\n').enumerate() {
        if ordinates.len() >= cap {
            break;
        }
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = match line.parse() {
            Ok(v) if f64::is_finite(v) && v > 0.0 => v,
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    content: line.to_string(),
                })
            }
        };
        if let Some(dot) = line.find('.') {
            let frac = line[dot + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .count();
            digits = digits.max(frac as u32);
        }
        ordinates.push(value);
    }
    Ok((ordinates, digits))
}

fn finish(mut ordinates: Vec<f64>, source: String, digits: u32) -> Result<ZeroTable> {
    if ordinates.is_empty() {
        return Err(Error::EmptyTable);
    }
    ordinates.sort_by(f64::total_cmp);
    let resolution = 10f64.powi(-(digits.max(1) as i32));
    if let Some(i) = ordinates.windows(2).position(|w| w[1] - w[0] < resolution) {
        return Err(Error::DuplicateOrdinate {
            index: i + 1,
            value: ordinates[i + 1],
        });
    }
    ZeroTable::new(ordinates, source, digits)
}

/// Serialize to the cache layout: `"ZRT1"`, little-endian `u64` count, then
/// the ordinates as little-endian IEEE-754 binary64.
pub fn encode_cache(table: &ZeroTable) -> Vec<u8> {
    let mut out = Vec::with_capacity(12 + 8 * table.len());
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&(table.len() as u64).to_le_bytes());
    for t in table.ordinates() {
        out.extend_from_slice(&t.to_le_bytes());
    }
    out
}

pub fn decode_cache(bytes: &[u8], limit: Option<usize>) -> Result<Vec<f64>> {
    if bytes.len() < 12 || &bytes[..4] != CACHE_MAGIC {
        return Err(Error::Cache("missing ZRT1 header".into()));
    }
    let count = u64::from_le_bytes(bytes[4..12].try_into().expect("8-byte slice")) as usize;
    let body = &bytes[12..];
    if body.len()
        != count
            .checked_mul(8)
            .ok_or_else(|| Error::Cache("count overflows".into()))?
    {
        return Err(Error::Cache(format!(
            "header announces {count} ordinates but body holds {} bytes",
            body.len()
        )));
    }
    let take = limit.unwrap_or(count).min(count);
    Ok(body
        .chunks_exact(8)
        .take(take)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect())
}

pub fn write_cache(table: &ZeroTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_cache(table)).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// `(T/2π)·log(T/2π) − T/2π + 7/8` without a domain check.
pub(crate) fn counting_main_term(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x + 0.875
}

/// Smooth Riemann–von Mangoldt estimate of the number of zeros with
/// ordinate `≤ t`. Defined for `t > 2πe`, where it is positive and
/// increasing.
pub fn counting_estimate(t: f64) -> Result<f64> {
    let floor = 2.0 * std::f64::consts::PI * std::f64::consts::E;
    if !(t > floor) || !t.is_finite() {
        return Err(Error::domain(format!(
            "counting_estimate needs T > 2πe ≈ {floor:.6}, got {t}"
        )));
    }
    Ok(counting_main_term(t))
}

/// Check ordering, the first-zero window, duplicates, and agreement with
/// the counting function at each decile of the table.
pub fn validate(table: &ZeroTable) -> ValidationReport {
    let ords = table.ordinates();
    let monotone_ok = ords.windows(2).all(|w| w[0] < w[1]);
    let first_zero_ok = ords[0] > 14.13 && ords[0] < 14.14;

    let mut sorted = ords.to_vec();
    sorted.sort_by(f64::total_cmp);
    let resolution = 10f64.powi(-(table.decimal_digits() as i32));
    let duplicate_count = sorted
        .windows(2)
        .filter(|w| w[1] - w[0] < resolution)
        .count();

    let n = sorted.len();
    let mut max_dev = 0.0f64;
    if n >= 2 {
        let mut last = 0;
        for k in 1..=10 {
            // j ordinates lie at or below the midpoint between τ_j and τ_{j+1}
            let j = ((k * n) as f64 / 10.0).round() as usize;
            let j = j.clamp(1, n - 1);
            if j == last {
                continue;
            }
            last = j;
            let mid = 0.5 * (sorted[j - 1] + sorted[j]);
            if let Ok(est) = counting_estimate(mid) {
                max_dev = max_dev.max((j as f64 - est).abs());
            }
        }
    }
    ValidationReport {
        monotone_ok,
        first_zero_ok,
        max_counting_deviation: max_dev,
        duplicate_count,
    }
}

/// Download `url` to `destination` without parsing. Returns bytes written.
pub fn fetch_zeros(url: &str, destination: impl AsRef<Path>) -> Result<u64> {
    let destination = destination.as_ref();
    let parent = destination
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    if !parent.is_dir() {
        return Err(Error::Write {
            path: destination.to_path_buf(),
            source: std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "destination directory does not exist",
            ),
        });
    }
    let response = ureq::get(url).call().map_err(|e| match e {
        ureq::Error::Status(code, _) => Error::HttpStatus(code),
        ureq::Error::Transport(t) => Error::Network(t.to_string()),
    })?;
    let mut body = Vec::new();
    response
        .into_reader()
        .read_to_end(&mut body)
        .map_err(|e| Error::Network(e.to_string()))?;
    fs::write(destination, &body).map_err(|source| Error::Write {
        path: destination.to_path_buf(),
        source,
    })?;
    Ok(body.len() as u64)
}
