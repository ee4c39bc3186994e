//! Count-file and bits-file input/output.
//!
//! Two count formats are supported:
//!
//! * **plain CSV** — `#`-prefixed `key=value` header lines carrying
//!   `preset_time_s`, `source`, `distance_cm`, and `voltage`, followed by
//!   one non-negative integer count per line. This is also the format
//!   written back out, so ingest/persist round-trips are exact.
//! * **ST-360 export** — the counter software's text dump: `Name: value`
//!   (or `Name, value`) header lines such as `Preset Time: 1`,
//!   `High Voltage: 900`, `Source: Sr-90`, `Shelf Distance (cm): 2`,
//!   then a `Run,Count` table with one `index,count` row per run
//!   (comma- or tab-separated).
//!
//! Bits files are plain ASCII `0`/`1`, newline-agnostic.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use decaylab_core::{BitSequence, CountSeries};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountFormat {
    PlainCsv,
    St360Export,
}

pub fn ingest_counts(path: &Path, format: CountFormat) -> Result<CountSeries> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    match format {
        CountFormat::PlainCsv => parse_plain_csv(path, &text),
        CountFormat::St360Export => parse_st360(path, &text),
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

fn parse_count(path: &Path, line_no: usize, token: &str) -> Result<u64> {
    if token.starts_with('-') {
        return Err(parse_err(
            path,
            line_no,
            format!("negative count '{token}'"),
        ));
    }
    token
        .parse::<u64>()
        .map_err(|_| parse_err(path, line_no, format!("count '{token}' is not an integer")))
}

fn build_series(
    path: &Path,
    counts: Vec<u64>,
    preset: Option<f64>,
    source: Option<String>,
    distance: Option<f64>,
    voltage: Option<f64>,
) -> Result<CountSeries> {
    let missing = |key: &str| HarnessError::MissingHeader {
        path: path.display().to_string(),
        key: key.to_string(),
    };
    if counts.is_empty() {
        return Err(HarnessError::Core(decaylab_core::Error::NoCounts));
    }
    Ok(CountSeries::new(
        counts,
        preset.ok_or_else(|| missing("preset_time_s"))?,
        source.ok_or_else(|| missing("source"))?,
        distance.ok_or_else(|| missing("distance_cm"))?,
        voltage.ok_or_else(|| missing("voltage"))?,
    )?)
}

fn parse_plain_csv(path: &Path, text: &str) -> Result<CountSeries> {
    let mut preset = None;
    let mut source = None;
    let mut distance = None;
    let mut voltage = None;
    let mut counts = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let header = header.trim();
            if header.is_empty() {
                continue;
            }
            let (key, value) = header
                .split_once('=')
                .ok_or_else(|| parse_err(path, line_no, format!("header '{header}' is not key=value")))?;
            let value = value.trim();
            match key.trim() {
                "preset_time_s" => {
                    preset = Some(value.parse::<f64>().map_err(|_| {
                        parse_err(path, line_no, format!("preset_time_s '{value}' is not a number"))
                    })?)
                }
                "source" => source = Some(value.to_string()),
                "distance_cm" => {
                    distance = Some(value.parse::<f64>().map_err(|_| {
                        parse_err(path, line_no, format!("distance_cm '{value}' is not a number"))
                    })?)
                }
                "voltage" => {
                    voltage = Some(value.parse::<f64>().map_err(|_| {
                        parse_err(path, line_no, format!("voltage '{value}' is not a number"))
                    })?)
                }
                other => {
                    return Err(parse_err(path, line_no, format!("unknown header key '{other}'")))
                }
            }
            continue;
        }
        counts.push(parse_count(path, line_no, line)?);
    }
    build_series(path, counts, preset, source, distance, voltage)
}

fn parse_st360(path: &Path, text: &str) -> Result<CountSeries> {
    let mut preset = None;
    let mut source = None;
    let mut distance = None;
    let mut voltage = None;
    let mut counts = Vec::new();
    let mut in_data = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "ST-360 Data Export" {
            continue;
        }
        let columns: Vec<&str> = line
            .split(|c| c == ',' || c == '\t')
            .map(str::trim)
            .collect();
        if !in_data {
            if columns.len() == 2 && columns[0].eq_ignore_ascii_case("run") {
                in_data = true;
                continue;
            }
            // header lines: either "Name: value" or "Name, value"
            let (key, value) = if let Some((k, v)) = line.split_once(':') {
                (k.trim(), v.trim())
            } else if columns.len() == 2 {
                (columns[0], columns[1])
            } else {
                return Err(parse_err(path, line_no, format!("unrecognized header '{line}'")));
            };
            let numeric = || {
                value.parse::<f64>().map_err(|_| {
                    parse_err(path, line_no, format!("'{value}' is not a number for '{key}'"))
                })
            };
            match key.to_ascii_lowercase().as_str() {
                "preset time" => preset = Some(numeric()?),
                "high voltage" => voltage = Some(numeric()?),
                "source" => source = Some(value.to_string()),
                "shelf distance (cm)" | "distance (cm)" => distance = Some(numeric()?),
                "runs" => {} // informational; the data section decides
                other => {
                    return Err(parse_err(path, line_no, format!("unknown header '{other}'")))
                }
            }
            continue;
        }
        if columns.len() != 2 {
            return Err(parse_err(path, line_no, format!("expected 'run,count', got '{line}'")));
        }
        counts.push(parse_count(path, line_no, columns[1])?);
    }
    build_series(path, counts, preset, source, distance, voltage)
}

/// Writes the plain CSV format; `ingest_counts(_, PlainCsv)` reads it back
/// to an identical [`CountSeries`].
pub fn write_counts_csv(series: &CountSeries, path: &Path) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "# preset_time_s={}", series.preset_time_s());
    let _ = writeln!(out, "# source={}", series.source_label());
    let _ = writeln!(out, "# distance_cm={}", series.distance_cm());
    let _ = writeln!(out, "# voltage={}", series.applied_voltage_v());
    for count in series.counts() {
        let _ = writeln!(out, "{count}");
    }
    fs::write(path, out).map_err(|e| HarnessError::io(path, e))
}

pub fn read_bits(path: &Path) -> Result<BitSequence> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(BitSequence::from_ascii(&text)?)
}

pub fn write_bits(bits: &BitSequence, path: &Path) -> Result<()> {
    // 80-column lines; readers ignore the newlines
    let ascii = bits.to_ascii();
    let mut out = String::with_capacity(ascii.len() + ascii.len() / 80 + 1);
    for chunk in ascii.as_bytes().chunks(80) {
        out.push_str(std::str::from_utf8(chunk).expect("ascii"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| HarnessError::io(path, e))
}
