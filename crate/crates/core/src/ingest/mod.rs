//! Parsers and writers for the four timestamped input streams.
//!
//! | stream        | encoding                       | fields |
//! |---------------|--------------------------------|--------|
//! | telemetry     | one JSON object per line       | `t_utc, lat_deg, lon_deg, agl_m, yaw_deg, gimbal_tilt_deg, mode` |
//! | mm-wave RSS   | CSV with header                | `t_utc,freq_ghz,rss_dbm` |
//! | UWB PDP       | one JSON object per line       | `t_utc, bin_ns, taps_db` |
//! | ground log    | CSV with header                | `t_utc,az_deg,el_deg` |
//!
//! Timestamps are ISO 8601 UTC strings. Native instrument exports (spectrum
//! analyser sweeps, P410 scan files, autopilot tlogs) are expected to be
//! converted into these layouts before ingestion; the parsers do not read
//! vendor formats.
//!
//! Every parser returns either the records in non-decreasing time order or
//! a [`ParseError`] carrying the 1-based line number.

mod ground;
mod pdp;
mod rss;
mod telemetry;

use std::fmt;

use crate::time::Timestamp;

pub use ground::{parse_ground_log, serialize_ground_log, GroundPositionerRecord};
pub use pdp::{parse_pdp, serialize_pdp, PdpOptions, PowerDelayProfile};
pub use rss::{parse_rss, serialize_rss, RssSample};
pub use telemetry::{parse_telemetry, serialize_telemetry, FlightMode, TelemetryRecord};

/// Backward timestamp steps up to this size are tolerated (and the records
/// re-sorted); larger ones are errors.
pub const ORDER_JITTER_MS: i64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub field: Option<&'static str>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, field: None, message: message.into() }
    }

    pub(crate) fn field(line: usize, field: &'static str, message: impl Into<String>) -> Self {
        ParseError { line, field: Some(field), message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        if let Some(field) = self.field {
            write!(f, "{field}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parsed records plus non-fatal remarks (normalised values, format drift).
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub records: Vec<T>,
    pub warnings: Vec<String>,
}

impl<T> Default for Parsed<T> {
    fn default() -> Self {
        Parsed { records: Vec::new(), warnings: Vec::new() }
    }
}

/// Tracks time ordering across a file.
#[derive(Default)]
pub(crate) struct OrderCheck {
    latest: Option<Timestamp>,
    needs_sort: bool,
}

impl OrderCheck {
    pub(crate) fn observe(&mut self, line: usize, t: Timestamp) -> Result<(), ParseError> {
        if let Some(prev) = self.latest {
            if t < prev {
                if prev.as_millis() - t.as_millis() > ORDER_JITTER_MS {
                    return Err(ParseError::field(line, "t_utc", format!("timestamp {t} goes back in time (previous {prev})")));
                }
                self.needs_sort = true;
                return Ok(());
            }
        }
        self.latest = Some(t);
        Ok(())
    }

    pub(crate) fn finish<T>(self, records: &mut [T], key: impl Fn(&T) -> Timestamp) {
        if self.needs_sort {
            records.sort_by_key(key);
        }
    }
}

pub(crate) fn parse_time(line: usize, s: &str) -> Result<Timestamp, ParseError> {
    Timestamp::parse_iso(s).map_err(|e| ParseError::field(line, "t_utc", e.to_string()))
}

pub(crate) fn parse_number(line: usize, field: &'static str, s: &str) -> Result<f64, ParseError> {
    let v: f64 = s.trim().parse().map_err(|_| ParseError::field(line, field, format!("malformed number `{s}`")))?;
    if !v.is_finite() {
        return Err(ParseError::field(line, field, format!("non-finite value `{s}`")));
    }
    Ok(v)
}

/// Iterate non-blank lines with 1-based numbers.
pub(crate) fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty())
}

/// Strip serde_json's trailing " at line X column Y".
pub(crate) fn json_message(e: &serde_json::Error) -> String {
    let s = e.to_string();
    s.split(" at line ").next().unwrap_or_default().to_string()
}

/// Split a CSV stream into its header and `(line, fields)` rows.
pub(crate) fn csv_rows<'a>(input: &'a str, header: &str) -> Result<Vec<(usize, Vec<&'a str>)>, ParseError> {
    let mut lines = content_lines(input);
    let Some((hline, h)) = lines.next() else { return Ok(Vec::new()) };
    let got: Vec<&str> = h.split(',').map(str::trim).collect();
    let want: Vec<&str> = header.split(',').collect();
    if got != want {
        return Err(ParseError::at(hline, format!("expected header `{header}`, found `{}`", h.trim())));
    }
    Ok(lines
        .map(|(n, l)| (n, l.split(',').map(str::trim).collect::<Vec<_>>()))
        .collect())
}

/// Wrap an azimuth that sits exactly on 360 back to 0. Anything else outside
/// [0, 360) is rejected.
pub(crate) fn check_azimuth(
    line: usize,
    field: &'static str,
    v: f64,
    warnings: &mut Vec<String>,
) -> Result<f64, ParseError> {
    if v == 360.0 {
        warnings.push(format!("line {line}: {field} 360 normalised to 0"));
        return Ok(0.0);
    }
    if !(0.0..360.0).contains(&v) {
        return Err(ParseError::field(line, field, format!("{v} outside [0, 360)")));
    }
    Ok(v)
}
