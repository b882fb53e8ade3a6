//! UTC timestamps at millisecond resolution.
//!
//! Files carry ISO 8601 strings; everything internal works on integer
//! milliseconds since the Unix epoch so that ordering and differences are
//! exact.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Timestamp(i64);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid UTC timestamp `{0}`")]
pub struct TimestampError(pub String);

impl Timestamp {
    pub const fn from_millis(ms: i64) -> Self {
        Timestamp(ms)
    }

    pub const fn as_millis(self) -> i64 {
        self.0
    }

    /// Seconds elapsed from `earlier` to `self` (negative if `self` is earlier).
    pub fn seconds_since(self, earlier: Timestamp) -> f64 {
        (self.0 - earlier.0) as f64 / 1000.0
    }

    /// Shift by a (possibly fractional) number of seconds, rounded to the
    /// nearest millisecond.
    pub fn offset_secs(self, secs: f64) -> Self {
        Timestamp(self.0 + (secs * 1000.0).round() as i64)
    }

    pub fn offset_millis(self, ms: i64) -> Self {
        Timestamp(self.0 + ms)
    }

    pub fn parse_iso(s: &str) -> Result<Self, TimestampError> {
        let dt = DateTime::parse_from_rfc3339(s.trim()).map_err(|_| TimestampError(s.to_string()))?;
        Ok(Timestamp(dt.with_timezone(&Utc).timestamp_millis()))
    }

    pub fn to_iso(self) -> String {
        match DateTime::<Utc>::from_timestamp_millis(self.0) {
            Some(dt) => dt.to_rfc3339_opts(SecondsFormat::Millis, true),
            None => format!("@{}ms", self.0),
        }
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_iso())
    }
}

impl FromStr for Timestamp {
    type Err = TimestampError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Timestamp::parse_iso(s)
    }
}

impl Serialize for Timestamp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_iso())
    }
}

impl<'de> Deserialize<'de> for Timestamp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Timestamp::parse_iso(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_round_trip() {
        let t = Timestamp::parse_iso("2020-06-01T10:00:00.250Z").unwrap();
        assert_eq!(t.to_iso(), "2020-06-01T10:00:00.250Z");
        assert_eq!(Timestamp::parse_iso(&t.to_iso()).unwrap(), t);
    }

    #[test]
    fn offsets_are_normalized_to_utc() {
        let a = Timestamp::parse_iso("2020-06-01T12:00:00+02:00").unwrap();
        let b = Timestamp::parse_iso("2020-06-01T10:00:00Z").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Timestamp::parse_iso("yesterday").is_err());
        assert!(Timestamp::parse_iso("2020-06-01 10:00:00").is_err());
    }

    #[test]
    fn arithmetic() {
        let t = Timestamp::from_millis(1_000);
        assert_eq!(t.offset_secs(0.5).as_millis(), 1_500);
        assert_eq!(t.offset_secs(0.5).seconds_since(t), 0.5);
    }
}
