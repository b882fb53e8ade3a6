use serde::{Deserialize, Serialize};

use crate::geo::GeoPoint;
use crate::time::Timestamp;

use super::{check_azimuth, content_lines, json_message, OrderCheck, ParseError, Parsed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlightMode {
    #[serde(rename = "AUTO")]
    Auto,
    #[serde(rename = "MANUAL")]
    Manual,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TelemetryRecord {
    pub t: Timestamp,
    pub position: GeoPoint,
    pub yaw_deg: f64,
    /// Downward-positive, [0, 90].
    pub gimbal_tilt_deg: f64,
    pub mode: FlightMode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TelemetryLine {
    t_utc: Timestamp,
    lat_deg: f64,
    lon_deg: f64,
    agl_m: f64,
    yaw_deg: f64,
    gimbal_tilt_deg: f64,
    mode: FlightMode,
}

pub fn parse_telemetry(input: &str) -> Result<Parsed<TelemetryRecord>, ParseError> {
    let mut out = Parsed::default();
    let mut order = OrderCheck::default();
    for (line, text) in content_lines(input) {
        let rec: TelemetryLine = serde_json::from_str(text).map_err(|e| ParseError::at(line, json_message(&e)))?;
        let position = GeoPoint::new(rec.lat_deg, rec.lon_deg, rec.agl_m).map_err(|e| ParseError::at(line, e.to_string()))?;
        let yaw_deg = check_azimuth(line, "yaw_deg", rec.yaw_deg, &mut out.warnings)?;
        if !(0.0..=90.0).contains(&rec.gimbal_tilt_deg) {
            return Err(ParseError::field(line, "gimbal_tilt_deg", format!("{} outside [0, 90]", rec.gimbal_tilt_deg)));
        }
        order.observe(line, rec.t_utc)?;
        out.records.push(TelemetryRecord {
            t: rec.t_utc,
            position,
            yaw_deg,
            gimbal_tilt_deg: rec.gimbal_tilt_deg,
            mode: rec.mode,
        });
    }
    order.finish(&mut out.records, |r| r.t);
    Ok(out)
}

pub fn serialize_telemetry(records: &[TelemetryRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let line = TelemetryLine {
            t_utc: r.t,
            lat_deg: r.position.lat_deg,
            lon_deg: r.position.lon_deg,
            agl_m: r.position.alt_m,
            yaw_deg: r.yaw_deg,
            gimbal_tilt_deg: r.gimbal_tilt_deg,
            mode: r.mode,
        };
        s.push_str(&serde_json::to_string(&line).expect("telemetry serializes"));
        s.push('\n');
    }
    s
}
