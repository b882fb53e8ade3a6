//! JSON mission plan files.
//!
//! ```json
//! {
//!   "name": "...",
//!   "origin": {"lat_deg": 44.35, "lon_deg": 11.7},
//!   "constraints": {"max_agl_m": 50, "tilt_min_deg": 0, "tilt_max_deg": 60, "min_hold_s": 5},
//!   "items": [
//!     {"type": "roi", "lat_deg": ..., "lon_deg": ..., "agl_m": ...},
//!     {"type": "waypoint", "lat_deg": ..., "lon_deg": ..., "agl_m": ..., "hold_s": ...}
//!   ]
//! }
//! ```
//!
//! Unknown fields are rejected. Errors carry the line and column of the
//! offending value and, for items, the item index.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::geo::{GeoPoint, LocalFrame};

use super::{MissionConstraints, MissionItem, MissionPlan, RegionOfInterest, Waypoint};

#[derive(Debug, Clone, PartialEq)]
pub struct PlanParseError {
    pub line: usize,
    pub column: usize,
    pub item: Option<usize>,
    pub message: String,
}

impl fmt::Display for PlanParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        if let Some(i) = self.item {
            write!(f, "item {i}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for PlanParseError {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OriginRecord {
    lat_deg: f64,
    lon_deg: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintsRecord {
    max_agl_m: f64,
    tilt_min_deg: f64,
    tilt_max_deg: f64,
    min_hold_s: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ItemRecord {
    Waypoint { lat_deg: f64, lon_deg: f64, agl_m: f64, hold_s: f64 },
    Roi { lat_deg: f64, lon_deg: f64, agl_m: f64 },
}

#[derive(Serialize)]
struct PlanRecord {
    name: String,
    origin: OriginRecord,
    constraints: ConstraintsRecord,
    items: Vec<ItemRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan<'a> {
    name: String,
    #[serde(borrow)]
    origin: &'a RawValue,
    #[serde(borrow)]
    constraints: &'a RawValue,
    #[serde(borrow)]
    items: Vec<&'a RawValue>,
}

pub fn serialize_plan(plan: &MissionPlan) -> String {
    let origin = plan.frame.origin();
    let c = &plan.constraints;
    let record = PlanRecord {
        name: plan.name.clone(),
        origin: OriginRecord { lat_deg: origin.lat_deg, lon_deg: origin.lon_deg },
        constraints: ConstraintsRecord {
            max_agl_m: c.max_agl_m,
            tilt_min_deg: c.tilt_min_deg,
            tilt_max_deg: c.tilt_max_deg,
            min_hold_s: c.min_hold_s,
        },
        items: plan
            .items
            .iter()
            .map(|i| match i {
                MissionItem::Waypoint(w) => ItemRecord::Waypoint {
                    lat_deg: w.position.lat_deg,
                    lon_deg: w.position.lon_deg,
                    agl_m: w.position.alt_m,
                    hold_s: w.hold_s,
                },
                MissionItem::Roi(r) => ItemRecord::Roi {
                    lat_deg: r.position.lat_deg,
                    lon_deg: r.position.lon_deg,
                    agl_m: r.position.alt_m,
                },
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&record).expect("plan records always serialize");
    s.push('\n');
    s
}

pub fn parse_plan(input: &str) -> Result<MissionPlan, PlanParseError> {
    let raw: RawPlan<'_> = serde_json::from_str(input).map_err(|e| PlanParseError {
        line: e.line(),
        column: e.column(),
        item: None,
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;

    let origin: OriginRecord = decode(input, raw.origin, None)?;
    let frame = LocalFrame::new(origin.lat_deg, origin.lon_deg)
        .map_err(|e| located(input, raw.origin, None, format!("origin: {e}")))?;

    let c: ConstraintsRecord = decode(input, raw.constraints, None)?;
    let constraints = MissionConstraints {
        max_agl_m: c.max_agl_m,
        tilt_min_deg: c.tilt_min_deg,
        tilt_max_deg: c.tilt_max_deg,
        min_hold_s: c.min_hold_s,
    };
    constraints.check().map_err(|e| located(input, raw.constraints, None, e.to_string()))?;

    let mut items = Vec::with_capacity(raw.items.len());
    for (k, value) in raw.items.iter().enumerate() {
        let rec: ItemRecord = decode(input, value, Some(k))?;
        let bad = |msg: String| located(input, value, Some(k), msg);
        let item = match rec {
            ItemRecord::Waypoint { lat_deg, lon_deg, agl_m, hold_s } => {
                let position = GeoPoint::new(lat_deg, lon_deg, agl_m).map_err(|e| bad(e.to_string()))?;
                if !(hold_s >= 0.0 && hold_s.is_finite()) {
                    return Err(bad(format!("hold_s {hold_s} out of range")));
                }
                MissionItem::Waypoint(Waypoint { position, hold_s })
            }
            ItemRecord::Roi { lat_deg, lon_deg, agl_m } => {
                let position = GeoPoint::new(lat_deg, lon_deg, agl_m).map_err(|e| bad(e.to_string()))?;
                MissionItem::Roi(RegionOfInterest { position })
            }
        };
        items.push(item);
    }
    Ok(MissionPlan { name: raw.name, frame, items, constraints })
}

fn base_position(input: &str, value: &RawValue) -> (usize, usize) {
    let offset = (value.get().as_ptr() as usize).saturating_sub(input.as_ptr() as usize).min(input.len());
    let before = &input[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

fn located(input: &str, value: &RawValue, item: Option<usize>, message: String) -> PlanParseError {
    let (line, column) = base_position(input, value);
    PlanParseError { line, column, item, message }
}

fn decode<'de, T: Deserialize<'de>>(input: &str, value: &'de RawValue, item: Option<usize>) -> Result<T, PlanParseError> {
    serde_json::from_str(value.get()).map_err(|e| {
        let (line, column) = base_position(input, value);
        let (line, column) = if e.line() <= 1 { (line, column + e.column().saturating_sub(1)) } else { (line + e.line() - 1, e.column()) };
        let message = e.to_string().split(" at line ").next().unwrap_or_default().to_string();
        PlanParseError { line, column, item, message }
    })
}
