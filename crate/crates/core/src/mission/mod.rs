//! Flight programs made of interleaved waypoints and regions of interest.
//!
//! A waypoint is a hover position with a holding time. A region of interest
//! (ROI) is a point the on-board antenna tracks: the UAV yaw supplies the
//! azimuth and the gimbal supplies the downward tilt. Each waypoint is
//! governed by the most recent ROI that precedes it in the item list, or by
//! none, in which case the antenna pointing is left free.

mod file;
mod raster;
mod validate;

use crate::devices;
use crate::geo::{self, EnuVector, GeoError, GeoPoint, LocalFrame};

pub use file::{parse_plan, serialize_plan, PlanParseError};
pub use raster::{expand_schedule, ScanSpec};
pub use validate::{validate, ValidationReport, Violation, Warning};

/// Angular slack applied at the gimbal end stops, degrees. Absorbs rounding
/// in positions that are meant to sit exactly on a limit.
pub const POINTING_TOLERANCE_DEG: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MissionError {
    #[error("pointing infeasible: required tilt {required_tilt_deg:.3} deg is outside [{tilt_min_deg}, {tilt_max_deg}] deg")]
    InfeasiblePointing { required_tilt_deg: f64, tilt_min_deg: f64, tilt_max_deg: f64 },
    #[error("UAV and ROI coincide")]
    Coincident,
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
    #[error("invalid scan: {0}")]
    InvalidScan(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub position: GeoPoint,
    pub hold_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionOfInterest {
    pub position: GeoPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MissionItem {
    Waypoint(Waypoint),
    Roi(RegionOfInterest),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MissionConstraints {
    pub max_agl_m: f64,
    /// Downward-positive gimbal range.
    pub tilt_min_deg: f64,
    pub tilt_max_deg: f64,
    pub min_hold_s: f64,
}

impl Default for MissionConstraints {
    fn default() -> Self {
        MissionConstraints {
            max_agl_m: devices::MAX_AGL_M,
            tilt_min_deg: devices::GIMBAL_TILT_MIN_DEG,
            tilt_max_deg: devices::GIMBAL_TILT_MAX_DEG,
            min_hold_s: devices::HOVER_HOLD_S,
        }
    }
}

impl MissionConstraints {
    pub fn check(&self) -> Result<(), MissionError> {
        let ok_tilt = self.tilt_min_deg >= 0.0 && self.tilt_min_deg < self.tilt_max_deg && self.tilt_max_deg <= 90.0;
        if !ok_tilt {
            return Err(MissionError::InvalidConstraints(format!(
                "tilt range [{}, {}] must satisfy 0 <= min < max <= 90",
                self.tilt_min_deg, self.tilt_max_deg
            )));
        }
        if !(self.max_agl_m > 0.0 && self.max_agl_m.is_finite()) {
            return Err(MissionError::InvalidConstraints(format!("max_agl_m {} must be positive", self.max_agl_m)));
        }
        if !(self.min_hold_s >= 0.0 && self.min_hold_s.is_finite()) {
            return Err(MissionError::InvalidConstraints(format!("min_hold_s {} must be >= 0", self.min_hold_s)));
        }
        Ok(())
    }

    pub fn tilt_feasible(&self, tilt_deg: f64) -> bool {
        tilt_deg >= self.tilt_min_deg - POINTING_TOLERANCE_DEG && tilt_deg <= self.tilt_max_deg + POINTING_TOLERANCE_DEG
    }
}

/// Yaw (clockwise from north) and downward-positive gimbal tilt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingSolution {
    pub yaw_deg: f64,
    pub tilt_deg: f64,
}

/// Pointing needed to aim from `uav` at `roi`, ignoring gimbal limits.
pub fn required_pointing(uav: &EnuVector, roi: &EnuVector) -> Result<PointingSolution, MissionError> {
    let (az, el) = geo::azimuth_elevation(uav, roi).map_err(|_| MissionError::Coincident)?;
    Ok(PointingSolution { yaw_deg: az, tilt_deg: 0.0 - el })
}

/// Pointing for the on-board antenna, or `InfeasiblePointing` when the
/// tilt falls outside the gimbal range (end stops inclusive).
pub fn solve_pointing(uav: &EnuVector, roi: &EnuVector, c: &MissionConstraints) -> Result<PointingSolution, MissionError> {
    let sol = required_pointing(uav, roi)?;
    if c.tilt_feasible(sol.tilt_deg) {
        Ok(sol)
    } else {
        Err(MissionError::InfeasiblePointing {
            required_tilt_deg: sol.tilt_deg,
            tilt_min_deg: c.tilt_min_deg,
            tilt_max_deg: c.tilt_max_deg,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MissionPlan {
    pub name: String,
    pub frame: LocalFrame,
    pub items: Vec<MissionItem>,
    pub constraints: MissionConstraints,
}

/// One waypoint of a plan, resolved against the item list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannedWaypoint {
    /// Ordinal among waypoints.
    pub wp_index: usize,
    /// Position in `MissionPlan::items`.
    pub item_index: usize,
    /// Ordinal of the first waypoint in the run of consecutive waypoints
    /// sharing this position (a hover site). Raster dwell states of one
    /// hover share a site.
    pub site_index: usize,
    pub waypoint: Waypoint,
    /// Active ROI as (ordinal among ROIs, item index, ROI).
    pub roi: Option<(usize, usize, RegionOfInterest)>,
}

/// Consecutive waypoints closer than this are one hover site, metres.
const SITE_MERGE_M: f64 = 1e-3;

impl MissionPlan {
    pub fn new(name: impl Into<String>, frame: LocalFrame) -> Self {
        MissionPlan { name: name.into(), frame, items: Vec::new(), constraints: MissionConstraints::default() }
    }

    pub fn push_waypoint(&mut self, position: GeoPoint, hold_s: f64) -> &mut Self {
        self.items.push(MissionItem::Waypoint(Waypoint { position, hold_s }));
        self
    }

    pub fn push_roi(&mut self, position: GeoPoint) -> &mut Self {
        self.items.push(MissionItem::Roi(RegionOfInterest { position }));
        self
    }

    /// Add a waypoint given in local coordinates.
    pub fn push_waypoint_enu(&mut self, v: EnuVector, hold_s: f64) -> Result<&mut Self, GeoError> {
        let p = self.frame.from_enu(&v)?;
        Ok(self.push_waypoint(p, hold_s))
    }

    pub fn push_roi_enu(&mut self, v: EnuVector) -> Result<&mut Self, GeoError> {
        let p = self.frame.from_enu(&v)?;
        Ok(self.push_roi(p))
    }

    pub fn waypoint_count(&self) -> usize {
        self.items.iter().filter(|i| matches!(i, MissionItem::Waypoint(_))).count()
    }

    /// Waypoints in flight order with their active ROI and hover site.
    pub fn planned_waypoints(&self) -> Vec<PlannedWaypoint> {
        let mut out: Vec<PlannedWaypoint> = Vec::new();
        let mut roi: Option<(usize, usize, RegionOfInterest)> = None;
        let mut roi_count = 0;
        let mut prev_enu: Option<EnuVector> = None;
        for (item_index, item) in self.items.iter().enumerate() {
            match item {
                MissionItem::Roi(r) => {
                    roi = Some((roi_count, item_index, *r));
                    roi_count += 1;
                }
                MissionItem::Waypoint(w) => {
                    let wp_index = out.len();
                    let enu = self.frame.to_enu(&w.position).ok();
                    let same_site = match (prev_enu, enu) {
                        (Some(a), Some(b)) => a.distance(&b) < SITE_MERGE_M,
                        _ => false,
                    };
                    let site_index = if same_site { out[wp_index - 1].site_index } else { wp_index };
                    prev_enu = enu;
                    out.push(PlannedWaypoint { wp_index, item_index, site_index, waypoint: *w, roi });
                }
            }
        }
        out
    }

    /// Commanded pointing for a planned waypoint, `None` when no ROI is active.
    pub fn commanded_pointing(&self, wp: &PlannedWaypoint) -> Option<Result<PointingSolution, MissionError>> {
        let (_, _, roi) = wp.roi?;
        Some((|| {
            let uav = self.frame.to_enu(&wp.waypoint.position)?;
            let target = self.frame.to_enu(&roi.position)?;
            solve_pointing(&uav, &target, &self.constraints)
        })())
    }
}
