use std::fmt;

use super::{solve_pointing, MissionError, MissionItem, MissionPlan};

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoWaypoints,
    InvalidConstraints(String),
    AltitudeExceeded { item: usize, agl_m: f64, max_agl_m: f64 },
    BelowGround { item: usize, agl_m: f64 },
    HoldTooShort { item: usize, hold_s: f64, min_hold_s: f64 },
    InfeasiblePointing { item: usize, roi_item: usize, required_tilt_deg: f64 },
    CoincidentRoi { item: usize, roi_item: usize },
    OutsideFrame { item: usize, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoWaypoints => write!(f, "no waypoints"),
            Violation::InvalidConstraints(m) => write!(f, "invalid constraints: {m}"),
            Violation::AltitudeExceeded { item, agl_m, max_agl_m } => {
                write!(f, "item {item}: altitude exceeds {max_agl_m} m AGL ({agl_m} m)")
            }
            Violation::BelowGround { item, agl_m } => write!(f, "item {item}: waypoint below ground ({agl_m} m AGL)"),
            Violation::HoldTooShort { item, hold_s, min_hold_s } => {
                write!(f, "item {item}: hold {hold_s} s shorter than {min_hold_s} s")
            }
            Violation::InfeasiblePointing { item, roi_item, required_tilt_deg } => write!(
                f,
                "item {item}: pointing at ROI (item {roi_item}) needs tilt {required_tilt_deg:.2} deg, outside gimbal range"
            ),
            Violation::CoincidentRoi { item, roi_item } => write!(f, "item {item}: waypoint coincides with ROI (item {roi_item})"),
            Violation::OutsideFrame { item, detail } => write!(f, "item {item}: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// ROI with no waypoint after it.
    DeadRoi { item: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DeadRoi { item } => write!(f, "item {item}: ROI after the last waypoint has no effect"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a plan against its constraints. Every problem is reported; nothing
/// short-circuits.
pub fn validate(plan: &MissionPlan) -> ValidationReport {
    let mut report = ValidationReport::default();
    let c = &plan.constraints;
    if let Err(MissionError::InvalidConstraints(m)) = c.check() {
        report.violations.push(Violation::InvalidConstraints(m));
    }
    if plan.waypoint_count() == 0 {
        report.violations.push(Violation::NoWaypoints);
    }

    for (item, it) in plan.items.iter().enumerate() {
        let position = match it {
            MissionItem::Waypoint(w) => w.position,
            MissionItem::Roi(r) => r.position,
        };
        if let Err(e) = plan.frame.to_enu(&position) {
            report.violations.push(Violation::OutsideFrame { item, detail: e.to_string() });
        }
        if let MissionItem::Waypoint(w) = it {
            if w.position.alt_m > c.max_agl_m {
                report.violations.push(Violation::AltitudeExceeded { item, agl_m: w.position.alt_m, max_agl_m: c.max_agl_m });
            }
            if w.position.alt_m < 0.0 {
                report.violations.push(Violation::BelowGround { item, agl_m: w.position.alt_m });
            }
            if !(w.hold_s >= c.min_hold_s) {
                report.violations.push(Violation::HoldTooShort { item, hold_s: w.hold_s, min_hold_s: c.min_hold_s });
            }
        }
    }

    for wp in plan.planned_waypoints() {
        let Some((_, roi_item, roi)) = wp.roi else { continue };
        let (Ok(uav), Ok(target)) = (plan.frame.to_enu(&wp.waypoint.position), plan.frame.to_enu(&roi.position)) else {
            continue;
        };
        match solve_pointing(&uav, &target, c) {
            Ok(_) => {}
            Err(MissionError::InfeasiblePointing { required_tilt_deg, .. }) => {
                report.violations.push(Violation::InfeasiblePointing { item: wp.item_index, roi_item, required_tilt_deg })
            }
            Err(_) => report.violations.push(Violation::CoincidentRoi { item: wp.item_index, roi_item }),
        }
    }

    let last_wp = plan.items.iter().rposition(|i| matches!(i, MissionItem::Waypoint(_)));
    for (item, it) in plan.items.iter().enumerate() {
        if matches!(it, MissionItem::Roi(_)) && last_wp.is_none_or(|l| item > l) {
            report.warnings.push(Warning::DeadRoi { item });
        }
    }
    report
}
