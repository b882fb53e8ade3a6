use crate::devices;
use crate::geo::EnuVector;

use super::{MissionError, MissionItem, MissionPlan, RegionOfInterest, Waypoint};

/// Angular raster flown at a hovering waypoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    /// Yaw step, degrees; must divide 360. Yaw values are absolute
    /// (clockwise from north) starting at 0.
    pub azimuth_step_deg: f64,
    /// Downward tilt levels, flown in the given order.
    pub tilt_levels_deg: Vec<f64>,
    /// Hold per (yaw, tilt) orientation, seconds.
    pub dwell_s: f64,
    /// Distance from the waypoint at which synthetic ROIs are placed, metres.
    pub roi_range_m: f64,
    /// Waypoint ordinal to expand; `None` expands every waypoint.
    pub waypoint: Option<usize>,
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec {
            azimuth_step_deg: devices::RASTER_STEP_DEG,
            tilt_levels_deg: vec![0.0, 15.0, 30.0, 45.0, 60.0],
            dwell_s: devices::HOVER_HOLD_S,
            roi_range_m: 50.0,
            waypoint: None,
        }
    }
}

impl ScanSpec {
    pub fn azimuth_count(&self) -> Result<usize, MissionError> {
        let step = self.azimuth_step_deg;
        if !(step > 0.0 && step <= 360.0) {
            return Err(MissionError::InvalidScan(format!("azimuth step {step} must be in (0, 360]")));
        }
        let n = (360.0 / step).round();
        if ((n * step) - 360.0).abs() > 1e-9 {
            return Err(MissionError::InvalidScan(format!("azimuth step {step} does not divide 360")));
        }
        Ok(n as usize)
    }

    /// (yaw, tilt) pairs in flight order: tilt-major, yaw ascending.
    pub fn orientations(&self) -> Result<Vec<(f64, f64)>, MissionError> {
        let n = self.azimuth_count()?;
        Ok(self
            .tilt_levels_deg
            .iter()
            .flat_map(|&t| (0..n).map(move |k| (k as f64 * self.azimuth_step_deg, t)))
            .collect())
    }
}

/// Replace hovering waypoints by an angular raster of dwell states. Each
/// dwell state is a synthetic ROI placed `roi_range_m` along the commanded
/// direction followed by a copy of the waypoint holding `dwell_s`. The
/// ROI that governed later waypoints is re-issued after the raster.
pub fn expand_schedule(plan: &MissionPlan, scan: &ScanSpec) -> Result<MissionPlan, MissionError> {
    let orientations = scan.orientations()?;
    if scan.tilt_levels_deg.is_empty() {
        return Err(MissionError::InvalidScan("no tilt levels".into()));
    }
    for &t in &scan.tilt_levels_deg {
        if !plan.constraints.tilt_feasible(t) {
            return Err(MissionError::InvalidScan(format!(
                "tilt level {t} outside [{}, {}]",
                plan.constraints.tilt_min_deg, plan.constraints.tilt_max_deg
            )));
        }
    }
    if !(scan.roi_range_m > 0.0 && scan.roi_range_m.is_finite()) {
        return Err(MissionError::InvalidScan(format!("roi range {} must be positive", scan.roi_range_m)));
    }
    if !(scan.dwell_s >= 0.0 && scan.dwell_s.is_finite()) {
        return Err(MissionError::InvalidScan(format!("dwell {} must be >= 0", scan.dwell_s)));
    }
    if let Some(k) = scan.waypoint {
        if k >= plan.waypoint_count() {
            return Err(MissionError::InvalidScan(format!("no waypoint {k}")));
        }
    }

    let mut items = Vec::with_capacity(plan.items.len() + 2 * orientations.len());
    let mut active: Option<RegionOfInterest> = None;
    let mut wp_ordinal = 0;
    for (idx, item) in plan.items.iter().enumerate() {
        match item {
            MissionItem::Roi(r) => {
                active = Some(*r);
                items.push(*item);
            }
            MissionItem::Waypoint(w) => {
                let expand = scan.waypoint.is_none_or(|k| k == wp_ordinal);
                wp_ordinal += 1;
                if !expand {
                    items.push(*item);
                    continue;
                }
                let centre = plan.frame.to_enu(&w.position)?;
                for &(yaw, tilt) in &orientations {
                    let target = centre + EnuVector::from_az_el(yaw, -tilt) * scan.roi_range_m;
                    let position = plan.frame.from_enu(&target)?;
                    items.push(MissionItem::Roi(RegionOfInterest { position }));
                    items.push(MissionItem::Waypoint(Waypoint { position: w.position, hold_s: scan.dwell_s }));
                }
                let next_is_waypoint = matches!(plan.items.get(idx + 1), Some(MissionItem::Waypoint(_)));
                if let (Some(r), true) = (active, next_is_waypoint) {
                    items.push(MissionItem::Roi(r));
                }
            }
        }
    }
    Ok(MissionPlan { name: plan.name.clone(), frame: plan.frame, items, constraints: plan.constraints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::LocalFrame;
    use crate::mission::{required_pointing, validate};

    fn hover_plan() -> MissionPlan {
        let mut plan = MissionPlan::new("fig8", LocalFrame::new(44.35, 11.7).unwrap());
        plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 5.0).unwrap();
        plan
    }

    #[test]
    fn default_raster_has_120_states() {
        let out = expand_schedule(&hover_plan(), &ScanSpec::default()).unwrap();
        assert_eq!(out.waypoint_count(), 120);
        assert_eq!(out.items.len(), 240);
        assert!(validate(&out).is_valid(), "{:?}", validate(&out));
        let sites: Vec<_> = out.planned_waypoints().iter().map(|w| w.site_index).collect();
        assert!(sites.iter().all(|&s| s == 0));
    }

    #[test]
    fn coarse_raster() {
        let scan = ScanSpec { azimuth_step_deg: 90.0, tilt_levels_deg: vec![0.0], ..ScanSpec::default() };
        let out = expand_schedule(&hover_plan(), &scan).unwrap();
        let yaws: Vec<f64> = out
            .planned_waypoints()
            .iter()
            .map(|w| out.commanded_pointing(w).unwrap().unwrap().yaw_deg.round())
            .collect();
        assert_eq!(yaws, vec![0.0, 90.0, 180.0, 270.0]);
    }

    #[test]
    fn synthetic_rois_reproduce_commanded_angles() {
        let scan = ScanSpec::default();
        let out = expand_schedule(&hover_plan(), &scan).unwrap();
        let wps = out.planned_waypoints();
        for (wp, (yaw, tilt)) in wps.iter().zip(scan.orientations().unwrap()) {
            let uav = out.frame.to_enu(&wp.waypoint.position).unwrap();
            let roi = out.frame.to_enu(&wp.roi.unwrap().2.position).unwrap();
            let s = required_pointing(&uav, &roi).unwrap();
            assert!(crate::geo::angle_diff(s.yaw_deg, yaw).abs() < 0.01, "yaw {} vs {}", s.yaw_deg, yaw);
            assert!((s.tilt_deg - tilt).abs() < 0.01);
        }
    }

    #[test]
    fn bad_scans() {
        let p = hover_plan();
        let step = ScanSpec { azimuth_step_deg: 7.0, ..ScanSpec::default() };
        assert!(matches!(expand_schedule(&p, &step), Err(MissionError::InvalidScan(_))));
        let tilt = ScanSpec { tilt_levels_deg: vec![75.0], ..ScanSpec::default() };
        assert!(matches!(expand_schedule(&p, &tilt), Err(MissionError::InvalidScan(_))));
        let wp = ScanSpec { waypoint: Some(3), ..ScanSpec::default() };
        assert!(expand_schedule(&p, &wp).is_err());
    }

    #[test]
    fn governing_roi_is_reissued() {
        let mut plan = MissionPlan::new("two", LocalFrame::new(44.35, 11.7).unwrap());
        plan.push_roi_enu(EnuVector::new(100.0, 0.0, 2.0)).unwrap();
        plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 5.0).unwrap();
        plan.push_waypoint_enu(EnuVector::new(0.0, 20.0, 19.0), 5.0).unwrap();
        let scan = ScanSpec { azimuth_step_deg: 180.0, tilt_levels_deg: vec![0.0], waypoint: Some(0), ..ScanSpec::default() };
        let out = expand_schedule(&plan, &scan).unwrap();
        let wps = out.planned_waypoints();
        assert_eq!(wps.len(), 3);
        assert_eq!(wps[2].roi.unwrap().2, plan.planned_waypoints()[1].roi.unwrap().2);
    }
}
