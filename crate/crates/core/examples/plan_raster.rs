//! Expand one hovering waypoint into the 24 x 5 yaw/tilt raster and
//! validate the result.

use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::mission::{expand_schedule, serialize_plan, validate, MissionPlan, ScanSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut plan = MissionPlan::new("rooftop", LocalFrame::new(44.35, 11.7)?);
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 5.0)?;

    let raster = expand_schedule(&plan, &ScanSpec::default())?;
    let report = validate(&raster);
    println!("{} dwell states, valid: {}", raster.waypoint_count(), report.is_valid());
    for w in &report.warnings {
        println!("warning: {w}");
    }
    for wp in raster.planned_waypoints().iter().step_by(23).take(6) {
        let p = raster.commanded_pointing(wp).expect("every dwell has an ROI")?;
        println!("dwell {:3}: yaw {:6.1}  tilt {:4.1}", wp.wp_index, p.yaw_deg, p.tilt_deg);
    }

    let json = serialize_plan(&raster);
    println!("plan file is {} bytes", json.len());
    Ok(())
}
