//! Fly the 24 x 5 raster in free space and recover the direction of the
//! ground station from the power-azimuth profiles.

use uavprop::analysis::{power_angle_profile, Axis, Station};
use uavprop::fuse::{
    annotate, average_dwells, parse_annotated_csv, segment_hovers, write_annotated_csv, AnnotateConfig, AverageConfig,
    Measurement, SegmenterConfig,
};
use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::mission::{expand_schedule, MissionPlan, ScanSpec};
use uavprop::sim::{simulate_campaign, AntennaKind, CampaignConfig, GroundStation, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut plan = MissionPlan::new("raster", LocalFrame::new(44.35, 11.7)?);
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 30.0), 5.0)?;
    let plan = expand_schedule(&plan, &ScanSpec::default())?;

    // 70 m away at azimuth 120, antenna 2 m up: 21.8 deg below the horizon.
    let gs = EnuVector::from_az_el(120.0, 0.0) * 70.0;
    let scene = Scene::free_space(GroundStation { e: gs.east_m, n: gs.north_m, u: 2.0, antenna: AntennaKind::Horn, positioner: vec![] });
    let cfg = CampaignConfig { uwb: None, ..Default::default() };
    let c = simulate_campaign(&plan, &scene, &cfg, 1)?;

    let segments = segment_hovers(&c.flight.telemetry, &plan, &SegmenterConfig::default());
    let ms = c.rss.iter().copied().map(Measurement::Rss).collect();
    let ann = annotate(ms, &segments, &c.ground_log, &AnnotateConfig::default());
    let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples))?;
    let avgs = average_dwells(&rows, &AverageConfig::default()).averages;

    println!("tilt  peak_az  peak_dbm");
    for tilt in [0.0, 15.0, 30.0, 45.0, 60.0] {
        let prof = power_angle_profile(&avgs, Station::Air, Axis::Azimuth, tilt)?;
        let best = prof.argmax().expect("24 bins");
        println!("{tilt:4}  {:7}  {:8.2}", best.angle_deg, best.power_dbm);
    }
    Ok(())
}
