//! Two buildings across a street. The UAV hovers above the first one while
//! the ground station horn sweeps in elevation; the reflection off the
//! second building dominates at 50 m. At 19 m the first building shadows
//! that reflection and only the rooftop diffraction is left.

use uavprop::analysis::{power_angle_profile, Axis, Station};
use uavprop::fuse::{
    annotate, average_dwells, parse_annotated_csv, segment_hovers, write_annotated_csv, AnnotateConfig, AverageConfig,
    Measurement, SegmenterConfig,
};
use uavprop::geo::{direction_angles, EnuVector, LocalFrame};
use uavprop::mission::MissionPlan;
use uavprop::sim::{
    simulate_campaign, trace_rays, AntennaKind, Building, CampaignConfig, GroundStation, MmwaveConfig, PositionerStep, Scene,
};

fn scene(sweep: Vec<PositionerStep>) -> Scene {
    Scene {
        buildings: vec![Building::new(-45.0, -50.0, -5.0, 50.0, 18.0), Building::new(5.0, -50.0, 25.0, 50.0, 20.0)],
        ground_station: GroundStation { e: 0.0, n: 0.0, u: 2.0, antenna: AntennaKind::Horn, positioner: sweep },
        seed: 9,
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gs = EnuVector::new(0.0, 0.0, 2.0);
    for agl in [50.0, 19.0] {
        let uav = EnuVector::new(-30.0, 0.0, agl);
        println!("UAV at {agl} m:");
        for r in trace_rays(&scene(vec![]), &uav, &gs, 27.0) {
            let (az, el) = direction_angles(&r.arrival);
            println!("  {:?}: {:.1} m, {:.2} dB, arrives from az {az:.0} el {el:.1}", r.kind, r.path_length_m, r.gain_db);
        }
    }

    let sweep = (0..15).map(|k| PositionerStep { t_rel_s: 25.0 + 3.0 * k as f64, az_deg: 90.0, el_deg: -10.0 + 5.0 * k as f64 }).collect();
    let scene = scene(sweep);
    let mut plan = MissionPlan::new("street", LocalFrame::new(44.35, 11.7)?);
    plan.push_waypoint_enu(EnuVector::new(-30.0, 0.0, 50.0), 60.0)?;
    let cfg = CampaignConfig {
        uwb: None,
        mmwave: MmwaveConfig { air_antenna: AntennaKind::Omni, ..Default::default() },
        ..Default::default()
    };
    let c = simulate_campaign(&plan, &scene, &cfg, scene.seed)?;
    let segments = segment_hovers(&c.flight.telemetry, &plan, &SegmenterConfig::default());
    let ms = c.rss.iter().copied().map(Measurement::Rss).collect();
    let ann = annotate(ms, &segments, &c.ground_log, &AnnotateConfig::default());
    let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples))?;
    let avgs = average_dwells(&rows, &AverageConfig::default()).averages;
    let pep = power_angle_profile(&avgs, Station::Ground, Axis::Elevation, 90.0)?;
    println!("ground elevation sweep toward Building 2:");
    for b in &pep.bins {
        println!("  {:5.0} deg  {:7.2} dBm", b.angle_deg, b.power_dbm);
    }
    println!("argmax at {} deg", pep.argmax().expect("bins").angle_deg);
    Ok(())
}
