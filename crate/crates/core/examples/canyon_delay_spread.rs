//! UWB route along a street moving away from the ground station, with a
//! wall behind the station. Path gain falls and the delay spread grows as
//! the wall echo catches up with the direct path.

use uavprop::analysis::{delay_stats, ThresholdPolicy};
use uavprop::fuse::{annotate, average_pdps, segment_hovers, AnnotateConfig, Measurement, SegmenterConfig};
use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::mission::MissionPlan;
use uavprop::sim::{simulate_campaign, AntennaKind, Building, CampaignConfig, GroundStation, PositionerStep, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut plan = MissionPlan::new("canyon", LocalFrame::new(44.35, 11.7)?);
    for i in 0..20 {
        plan.push_waypoint_enu(EnuVector::new(100.0 + 5.0 * i as f64, 0.0, 16.0), 5.0)?;
    }
    let scene = Scene {
        buildings: vec![Building::new(-30.0, -50.0, -10.0, 50.0, 30.0)],
        ground_station: GroundStation {
            e: 0.0,
            n: 0.0,
            u: 2.0,
            antenna: AntennaKind::Omni,
            positioner: vec![PositionerStep { t_rel_s: 0.0, az_deg: 90.0, el_deg: 5.0 }],
        },
        seed: 7,
    };
    let c = simulate_campaign(&plan, &scene, &CampaignConfig::default(), scene.seed)?;
    let segments = segment_hovers(&c.flight.telemetry, &plan, &SegmenterConfig::default());
    let ms = c.pdps.iter().cloned().map(Measurement::Pdp).collect();
    let ann = annotate(ms, &segments, &c.ground_log, &AnnotateConfig::default());

    println!("wp  distance_m  path_gain_db  rms_ds_ns  profiles");
    for d in average_pdps(&ann.samples, 5.0) {
        let s = delay_stats(&d.profile, &ThresholdPolicy::default())?;
        println!(
            "{:2}  {:10.0}  {:12.2}  {:9.2}  {:8}",
            d.key.wp_index,
            100.0 + 5.0 * d.key.wp_index as f64,
            s.path_gain_db,
            s.rms_delay_spread_ns,
            d.n_profiles
        );
    }
    Ok(())
}
