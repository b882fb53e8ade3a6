//! Simulate a two-waypoint mission, then run the ingest-to-average chain on
//! the files exactly as the `fuse` command does.

use uavprop::fuse::{
    annotate, average_dwells, parse_annotated_csv, segment_hovers, write_annotated_csv, AnnotateConfig, AverageConfig,
    Measurement, SegmenterConfig,
};
use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::ingest::{parse_pdp, parse_rss, parse_telemetry, serialize_pdp, serialize_rss, serialize_telemetry, PdpOptions};
use uavprop::mission::MissionPlan;
use uavprop::sim::{simulate_campaign, AntennaKind, CampaignConfig, GroundStation, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut plan = MissionPlan::new("two-stops", LocalFrame::new(44.35, 11.7)?);
    plan.push_roi_enu(EnuVector::new(60.0, 0.0, 2.0))?;
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 6.0)?;
    plan.push_waypoint_enu(EnuVector::new(0.0, 20.0, 30.0), 6.0)?;
    let gs = GroundStation { e: 60.0, n: 0.0, u: 2.0, antenna: AntennaKind::Horn, positioner: vec![] };
    let scene = Scene::free_space(gs);

    let cfg = CampaignConfig { gate_to_hovers: false, ..Default::default() };
    let c = simulate_campaign(&plan, &scene, &cfg, 42)?;

    // Round-trip through the file formats, as field data would arrive.
    let telemetry = parse_telemetry(&serialize_telemetry(&c.flight.telemetry))?.records;
    let mut ms: Vec<Measurement> = parse_rss(&serialize_rss(&c.rss), -100.0)?.records.into_iter().map(Measurement::Rss).collect();
    ms.extend(parse_pdp(&serialize_pdp(&c.pdps), &PdpOptions::default())?.records.into_iter().map(Measurement::Pdp));
    ms.sort_by_key(|m| m.t());

    let segments = segment_hovers(&telemetry, &plan, &SegmenterConfig::default());
    for s in &segments {
        println!(
            "segment wp {} {:.2}s yaw {:.1} tilt {:.1}",
            s.wp_index,
            s.duration_s(),
            s.mean_yaw_deg,
            s.mean_tilt_deg
        );
    }
    let total = ms.len();
    let ann = annotate(ms, &segments, &c.ground_log, &AnnotateConfig::default());
    println!("{total} samples: {} annotated, {} orphaned", ann.samples.len(), ann.orphans.len());

    let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples))?;
    for a in average_dwells(&rows, &AverageConfig::default()).averages {
        println!(
            "wp {} {:?}: {:.2} dBm over {} samples (spread {:.2} dB)",
            a.key.wp_index, a.key.kind, a.avg_power_dbm, a.n_samples, a.spread_db
        );
    }
    Ok(())
}
