//! Acceptance criteria 1 to 9. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting, so `cargo test --test acceptance -- --nocapture`
//! reads as a checklist.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uavprop::analysis::{delay_stats, friis_path_gain, power_angle_profile, Axis, LinkBudget, Station, ThresholdPolicy};
use uavprop::fuse::{
    annotate, average_dwells, average_pdps, bin_azimuth, parse_annotated_csv, segment_hovers, write_annotated_csv,
    AnnotateConfig, Annotation, AverageConfig, Measurement, MeasurementKind, SegmenterConfig,
};
use uavprop::geo::{EnuVector, LocalFrame};
use uavprop::ingest::{
    parse_ground_log, parse_pdp, parse_rss, parse_telemetry, serialize_ground_log, serialize_pdp, serialize_rss,
    serialize_telemetry, FlightMode, PdpOptions, PowerDelayProfile,
};
use uavprop::mission::{
    expand_schedule, parse_plan, serialize_plan, solve_pointing, validate, MissionConstraints, MissionError, MissionPlan,
    ScanSpec, Violation,
};
use uavprop::sim::{
    simulate_campaign, AntennaKind, Building, Campaign, CampaignConfig, GroundStation, PositionerStep, Scene,
};
use uavprop::time::Timestamp;

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn frame() -> LocalFrame {
    LocalFrame::new(44.35, 11.7).unwrap()
}

fn station(e: f64, n: f64, u: f64, antenna: AntennaKind, positioner: Vec<PositionerStep>) -> GroundStation {
    GroundStation { e, n, u, antenna, positioner }
}

/// Simulate, then segment and annotate with default settings.
fn fly(plan: &MissionPlan, scene: &Scene, cfg: &CampaignConfig, seed: u64) -> (Campaign, Annotation) {
    let c = simulate_campaign(plan, scene, cfg, seed).unwrap();
    let segments = segment_hovers(&c.flight.telemetry, plan, &SegmenterConfig::default());
    let mut ms: Vec<Measurement> = c.rss.iter().copied().map(Measurement::Rss).collect();
    ms.extend(c.pdps.iter().cloned().map(Measurement::Pdp));
    ms.sort_by_key(|m| m.t());
    let ann = annotate(ms, &segments, &c.ground_log, &AnnotateConfig::default());
    (c, ann)
}

fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            for k in i..=j {
                r[idx[k]] = (i + j) as f64 / 2.0;
            }
            i = j + 1;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

// ---------------------------------------------------------------- 1

/// Yaw from the angle to north, signed by the east component; tilt from the
/// angle to nadir.
fn brute_pointing(uav: [f64; 3], roi: [f64; 3]) -> (f64, f64) {
    let d = [roi[0] - uav[0], roi[1] - uav[1], roi[2] - uav[2]];
    let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    let h = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let mut yaw = (d[1] / h).clamp(-1.0, 1.0).acos().to_degrees();
    if d[0] < 0.0 {
        yaw = 360.0 - yaw;
    }
    let from_nadir = (-d[2] / len).clamp(-1.0, 1.0).acos().to_degrees();
    (yaw % 360.0, 90.0 - from_nadir)
}

#[test]
fn criterion_1_pointing_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = MissionConstraints::default();
    let start = Instant::now();
    let (mut worst_yaw, mut worst_tilt, mut flag_mismatch, mut infeasible) = (0.0f64, 0.0f64, 0, 0);
    for _ in 0..1000 {
        let mut p = || [rng.gen_range(0.0..500.0), rng.gen_range(0.0..500.0), rng.gen_range(0.0..50.0)];
        let (uav, roi) = (p(), p());
        let (yaw, tilt) = brute_pointing(uav, roi);
        let oracle_ok = (0.0..=60.0).contains(&tilt);
        let got = solve_pointing(&EnuVector::new(uav[0], uav[1], uav[2]), &EnuVector::new(roi[0], roi[1], roi[2]), &c);
        match got {
            Ok(s) => {
                let dy = (s.yaw_deg - yaw + 540.0).rem_euclid(360.0) - 180.0;
                worst_yaw = worst_yaw.max(dy.abs());
                worst_tilt = worst_tilt.max((s.tilt_deg - tilt).abs());
                flag_mismatch += usize::from(!oracle_ok);
            }
            Err(MissionError::InfeasiblePointing { required_tilt_deg, .. }) => {
                infeasible += 1;
                worst_tilt = worst_tilt.max((required_tilt_deg - tilt).abs());
                flag_mismatch += usize::from(oracle_ok);
            }
            Err(e) => panic!("{e}"),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst_yaw < 0.01 && worst_tilt < 0.01 && flag_mismatch == 0 && elapsed < 1.0;
    report(
        1,
        ok,
        format!(
            "max |dyaw| {worst_yaw:.2e} deg, max |dtilt| {worst_tilt:.2e} deg, {infeasible} infeasible, {flag_mismatch} flag mismatches, {elapsed:.3} s"
        ),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 2

#[test]
fn criterion_2_samples_per_dwell() {
    let mut plan = MissionPlan::new("hover", frame());
    plan.push_roi_enu(EnuVector::new(100.0, 0.0, 2.0)).unwrap();
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 5.0).unwrap();
    let scene = Scene::free_space(station(100.0, 0.0, 2.0, AntennaKind::Horn, vec![]));
    let (_, ann) = fly(&plan, &scene, &CampaignConfig::default(), 2);
    let rss = ann.samples.iter().filter(|s| s.measurement.kind() == MeasurementKind::Rss).count();
    let pdp = ann.samples.iter().filter(|s| s.measurement.kind() == MeasurementKind::Pdp).count();
    let nominal_rss = (5.0 / uavprop::devices::SA_SWEEP_S).round() as usize;
    let nominal_pdp = (5.0 / uavprop::devices::UWB_RECORD_S).round() as usize;
    let ok = rss >= 10 && pdp >= 50 && (nominal_rss, nominal_pdp) == (10, 50);
    report(2, ok, format!("5 s hover: {rss} RSS samples, {pdp} PDPs (nominal {nominal_rss} and {nominal_pdp})"));
    assert!(ok);
}

// ---------------------------------------------------------------- 3

/// Independent threshold and two-pass moments.
fn delay_oracle(db: &[f64], bin_ns: f64, p: &ThresholdPolicy) -> Option<(f64, f64, f64)> {
    let mut peak = 0;
    for i in 1..db.len() {
        if db[i] > db[peak] {
            peak = i;
        }
    }
    let lead = ((p.noise_fraction * db.len() as f64).ceil() as usize).min(peak);
    let mut thr = db[peak] - p.dynamic_cut_db;
    if lead > 0 {
        let mut v = db[..lead].to_vec();
        v.sort_by(f64::total_cmp);
        let med = if lead % 2 == 1 { v[lead / 2] } else { (v[lead / 2 - 1] + v[lead / 2]) / 2.0 };
        thr = thr.max(med + p.noise_margin_db);
    }
    let kept: Vec<(f64, f64)> = db
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= thr)
        .map(|(i, &d)| (i as f64 * bin_ns, 10f64.powf(d / 10.0)))
        .collect();
    let t0 = kept.first()?.0;
    let total: f64 = kept.iter().map(|k| k.1).sum();
    let mean = kept.iter().map(|(t, w)| w * (t - t0)).sum::<f64>() / total;
    let var = kept.iter().map(|(t, w)| w * (t - t0 - mean).powi(2)).sum::<f64>() / total;
    Some((10.0 * total.log10(), mean, var.sqrt()))
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
    }
}

#[test]
fn criterion_3_delay_spread_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let policy = ThresholdPolicy::default();
    let t = Timestamp::from_millis(0);
    let (mut worst, mut silent) = (0.0f64, 0);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..200);
        let bin = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let floor = rng.gen_range(-150.0..-110.0);
        let mut db: Vec<f64> = (0..n).map(|_| floor + rng.gen_range(-3.0..3.0)).collect();
        for _ in 0..rng.gen_range(0..6) {
            let i = rng.gen_range(0..n);
            db[i] = rng.gen_range(-100.0..-50.0);
        }
        let pdp = PowerDelayProfile::from_db(t, bin, db.clone()).unwrap();
        match (delay_stats(&pdp, &policy), delay_oracle(&db, bin, &policy)) {
            (Ok(s), Some((g, m, r))) => {
                worst = worst
                    .max(rel_err(s.path_gain_db, g))
                    .max(rel_err(s.mean_delay_ns, m))
                    .max(rel_err(s.rms_delay_spread_ns, r));
            }
            (Err(_), None) => silent += 1,
            (a, b) => panic!("disagreement: {a:?} vs {b:?}"),
        }
    }
    let single = delay_stats(&PowerDelayProfile::from_db(t, 1.0, vec![-60.0]).unwrap(), &policy).unwrap();
    let mut two = vec![-200.0; 201];
    two[0] = -60.0;
    two[200] = -60.0;
    let pair = delay_stats(&PowerDelayProfile::from_db(t, 1.0, two).unwrap(), &policy).unwrap();
    let exact = single.rms_delay_spread_ns == 0.0 && pair.rms_delay_spread_ns == 100.0;
    let ok = worst <= 1e-9 && exact;
    report(
        3,
        ok,
        format!(
            "10000 PDPs, max relative error {worst:.2e}, {silent} below threshold in both; single tap {} ns, two taps 200 ns apart {} ns",
            single.rms_delay_spread_ns, pair.rms_delay_spread_ns
        ),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 4

#[test]
fn criterion_4_link_budget() {
    let eirp = LinkBudget::default().eirp_dbm();
    let friis = friis_path_gain(27.0, 100.0).unwrap();
    let mut plan = MissionPlan::new("boresight", frame());
    plan.push_roi_enu(EnuVector::new(100.0, 0.0, 19.0)).unwrap();
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 60.0).unwrap();
    let scene = Scene::free_space(station(100.0, 0.0, 19.0, AntennaKind::Horn, vec![]));
    let cfg = CampaignConfig { uwb: None, ..Default::default() };
    let (_, ann) = fly(&plan, &scene, &cfg, 4);
    let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples)).unwrap();
    let avgs = average_dwells(&rows, &AverageConfig::default()).averages;
    let n: usize = avgs.iter().map(|a| a.n_samples).sum();
    let mean = avgs.iter().map(|a| a.avg_power_dbm * a.n_samples as f64).sum::<f64>() / n as f64;
    let analytic = LinkBudget::horn_to_horn().effective_dbm() + friis;
    let ok = eirp == 46.0 && (friis + 101.08).abs() <= 0.01 && n >= 100 && (mean - analytic).abs() <= 0.2;
    report(
        4,
        ok,
        format!("EIRP {eirp} dBm, Friis {friis:.3} dB, simulated mean {mean:.3} dBm vs {analytic:.3} dBm over {n} samples"),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 5

#[test]
fn criterion_5_angular_recovery() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tilts = [0.0, 15.0, 30.0, 45.0, 60.0];
    let mut failures = Vec::new();
    for g in 0..20 {
        let h = rng.gen_range(20.0..50.0);
        let d = rng.gen_range(40.0..200.0);
        let az: f64 = rng.gen_range(0.0..360.0);
        let gs = EnuVector::from_az_el(az, 0.0) * d + EnuVector::new(0.0, 0.0, 2.0);
        let mut plan = MissionPlan::new("raster", frame());
        plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, h), 5.0).unwrap();
        let scan = ScanSpec { tilt_levels_deg: tilts.to_vec(), ..ScanSpec::default() };
        let plan = expand_schedule(&plan, &scan).unwrap();
        assert_eq!(plan.waypoint_count(), 120);
        let scene = Scene::free_space(station(gs.east_m, gs.north_m, gs.up_m, AntennaKind::Horn, vec![]));
        let cfg = CampaignConfig { uwb: None, ..Default::default() };
        let (_, ann) = fly(&plan, &scene, &cfg, 500 + g);
        let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples)).unwrap();
        let avgs = average_dwells(&rows, &AverageConfig::default()).averages;
        let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
        for t in tilts {
            let prof = power_angle_profile(&avgs, Station::Air, Axis::Azimuth, t).unwrap();
            assert_eq!(prof.bins.len(), 24);
            let b = prof.argmax().unwrap();
            if b.power_dbm > best.0 {
                best = (b.power_dbm, b.angle_deg, t);
            }
        }
        let depression = ((h - 2.0) / d).atan().to_degrees();
        let true_az = bin_azimuth(az, 15.0);
        let true_tilt = tilts.iter().copied().min_by(|a, b| (a - depression).abs().total_cmp(&(b - depression).abs())).unwrap();
        if best.1 != true_az || best.2 != true_tilt {
            failures.push(format!(
                "geometry {g}: az {az:.2} depression {depression:.2} -> recovered ({}, {}) expected ({true_az}, {true_tilt})",
                best.1, best.2
            ));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && elapsed < 30.0;
    report(5, ok, format!("{}/20 geometries recovered, {elapsed:.1} s {}", 20 - failures.len(), failures.join("; ")));
    assert!(ok);
}

// ---------------------------------------------------------------- 6

/// UAV above Building 1, ground station in the street in front of Building 2.
pub fn air_to_street(uav_agl_m: f64, hold_s: f64, sweep: Vec<PositionerStep>) -> (MissionPlan, Scene) {
    let mut plan = MissionPlan::new("air-to-street", frame());
    plan.push_waypoint_enu(EnuVector::new(-30.0, 0.0, uav_agl_m), hold_s).unwrap();
    let scene = Scene {
        buildings: vec![Building::new(-45.0, -50.0, -5.0, 50.0, 18.0), Building::new(5.0, -50.0, 25.0, 50.0, 20.0)],
        ground_station: station(0.0, 0.0, 2.0, AntennaKind::Horn, sweep),
        seed: 6,
    };
    (plan, scene)
}

#[test]
fn criterion_6_street_reflection_dominates() {
    let mut sweep = Vec::new();
    let mut t = 25.0;
    for az in [90.0, 270.0] {
        for k in 0..15 {
            sweep.push(PositionerStep { t_rel_s: t, az_deg: az, el_deg: -10.0 + 5.0 * k as f64 });
            t += 3.0;
        }
    }
    let (plan, scene) = air_to_street(50.0, 120.0, sweep);
    let cfg = CampaignConfig {
        uwb: None,
        mmwave: uavprop::sim::MmwaveConfig { air_antenna: AntennaKind::Omni, ..Default::default() },
        ..Default::default()
    };
    let (_, ann) = fly(&plan, &scene, &cfg, 6);
    let rows = parse_annotated_csv(&write_annotated_csv(&ann.samples)).unwrap();
    let avgs = average_dwells(&rows, &AverageConfig::default()).averages;
    // Image of the UAV in the Building 2 face x = 5 is (40, 0, 50).
    let specular = (48.0f64).atan2(40.0).to_degrees();
    let mut peaks = Vec::new();
    for az in [90.0, 270.0] {
        let prof = power_angle_profile(&avgs, Station::Ground, Axis::Elevation, az).unwrap();
        let b = *prof.argmax().unwrap();
        peaks.push((az, b.angle_deg, b.power_dbm));
    }
    let best = peaks.iter().copied().max_by(|a, b| a.2.total_cmp(&b.2)).unwrap();
    let ok = best.0 == 90.0 && (best.1 - specular).abs() <= 5.0 + 2.5;
    report(
        6,
        ok,
        format!(
            "PEP argmax az {} el {} ({:.2} dBm); specular elevation {specular:.2} deg; toward Building 1: el {} ({:.2} dBm)",
            best.0, best.1, best.2, peaks[1].1, peaks[1].2
        ),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 7

#[test]
fn criterion_7_canyon_trend() {
    let mut plan = MissionPlan::new("canyon", frame());
    for i in 0..20 {
        plan.push_waypoint_enu(EnuVector::new(100.0 + 5.0 * i as f64, 0.0, 16.0), 5.0).unwrap();
    }
    let scene = Scene {
        buildings: vec![Building::new(-30.0, -50.0, -10.0, 50.0, 30.0)],
        ground_station: station(0.0, 0.0, 2.0, AntennaKind::Omni, vec![PositionerStep { t_rel_s: 0.0, az_deg: 90.0, el_deg: 5.0 }]),
        seed: 7,
    };
    let (_, ann) = fly(&plan, &scene, &CampaignConfig::default(), 7);
    let policy = ThresholdPolicy::default();
    let mut wp = Vec::new();
    let mut gain = Vec::new();
    let mut rms = Vec::new();
    for d in average_pdps(&ann.samples, 5.0) {
        let s = delay_stats(&d.profile, &policy).unwrap();
        wp.push(d.key.wp_index as f64);
        gain.push(s.path_gain_db);
        rms.push(s.rms_delay_spread_ns);
    }
    let (rg, rr) = (spearman(&wp, &gain), spearman(&wp, &rms));
    let ok = wp.len() == 20 && rg < 0.0 && rr > 0.0;
    report(
        7,
        ok,
        format!(
            "{} dwells; Spearman(path gain) {rg:.3}, Spearman(rms delay spread) {rr:.3}; gain {:.2} -> {:.2} dB, rms {:.2} -> {:.2} ns",
            wp.len(),
            gain[0],
            gain[gain.len() - 1],
            rms[0],
            rms[rms.len() - 1]
        ),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 8

#[test]
fn criterion_8_data_integrity() {
    let mut plan = MissionPlan::new("integrity", frame());
    plan.push_roi_enu(EnuVector::new(60.0, 0.0, 2.0)).unwrap();
    plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, 19.0), 6.0).unwrap();
    plan.push_waypoint_enu(EnuVector::new(10.0, 10.0, 25.0), 6.0).unwrap();
    let scene = Scene::free_space(station(60.0, 0.0, 2.0, AntennaKind::Horn, vec![]));
    let cfg = CampaignConfig { gate_to_hovers: false, ..Default::default() };
    let (c, ann) = fly(&plan, &scene, &cfg, 8);
    let total = c.rss.len() + c.pdps.len();
    let conserved = ann.samples.len() + ann.orphans.len() == total;

    let auto: Vec<Timestamp> = c.flight.telemetry.iter().filter(|r| r.mode == FlightMode::Auto).map(|r| r.t).collect();
    let manual = c.flight.telemetry.iter().filter(|r| r.mode == FlightMode::Manual).count();
    let (first, last) = (auto[0], auto[auto.len() - 1]);
    let contaminated = ann.samples.iter().filter(|s| s.measurement.t() < first || s.measurement.t() > last).count();
    let manual_phase_orphans = ann.orphans.iter().filter(|o| o.measurement.t() < first || o.measurement.t() > last).count();

    let plan_text = serialize_plan(&plan);
    let tel = serialize_telemetry(&c.flight.telemetry);
    let rss = serialize_rss(&c.rss);
    let pdp = serialize_pdp(&c.pdps);
    let gl = serialize_ground_log(&c.ground_log);
    let reparsed_plan = parse_plan(&plan_text).unwrap();
    let tel_back = parse_telemetry(&tel).unwrap().records;
    let rss_back = parse_rss(&rss, -100.0).unwrap().records;
    let pdp_back = parse_pdp(&pdp, &PdpOptions::default()).unwrap().records;
    let gl_back = parse_ground_log(&gl).unwrap().records;
    let round_trips = [
        reparsed_plan == plan && serialize_plan(&reparsed_plan) == plan_text,
        tel_back == c.flight.telemetry && serialize_telemetry(&tel_back) == tel,
        rss_back == c.rss && serialize_rss(&rss_back) == rss,
        pdp_back.iter().zip(&c.pdps).all(|(a, b)| a.t() == b.t() && a.taps_db() == b.taps_db())
            && pdp_back.len() == c.pdps.len()
            && serialize_pdp(&pdp_back) == pdp,
        gl_back == c.ground_log && serialize_ground_log(&gl_back) == gl,
    ];

    let (c2, ann2) = fly(&plan, &scene, &cfg, 8);
    let rerun = serialize_telemetry(&c2.flight.telemetry) == tel
        && serialize_rss(&c2.rss) == rss
        && serialize_pdp(&c2.pdps) == pdp
        && serialize_ground_log(&c2.ground_log) == gl
        && write_annotated_csv(&ann2.samples) == write_annotated_csv(&ann.samples);

    let ok = conserved && contaminated == 0 && manual > 0 && manual_phase_orphans > 0 && round_trips.iter().all(|r| *r) && rerun;
    report(
        8,
        ok,
        format!(
            "{total} samples = {} annotated + {} orphans; {contaminated} annotated outside AUTO ({manual_phase_orphans} MANUAL-phase orphans); round trips plan/telemetry/rss/pdp/ground {round_trips:?}; rerun identical {rerun}",
            ann.samples.len(),
            ann.orphans.len()
        ),
    );
    assert!(ok);
}

// ---------------------------------------------------------------- 9

#[test]
fn criterion_9_plan_validation() {
    let plan_with = |wp: EnuVector, roi: Option<EnuVector>| {
        let mut p = MissionPlan::new("v", frame());
        if let Some(r) = roi {
            p.push_roi_enu(r).unwrap();
        }
        p.push_waypoint_enu(wp, 5.0).unwrap();
        validate(&p)
    };
    let at_cap = plan_with(EnuVector::new(0.0, 0.0, 50.0), None);
    let above_cap = plan_with(EnuVector::new(0.0, 0.0, 55.0), None);
    let roi_above = plan_with(EnuVector::new(0.0, 0.0, 20.0), Some(EnuVector::new(30.0, 0.0, 30.0)));
    let d = 20.0;
    let steepest = plan_with(EnuVector::new(0.0, 0.0, 45.0), Some(EnuVector::new(d, 0.0, 45.0 - d * 60f64.to_radians().tan())));
    let level = plan_with(EnuVector::new(0.0, 0.0, 20.0), Some(EnuVector::new(30.0, 0.0, 20.0)));

    let altitude = matches!(above_cap.violations.as_slice(), [Violation::AltitudeExceeded { .. }]);
    let pointing = matches!(roi_above.violations.as_slice(), [Violation::InfeasiblePointing { required_tilt_deg, .. }] if *required_tilt_deg < 0.0);
    let ok = at_cap.is_valid() && altitude && pointing && steepest.is_valid() && level.is_valid();
    report(
        9,
        ok,
        format!(
            "50.0 m valid {}; 55 m {:?}; ROI above {:?}; 60.0 deg tilt valid {}; 0 deg tilt valid {}",
            at_cap.is_valid(),
            above_cap.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            roi_above.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            steepest.is_valid(),
            level.is_valid()
        ),
    );
    assert!(ok);
}
