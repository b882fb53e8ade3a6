use crate::geo::{angle_diff, wrap_360, EnuVector};
use crate::ingest::TelemetryRecord;
use crate::mission::{MissionPlan, PlannedWaypoint};
use crate::time::Timestamp;

use super::discard_manual;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmenterConfig {
    /// Records farther than this from a waypoint are not hovering on it.
    pub capture_radius_m: f64,
    pub min_dwell_s: f64,
    /// A gap between consecutive records larger than this ends a hover.
    pub max_record_gap_s: f64,
    /// Yaw or tilt moving this far from a dwell's first record starts a new dwell.
    pub reorient_threshold_deg: f64,
    /// Leading/trailing records farther than this from the dwell median are trimmed.
    pub settle_tolerance_deg: f64,
    /// Dropped after each reorientation.
    pub guard_s: f64,
    /// Largest gap between flown and commanded pointing when matching to a waypoint.
    pub pointing_match_deg: f64,
}

impl Default for SegmenterConfig {
    fn default() -> Self {
        SegmenterConfig {
            capture_radius_m: 1.0,
            min_dwell_s: 3.0,
            max_record_gap_s: 1.0,
            reorient_threshold_deg: 5.0,
            settle_tolerance_deg: 2.0,
            guard_s: 0.5,
            pointing_match_deg: 5.0,
        }
    }
}

/// One dwell state: the UAV held position and pointing for a while.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoverSegment {
    /// Hover site (the first waypoint ordinal at this position).
    pub wp_index: usize,
    /// The waypoint this dwell was matched to.
    pub dwell_wp_index: usize,
    pub active_roi_index: Option<usize>,
    pub t_start: Timestamp,
    pub t_end: Timestamp,
    pub mean_position: EnuVector,
    pub mean_yaw_deg: f64,
    pub mean_tilt_deg: f64,
}

impl HoverSegment {
    pub fn duration_s(&self) -> f64 {
        self.t_end.seconds_since(self.t_start)
    }

    pub fn contains(&self, t: Timestamp) -> bool {
        self.t_start <= t && t <= self.t_end
    }
}

#[derive(Clone, Copy)]
struct Rec {
    t: Timestamp,
    pos: EnuVector,
    yaw: f64,
    tilt: f64,
}

struct Dwell {
    site: EnuVector,
    t_start: Timestamp,
    t_end: Timestamp,
    position: EnuVector,
    yaw: f64,
    tilt: f64,
}

/// Find dwell states in AUTO telemetry and match them to plan waypoints.
pub fn segment_hovers(telemetry: &[TelemetryRecord], plan: &MissionPlan, cfg: &SegmenterConfig) -> Vec<HoverSegment> {
    let wps = plan.planned_waypoints();
    let wp_pos: Vec<Option<EnuVector>> = wps.iter().map(|w| plan.frame.to_enu(&w.waypoint.position).ok()).collect();
    let recs: Vec<Rec> = discard_manual(telemetry)
        .iter()
        .filter_map(|r| {
            let pos = plan.frame.to_enu(&r.position).ok()?;
            Some(Rec { t: r.t, pos, yaw: r.yaw_deg, tilt: r.gimbal_tilt_deg })
        })
        .collect();

    let mut dwells = Vec::new();
    for (site, run) in hover_runs(&recs, &wp_pos, cfg) {
        dwells.extend(run_dwells(site, &run, cfg));
    }

    let mut out = Vec::new();
    let mut cursor = 0;
    for d in dwells {
        let hit = (cursor..wps.len()).find(|&k| matches_waypoint(plan, &wps[k], wp_pos[k], &d, cfg));
        if let Some(k) = hit {
            cursor = k + 1;
            out.push(HoverSegment {
                wp_index: wps[k].site_index,
                dwell_wp_index: k,
                active_roi_index: wps[k].roi.map(|r| r.0),
                t_start: d.t_start,
                t_end: d.t_end,
                mean_position: d.position,
                mean_yaw_deg: d.yaw,
                mean_tilt_deg: d.tilt,
            });
        }
    }
    out
}

fn matches_waypoint(plan: &MissionPlan, wp: &PlannedWaypoint, pos: Option<EnuVector>, d: &Dwell, cfg: &SegmenterConfig) -> bool {
    let Some(pos) = pos else { return false };
    if pos.distance(&d.site) > cfg.capture_radius_m {
        return false;
    }
    match plan.commanded_pointing(wp) {
        Some(Ok(cmd)) => {
            angle_diff(d.yaw, cmd.yaw_deg).abs() <= cfg.pointing_match_deg
                && (d.tilt - cmd.tilt_deg).abs() <= cfg.pointing_match_deg
        }
        _ => true,
    }
}

/// Maximal runs of consecutive records within the capture radius of one site.
fn hover_runs(recs: &[Rec], sites: &[Option<EnuVector>], cfg: &SegmenterConfig) -> Vec<(EnuVector, Vec<Rec>)> {
    let nearest = |p: &EnuVector| {
        sites
            .iter()
            .flatten()
            .map(|s| (s.distance(p), *s))
            .filter(|(d, _)| *d <= cfg.capture_radius_m)
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, s)| s)
    };
    let mut runs: Vec<(EnuVector, Vec<Rec>)> = Vec::new();
    let mut cur: Option<(EnuVector, Vec<Rec>)> = None;
    for r in recs {
        let site = nearest(&r.pos);
        if let (Some((p, run)), Some(q)) = (cur.as_mut(), site) {
            let last = run.last().expect("runs are non-empty");
            if q.distance(p) < 1e-6 && r.t.seconds_since(last.t) <= cfg.max_record_gap_s {
                run.push(*r);
                continue;
            }
        }
        runs.extend(cur.take());
        cur = site.map(|q| (q, vec![*r]));
    }
    runs.extend(cur);
    runs
}

fn run_dwells(site: EnuVector, run: &[Rec], cfg: &SegmenterConfig) -> Vec<Dwell> {
    // change-points against each state's first record
    let mut states: Vec<&[Rec]> = Vec::new();
    let mut start = 0;
    for i in 1..run.len() {
        let a = &run[start];
        let r = &run[i];
        if angle_diff(r.yaw, a.yaw).abs() > cfg.reorient_threshold_deg
            || (r.tilt - a.tilt).abs() > cfg.reorient_threshold_deg
        {
            states.push(&run[start..i]);
            start = i;
        }
    }
    if !run.is_empty() {
        states.push(&run[start..]);
    }

    let mut out: Vec<Dwell> = Vec::new();
    for state in states {
        let Some(settled) = trim_unsettled(state, cfg.settle_tolerance_deg) else { continue };
        let first = settled[0].t;
        let t_end = settled[settled.len() - 1].t;
        let t_start = match out.last() {
            Some(prev) => first.max(prev.t_end.offset_secs(cfg.guard_s)),
            None => first,
        };
        if t_end.seconds_since(t_start) < cfg.min_dwell_s - 1e-9 {
            continue;
        }
        let kept: Vec<&Rec> = settled.iter().filter(|r| r.t >= t_start).collect();
        let n = kept.len() as f64;
        let position = kept.iter().fold(EnuVector::ZERO, |acc, r| acc + r.pos) * (1.0 / n);
        let yaw0 = kept[0].yaw;
        let yaw = wrap_360(yaw0 + kept.iter().map(|r| angle_diff(r.yaw, yaw0)).sum::<f64>() / n);
        let tilt = kept.iter().map(|r| r.tilt).sum::<f64>() / n;
        out.push(Dwell { site, t_start, t_end, position, yaw, tilt });
    }
    out
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn trim_unsettled(state: &[Rec], tol: f64) -> Option<&[Rec]> {
    let yaw0 = state.first()?.yaw;
    let yaw_med = median(state.iter().map(|r| angle_diff(r.yaw, yaw0)).collect());
    let tilt_med = median(state.iter().map(|r| r.tilt).collect());
    let settled = |r: &Rec| (angle_diff(r.yaw, yaw0) - yaw_med).abs() <= tol && (r.tilt - tilt_med).abs() <= tol;
    let lo = state.iter().position(settled)?;
    let hi = state.iter().rposition(settled)?;
    Some(&state[lo..=hi])
}
