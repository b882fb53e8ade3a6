use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ingest::{GroundPositionerRecord, PowerDelayProfile, RssSample};
use crate::time::Timestamp;

use super::{bin_angle, bin_azimuth, HoverSegment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementKind {
    Rss,
    Pdp,
}

impl fmt::Display for MeasurementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasurementKind::Rss => "rss",
            MeasurementKind::Pdp => "pdp",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Measurement {
    Rss(RssSample),
    Pdp(PowerDelayProfile),
}

impl Measurement {
    pub fn t(&self) -> Timestamp {
        match self {
            Measurement::Rss(r) => r.t,
            Measurement::Pdp(p) => p.t(),
        }
    }

    pub fn kind(&self) -> MeasurementKind {
        match self {
            Measurement::Rss(_) => MeasurementKind::Rss,
            Measurement::Pdp(_) => MeasurementKind::Pdp,
        }
    }

    /// RSS in dBm, or total profile power in dB.
    pub fn power_dbm(&self) -> f64 {
        match self {
            Measurement::Rss(r) => r.rss_dbm,
            Measurement::Pdp(p) => p.total_power_db(),
        }
    }

    pub fn n_taps(&self) -> Option<usize> {
        match self {
            Measurement::Rss(_) => None,
            Measurement::Pdp(p) => Some(p.len()),
        }
    }

    pub fn below_sensitivity(&self) -> bool {
        matches!(self, Measurement::Rss(r) if r.below_sensitivity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnotateConfig {
    /// Ground positioner records farther than this from a sample are ignored.
    pub max_time_gap_s: f64,
    pub yaw_step_deg: f64,
    pub tilt_step_deg: f64,
}

impl Default for AnnotateConfig {
    fn default() -> Self {
        AnnotateConfig { max_time_gap_s: 1.0, yaw_step_deg: 15.0, tilt_step_deg: 15.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedSample {
    pub measurement: Measurement,
    pub segment: HoverSegment,
    pub yaw_bin_deg: f64,
    pub tilt_bin_deg: f64,
    pub ground_az_deg: Option<f64>,
    pub ground_el_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrphanReason {
    NoSegments,
    BeforeFirstHover,
    BetweenHovers,
    AfterLastHover,
}

impl fmt::Display for OrphanReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrphanReason::NoSegments => "no segment",
            OrphanReason::BeforeFirstHover => "before first hover",
            OrphanReason::BetweenHovers => "between hovers",
            OrphanReason::AfterLastHover => "after last hover",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orphan {
    pub measurement: Measurement,
    pub reason: OrphanReason,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Annotation {
    pub samples: Vec<AnnotatedSample>,
    pub orphans: Vec<Orphan>,
    pub warnings: Vec<String>,
}

/// Attach each measurement to the hover segment containing its timestamp.
///
/// `segments` must be in time order (as returned by
/// [`segment_hovers`](super::segment_hovers)); `ground_log` likewise.
pub fn annotate(
    measurements: Vec<Measurement>,
    segments: &[HoverSegment],
    ground_log: &[GroundPositionerRecord],
    cfg: &AnnotateConfig,
) -> Annotation {
    let mut out = Annotation::default();
    let mut unsynced = 0usize;
    for m in measurements {
        let t = m.t();
        let idx = segments.partition_point(|s| s.t_start <= t);
        let seg = idx.checked_sub(1).map(|i| &segments[i]).filter(|s| s.contains(t));
        let Some(seg) = seg else {
            let reason = if segments.is_empty() {
                OrphanReason::NoSegments
            } else if idx == 0 {
                OrphanReason::BeforeFirstHover
            } else if idx == segments.len() {
                OrphanReason::AfterLastHover
            } else {
                OrphanReason::BetweenHovers
            };
            out.orphans.push(Orphan { measurement: m, reason });
            continue;
        };
        let ground = nearest_ground(ground_log, t, cfg.max_time_gap_s);
        if ground.is_none() && !ground_log.is_empty() {
            unsynced += 1;
        }
        out.samples.push(AnnotatedSample {
            measurement: m,
            segment: *seg,
            yaw_bin_deg: bin_azimuth(seg.mean_yaw_deg, cfg.yaw_step_deg),
            tilt_bin_deg: bin_angle(seg.mean_tilt_deg, cfg.tilt_step_deg),
            ground_az_deg: ground.map(|g| g.az_deg),
            ground_el_deg: ground.map(|g| g.el_deg),
        });
    }
    if unsynced > 0 {
        out.warnings.push(format!(
            "{unsynced} sample(s) had no ground positioner record within {} s",
            cfg.max_time_gap_s
        ));
    }
    out
}

fn nearest_ground(log: &[GroundPositionerRecord], t: Timestamp, max_gap_s: f64) -> Option<&GroundPositionerRecord> {
    let i = log.partition_point(|g| g.t < t);
    [i.checked_sub(1), Some(i)]
        .into_iter()
        .flatten()
        .filter_map(|k| log.get(k))
        .map(|g| (t.seconds_since(g.t).abs(), g))
        .filter(|(gap, _)| *gap <= max_gap_s)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, g)| g)
}

/// Flat form of an annotated sample, one CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedRow {
    pub t_utc: Timestamp,
    pub wp_index: usize,
    pub roi_index: Option<usize>,
    pub yaw_bin_deg: f64,
    pub tilt_bin_deg: f64,
    pub ground_az_deg: Option<f64>,
    pub ground_el_deg: Option<f64>,
    pub kind: MeasurementKind,
    pub power_dbm: f64,
    pub n_taps: Option<usize>,
}

impl From<&AnnotatedSample> for AnnotatedRow {
    fn from(s: &AnnotatedSample) -> Self {
        AnnotatedRow {
            t_utc: s.measurement.t(),
            wp_index: s.segment.wp_index,
            roi_index: s.segment.active_roi_index,
            yaw_bin_deg: s.yaw_bin_deg,
            tilt_bin_deg: s.tilt_bin_deg,
            ground_az_deg: s.ground_az_deg,
            ground_el_deg: s.ground_el_deg,
            kind: s.measurement.kind(),
            power_dbm: s.measurement.power_dbm(),
            n_taps: s.measurement.n_taps(),
        }
    }
}

#[derive(Serialize)]
struct OrphanRow {
    t_utc: Timestamp,
    kind: MeasurementKind,
    power_dbm: f64,
    n_taps: Option<usize>,
    reason: String,
}

fn write_rows<T: Serialize>(rows: impl IntoIterator<Item = T>, header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

pub const ANNOTATED_HEADER: [&str; 10] = [
    "t_utc", "wp_index", "roi_index", "yaw_bin_deg", "tilt_bin_deg", "ground_az_deg", "ground_el_deg", "kind",
    "power_dbm", "n_taps",
];

pub fn write_annotated_csv(samples: &[AnnotatedSample]) -> String {
    write_rows(samples.iter().map(AnnotatedRow::from), &ANNOTATED_HEADER)
}

pub fn write_orphans_csv(orphans: &[Orphan]) -> String {
    let rows = orphans.iter().map(|o| OrphanRow {
        t_utc: o.measurement.t(),
        kind: o.measurement.kind(),
        power_dbm: o.measurement.power_dbm(),
        n_taps: o.measurement.n_taps(),
        reason: o.reason.to_string(),
    });
    write_rows(rows, &["t_utc", "kind", "power_dbm", "n_taps", "reason"])
}

/// Read back an annotated CSV. Errors carry the 1-based line number.
pub fn parse_annotated_csv(input: &str) -> Result<Vec<AnnotatedRow>, crate::ingest::ParseError> {
    use crate::ingest::ParseError;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input.as_bytes());
    let header = rdr.headers().map_err(|e| ParseError { line: 1, field: None, message: e.to_string() })?.clone();
    if header.iter().ne(ANNOTATED_HEADER.iter().copied()) {
        return Err(ParseError {
            line: 1,
            field: None,
            message: format!("expected header `{}`", ANNOTATED_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for rec in rdr.deserialize::<AnnotatedRow>() {
        let row = rec.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            let message = match e.kind() {
                csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
                _ => e.to_string(),
            };
            ParseError { line, field: None, message }
        })?;
        rows.push(row);
    }
    Ok(rows)
}
