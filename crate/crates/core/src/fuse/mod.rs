//! Turns raw telemetry and measurement streams into per-dwell data.
//!
//! The flow is: drop MANUAL telemetry, segment the remaining records into
//! hover dwell states, match each measurement to the dwell containing its
//! timestamp, then average per dwell key in linear power.

mod annotate;
mod average;
mod segment;

use crate::ingest::{FlightMode, TelemetryRecord};

pub use annotate::{
    annotate, parse_annotated_csv, write_annotated_csv, write_orphans_csv, AnnotateConfig, AnnotatedRow,
    AnnotatedSample, Annotation, Measurement, MeasurementKind, Orphan, OrphanReason,
};
pub use average::{
    average_dwells, average_pdps, mean_dbm, AverageConfig, CoverageHole, DwellAverage, DwellKey, DwellPdp,
    DwellSummary,
};
pub use segment::{segment_hovers, HoverSegment, SegmenterConfig};

/// Keep AUTO-mode records only.
pub fn discard_manual(telemetry: &[TelemetryRecord]) -> Vec<TelemetryRecord> {
    telemetry.iter().filter(|r| r.mode == FlightMode::Auto).copied().collect()
}

/// Snap an angle to the nearest multiple of `step_deg`.
pub fn bin_angle(deg: f64, step_deg: f64) -> f64 {
    let b = (deg / step_deg).round() * step_deg;
    if b == 0.0 {
        0.0
    } else {
        b
    }
}

/// Like [`bin_angle`] but wrapped into [0, 360).
pub fn bin_azimuth(deg: f64, step_deg: f64) -> f64 {
    let b = crate::geo::wrap_360(bin_angle(crate::geo::wrap_360(deg), step_deg));
    if b == 0.0 {
        0.0
    } else {
        b
    }
}
