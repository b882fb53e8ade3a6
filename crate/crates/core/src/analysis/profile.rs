use crate::fuse::{bin_azimuth, DwellAverage};
use crate::geo::angle_diff;

use super::AnalysisError;

/// Which end of the link the profile describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Station {
    /// UAV gimbal angles (yaw, tilt).
    Air,
    /// Ground positioner angles (azimuth, elevation).
    Ground,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Azimuth,
    /// For the air station this is the gimbal tilt, downward positive.
    Elevation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularBin {
    pub angle_deg: f64,
    pub power_dbm: f64,
    pub n_dwells: usize,
    pub n_samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngularProfile {
    pub station: Station,
    pub axis: Axis,
    /// Value of the other axis shared by every bin.
    pub fixed_deg: f64,
    /// Raster step; `None` for a single-bin profile.
    pub step_deg: Option<f64>,
    pub bins: Vec<AngularBin>,
    /// Raster angles with no data.
    pub missing_deg: Vec<f64>,
}

impl AngularProfile {
    pub fn argmax(&self) -> Option<&AngularBin> {
        self.bins.iter().max_by(|a, b| a.power_dbm.total_cmp(&b.power_dbm))
    }
}

const ANGLE_EPS: f64 = 1e-6;

/// Collect dwell averages into a power-angle profile along `axis`, keeping
/// only dwells whose other angle equals `fixed_deg`.
///
/// All averages must come from one waypoint. Repeated bins are merged by a
/// sample-weighted linear mean; gaps in the raster are listed, never filled.
pub fn power_angle_profile(
    avgs: &[DwellAverage],
    station: Station,
    axis: Axis,
    fixed_deg: f64,
) -> Result<AngularProfile, AnalysisError> {
    if avgs.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let mut wps: Vec<usize> = avgs.iter().map(|a| a.key.wp_index).collect();
    wps.sort_unstable();
    wps.dedup();
    if wps.len() > 1 {
        return Err(AnalysisError::MixedWaypoints(wps));
    }

    // (angle on the profile axis, angle on the fixed axis)
    let angles = |a: &DwellAverage| -> Option<(f64, f64)> {
        let k = &a.key;
        let (az, el) = match station {
            Station::Air => (k.yaw_bin_deg, k.tilt_bin_deg),
            Station::Ground => (k.ground_az_bin_deg?, k.ground_el_bin_deg?),
        };
        Some(match axis {
            Axis::Azimuth => (az, el),
            Axis::Elevation => (el, az),
        })
    };
    let on_fixed = |other: f64| match axis {
        Axis::Azimuth => (other - fixed_deg).abs() < ANGLE_EPS,
        Axis::Elevation => angle_diff(other, fixed_deg).abs() < ANGLE_EPS,
    };

    // angle -> (sum of mW weighted by samples, samples, dwells)
    let mut acc: Vec<(f64, f64, usize, usize)> = Vec::new();
    for a in avgs {
        let Some((angle, other)) = angles(a) else { continue };
        if !on_fixed(other) {
            continue;
        }
        let w = a.n_samples as f64;
        let mw = 10f64.powf(a.avg_power_dbm / 10.0);
        match acc.iter_mut().find(|e| same_angle(e.0, angle, axis)) {
            Some(e) => {
                e.1 += mw * w;
                e.2 += a.n_samples;
                e.3 += 1;
            }
            None => acc.push((angle, mw * w, a.n_samples, 1)),
        }
    }
    acc.sort_by(|a, b| a.0.total_cmp(&b.0));
    let bins: Vec<AngularBin> = acc
        .iter()
        .map(|&(angle_deg, s, n, d)| AngularBin {
            angle_deg,
            power_dbm: 10.0 * (s / n.max(1) as f64).log10(),
            n_dwells: d,
            n_samples: n,
        })
        .collect();

    let angles: Vec<f64> = bins.iter().map(|b| b.angle_deg).collect();
    let (step_deg, missing_deg) = raster(&angles, axis)?;
    Ok(AngularProfile { station, axis, fixed_deg, step_deg, bins, missing_deg })
}

fn same_angle(a: f64, b: f64, axis: Axis) -> bool {
    match axis {
        Axis::Azimuth => angle_diff(a, b).abs() < ANGLE_EPS,
        Axis::Elevation => (a - b).abs() < ANGLE_EPS,
    }
}

/// Finest raster step accepted. Angles that only share a finer grid are
/// treated as not being on a raster at all.
const MIN_STEP_DEG: f64 = 1.0;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn raster(angles: &[f64], axis: Axis) -> Result<(Option<f64>, Vec<f64>), AnalysisError> {
    if angles.len() < 2 {
        return Ok((None, Vec::new()));
    }
    // work in micro-degrees so the step is an exact common divisor
    let micro = |a: f64| (a * 1e6).round() as i64;
    let mut g = angles.windows(2).map(|w| micro(w[1] - w[0])).fold(0, gcd);
    if axis == Axis::Azimuth {
        g = gcd(g, micro(360.0));
    }
    let step = g as f64 / 1e6;
    if step < MIN_STEP_DEG {
        return Err(AnalysisError::NonUniformRaster(angles.to_vec()));
    }
    let first = angles[0];
    let span = match axis {
        Axis::Azimuth => 360.0 - step,
        Axis::Elevation => angles[angles.len() - 1] - first,
    };
    let count = (span / step).round() as usize + 1;
    let missing = (0..count)
        .map(|k| first + k as f64 * step)
        .map(|a| if axis == Axis::Azimuth { bin_azimuth(a, step) } else { a })
        .filter(|a| !angles.iter().any(|b| same_angle(*a, *b, axis)))
        .collect();
    Ok((Some(step), missing))
}
