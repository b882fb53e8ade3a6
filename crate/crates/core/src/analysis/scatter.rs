use crate::fuse::bin_angle;
use crate::geo::{angle_diff, direction_angles, EnuVector};

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanPlane {
    /// The UAV circles the spot at its height.
    Horizontal,
    /// The UAV flies an arc in the vertical plane holding the wall normal.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcGeometry {
    /// Illuminated point on the facade.
    pub spot: EnuVector,
    pub radius_m: f64,
    pub plane: ScanPlane,
    /// Azimuth of the outward wall normal.
    pub wall_normal_az_deg: f64,
    /// Largest accepted distance of a dwell from the arc.
    pub tolerance_m: f64,
    pub bin_deg: f64,
}

impl ArcGeometry {
    pub fn new(spot: EnuVector, radius_m: f64, plane: ScanPlane, wall_normal_az_deg: f64) -> Self {
        ArcGeometry { spot, radius_m, plane, wall_normal_az_deg, tolerance_m: 0.5, bin_deg: 5.0 }
    }

    fn normal(&self) -> EnuVector {
        EnuVector::from_az_el(self.wall_normal_az_deg, 0.0)
    }

    /// Signed aspect angle of a point seen from the spot, measured from the
    /// wall normal in the scan plane.
    pub fn aspect_deg(&self, p: &EnuVector) -> Result<f64, AnalysisError> {
        let d = *p - self.spot;
        let n = self.normal();
        let tangent = EnuVector::new(n.north_m, -n.east_m, 0.0);
        let (off_plane, aspect) = match self.plane {
            ScanPlane::Horizontal => {
                let (az, _) = direction_angles(&EnuVector::new(d.east_m, d.north_m, 0.0));
                (d.up_m, angle_diff(az, self.wall_normal_az_deg))
            }
            ScanPlane::Vertical => (d.dot(&tangent), d.up_m.atan2(d.dot(&n)).to_degrees()),
        };
        let in_plane = (d.norm().powi(2) - off_plane.powi(2)).max(0.0).sqrt();
        let miss = ((in_plane - self.radius_m).powi(2) + off_plane.powi(2)).sqrt();
        if miss > self.tolerance_m {
            return Err(AnalysisError::OffArc { distance_m: d.norm(), radius_m: self.radius_m });
        }
        Ok(aspect)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterBin {
    pub aspect_deg: f64,
    /// Relative to the pattern peak.
    pub rel_db: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPattern {
    pub geometry: ArcGeometry,
    pub bins: Vec<ScatterBin>,
}

impl ScatterPattern {
    pub fn peak(&self) -> Option<&ScatterBin> {
        self.bins.iter().find(|b| b.rel_db == 0.0)
    }
}

/// Back-scattering pattern from dwell positions and their levels (dBm).
pub fn scatter_pattern(dwells: &[(EnuVector, f64)], geometry: &ArcGeometry) -> Result<ScatterPattern, AnalysisError> {
    if dwells.is_empty() {
        return Err(AnalysisError::Empty);
    }
    if !(geometry.radius_m > 0.0 && geometry.bin_deg > 0.0 && geometry.tolerance_m >= 0.0) {
        return Err(AnalysisError::InvalidInput("arc radius and bin width must be positive".into()));
    }
    let mut acc: Vec<(f64, f64, usize)> = Vec::new();
    for (p, dbm) in dwells {
        let aspect = bin_angle(geometry.aspect_deg(p)?, geometry.bin_deg);
        let mw = 10f64.powf(dbm / 10.0);
        match acc.iter_mut().find(|e| (e.0 - aspect).abs() < 1e-9) {
            Some(e) => {
                e.1 += mw;
                e.2 += 1;
            }
            None => acc.push((aspect, mw, 1)),
        }
    }
    acc.sort_by(|a, b| a.0.total_cmp(&b.0));
    let levels: Vec<f64> = acc.iter().map(|e| 10.0 * (e.1 / e.2 as f64).log10()).collect();
    let peak = levels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let bins = acc
        .iter()
        .zip(&levels)
        .map(|(e, l)| ScatterBin { aspect_deg: e.0, rel_db: l - peak, n: e.2 })
        .collect();
    Ok(ScatterPattern { geometry: *geometry, bins })
}
