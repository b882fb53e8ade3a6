//! Geodetic positions, the campaign's local east-north-up frame, and
//! pointing angles between local positions.
//!
//! The conversion is a flat local tangent plane: east/north offsets are the
//! longitude/latitude differences scaled by WGS84 metres-per-degree at the
//! frame origin. Campaign sites span a few hundred metres, so the error of
//! this mapping stays well below the positioning accuracy of the UAV.
//! Altitudes are metres above the ground level of the frame origin and pass
//! through unchanged.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Largest horizontal distance from the frame origin accepted by the
/// tangent-plane conversion, metres.
pub const SMALL_AREA_BOUND_M: f64 = 10_000.0;

const WGS84_A: f64 = 6_378_137.0;
const WGS84_F: f64 = 1.0 / 298.257_223_563;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeoError {
    #[error("{field} {value} out of range")]
    OutOfRange { field: &'static str, value: f64 },
    #[error("point is {distance_m:.1} m from the frame origin (limit {SMALL_AREA_BOUND_M} m)")]
    TooFar { distance_m: f64 },
    #[error("zero-length direction vector")]
    ZeroLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat_deg: f64,
    pub lon_deg: f64,
    /// Metres above ground level of the campaign origin.
    pub alt_m: f64,
}

impl GeoPoint {
    pub fn new(lat_deg: f64, lon_deg: f64, alt_m: f64) -> Result<Self, GeoError> {
        let p = GeoPoint { lat_deg, lon_deg, alt_m };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<(), GeoError> {
        if !(-90.0..=90.0).contains(&self.lat_deg) {
            return Err(GeoError::OutOfRange { field: "lat_deg", value: self.lat_deg });
        }
        if !(self.lon_deg > -180.0 && self.lon_deg <= 180.0) {
            return Err(GeoError::OutOfRange { field: "lon_deg", value: self.lon_deg });
        }
        if !self.alt_m.is_finite() {
            return Err(GeoError::OutOfRange { field: "alt_m", value: self.alt_m });
        }
        Ok(())
    }
}

/// Local east-north-up displacement in metres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnuVector {
    pub east_m: f64,
    pub north_m: f64,
    pub up_m: f64,
}

impl EnuVector {
    pub const ZERO: EnuVector = EnuVector { east_m: 0.0, north_m: 0.0, up_m: 0.0 };

    pub const fn new(east_m: f64, north_m: f64, up_m: f64) -> Self {
        EnuVector { east_m, north_m, up_m }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn horizontal_norm(&self) -> f64 {
        self.east_m.hypot(self.north_m)
    }

    pub fn dot(&self, other: &EnuVector) -> f64 {
        self.east_m * other.east_m + self.north_m * other.north_m + self.up_m * other.up_m
    }

    pub fn cross(&self, o: &EnuVector) -> EnuVector {
        EnuVector::new(
            self.north_m * o.up_m - self.up_m * o.north_m,
            self.up_m * o.east_m - self.east_m * o.up_m,
            self.east_m * o.north_m - self.north_m * o.east_m,
        )
    }

    pub fn distance(&self, other: &EnuVector) -> f64 {
        (*other - *self).norm()
    }

    /// Unit vector in the same direction, or `None` for a zero vector.
    pub fn normalized(&self) -> Option<EnuVector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.east_m.is_finite() && self.north_m.is_finite() && self.up_m.is_finite()
    }

    /// Unit vector for an azimuth (clockwise from north) and elevation
    /// (positive up), both in degrees.
    pub fn from_az_el(azimuth_deg: f64, elevation_deg: f64) -> EnuVector {
        let (az, el) = (azimuth_deg.to_radians(), elevation_deg.to_radians());
        EnuVector::new(el.cos() * az.sin(), el.cos() * az.cos(), el.sin())
    }

    /// Linear interpolation, `frac` in [0, 1].
    pub fn lerp(&self, other: &EnuVector, frac: f64) -> EnuVector {
        *self + (*other - *self) * frac
    }
}

impl Add for EnuVector {
    type Output = EnuVector;
    fn add(self, o: EnuVector) -> EnuVector {
        EnuVector::new(self.east_m + o.east_m, self.north_m + o.north_m, self.up_m + o.up_m)
    }
}

impl Sub for EnuVector {
    type Output = EnuVector;
    fn sub(self, o: EnuVector) -> EnuVector {
        EnuVector::new(self.east_m - o.east_m, self.north_m - o.north_m, self.up_m - o.up_m)
    }
}

impl Mul<f64> for EnuVector {
    type Output = EnuVector;
    fn mul(self, k: f64) -> EnuVector {
        EnuVector::new(self.east_m * k, self.north_m * k, self.up_m * k)
    }
}

/// One campaign site's local frame. The origin's altitude is ground level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFrame {
    origin: GeoPoint,
    m_per_deg_lat: f64,
    m_per_deg_lon: f64,
}

impl LocalFrame {
    pub fn new(lat_deg: f64, lon_deg: f64) -> Result<Self, GeoError> {
        let origin = GeoPoint::new(lat_deg, lon_deg, 0.0)?;
        if lat_deg.abs() >= 89.9 {
            // Longitude scale collapses at the poles.
            return Err(GeoError::OutOfRange { field: "lat_deg", value: lat_deg });
        }
        let (m_per_deg_lat, m_per_deg_lon) = meters_per_degree(lat_deg);
        Ok(LocalFrame { origin, m_per_deg_lat, m_per_deg_lon })
    }

    pub fn origin(&self) -> GeoPoint {
        self.origin
    }

    pub fn to_enu(&self, p: &GeoPoint) -> Result<EnuVector, GeoError> {
        p.check()?;
        let dlat = p.lat_deg - self.origin.lat_deg;
        let dlon = wrap_lon_delta(p.lon_deg - self.origin.lon_deg);
        let v = EnuVector::new(dlon * self.m_per_deg_lon, dlat * self.m_per_deg_lat, p.alt_m);
        let d = v.horizontal_norm();
        if d > SMALL_AREA_BOUND_M {
            return Err(GeoError::TooFar { distance_m: d });
        }
        Ok(v)
    }

    pub fn from_enu(&self, v: &EnuVector) -> Result<GeoPoint, GeoError> {
        if !v.is_finite() {
            return Err(GeoError::OutOfRange { field: "enu", value: f64::NAN });
        }
        let d = v.horizontal_norm();
        if d > SMALL_AREA_BOUND_M {
            return Err(GeoError::TooFar { distance_m: d });
        }
        let lat = self.origin.lat_deg + v.north_m / self.m_per_deg_lat;
        let lon = normalize_lon(self.origin.lon_deg + v.east_m / self.m_per_deg_lon);
        GeoPoint::new(lat, lon, v.up_m)
    }
}

/// WGS84 metres per degree of latitude and longitude at `lat_deg`, from the
/// meridional and prime-vertical radii of curvature.
pub fn meters_per_degree(lat_deg: f64) -> (f64, f64) {
    let e2 = WGS84_F * (2.0 - WGS84_F);
    let phi = lat_deg.to_radians();
    let w = 1.0 - e2 * phi.sin().powi(2);
    let meridional = WGS84_A * (1.0 - e2) / w.powf(1.5);
    let prime_vertical = WGS84_A / w.sqrt();
    let k = std::f64::consts::PI / 180.0;
    (meridional * k, prime_vertical * phi.cos() * k)
}

fn wrap_lon_delta(d: f64) -> f64 {
    let mut d = d % 360.0;
    if d > 180.0 {
        d -= 360.0;
    } else if d <= -180.0 {
        d += 360.0;
    }
    d
}

fn normalize_lon(lon: f64) -> f64 {
    wrap_lon_delta(lon)
}

/// Wrap an angle into [0, 360).
pub fn wrap_360(deg: f64) -> f64 {
    let w = deg.rem_euclid(360.0);
    // rem_euclid can return 360.0 for tiny negative inputs
    if w >= 360.0 {
        0.0
    } else {
        w
    }
}

/// Signed smallest difference `a - b` in (-180, 180].
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = wrap_360(a - b);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// Azimuth (clockwise from north, [0, 360)) and elevation (positive when
/// `to` is above `from`, [-90, 90]) of the direction from `from` to `to`.
///
/// Straight up or down has no horizontal component; the azimuth is then
/// reported as 0.
pub fn azimuth_elevation(from: &EnuVector, to: &EnuVector) -> Result<(f64, f64), GeoError> {
    let d = *to - *from;
    if d.norm() == 0.0 {
        return Err(GeoError::ZeroLength);
    }
    Ok(direction_angles(&d))
}

/// Azimuth/elevation of a non-zero direction vector.
pub fn direction_angles(d: &EnuVector) -> (f64, f64) {
    let horiz = d.horizontal_norm();
    let az = if horiz == 0.0 { 0.0 } else { wrap_360(d.east_m.atan2(d.north_m).to_degrees()) };
    let el = d.up_m.atan2(horiz).to_degrees();
    (az, el)
}
