use crate::analysis::friis_path_gain;
use crate::devices::SPEED_OF_LIGHT;
use crate::geo::EnuVector;

use super::scene::{Building, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayKind {
    Los,
    Reflection,
    Diffraction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub kind: RayKind,
    pub path_length_m: f64,
    /// Propagation gain without antennas, dB.
    pub gain_db: f64,
    pub delay_ns: f64,
    /// Unit vector leaving the transmitter.
    pub departure: EnuVector,
    /// Unit vector from the receiver toward where the ray comes from.
    pub arrival: EnuVector,
    /// Reflection point or diffracting edge point.
    pub via: Option<EnuVector>,
    pub building: Option<usize>,
}

/// Knife-edge diffraction loss for Fresnel parameter `v`, dB.
pub fn knife_edge_loss_db(v: f64) -> f64 {
    if v <= -0.78 {
        return 0.0;
    }
    let a = v - 0.1;
    6.9 + 20.0 * ((a * a + 1.0).sqrt() + a).log10()
}

const FACE_EPS: f64 = 1e-6;

/// Whether the open segment `a`-`b` passes through the interior of `bld`.
/// Touching a face does not count.
fn crosses(a: &EnuVector, b: &EnuVector, bld: &Building) -> bool {
    let lo = [bld.x_min + FACE_EPS, bld.y_min + FACE_EPS, FACE_EPS];
    let hi = [bld.x_max - FACE_EPS, bld.y_max - FACE_EPS, bld.height_m - FACE_EPS];
    let p = [a.east_m, a.north_m, a.up_m];
    let d = [b.east_m - a.east_m, b.north_m - a.north_m, b.up_m - a.up_m];
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for k in 0..3 {
        if d[k].abs() < 1e-15 {
            if p[k] <= lo[k] || p[k] >= hi[k] {
                return false;
            }
            continue;
        }
        let (mut ta, mut tb) = ((lo[k] - p[k]) / d[k], (hi[k] - p[k]) / d[k]);
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
        if t0 >= t1 {
            return false;
        }
    }
    true
}

fn clear(scene: &Scene, a: &EnuVector, b: &EnuVector) -> bool {
    !scene.buildings.iter().any(|bld| crosses(a, b, bld))
}

fn unit(v: EnuVector) -> EnuVector {
    v.normalized().unwrap_or(EnuVector::ZERO)
}

fn ray(kind: RayKind, length: f64, gain_db: f64, tx: &EnuVector, rx: &EnuVector, via: Option<(EnuVector, usize)>) -> Ray {
    let (first, last) = match via {
        Some((p, _)) => (p, p),
        None => (*rx, *tx),
    };
    Ray {
        kind,
        path_length_m: length,
        gain_db,
        delay_ns: length / SPEED_OF_LIGHT * 1e9,
        departure: unit(first - *tx),
        arrival: unit(last - *rx),
        via: via.map(|v| v.0),
        building: via.map(|v| v.1),
    }
}

fn free_space_db(freq_ghz: f64, length_m: f64) -> f64 {
    friis_path_gain(freq_ghz, length_m).expect("positive frequency and length")
}

/// Vertical wall faces as (axis, plane coordinate, outward sign).
fn faces(b: &Building) -> [(usize, f64, f64); 4] {
    [(0, b.x_min, -1.0), (0, b.x_max, 1.0), (1, b.y_min, -1.0), (1, b.y_max, 1.0)]
}

fn coord(v: &EnuVector, axis: usize) -> f64 {
    if axis == 0 {
        v.east_m
    } else {
        v.north_m
    }
}

fn with_coord(v: &EnuVector, axis: usize, x: f64) -> EnuVector {
    let mut out = *v;
    if axis == 0 {
        out.east_m = x;
    } else {
        out.north_m = x;
    }
    out
}

fn reflections(scene: &Scene, tx: &EnuVector, rx: &EnuVector, freq_ghz: f64, out: &mut Vec<Ray>) {
    for (i, b) in scene.buildings.iter().enumerate() {
        for (axis, plane, sign) in faces(b) {
            let (ct, cr) = (coord(tx, axis) - plane, coord(rx, axis) - plane);
            if ct * sign <= 0.0 || cr * sign <= 0.0 {
                continue;
            }
            let image = with_coord(tx, axis, plane - ct);
            let s = (plane - coord(&image, axis)) / (coord(rx, axis) - coord(&image, axis));
            let p = with_coord(&image.lerp(rx, s), axis, plane);
            let (along, lo, hi) = if axis == 0 { (p.north_m, b.y_min, b.y_max) } else { (p.east_m, b.x_min, b.x_max) };
            if along < lo || along > hi || p.up_m < 0.0 || p.up_m > b.height_m {
                continue;
            }
            if !clear(scene, tx, &p) || !clear(scene, &p, rx) {
                continue;
            }
            let length = image.distance(rx);
            out.push(ray(RayKind::Reflection, length, free_space_db(freq_ghz, length) + b.reflection_coeff_db, tx, rx, Some((p, i))));
        }
    }
}

/// Parameters in [0, 1] where the horizontal projection of `tx`-`rx`
/// enters and leaves the footprint of `b`.
fn footprint_crossings(tx: &EnuVector, rx: &EnuVector, b: &Building) -> Option<(f64, f64)> {
    let p = [tx.east_m, tx.north_m];
    let d = [rx.east_m - tx.east_m, rx.north_m - tx.north_m];
    let (lo, hi) = ([b.x_min, b.y_min], [b.x_max, b.y_max]);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for k in 0..2 {
        if d[k].abs() < 1e-15 {
            if p[k] < lo[k] || p[k] > hi[k] {
                return None;
            }
            continue;
        }
        let (mut ta, mut tb) = ((lo[k] - p[k]) / d[k], (hi[k] - p[k]) / d[k]);
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
    }
    (t0 <= t1).then_some((t0, t1))
}

fn diffractions(scene: &Scene, tx: &EnuVector, rx: &EnuVector, freq_ghz: f64, out: &mut Vec<Ray>) {
    let wavelength = SPEED_OF_LIGHT / (freq_ghz * 1e9);
    let los = tx.distance(rx);
    for (i, b) in scene.buildings.iter().enumerate() {
        if !crosses(tx, rx, b) {
            continue;
        }
        let Some((s0, s1)) = footprint_crossings(tx, rx, b) else { continue };
        for s in [s0, s1] {
            if s <= 0.0 || s >= 1.0 {
                continue;
            }
            let on_los = tx.lerp(rx, s);
            let edge = EnuVector::new(on_los.east_m, on_los.north_m, b.height_m);
            let h = edge.up_m - on_los.up_m;
            if h <= 0.0 || !clear(scene, tx, &edge) || !clear(scene, &edge, rx) {
                continue;
            }
            let (d1, d2) = (s * los, (1.0 - s) * los);
            let v = h * (2.0 * (d1 + d2) / (wavelength * d1 * d2)).sqrt();
            let length = tx.distance(&edge) + edge.distance(rx);
            let gain = free_space_db(freq_ghz, length) - knife_edge_loss_db(v);
            out.push(ray(RayKind::Diffraction, length, gain, tx, rx, Some((edge, i))));
        }
    }
}

/// Line of sight, single wall reflections and single rooftop knife edges
/// between `tx` and `rx`. Coincident end points give no rays.
pub fn trace_rays(scene: &Scene, tx: &EnuVector, rx: &EnuVector, freq_ghz: f64) -> Vec<Ray> {
    let mut out = Vec::new();
    let los = tx.distance(rx);
    if los <= 0.0 {
        return out;
    }
    if clear(scene, tx, rx) {
        out.push(ray(RayKind::Los, los, free_space_db(freq_ghz, los), tx, rx, None));
    }
    reflections(scene, tx, rx, freq_ghz, &mut out);
    diffractions(scene, tx, rx, freq_ghz, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{AntennaKind, GroundStation};
    use proptest::prelude::*;

    fn scene(buildings: Vec<Building>) -> Scene {
        Scene {
            buildings,
            ground_station: GroundStation { e: 0.0, n: 0.0, u: 2.0, antenna: AntennaKind::Horn, positioner: vec![] },
            seed: 0,
        }
    }

    fn two_buildings() -> Scene {
        scene(vec![Building::new(-45.0, -50.0, -5.0, 50.0, 18.0), Building::new(5.0, -50.0, 25.0, 50.0, 20.0)])
    }

    #[test]
    fn knife_edge_reference_values() {
        assert!((knife_edge_loss_db(0.0) - 6.03).abs() < 0.01);
        assert!((knife_edge_loss_db(1.0) - 13.93).abs() < 0.01);
        assert_eq!(knife_edge_loss_db(-1.0), 0.0);
    }

    #[test]
    fn free_space_has_one_los_ray() {
        let rays = trace_rays(&scene(vec![]), &EnuVector::new(0.0, 0.0, 10.0), &EnuVector::new(100.0, 0.0, 10.0), 27.0);
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].kind, RayKind::Los);
        assert!((rays[0].gain_db - -101.08).abs() < 0.01);
        assert!((rays[0].delay_ns - 333.564).abs() < 1e-3);
        assert_eq!(rays[0].departure, EnuVector::new(1.0, 0.0, 0.0));
        assert_eq!(rays[0].arrival, EnuVector::new(-1.0, 0.0, 0.0));
        assert!(trace_rays(&scene(vec![]), &EnuVector::ZERO, &EnuVector::ZERO, 27.0).is_empty());
    }

    #[test]
    fn air_to_street_mechanisms() {
        let s = two_buildings();
        let uav = EnuVector::new(-30.0, 0.0, 50.0);
        let gs = EnuVector::new(0.0, 0.0, 2.0);
        let rays = trace_rays(&s, &uav, &gs, 27.0);
        assert!(rays.iter().all(|r| r.kind != RayKind::Los));
        let refl = rays.iter().find(|r| r.kind == RayKind::Reflection).unwrap();
        assert_eq!(refl.building, Some(1));
        let p = refl.via.unwrap();
        assert!((p.east_m - 5.0).abs() < 1e-9 && (p.up_m - 8.0).abs() < 1e-9);
        let el = refl.arrival.up_m.asin().to_degrees();
        assert!((el - 50.194).abs() < 1e-3);
        let diff = rays.iter().find(|r| r.kind == RayKind::Diffraction).unwrap();
        assert_eq!(diff.building, Some(0));
        assert!((diff.arrival.up_m.asin().to_degrees() - 72.646).abs() < 1e-3);
        assert!(refl.gain_db > diff.gain_db + 20.0);
    }

    #[test]
    fn grazing_rooftop_diffraction_rivals_the_reflection() {
        // ground end raised until the Building-1 edge grazes the direct path
        let s = two_buildings();
        let uav = EnuVector::new(-30.0, 0.0, 19.0);
        let gs = EnuVector::new(0.0, 0.0, 17.79);
        let rays = trace_rays(&s, &uav, &gs, 27.0);
        let refl = rays.iter().find(|r| r.kind == RayKind::Reflection).unwrap();
        let diff = rays.iter().find(|r| r.kind == RayKind::Diffraction).unwrap();
        assert!((refl.gain_db - diff.gain_db).abs() <= 6.0, "{} vs {}", refl.gain_db, diff.gain_db);
    }

    #[test]
    fn total_blockage() {
        let s = scene(vec![Building::new(-5.0, -5.0, 5.0, 5.0, 30.0), Building::new(20.0, -5.0, 30.0, 5.0, 30.0)]);
        let rays = trace_rays(&s, &EnuVector::new(-20.0, 0.0, 2.0), &EnuVector::new(45.0, 0.0, 2.0), 27.0);
        assert!(rays.is_empty(), "{rays:?}");
    }

    #[test]
    fn face_contact_is_not_blockage() {
        let s = scene(vec![Building::new(0.0, 0.0, 10.0, 10.0, 10.0)]);
        assert!(clear(&s, &EnuVector::new(-5.0, 10.0, 5.0), &EnuVector::new(15.0, 10.0, 5.0)));
        assert!(!clear(&s, &EnuVector::new(-5.0, 5.0, 5.0), &EnuVector::new(15.0, 5.0, 5.0)));
    }

    fn point() -> impl Strategy<Value = EnuVector> {
        (-60.0f64..60.0, -60.0f64..60.0, 1.0f64..60.0).prop_map(|(e, n, u)| EnuVector::new(e, n, u))
    }

    proptest! {
        #[test]
        fn specular_geometry_and_energy(tx in point(), rx in point(), f in 3.0f64..40.0) {
            let s = two_buildings();
            let inside = |p: &EnuVector| s.buildings.iter().any(|b| p.east_m >= b.x_min && p.east_m <= b.x_max && p.north_m >= b.y_min && p.north_m <= b.y_max && p.up_m <= b.height_m);
            prop_assume!(!inside(&tx) && !inside(&rx) && tx.distance(&rx) > 1.0);
            for r in trace_rays(&s, &tx, &rx, f) {
                prop_assert!((r.delay_ns - r.path_length_m / SPEED_OF_LIGHT * 1e9).abs() < 1e-9);
                if r.kind == RayKind::Los {
                    continue;
                }
                prop_assert!(r.gain_db < friis_path_gain(f, r.path_length_m).unwrap());
                let p = r.via.unwrap();
                prop_assert!((tx.distance(&p) + p.distance(&rx) - r.path_length_m).abs() < 1e-9);
                if r.kind == RayKind::Reflection {
                    // equal angles: the normal components flip, tangential ones agree
                    let normal = if (p.east_m - s.buildings[r.building.unwrap()].x_min).abs() < 1e-9
                        || (p.east_m - s.buildings[r.building.unwrap()].x_max).abs() < 1e-9 {
                        EnuVector::new(1.0, 0.0, 0.0)
                    } else {
                        EnuVector::new(0.0, 1.0, 0.0)
                    };
                    let inc = unit(p - tx);
                    let out = unit(rx - p);
                    prop_assert!((inc.dot(&normal) + out.dot(&normal)).abs() < 1e-9);
                    prop_assert!((inc - normal * inc.dot(&normal)).distance(&(out - normal * out.dot(&normal))) < 1e-9);
                }
            }
        }
    }
}
