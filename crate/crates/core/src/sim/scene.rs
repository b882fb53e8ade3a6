use serde::{Deserialize, Serialize};

use crate::geo::{azimuth_elevation, EnuVector};

use super::{AntennaKind, SimError};

fn default_reflection() -> f64 {
    -6.0
}

/// Axis-aligned box standing on the ground, local ENU metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Building {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub height_m: f64,
    /// Applied to every wall face, dB.
    #[serde(default = "default_reflection")]
    pub reflection_coeff_db: f64,
}

impl Building {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64, height_m: f64) -> Self {
        Building { x_min, y_min, x_max, y_max, height_m, reflection_coeff_db: default_reflection() }
    }
}

/// One step of the ground positioner schedule, held until the next one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionerStep {
    /// Seconds after the first telemetry record.
    pub t_rel_s: f64,
    pub az_deg: f64,
    pub el_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundStation {
    pub e: f64,
    pub n: f64,
    pub u: f64,
    pub antenna: AntennaKind,
    /// Empty: the positioner tracks the UAV.
    #[serde(default)]
    pub positioner: Vec<PositionerStep>,
}

impl GroundStation {
    pub fn position(&self) -> EnuVector {
        EnuVector::new(self.e, self.n, self.u)
    }

    /// Positioner (azimuth, elevation) at `t_rel_s` with the UAV at `uav`.
    pub fn pointing(&self, t_rel_s: f64, uav: &EnuVector) -> (f64, f64) {
        if self.positioner.is_empty() {
            return azimuth_elevation(&self.position(), uav).unwrap_or((0.0, 0.0));
        }
        let i = self.positioner.partition_point(|s| s.t_rel_s <= t_rel_s);
        let s = self.positioner[i.saturating_sub(1)];
        (s.az_deg, s.el_deg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default)]
    pub buildings: Vec<Building>,
    pub ground_station: GroundStation,
    #[serde(default)]
    pub seed: u64,
}

impl Scene {
    pub fn free_space(ground_station: GroundStation) -> Self {
        Scene { buildings: Vec::new(), ground_station, seed: 0 }
    }

    pub fn check(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidScene(m));
        for (i, b) in self.buildings.iter().enumerate() {
            let v = [b.x_min, b.y_min, b.x_max, b.y_max, b.height_m, b.reflection_coeff_db];
            if v.iter().any(|x| !x.is_finite()) {
                return bad(format!("building {i}: non-finite value"));
            }
            if !(b.x_max > b.x_min && b.y_max > b.y_min && b.height_m > 0.0) {
                return bad(format!("building {i}: degenerate box"));
            }
            if b.reflection_coeff_db > 0.0 {
                return bad(format!("building {i}: reflection coefficient {} dB is positive", b.reflection_coeff_db));
            }
        }
        let g = &self.ground_station;
        if !g.position().is_finite() {
            return bad("ground station position is not finite".into());
        }
        let mut last = f64::NEG_INFINITY;
        for (i, s) in g.positioner.iter().enumerate() {
            if !(s.t_rel_s.is_finite() && s.t_rel_s >= last) {
                return bad(format!("positioner step {i}: times must be finite and non-decreasing"));
            }
            if !(0.0..360.0).contains(&s.az_deg) || !(-90.0..=90.0).contains(&s.el_deg) {
                return bad(format!("positioner step {i}: angles out of range"));
            }
            last = s.t_rel_s;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, SimError> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| SimError::InvalidScene(e.to_string()))?;
        scene.check()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenes serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BUILDINGS: &str = r#"{
  "buildings": [
    {"x_min": -45, "y_min": -50, "x_max": -5, "y_max": 50, "height_m": 18},
    {"x_min": 5, "y_min": -50, "x_max": 25, "y_max": 50, "height_m": 20, "reflection_coeff_db": -3}
  ],
  "ground_station": {"e": 0, "n": 0, "u": 2, "antenna": "horn",
                     "positioner": [{"t_rel_s": 0, "az_deg": 90, "el_deg": -10}, {"t_rel_s": 5, "az_deg": 90, "el_deg": -5}]},
  "seed": 7
}"#;

    #[test]
    fn parse_and_round_trip() {
        let s = Scene::parse(TWO_BUILDINGS).unwrap();
        assert_eq!(s.buildings[0].reflection_coeff_db, -6.0);
        assert_eq!(s.buildings[1].reflection_coeff_db, -3.0);
        assert_eq!(s.seed, 7);
        assert_eq!(Scene::parse(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn schedule_lookup() {
        let s = Scene::parse(TWO_BUILDINGS).unwrap();
        let g = &s.ground_station;
        assert_eq!(g.pointing(-1.0, &EnuVector::ZERO), (90.0, -10.0));
        assert_eq!(g.pointing(4.9, &EnuVector::ZERO), (90.0, -10.0));
        assert_eq!(g.pointing(5.0, &EnuVector::ZERO), (90.0, -5.0));
        let tracking = GroundStation { positioner: vec![], ..g.clone() };
        let (az, el) = tracking.pointing(0.0, &EnuVector::new(0.0, 10.0, 12.0));
        assert!((az - 0.0).abs() < 1e-9 && (el - 45.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_scenes() {
        assert!(Scene::parse(&TWO_BUILDINGS.replace("\"x_max\": -5", "\"x_max\": -50")).is_err());
        assert!(Scene::parse(&TWO_BUILDINGS.replace("-3}", "3}")).is_err());
        assert!(Scene::parse(&TWO_BUILDINGS.replace("\"horn\"", "\"dish\"")).is_err());
        assert!(Scene::parse(&TWO_BUILDINGS.replace("\"t_rel_s\": 5", "\"t_rel_s\": -5")).is_err());
        assert!(Scene::parse("{}").is_err());
    }
}
