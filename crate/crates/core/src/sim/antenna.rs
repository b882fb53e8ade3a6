use serde::{Deserialize, Serialize};

use crate::devices;
use crate::geo::EnuVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntennaKind {
    Horn,
    Omni,
}

/// Main lobe quadratic in dB, flat floor outside it.
///
/// Horns are pointed by azimuth/elevation; the E-plane is vertical. Omnis
/// are mounted vertically and ignore pointing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    pub kind: AntennaKind,
    pub boresight_gain_db: f64,
    /// Vertical beamwidth (the only one used by an omni).
    pub hpbw_e_deg: f64,
    pub hpbw_h_deg: f64,
    /// Largest pattern loss relative to boresight, dB (negative).
    pub floor_db: f64,
}

impl AntennaPattern {
    pub fn horn() -> Self {
        AntennaPattern {
            kind: AntennaKind::Horn,
            boresight_gain_db: devices::HORN_GAIN_DB,
            hpbw_e_deg: devices::HORN_HPBW_E_DEG,
            hpbw_h_deg: devices::HORN_HPBW_H_DEG,
            floor_db: -30.0,
        }
    }

    pub fn omni() -> Self {
        AntennaPattern {
            kind: AntennaKind::Omni,
            boresight_gain_db: devices::OMNI_GAIN_DB,
            hpbw_e_deg: devices::OMNI_HPBW_V_DEG,
            hpbw_h_deg: 360.0,
            floor_db: -30.0,
        }
    }

    pub fn of_kind(kind: AntennaKind) -> Self {
        match kind {
            AntennaKind::Horn => Self::horn(),
            AntennaKind::Omni => Self::omni(),
        }
    }

    /// Gain for given off-boresight angles in the E and H planes.
    pub fn gain_db(&self, off_e_deg: f64, off_h_deg: f64) -> f64 {
        let mut x = (off_e_deg / self.hpbw_e_deg).powi(2);
        if self.kind == AntennaKind::Horn {
            x += (off_h_deg / self.hpbw_h_deg).powi(2);
        }
        self.boresight_gain_db - (12.0 * x).min(self.floor_db.abs())
    }

    /// Gain toward `dir` with the antenna pointed at (`az_deg`, `el_deg`).
    pub fn gain_toward(&self, az_deg: f64, el_deg: f64, dir: &EnuVector) -> f64 {
        let Some(d) = dir.normalized() else { return self.boresight_gain_db };
        match self.kind {
            AntennaKind::Omni => self.gain_db(d.up_m.clamp(-1.0, 1.0).asin().to_degrees(), 0.0),
            AntennaKind::Horn => {
                let b = EnuVector::from_az_el(az_deg, el_deg);
                let right = EnuVector::from_az_el(az_deg + 90.0, 0.0);
                let up = right.cross(&b);
                let off_h = d.dot(&right).atan2(d.dot(&b)).to_degrees();
                let off_e = d.dot(&up).clamp(-1.0, 1.0).asin().to_degrees();
                self.gain_db(off_e, off_h)
            }
        }
    }
}
