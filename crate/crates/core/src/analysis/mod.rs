//! Derived quantities: path gain, angular profiles, delay statistics,
//! scattering patterns and penetration loss.

mod delay;
mod profile;
mod scatter;

use crate::devices;
use crate::fuse::DwellAverage;

pub use delay::{delay_stats, DelayStats, ThresholdPolicy};
pub use profile::{power_angle_profile, AngularBin, AngularProfile, Axis, Station};
pub use scatter::{scatter_pattern, ArcGeometry, ScanPlane, ScatterBin, ScatterPattern};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no dwell averages to analyse")]
    Empty,
    #[error("dwell averages span several waypoints: {0:?}")]
    MixedWaypoints(Vec<usize>),
    #[error("angles {0:?} are not on a uniform raster")]
    NonUniformRaster(Vec<f64>),
    #[error("no signal above threshold")]
    NoSignal,
    #[error("dwell at {distance_m:.2} m from the spot is off the {radius_m} m arc")]
    OffArc { distance_m: f64, radius_m: f64 },
    #[error("tags differ: outdoor `{outdoor}`, indoor `{indoor}`")]
    MismatchedTags { outdoor: String, indoor: String },
}

/// Transmit chain and antenna gains, dB/dBm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub tx_power_dbm: f64,
    pub amp_gain_db: f64,
    pub tx_ant_gain_db: f64,
    pub rx_ant_gain_db: f64,
    /// Cable and connector losses.
    pub misc_loss_db: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        LinkBudget {
            tx_power_dbm: devices::SG_POWER_MAX_DBM,
            amp_gain_db: devices::AMPLIFIER_GAIN_DB,
            tx_ant_gain_db: devices::HORN_GAIN_DB,
            rx_ant_gain_db: devices::OMNI_GAIN_DB,
            misc_loss_db: 0.0,
        }
    }
}

impl LinkBudget {
    /// Horn antennas at both ends.
    pub fn horn_to_horn() -> Self {
        LinkBudget { rx_ant_gain_db: devices::HORN_GAIN_DB, ..Default::default() }
    }

    pub fn check(&self) -> Result<(), AnalysisError> {
        if !(devices::SG_POWER_MIN_DBM..=devices::SG_POWER_MAX_DBM).contains(&self.tx_power_dbm) {
            return Err(AnalysisError::InvalidInput(format!("tx power {} dBm outside [-3, 5]", self.tx_power_dbm)));
        }
        let gains = [self.amp_gain_db, self.tx_ant_gain_db, self.rx_ant_gain_db, self.misc_loss_db];
        if gains.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(AnalysisError::InvalidInput("gains and losses must be non-negative".into()));
        }
        Ok(())
    }

    pub fn eirp_dbm(&self) -> f64 {
        self.tx_power_dbm + self.amp_gain_db + self.tx_ant_gain_db
    }

    /// Received power over a 0 dB path.
    pub fn effective_dbm(&self) -> f64 {
        self.eirp_dbm() + self.rx_ant_gain_db - self.misc_loss_db
    }
}

/// Free-space path gain, dB (negative).
pub fn friis_path_gain(freq_ghz: f64, distance_m: f64) -> Result<f64, AnalysisError> {
    if !(freq_ghz > 0.0 && distance_m > 0.0 && freq_ghz.is_finite() && distance_m.is_finite()) {
        return Err(AnalysisError::InvalidInput(format!("frequency {freq_ghz} GHz and distance {distance_m} m must be positive")));
    }
    let f = freq_ghz * 1e9;
    Ok(-20.0 * (4.0 * std::f64::consts::PI * distance_m * f / devices::SPEED_OF_LIGHT).log10())
}

pub const BORESIGHT_CAVEAT: &str = "nominal boresight antenna gains removed; off-boresight pattern loss is included in the path gain";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGain {
    pub path_gain_db: f64,
    pub caveat: &'static str,
}

/// Path gain from a dwell-averaged RSS.
pub fn measured_path_gain(avg: &DwellAverage, lb: &LinkBudget) -> PathGain {
    path_gain_from_rss(avg.avg_power_dbm, lb)
}

pub fn path_gain_from_rss(rss_dbm: f64, lb: &LinkBudget) -> PathGain {
    PathGain { path_gain_db: rss_dbm - lb.effective_dbm(), caveat: BORESIGHT_CAVEAT }
}

/// A dwell-averaged level labelled with its floor/facade.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedLevel {
    pub tag: String,
    pub avg_power_dbm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PenetrationLoss {
    pub loss_db: f64,
    pub warning: Option<String>,
}

/// Outdoor minus indoor level.
pub fn o2i_penetration_loss(outdoor: &TaggedLevel, indoor: &TaggedLevel) -> Result<PenetrationLoss, AnalysisError> {
    if outdoor.tag != indoor.tag {
        return Err(AnalysisError::MismatchedTags { outdoor: outdoor.tag.clone(), indoor: indoor.tag.clone() });
    }
    let loss_db = outdoor.avg_power_dbm - indoor.avg_power_dbm;
    let warning = (loss_db < 0.0)
        .then(|| format!("indoor level exceeds outdoor by {:.2} dB; check that the samples match", -loss_db));
    Ok(PenetrationLoss { loss_db, warning })
}
