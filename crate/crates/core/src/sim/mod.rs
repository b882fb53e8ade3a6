//! Synthetic campaigns for desk testing.
//!
//! A [`Scene`] holds box buildings and a ground station. Flights are flown
//! from a mission plan, rays are traced between the UAV and the ground
//! station, and the results are emitted as the same records the ingest
//! parsers produce. Every random draw comes from one run seed.

mod antenna;
mod flight;
mod measure;
mod rays;
mod scene;

pub use antenna::{AntennaKind, AntennaPattern};
pub use flight::{simulate_flight, FlightParams, HoverWindow, SimulatedFlight};
pub use measure::{
    ground_angles_to, profile_from_rays, received_power_dbm, sample_times, simulate_ground_log, simulate_mmwave,
    simulate_uwb, MmwaveConfig, NoiseParams, UwbConfig,
};
pub use rays::{knife_edge_loss_db, trace_rays, Ray, RayKind};
pub use scene::{Building, GroundStation, PositionerStep, Scene};

use crate::geo::GeoError;
use crate::ingest::{GroundPositionerRecord, PowerDelayProfile, RssSample};
use crate::mission::{MissionError, MissionPlan};
use crate::time::Timestamp;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Mission(#[from] MissionError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("ray delay {delay_ns:.1} ns exceeds the {window_ns} ns profile window")]
    WindowTooShort { delay_ns: f64, window_ns: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub flight: FlightParams,
    pub mmwave: MmwaveConfig,
    /// `None` skips the channel sounder.
    pub uwb: Option<UwbConfig>,
    /// Record only while the UAV holds a waypoint.
    pub gate_to_hovers: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            flight: FlightParams::default(),
            mmwave: MmwaveConfig::default(),
            uwb: Some(UwbConfig::default()),
            gate_to_hovers: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Campaign {
    pub seed: u64,
    pub flight: SimulatedFlight,
    pub rss: Vec<RssSample>,
    pub pdps: Vec<PowerDelayProfile>,
    /// One record at every RSS and PDP time.
    pub ground_log: Vec<GroundPositionerRecord>,
}

/// Fly `plan` through `scene` and record every instrument.
pub fn simulate_campaign(plan: &MissionPlan, scene: &Scene, cfg: &CampaignConfig, seed: u64) -> Result<Campaign, SimError> {
    scene.check()?;
    let flight = simulate_flight(plan, &cfg.flight, seed)?;
    let gate = cfg.gate_to_hovers.then_some(flight.hovers.as_slice());
    let rss_times = sample_times(&flight.telemetry, cfg.mmwave.sweep_s, gate);
    let rss = simulate_mmwave(scene, &plan.frame, &flight.telemetry, &rss_times, &cfg.mmwave, seed)?;
    let mut times: Vec<Timestamp> = rss_times;
    let pdps = match &cfg.uwb {
        Some(u) => {
            u.check()?;
            let uwb_times = sample_times(&flight.telemetry, 1.0 / u.record_hz, gate);
            let pdps = simulate_uwb(scene, &plan.frame, &flight.telemetry, &uwb_times, u, seed)?;
            times.extend(uwb_times);
            pdps
        }
        None => Vec::new(),
    };
    times.sort_unstable();
    times.dedup();
    let ground_log = simulate_ground_log(scene, &plan.frame, &flight.telemetry, &times)?;
    Ok(Campaign { seed, flight, rss, pdps, ground_log })
}
