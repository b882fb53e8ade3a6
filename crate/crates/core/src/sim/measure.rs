use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::analysis::LinkBudget;
use crate::devices;
use crate::geo::{angle_diff, direction_angles, wrap_360, EnuVector, LocalFrame};
use crate::ingest::{GroundPositionerRecord, PowerDelayProfile, RssSample, TelemetryRecord};
use crate::time::Timestamp;

use super::{trace_rays, AntennaKind, AntennaPattern, HoverWindow, Ray, Scene, SimError};

pub(crate) const RSS_STREAM: u64 = 2;
pub(crate) const UWB_STREAM: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Gaussian noise added to each reading, dB.
    pub sigma_db: f64,
    /// Analyser sensitivity; weaker readings are clamped just below it.
    pub floor_dbm: f64,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams { sigma_db: 0.5, floor_dbm: devices::SA_SENSITIVITY_DBM }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MmwaveConfig {
    pub freq_ghz: f64,
    /// Transmit power, amplifier gain and losses. Antenna gains come from
    /// the patterns, not from this budget.
    pub link: LinkBudget,
    /// Antenna on the UAV gimbal.
    pub air_antenna: AntennaKind,
    pub noise: NoiseParams,
    pub sweep_s: f64,
}

impl Default for MmwaveConfig {
    fn default() -> Self {
        MmwaveConfig {
            freq_ghz: devices::CAMPAIGN_FREQ_GHZ,
            link: LinkBudget::horn_to_horn(),
            air_antenna: AntennaKind::Horn,
            noise: NoiseParams::default(),
            sweep_s: devices::SA_SWEEP_S,
        }
    }
}

impl MmwaveConfig {
    pub fn check(&self) -> Result<(), SimError> {
        if !(devices::MMWAVE_FREQ_MIN_GHZ..=devices::MMWAVE_FREQ_MAX_GHZ).contains(&self.freq_ghz) {
            return Err(SimError::InvalidParams(format!("frequency {} GHz outside 26-40 GHz", self.freq_ghz)));
        }
        if !(self.sweep_s > 0.0 && self.sweep_s.is_finite()) {
            return Err(SimError::InvalidParams(format!("sweep time {} s must be positive", self.sweep_s)));
        }
        if !(self.noise.sigma_db >= 0.0 && self.noise.sigma_db.is_finite() && self.noise.floor_dbm.is_finite()) {
            return Err(SimError::InvalidParams("noise sigma must be >= 0 and floor finite".into()));
        }
        self.link.check().map_err(|e| SimError::InvalidParams(e.to_string()))
    }
}

/// Channel sounder settings. Taps are propagation gains: both UWB antennas
/// are omnidirectional and calibrated out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UwbConfig {
    pub bin_ns: f64,
    pub window_ns: f64,
    pub record_hz: f64,
    pub center_freq_ghz: f64,
    pub noise_floor_db: f64,
    pub noise_sigma_db: f64,
}

impl Default for UwbConfig {
    fn default() -> Self {
        UwbConfig {
            bin_ns: 1.0,
            window_ns: 1000.0,
            record_hz: 1.0 / devices::UWB_RECORD_S,
            center_freq_ghz: 4.2,
            noise_floor_db: -140.0,
            noise_sigma_db: 1.0,
        }
    }
}

impl UwbConfig {
    pub fn check(&self) -> Result<(), SimError> {
        let ok = self.bin_ns > 0.0
            && self.window_ns >= self.bin_ns
            && self.window_ns.is_finite()
            && self.record_hz > 0.0
            && self.record_hz.is_finite()
            && self.center_freq_ghz > 0.0
            && self.noise_floor_db.is_finite()
            && self.noise_sigma_db >= 0.0
            && self.noise_sigma_db.is_finite();
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidParams(format!("invalid sounder settings {self:?}")))
        }
    }

    fn n_bins(&self) -> usize {
        (self.window_ns / self.bin_ns).floor() as usize
    }
}

/// Telemetry resolved to local coordinates for interpolation.
struct Track {
    t: Vec<Timestamp>,
    pos: Vec<EnuVector>,
    yaw: Vec<f64>,
    tilt: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Pose {
    pos: EnuVector,
    yaw: f64,
    tilt: f64,
}

impl Track {
    fn new(frame: &LocalFrame, telemetry: &[TelemetryRecord]) -> Result<Self, SimError> {
        if telemetry.is_empty() {
            return Err(SimError::InvalidParams("no telemetry".into()));
        }
        let mut pos = Vec::with_capacity(telemetry.len());
        for r in telemetry {
            pos.push(frame.to_enu(&r.position)?);
        }
        Ok(Track {
            t: telemetry.iter().map(|r| r.t).collect(),
            pos,
            yaw: telemetry.iter().map(|r| r.yaw_deg).collect(),
            tilt: telemetry.iter().map(|r| r.gimbal_tilt_deg).collect(),
        })
    }

    fn start(&self) -> Timestamp {
        self.t[0]
    }

    fn at(&self, t: Timestamp) -> Pose {
        let i = self.t.partition_point(|x| *x <= t);
        if i == 0 {
            return Pose { pos: self.pos[0], yaw: self.yaw[0], tilt: self.tilt[0] };
        }
        let a = i - 1;
        if i == self.t.len() || self.t[a] == t {
            return Pose { pos: self.pos[a], yaw: self.yaw[a], tilt: self.tilt[a] };
        }
        let frac = t.seconds_since(self.t[a]) / self.t[i].seconds_since(self.t[a]);
        Pose {
            pos: self.pos[a].lerp(&self.pos[i], frac),
            yaw: wrap_360(self.yaw[a] + angle_diff(self.yaw[i], self.yaw[a]) * frac),
            tilt: self.tilt[a] + (self.tilt[i] - self.tilt[a]) * frac,
        }
    }
}

/// Instrument clock: one reading every `period_s` after the first telemetry
/// record, up to the last one. With `gate`, only readings inside a hover
/// window are kept.
pub fn sample_times(telemetry: &[TelemetryRecord], period_s: f64, gate: Option<&[HoverWindow]>) -> Vec<Timestamp> {
    let (Some(first), Some(last)) = (telemetry.first(), telemetry.last()) else { return Vec::new() };
    let period_ms = (period_s * 1000.0).round().max(1.0) as i64;
    let span = last.t.as_millis() - first.t.as_millis();
    (1..=span / period_ms)
        .map(|k| first.t.offset_millis(k * period_ms))
        .filter(|t| gate.is_none_or(|g| g.iter().any(|w| w.contains(*t))))
        .collect()
}

fn sum_dbm(levels: impl Iterator<Item = f64>) -> f64 {
    10.0 * levels.map(|l| 10f64.powf(l / 10.0)).sum::<f64>().log10()
}

/// Received power from rays traced UAV to ground, with both antenna
/// patterns applied, before noise.
pub fn received_power_dbm(
    rays: &[Ray],
    transmit_dbm: f64,
    air: (&AntennaPattern, f64, f64),
    ground: (&AntennaPattern, f64, f64),
) -> f64 {
    transmit_dbm
        + sum_dbm(rays.iter().map(|r| {
            r.gain_db + air.0.gain_toward(air.1, air.2, &r.departure) + ground.0.gain_toward(ground.1, ground.2, &r.arrival)
        }))
}

/// Spectrum-analyser readings at `times`.
pub fn simulate_mmwave(
    scene: &Scene,
    frame: &LocalFrame,
    telemetry: &[TelemetryRecord],
    times: &[Timestamp],
    cfg: &MmwaveConfig,
    seed: u64,
) -> Result<Vec<RssSample>, SimError> {
    cfg.check()?;
    let track = Track::new(frame, telemetry)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(RSS_STREAM);
    let noise = Normal::new(0.0, cfg.noise.sigma_db).map_err(|e| SimError::InvalidParams(e.to_string()))?;
    let gs = &scene.ground_station;
    let (air_ant, ground_ant) = (AntennaPattern::of_kind(cfg.air_antenna), AntennaPattern::of_kind(gs.antenna));
    let transmit = cfg.link.tx_power_dbm + cfg.link.amp_gain_db - cfg.link.misc_loss_db;
    let clamp = cfg.noise.floor_dbm.next_down();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let pose = track.at(t);
        let (gaz, gel) = gs.pointing(t.seconds_since(track.start()), &pose.pos);
        let rays = trace_rays(scene, &pose.pos, &gs.position(), cfg.freq_ghz);
        let clean = received_power_dbm(&rays, transmit, (&air_ant, pose.yaw, -pose.tilt), (&ground_ant, gaz, gel));
        let noisy = clean + noise.sample(&mut rng);
        let rss = if noisy.is_finite() && noisy >= cfg.noise.floor_dbm { noisy } else { clamp };
        out.push(RssSample::new(t, cfg.freq_ghz, rss, cfg.noise.floor_dbm));
    }
    Ok(out)
}

/// Power-delay profile for a set of rays: one tap per ray in its delay
/// bin plus a noisy floor in every bin.
pub fn profile_from_rays(t: Timestamp, rays: &[Ray], cfg: &UwbConfig, rng: &mut ChaCha8Rng) -> Result<PowerDelayProfile, SimError> {
    let n = cfg.n_bins();
    let noise = Normal::new(cfg.noise_floor_db, cfg.noise_sigma_db).map_err(|e| SimError::InvalidParams(e.to_string()))?;
    let mut bins: Vec<f64> = (0..n).map(|_| 10f64.powf(noise.sample(rng) / 10.0)).collect();
    for r in rays {
        let k = (r.delay_ns / cfg.bin_ns).round() as usize;
        if k >= n {
            return Err(SimError::WindowTooShort { delay_ns: r.delay_ns, window_ns: cfg.window_ns });
        }
        bins[k] += 10f64.powf(r.gain_db / 10.0);
    }
    PowerDelayProfile::from_linear(t, cfg.bin_ns, &bins).map_err(|e| SimError::InvalidParams(e.to_string()))
}

/// Channel-sounder profiles at `times`.
pub fn simulate_uwb(
    scene: &Scene,
    frame: &LocalFrame,
    telemetry: &[TelemetryRecord],
    times: &[Timestamp],
    cfg: &UwbConfig,
    seed: u64,
) -> Result<Vec<PowerDelayProfile>, SimError> {
    cfg.check()?;
    let track = Track::new(frame, telemetry)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(UWB_STREAM);
    let gs = scene.ground_station.position();
    times
        .iter()
        .map(|&t| {
            let rays = trace_rays(scene, &track.at(t).pos, &gs, cfg.center_freq_ghz);
            profile_from_rays(t, &rays, cfg, &mut rng)
        })
        .collect()
}

/// Ground positioner log at `times`.
pub fn simulate_ground_log(
    scene: &Scene,
    frame: &LocalFrame,
    telemetry: &[TelemetryRecord],
    times: &[Timestamp],
) -> Result<Vec<GroundPositionerRecord>, SimError> {
    let track = Track::new(frame, telemetry)?;
    let gs = &scene.ground_station;
    Ok(times
        .iter()
        .map(|&t| {
            let (az, el) = gs.pointing(t.seconds_since(track.start()), &track.at(t).pos);
            GroundPositionerRecord { t, az_deg: wrap_360(az), el_deg: el }
        })
        .collect())
}

/// Direction from the ground station to a point, as positioner angles.
pub fn ground_angles_to(scene: &Scene, p: &EnuVector) -> (f64, f64) {
    direction_angles(&(*p - scene.ground_station.position()))
}
