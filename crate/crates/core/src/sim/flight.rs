use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::geo::{angle_diff, wrap_360, EnuVector};
use crate::ingest::{FlightMode, TelemetryRecord};
use crate::mission::{required_pointing, MissionPlan, PointingSolution};
use crate::time::Timestamp;

use super::SimError;

/// RNG stream for hover jitter.
pub(crate) const JITTER_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightParams {
    pub speed_mps: f64,
    pub telemetry_hz: f64,
    /// Standard deviation of the hover position noise on each axis.
    pub hover_jitter_sigma_m: f64,
    /// Time the gimbal and yaw take to reach a new orientation.
    pub yaw_settle_s: f64,
    pub start: Timestamp,
}

impl Default for FlightParams {
    fn default() -> Self {
        FlightParams {
            speed_mps: 3.0,
            telemetry_hz: 4.0,
            hover_jitter_sigma_m: 0.15,
            yaw_settle_s: 0.5,
            // 2021-06-01T10:00:00Z
            start: Timestamp::from_millis(1_622_541_600_000),
        }
    }
}

impl FlightParams {
    pub fn check(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidParams(m));
        if !(self.speed_mps > 0.0 && self.speed_mps.is_finite()) {
            return bad(format!("speed {} m/s must be positive", self.speed_mps));
        }
        if !(self.telemetry_hz > 0.0 && self.telemetry_hz <= 1000.0) {
            return bad(format!("telemetry rate {} Hz must be in (0, 1000]", self.telemetry_hz));
        }
        if !(self.hover_jitter_sigma_m >= 0.0 && self.hover_jitter_sigma_m.is_finite()) {
            return bad(format!("jitter sigma {} must be >= 0", self.hover_jitter_sigma_m));
        }
        if !(self.yaw_settle_s >= 0.0 && self.yaw_settle_s.is_finite()) {
            return bad(format!("settle time {} must be >= 0", self.yaw_settle_s));
        }
        Ok(())
    }

    fn period_ms(&self) -> i64 {
        (1000.0 / self.telemetry_hz).round().max(1.0) as i64
    }
}

/// Interval during which the UAV held a waypoint at its commanded pointing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoverWindow {
    pub wp_index: usize,
    pub t_start: Timestamp,
    pub t_end: Timestamp,
}

impl HoverWindow {
    pub fn contains(&self, t: Timestamp) -> bool {
        self.t_start <= t && t <= self.t_end
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedFlight {
    pub telemetry: Vec<TelemetryRecord>,
    pub hovers: Vec<HoverWindow>,
}

struct Flyer<'a> {
    plan: &'a MissionPlan,
    period_ms: i64,
    t: Timestamp,
    pos: EnuVector,
    pointing: PointingSolution,
    out: Vec<TelemetryRecord>,
}

impl Flyer<'_> {
    fn emit(&mut self, pos: EnuVector, mode: FlightMode) -> Result<(), SimError> {
        self.out.push(TelemetryRecord {
            t: self.t,
            position: self.plan.frame.from_enu(&pos)?,
            yaw_deg: wrap_360(self.pointing.yaw_deg),
            gimbal_tilt_deg: self.pointing.tilt_deg,
            mode,
        });
        self.t = self.t.offset_millis(self.period_ms);
        Ok(())
    }

    /// Straight leg to `to`; the last record is at `to` and carries `last_mode`.
    fn travel(&mut self, to: EnuVector, speed: f64, roi: Option<EnuVector>, mode: FlightMode, last_mode: FlightMode) -> Result<(), SimError> {
        let dist = self.pos.distance(&to);
        if dist < 1e-9 {
            return Ok(());
        }
        let ticks = (dist / speed / (self.period_ms as f64 / 1000.0)).ceil().max(1.0) as usize;
        let from = self.pos;
        for k in 1..=ticks {
            let p = from.lerp(&to, k as f64 / ticks as f64);
            if let Some(target) = roi {
                self.pointing = self.tracking(&p, &target);
            }
            self.emit(p, if k == ticks { last_mode } else { mode })?;
        }
        self.pos = to;
        Ok(())
    }

    /// ROI tracking with the tilt held inside the gimbal range.
    fn tracking(&self, p: &EnuVector, roi: &EnuVector) -> PointingSolution {
        let c = &self.plan.constraints;
        match required_pointing(p, roi) {
            Ok(s) => PointingSolution { yaw_deg: s.yaw_deg, tilt_deg: s.tilt_deg.clamp(c.tilt_min_deg, c.tilt_max_deg) },
            Err(_) => self.pointing,
        }
    }
}

/// Fly a plan: MANUAL climb from below the first waypoint, AUTO legs and
/// hovers, MANUAL descent after the last waypoint.
///
/// Times are multiples of the telemetry period after `params.start`.
pub fn simulate_flight(plan: &MissionPlan, params: &FlightParams, seed: u64) -> Result<SimulatedFlight, SimError> {
    params.check()?;
    let wps = plan.planned_waypoints();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(JITTER_STREAM);
    let jitter = Normal::new(0.0, params.hover_jitter_sigma_m).map_err(|e| SimError::InvalidParams(e.to_string()))?;
    let mut f = Flyer {
        plan,
        period_ms: params.period_ms(),
        t: params.start,
        pos: EnuVector::ZERO,
        pointing: PointingSolution { yaw_deg: 0.0, tilt_deg: 0.0 },
        out: Vec::new(),
    };
    let mut hovers = Vec::with_capacity(wps.len());
    let settle_ticks = (params.yaw_settle_s * params.telemetry_hz).round().max(1.0) as usize;

    for (k, wp) in wps.iter().enumerate() {
        let target = plan.frame.to_enu(&wp.waypoint.position)?;
        let roi = match wp.roi {
            Some((_, _, r)) => Some(plan.frame.to_enu(&r.position)?),
            None => None,
        };
        let commanded = plan.commanded_pointing(wp).transpose()?;
        if k == 0 {
            f.pos = EnuVector::new(target.east_m, target.north_m, 0.0);
            if let Some(c) = commanded {
                f.pointing.yaw_deg = c.yaw_deg;
            }
            f.emit(f.pos, FlightMode::Manual)?;
            f.travel(target, params.speed_mps, roi, FlightMode::Manual, FlightMode::Auto)?;
        } else {
            if roi.is_none() {
                f.pointing.tilt_deg = 0.0;
            }
            f.travel(target, params.speed_mps, roi, FlightMode::Auto, FlightMode::Auto)?;
        }

        let goal = commanded.unwrap_or(PointingSolution { yaw_deg: f.pointing.yaw_deg, tilt_deg: 0.0 });
        let dyaw = angle_diff(goal.yaw_deg, f.pointing.yaw_deg);
        let dtilt = goal.tilt_deg - f.pointing.tilt_deg;
        let mut hover_pos = || {
            let n = EnuVector::new(jitter.sample(&mut rng), jitter.sample(&mut rng), jitter.sample(&mut rng));
            target + n
        };
        if dyaw.abs() > 1e-9 || dtilt.abs() > 1e-9 {
            let start = f.pointing;
            for s in 1..=settle_ticks {
                let frac = s as f64 / settle_ticks as f64;
                f.pointing = PointingSolution { yaw_deg: start.yaw_deg + dyaw * frac, tilt_deg: start.tilt_deg + dtilt * frac };
                let p = hover_pos();
                f.emit(p, FlightMode::Auto)?;
            }
        }
        f.pointing = goal;
        let t_start = f.out.last().map(|r| r.t).unwrap_or(f.t);
        let hold_ticks = (wp.waypoint.hold_s * params.telemetry_hz).round() as usize;
        for _ in 0..hold_ticks {
            let p = hover_pos();
            f.emit(p, FlightMode::Auto)?;
        }
        let t_end = f.out.last().map(|r| r.t).unwrap_or(t_start);
        hovers.push(HoverWindow { wp_index: wp.wp_index, t_start, t_end });
    }

    if !f.out.is_empty() {
        let ground = EnuVector::new(f.pos.east_m, f.pos.north_m, 0.0);
        f.travel(ground, params.speed_mps, None, FlightMode::Manual, FlightMode::Manual)?;
    }
    Ok(SimulatedFlight { telemetry: f.out, hovers })
}
