//! Nominal characteristics of the measurement hardware and campaign rules.
//!
//! These are the defaults every configurable type in the crate starts from.

/// Spectrum analyser tuning range, GHz.
pub const MMWAVE_FREQ_MIN_GHZ: f64 = 26.0;
pub const MMWAVE_FREQ_MAX_GHZ: f64 = 40.0;

/// Spectrum analyser sensitivity, dBm.
pub const SA_SENSITIVITY_DBM: f64 = -100.0;

/// Spectrum analyser sweep time at minimum span, seconds (two RSS values per second).
pub const SA_SWEEP_S: f64 = 0.5;

/// Signal generator output power range, dBm.
pub const SG_POWER_MIN_DBM: f64 = -3.0;
pub const SG_POWER_MAX_DBM: f64 = 5.0;

/// Ka-band power amplifier gain, dB.
pub const AMPLIFIER_GAIN_DB: f64 = 20.0;

/// Conical horn: typical gain and half-power beamwidths.
pub const HORN_GAIN_DB: f64 = 21.0;
pub const HORN_HPBW_E_DEG: f64 = 12.5;
pub const HORN_HPBW_H_DEG: f64 = 15.0;

/// Omnidirectional mm-wave antenna: gain and vertical half-power beamwidth.
pub const OMNI_GAIN_DB: f64 = 3.0;
pub const OMNI_HPBW_V_DEG: f64 = 45.0;

/// UWB pulse radio band edges and antenna gain.
pub const UWB_BAND_MIN_GHZ: f64 = 3.1;
pub const UWB_BAND_MAX_GHZ: f64 = 5.3;
pub const UWB_ANTENNA_GAIN_DB: f64 = 3.0;

/// UWB impulse-response record period, seconds.
pub const UWB_RECORD_S: f64 = 0.1;

/// Altitude cap for the simplified flight authorisation, metres AGL.
pub const MAX_AGL_M: f64 = 50.0;

/// Gimbal end stops, degrees below the horizon.
pub const GIMBAL_TILT_MIN_DEG: f64 = 0.0;
pub const GIMBAL_TILT_MAX_DEG: f64 = 60.0;

/// Hovering time on each waypoint, seconds.
pub const HOVER_HOLD_S: f64 = 5.0;

/// Angular raster step used for power-angle profiles, degrees.
pub const RASTER_STEP_DEG: f64 = 15.0;

/// Operating frequency of the reported angular campaigns, GHz.
pub const CAMPAIGN_FREQ_GHZ: f64 = 27.0;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
