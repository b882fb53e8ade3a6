pub const FORMATS: &str = r#"File formats
============

All text is UTF-8. Timestamps are ISO 8601 UTC with milliseconds
(2021-06-01T10:00:00.250Z). Angles are degrees; azimuths are clockwise from
north in [0, 360); tilt is the downward-positive gimbal angle.

Mission plan (JSON)
  {"name": "...",
   "origin": {"lat_deg": 44.35, "lon_deg": 11.7},
   "constraints": {"max_agl_m": 50, "tilt_min_deg": 0, "tilt_max_deg": 60, "min_hold_s": 5},
   "items": [{"type": "roi", "lat_deg": .., "lon_deg": .., "agl_m": ..},
             {"type": "waypoint", "lat_deg": .., "lon_deg": .., "agl_m": .., "hold_s": ..}]}
  Each waypoint tracks the most recent ROI before it. Unknown fields are rejected.

Plan scenario (TOML, input to `plan --scenario`)
  name = "..."
  origin = { lat_deg = 44.35, lon_deg = 11.7 }
  hold_s = 5.0                      # default for waypoints without hold_s
  [[items]]
  type = "roi"                      # or "waypoint"
  e = 100.0                         # local east, north, up (metres above ground)
  n = 0.0
  u = 2.0

Telemetry (one JSON object per line)
  {"t_utc": "...", "lat_deg": .., "lon_deg": .., "agl_m": .., "yaw_deg": .., "gimbal_tilt_deg": .., "mode": "AUTO"|"MANUAL"}

mm-wave RSS (CSV)
  t_utc,freq_ghz,rss_dbm
  The timestamp marks the end of a sweep. Readings below -100 dBm are flagged.

UWB PDP (one JSON object per line)
  {"t_utc": "...", "bin_ns": 1.0, "taps_db": [..]}

Ground positioner log (CSV)
  t_utc,az_deg,el_deg

Scene (JSON, input to `simulate --scene`)
  {"buildings": [{"x_min": .., "y_min": .., "x_max": .., "y_max": .., "height_m": .., "reflection_coeff_db": -6}],
   "ground_station": {"e": .., "n": .., "u": .., "antenna": "horn"|"omni",
                      "positioner": [{"t_rel_s": 0, "az_deg": 90, "el_deg": 10}]},
   "seed": 1}
  Buildings are boxes in local metres. An empty positioner list tracks the UAV;
  otherwise each step holds from t_rel_s (seconds after the first telemetry record).

annotated.csv (written by `fuse`)
  t_utc,wp_index,roi_index,yaw_bin_deg,tilt_bin_deg,ground_az_deg,ground_el_deg,kind,power_dbm,n_taps
  kind is rss or pdp; empty cells mean not applicable.

orphans.csv (written by `fuse`)
  t_utc,kind,power_dbm,n_taps,reason

Analysis tables (written by `analyze`)
  pap.csv         tilt_deg,azimuth_deg,power_dbm,n
  pep.csv         elevation_deg,power_dbm,n
  pathgain.csv    wp_index,yaw_bin_deg,tilt_bin_deg,ground_az_deg,ground_el_deg,avg_power_dbm,path_gain_db,n
  delay.csv       t_utc,path_gain_db,mean_delay_ns,rms_ds_ns
  scatter.csv     aspect_deg,rel_db
  o2i.csv         tag,outdoor_dbm,indoor_dbm,loss_db

Settings file (TOML, --config)
  seed, out_dir, plan, scene, telemetry, rss, pdp, ground_log
  [segmenter] capture_radius_m, min_dwell_s, max_record_gap_s, reorient_threshold_deg,
              settle_tolerance_deg, guard_s, pointing_match_deg
  [threshold] noise_margin_db, dynamic_cut_db, noise_fraction, cal_db
  [link]      tx_power_dbm, amp_gain_db, tx_ant_gain_db, rx_ant_gain_db, misc_loss_db
  [average]   sensitivity_dbm, include_below_sensitivity, ground_step_deg
  Command-line flags take precedence. Relative paths are read from the file's directory.
"#;
