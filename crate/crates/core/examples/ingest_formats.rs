//! Parse a sample of every instrument file format and write it back.

use uavprop::ingest::{
    parse_ground_log, parse_pdp, parse_rss, parse_telemetry, serialize_pdp, serialize_rss, PdpOptions,
};

const TELEMETRY: &str = r#"{"t_utc": "2021-06-01T10:00:00.000Z", "lat_deg": 44.35, "lon_deg": 11.7, "agl_m": 19.0, "yaw_deg": 90.0, "gimbal_tilt_deg": 15.0, "mode": "AUTO"}
{"t_utc": "2021-06-01T10:00:00.250Z", "lat_deg": 44.35, "lon_deg": 11.7, "agl_m": 19.1, "yaw_deg": 90.2, "gimbal_tilt_deg": 15.0, "mode": "AUTO"}
"#;

const RSS: &str = "t_utc,freq_ghz,rss_dbm
2021-06-01T10:00:00.500Z,27,-61.2
2021-06-01T10:00:01.000Z,27,-100.4
";

const PDP: &str = r#"{"t_utc": "2021-06-01T10:00:00.100Z", "bin_ns": 1.0, "taps_db": [-140, -139.5, -80.2, -141, -95.7, -140.3]}
"#;

const GROUND: &str = "t_utc,az_deg,el_deg
2021-06-01T10:00:00.500Z,270,15
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tel = parse_telemetry(TELEMETRY)?;
    println!("telemetry: {} records, first yaw {}", tel.records.len(), tel.records[0].yaw_deg);

    let rss = parse_rss(RSS, -100.0)?;
    for s in &rss.records {
        println!("rss {} dBm below sensitivity: {}", s.rss_dbm, s.below_sensitivity);
    }
    print!("{}", serialize_rss(&rss.records));

    let pdp = parse_pdp(PDP, &PdpOptions::default())?;
    let p = &pdp.records[0];
    println!("pdp: {} taps over {} ns, total {:.2} dB", p.len(), p.window_ns(), p.total_power_db());
    print!("{}", serialize_pdp(&pdp.records));

    let ground = parse_ground_log(GROUND)?;
    println!("ground positioner: {:?}", ground.records[0]);

    match parse_rss("t_utc,freq_ghz,rss_dbm\nnot-a-time,27,-60\n", -100.0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad file: {e}"),
    }
    Ok(())
}
