use crate::devices;
use crate::time::Timestamp;

use super::{csv_rows, parse_number, parse_time, OrderCheck, ParseError, Parsed};

pub const RSS_HEADER: &str = "t_utc,freq_ghz,rss_dbm";

/// One spectrum-analyser reading. The timestamp marks the end of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RssSample {
    pub t: Timestamp,
    pub freq_ghz: f64,
    pub rss_dbm: f64,
    /// Strictly below the analyser sensitivity.
    pub below_sensitivity: bool,
}

impl RssSample {
    pub fn new(t: Timestamp, freq_ghz: f64, rss_dbm: f64, sensitivity_dbm: f64) -> Self {
        RssSample { t, freq_ghz, rss_dbm, below_sensitivity: rss_dbm < sensitivity_dbm }
    }
}

pub fn parse_rss(input: &str, sensitivity_dbm: f64) -> Result<Parsed<RssSample>, ParseError> {
    let mut out = Parsed::default();
    let mut order = OrderCheck::default();
    for (line, fields) in csv_rows(input, RSS_HEADER)? {
        let [t, f, p] = fields[..] else {
            return Err(ParseError::at(line, format!("expected 3 fields, found {}", fields.len())));
        };
        let t = parse_time(line, t)?;
        let freq_ghz = parse_number(line, "freq_ghz", f)?;
        if !(devices::MMWAVE_FREQ_MIN_GHZ..=devices::MMWAVE_FREQ_MAX_GHZ).contains(&freq_ghz) {
            return Err(ParseError::field(line, "freq_ghz", format!("{freq_ghz} GHz outside 26-40 GHz")));
        }
        let rss_dbm = parse_number(line, "rss_dbm", p)?;
        order.observe(line, t)?;
        out.records.push(RssSample::new(t, freq_ghz, rss_dbm, sensitivity_dbm));
    }
    order.finish(&mut out.records, |r| r.t);
    Ok(out)
}

pub fn serialize_rss(samples: &[RssSample]) -> String {
    let mut s = String::from(RSS_HEADER);
    s.push('\n');
    for r in samples {
        s.push_str(&format!("{},{},{}\n", r.t, r.freq_ghz, r.rss_dbm));
    }
    s
}
