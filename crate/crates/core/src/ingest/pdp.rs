use serde::{Deserialize, Serialize};

use crate::time::Timestamp;

use super::{content_lines, json_message, OrderCheck, ParseError, Parsed};

/// Smallest tap level representable in files, dB. Zero linear power maps here.
pub const TAP_FLOOR_DB: f64 = -300.0;

/// Power-delay profile: tap `i` covers excess delay `i * bin_ns`.
///
/// Taps are kept both in dB (as read from or written to files) and as
/// linear power, which is what every computation uses.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerDelayProfile {
    t: Timestamp,
    bin_ns: f64,
    taps_db: Vec<f64>,
    taps_linear: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PdpError {
    #[error("empty tap list")]
    Empty,
    #[error("bin width {0} ns must be positive")]
    BinWidth(f64),
    #[error("tap {0} is not a finite level")]
    NonFinite(usize),
}

impl PowerDelayProfile {
    pub fn from_db(t: Timestamp, bin_ns: f64, taps_db: Vec<f64>) -> Result<Self, PdpError> {
        if !(bin_ns > 0.0 && bin_ns.is_finite()) {
            return Err(PdpError::BinWidth(bin_ns));
        }
        if taps_db.is_empty() {
            return Err(PdpError::Empty);
        }
        if let Some(i) = taps_db.iter().position(|v| !v.is_finite()) {
            return Err(PdpError::NonFinite(i));
        }
        let taps_linear = taps_db.iter().map(|d| 10f64.powf(d / 10.0)).collect();
        Ok(PowerDelayProfile { t, bin_ns, taps_db, taps_linear })
    }

    /// Build from linear powers (negative values are rejected). Levels below
    /// [`TAP_FLOOR_DB`] are raised to it.
    pub fn from_linear(t: Timestamp, bin_ns: f64, powers: &[f64]) -> Result<Self, PdpError> {
        if let Some(i) = powers.iter().position(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(PdpError::NonFinite(i));
        }
        let db = powers.iter().map(|p| (10.0 * p.log10()).max(TAP_FLOOR_DB)).collect();
        Self::from_db(t, bin_ns, db)
    }

    pub fn t(&self) -> Timestamp {
        self.t
    }

    pub fn bin_ns(&self) -> f64 {
        self.bin_ns
    }

    pub fn taps_db(&self) -> &[f64] {
        &self.taps_db
    }

    pub fn taps_linear(&self) -> &[f64] {
        &self.taps_linear
    }

    pub fn len(&self) -> usize {
        self.taps_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps_db.is_empty()
    }

    pub fn window_ns(&self) -> f64 {
        self.bin_ns * self.taps_db.len() as f64
    }

    pub fn delay_ns(&self, tap: usize) -> f64 {
        tap as f64 * self.bin_ns
    }

    /// Total received power over all taps, dB.
    pub fn total_power_db(&self) -> f64 {
        10.0 * self.taps_linear.iter().sum::<f64>().log10()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdpOptions {
    /// Longest accepted profile, taps.
    pub max_taps: usize,
}

impl Default for PdpOptions {
    fn default() -> Self {
        PdpOptions { max_taps: 4096 }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdpLine {
    t_utc: Timestamp,
    bin_ns: f64,
    taps_db: Vec<f64>,
}

pub fn parse_pdp(input: &str, opts: &PdpOptions) -> Result<Parsed<PowerDelayProfile>, ParseError> {
    let mut out: Parsed<PowerDelayProfile> = Parsed::default();
    let mut order = OrderCheck::default();
    let mut tap_count: Option<usize> = None;
    for (line, text) in content_lines(input) {
        let rec: PdpLine = serde_json::from_str(text).map_err(|e| ParseError::at(line, json_message(&e)))?;
        if rec.taps_db.len() > opts.max_taps {
            return Err(ParseError::field(line, "taps_db", format!("{} taps exceed the {} tap window", rec.taps_db.len(), opts.max_taps)));
        }
        let n = rec.taps_db.len();
        let pdp = PowerDelayProfile::from_db(rec.t_utc, rec.bin_ns, rec.taps_db).map_err(|e| {
            let field = if matches!(e, PdpError::BinWidth(_)) { "bin_ns" } else { "taps_db" };
            ParseError::field(line, field, e.to_string())
        })?;
        match tap_count {
            Some(c) if c != n => out.warnings.push(format!("line {line}: tap count changed from {c} to {n}")),
            _ => {}
        }
        tap_count = Some(n);
        order.observe(line, rec.t_utc)?;
        out.records.push(pdp);
    }
    order.finish(&mut out.records, |r| r.t);
    Ok(out)
}

pub fn serialize_pdp(profiles: &[PowerDelayProfile]) -> String {
    let mut s = String::new();
    for p in profiles {
        let line = PdpLine { t_utc: p.t, bin_ns: p.bin_ns, taps_db: p.taps_db.clone() };
        s.push_str(&serde_json::to_string(&line).expect("profiles serialize"));
        s.push('\n');
    }
    s
}
