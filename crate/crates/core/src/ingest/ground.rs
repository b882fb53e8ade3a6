use crate::time::Timestamp;

use super::{check_azimuth, csv_rows, parse_number, parse_time, OrderCheck, ParseError, Parsed};

pub const GROUND_HEADER: &str = "t_utc,az_deg,el_deg";

/// Pointing of the ground-station positioner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPositionerRecord {
    pub t: Timestamp,
    pub az_deg: f64,
    pub el_deg: f64,
}

pub fn parse_ground_log(input: &str) -> Result<Parsed<GroundPositionerRecord>, ParseError> {
    let mut out = Parsed::default();
    let mut order = OrderCheck::default();
    for (line, fields) in csv_rows(input, GROUND_HEADER)? {
        let [t, az, el] = fields[..] else {
            return Err(ParseError::at(line, format!("expected 3 fields, found {}", fields.len())));
        };
        let t = parse_time(line, t)?;
        let az_deg = check_azimuth(line, "az_deg", parse_number(line, "az_deg", az)?, &mut out.warnings)?;
        let el_deg = parse_number(line, "el_deg", el)?;
        if !(-90.0..=90.0).contains(&el_deg) {
            return Err(ParseError::field(line, "el_deg", format!("{el_deg} outside [-90, 90]")));
        }
        order.observe(line, t)?;
        out.records.push(GroundPositionerRecord { t, az_deg, el_deg });
    }
    order.finish(&mut out.records, |r| r.t);
    Ok(out)
}

pub fn serialize_ground_log(records: &[GroundPositionerRecord]) -> String {
    let mut s = String::from(GROUND_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format!("{},{},{}\n", r.t, r.az_deg, r.el_deg));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn elevation_sweep() {
        let t0 = Timestamp::parse_iso("2020-06-01T10:00:00Z").unwrap();
        let recs: Vec<_> = (0..15)
            .map(|k| GroundPositionerRecord { t: t0.offset_millis(5000 * k), az_deg: 90.0, el_deg: -10.0 + 5.0 * k as f64 })
            .collect();
        let back = parse_ground_log(&serialize_ground_log(&recs)).unwrap();
        assert_eq!(back.records.len(), 15);
        assert_eq!(back.records.last().unwrap().el_deg, 60.0);
    }

    #[test]
    fn azimuth_wraparound() {
        let p = parse_ground_log("t_utc,az_deg,el_deg\n2020-06-01T10:00:00Z,360.0,5\n").unwrap();
        assert_eq!(p.records[0].az_deg, 0.0);
        assert_eq!(p.warnings.len(), 1);
        assert!(parse_ground_log("t_utc,az_deg,el_deg\n2020-06-01T10:00:00Z,361,5\n").is_err());
        assert!(parse_ground_log("t_utc,az_deg,el_deg\n2020-06-01T10:00:00Z,10,95\n").is_err());
    }

    #[test]
    fn out_of_order() {
        let text = "t_utc,az_deg,el_deg\n2020-06-01T10:00:05Z,0,0\n2020-06-01T10:00:00Z,0,5\n";
        let err = parse_ground_log(text).unwrap_err();
        assert_eq!((err.line, err.field), (3, Some("t_utc")));
    }

    proptest! {
        #[test]
        fn round_trip(mut v in prop::collection::vec((0i64..10_000_000, 0.0f64..360.0, -90.0f64..=90.0), 0..30)) {
            v.sort_by_key(|x| x.0);
            let recs: Vec<_> = v.iter().map(|&(ms, az, el)| GroundPositionerRecord { t: Timestamp::from_millis(1_600_000_000_000 + ms), az_deg: az, el_deg: el }).collect();
            let back = parse_ground_log(&serialize_ground_log(&recs)).unwrap();
            prop_assert_eq!(back.records, recs);
        }
    }
}
