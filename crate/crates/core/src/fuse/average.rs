use std::collections::HashMap;

use crate::ingest::PowerDelayProfile;
use crate::time::Timestamp;

use super::{bin_angle, bin_azimuth, AnnotatedRow, AnnotatedSample, Measurement, MeasurementKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageConfig {
    pub sensitivity_dbm: f64,
    pub include_below_sensitivity: bool,
    /// Bin width applied to the ground positioner angles.
    pub ground_step_deg: f64,
}

impl Default for AverageConfig {
    fn default() -> Self {
        AverageConfig {
            sensitivity_dbm: crate::devices::SA_SENSITIVITY_DBM,
            include_below_sensitivity: false,
            ground_step_deg: 5.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwellKey {
    pub wp_index: usize,
    pub kind: MeasurementKind,
    pub yaw_bin_deg: f64,
    pub tilt_bin_deg: f64,
    pub ground_az_bin_deg: Option<f64>,
    pub ground_el_bin_deg: Option<f64>,
}

impl DwellKey {
    fn hash_key(&self) -> (usize, MeasurementKind, i64, i64, Option<i64>, Option<i64>) {
        let q = |v: f64| (v * 1000.0).round() as i64;
        (
            self.wp_index,
            self.kind,
            q(self.yaw_bin_deg),
            q(self.tilt_bin_deg),
            self.ground_az_bin_deg.map(q),
            self.ground_el_bin_deg.map(q),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DwellAverage {
    pub key: DwellKey,
    pub roi_index: Option<usize>,
    pub t_first: Timestamp,
    pub avg_power_dbm: f64,
    pub n_samples: usize,
    /// Samples left out for being below sensitivity.
    pub n_excluded: usize,
    /// Sample standard deviation of the averaged values, dB.
    pub spread_db: f64,
}

/// A dwell key where every sample was below sensitivity.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageHole {
    pub key: DwellKey,
    pub n_excluded: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DwellSummary {
    pub averages: Vec<DwellAverage>,
    pub holes: Vec<CoverageHole>,
}

/// Mean of dB values taken in linear power.
pub fn mean_dbm(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mw = values.iter().map(|v| 10f64.powf(v / 10.0)).sum::<f64>() / values.len() as f64;
    Some(10.0 * mw.log10())
}

fn std_dev(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = values.iter().sum::<f64>() / n as f64;
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
}

fn key_of(r: &AnnotatedRow, step: f64) -> DwellKey {
    DwellKey {
        wp_index: r.wp_index,
        kind: r.kind,
        yaw_bin_deg: r.yaw_bin_deg,
        tilt_bin_deg: r.tilt_bin_deg,
        ground_az_bin_deg: r.ground_az_deg.map(|a| bin_azimuth(a, step)),
        ground_el_bin_deg: r.ground_el_deg.map(|e| bin_angle(e, step)),
    }
}

/// Time-average annotated rows per dwell key, in first-seen order.
pub fn average_dwells(rows: &[AnnotatedRow], cfg: &AverageConfig) -> DwellSummary {
    struct Acc {
        key: DwellKey,
        roi: Option<usize>,
        t_first: Timestamp,
        values: Vec<f64>,
        excluded: usize,
    }
    let mut index = HashMap::new();
    let mut accs: Vec<Acc> = Vec::new();
    for r in rows {
        let key = key_of(r, cfg.ground_step_deg);
        let i = *index.entry(key.hash_key()).or_insert_with(|| {
            accs.push(Acc { key, roi: r.roi_index, t_first: r.t_utc, values: Vec::new(), excluded: 0 });
            accs.len() - 1
        });
        let a = &mut accs[i];
        a.t_first = a.t_first.min(r.t_utc);
        let below = r.kind == MeasurementKind::Rss && r.power_dbm < cfg.sensitivity_dbm;
        if below && !cfg.include_below_sensitivity {
            a.excluded += 1;
        } else {
            a.values.push(r.power_dbm);
        }
    }
    let mut out = DwellSummary::default();
    for a in accs {
        match mean_dbm(&a.values) {
            Some(avg) => out.averages.push(DwellAverage {
                key: a.key,
                roi_index: a.roi,
                t_first: a.t_first,
                avg_power_dbm: avg,
                n_samples: a.values.len(),
                n_excluded: a.excluded,
                spread_db: std_dev(&a.values),
            }),
            None => out.holes.push(CoverageHole { key: a.key, n_excluded: a.excluded }),
        }
    }
    out
}

/// Per-dwell mean profile: each bin is the linear mean over the dwell.
#[derive(Debug, Clone, PartialEq)]
pub struct DwellPdp {
    pub key: DwellKey,
    pub profile: PowerDelayProfile,
    pub n_profiles: usize,
    /// Profiles whose bin width differed from the first one in the dwell.
    pub n_skipped: usize,
}

pub fn average_pdps(samples: &[AnnotatedSample], ground_step_deg: f64) -> Vec<DwellPdp> {
    struct Acc<'a> {
        key: DwellKey,
        first: &'a PowerDelayProfile,
        sum: Vec<f64>,
        n: usize,
        skipped: usize,
    }
    let mut index = HashMap::new();
    let mut accs: Vec<Acc> = Vec::new();
    for s in samples {
        let Measurement::Pdp(p) = &s.measurement else { continue };
        let key = key_of(&AnnotatedRow::from(s), ground_step_deg);
        let i = *index.entry(key.hash_key()).or_insert_with(|| {
            accs.push(Acc { key, first: p, sum: Vec::new(), n: 0, skipped: 0 });
            accs.len() - 1
        });
        let a = &mut accs[i];
        if p.bin_ns() != a.first.bin_ns() {
            a.skipped += 1;
            continue;
        }
        if a.sum.len() < p.len() {
            a.sum.resize(p.len(), 0.0);
        }
        for (acc, v) in a.sum.iter_mut().zip(p.taps_linear()) {
            *acc += v;
        }
        a.n += 1;
    }
    accs.into_iter()
        .map(|a| {
            let mean: Vec<f64> = a.sum.iter().map(|v| v / a.n as f64).collect();
            let profile = PowerDelayProfile::from_linear(a.first.t(), a.first.bin_ns(), &mean)
                .expect("mean of valid profiles is valid");
            DwellPdp { key: a.key, profile, n_profiles: a.n, n_skipped: a.skipped }
        })
        .collect()
}
