use crate::ingest::PowerDelayProfile;
use crate::time::Timestamp;

use super::AnalysisError;

/// How taps are separated from noise before computing delay moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    /// Taps must clear the estimated noise floor by this much.
    pub noise_margin_db: f64,
    /// Taps more than this below the peak are dropped.
    pub dynamic_cut_db: f64,
    /// Leading share of the profile used for the noise estimate.
    pub noise_fraction: f64,
    /// Added to the received power to give path gain (system calibration).
    pub cal_db: f64,
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy { noise_margin_db: 6.0, dynamic_cut_db: 25.0, noise_fraction: 0.1, cal_db: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayStats {
    pub t: Timestamp,
    pub path_gain_db: f64,
    /// Relative to the first tap above threshold.
    pub mean_delay_ns: f64,
    pub rms_delay_spread_ns: f64,
    pub noise_floor_db: Option<f64>,
    pub threshold_db: f64,
    pub taps_kept: usize,
    pub policy: ThresholdPolicy,
}

/// Threshold a profile and compute its power, mean delay and RMS delay spread.
///
/// The noise floor is the median level over the leading `noise_fraction`
/// of bins, stopping short of the peak bin. When the peak is in the first
/// bin there is nothing to estimate from and only the dynamic cut applies.
pub fn delay_stats(pdp: &PowerDelayProfile, policy: &ThresholdPolicy) -> Result<DelayStats, AnalysisError> {
    let db = pdp.taps_db();
    let lin = pdp.taps_linear();
    let peak_i = db
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > db[best] { i } else { best });
    let peak_db = db[peak_i];
    let lead = ((policy.noise_fraction * db.len() as f64).ceil() as usize).min(peak_i);
    let noise_floor_db = (lead > 0).then(|| {
        let mut v = db[..lead].to_vec();
        v.sort_by(f64::total_cmp);
        if lead % 2 == 1 {
            v[lead / 2]
        } else {
            0.5 * (v[lead / 2 - 1] + v[lead / 2])
        }
    });
    let mut threshold_db = peak_db - policy.dynamic_cut_db;
    if let Some(n) = noise_floor_db {
        threshold_db = threshold_db.max(n + policy.noise_margin_db);
    }

    let kept: Vec<usize> = (0..db.len()).filter(|&i| db[i] >= threshold_db).collect();
    let Some(&first) = kept.first() else { return Err(AnalysisError::NoSignal) };
    let bin = pdp.bin_ns();
    let tau = |i: usize| (i - first) as f64 * bin;
    let p: f64 = kept.iter().map(|&i| lin[i]).sum();
    let mean = kept.iter().map(|&i| lin[i] * tau(i)).sum::<f64>() / p;
    let var = kept.iter().map(|&i| lin[i] * (tau(i) - mean).powi(2)).sum::<f64>() / p;
    Ok(DelayStats {
        t: pdp.t(),
        path_gain_db: 10.0 * p.log10() + policy.cal_db,
        mean_delay_ns: mean,
        rms_delay_spread_ns: var.sqrt(),
        noise_floor_db,
        threshold_db,
        taps_kept: kept.len(),
        policy: *policy,
    })
}
