use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::{LinkBudget, ThresholdPolicy};
use crate::fuse::{AverageConfig, SegmenterConfig};

use super::CliError;

/// Settings file shared by every subcommand. Flags override it; relative
/// paths are taken from the file's directory.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub plan: Option<PathBuf>,
    pub scene: Option<PathBuf>,
    pub telemetry: Option<PathBuf>,
    pub rss: Option<PathBuf>,
    pub pdp: Option<PathBuf>,
    pub ground_log: Option<PathBuf>,
    #[serde(default)]
    pub segmenter: SegmenterSettings,
    #[serde(default)]
    pub threshold: ThresholdSettings,
    #[serde(default)]
    pub link: LinkSettings,
    #[serde(default)]
    pub average: AverageSettings,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct SegmenterSettings {
    #[arg(long)]
    pub capture_radius_m: Option<f64>,
    #[arg(long)]
    pub min_dwell_s: Option<f64>,
    #[arg(long)]
    pub max_record_gap_s: Option<f64>,
    #[arg(long)]
    pub reorient_threshold_deg: Option<f64>,
    #[arg(long)]
    pub settle_tolerance_deg: Option<f64>,
    #[arg(long)]
    pub guard_s: Option<f64>,
    #[arg(long)]
    pub pointing_match_deg: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSettings {
    #[arg(long)]
    pub noise_margin_db: Option<f64>,
    #[arg(long)]
    pub dynamic_cut_db: Option<f64>,
    #[arg(long)]
    pub noise_fraction: Option<f64>,
    #[arg(long)]
    pub cal_db: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct LinkSettings {
    #[arg(long)]
    pub tx_power_dbm: Option<f64>,
    #[arg(long)]
    pub amp_gain_db: Option<f64>,
    #[arg(long)]
    pub tx_ant_gain_db: Option<f64>,
    #[arg(long)]
    pub rx_ant_gain_db: Option<f64>,
    #[arg(long)]
    pub misc_loss_db: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize, clap::Args)]
#[serde(deny_unknown_fields)]
pub struct AverageSettings {
    #[arg(long)]
    pub sensitivity_dbm: Option<f64>,
    #[arg(long)]
    pub include_below_sensitivity: Option<bool>,
    #[arg(long)]
    pub ground_step_deg: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = super::read(path)?;
        let mut cfg: FileConfig = toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.out_dir,
            &mut cfg.plan,
            &mut cfg.scene,
            &mut cfg.telemetry,
            &mut cfg.rss,
            &mut cfg.pdp,
            &mut cfg.ground_log,
        ] {
            if let Some(v) = p.as_mut() {
                if v.is_relative() {
                    *v = base.join(&*v);
                }
            }
        }
        Ok(cfg)
    }

    pub fn segmenter(&self, flags: &SegmenterSettings) -> SegmenterConfig {
        let d = SegmenterConfig::default();
        let f = &self.segmenter;
        SegmenterConfig {
            capture_radius_m: flags.capture_radius_m.or(f.capture_radius_m).unwrap_or(d.capture_radius_m),
            min_dwell_s: flags.min_dwell_s.or(f.min_dwell_s).unwrap_or(d.min_dwell_s),
            max_record_gap_s: flags.max_record_gap_s.or(f.max_record_gap_s).unwrap_or(d.max_record_gap_s),
            reorient_threshold_deg: flags.reorient_threshold_deg.or(f.reorient_threshold_deg).unwrap_or(d.reorient_threshold_deg),
            settle_tolerance_deg: flags.settle_tolerance_deg.or(f.settle_tolerance_deg).unwrap_or(d.settle_tolerance_deg),
            guard_s: flags.guard_s.or(f.guard_s).unwrap_or(d.guard_s),
            pointing_match_deg: flags.pointing_match_deg.or(f.pointing_match_deg).unwrap_or(d.pointing_match_deg),
        }
    }

    pub fn threshold(&self, flags: &ThresholdSettings) -> ThresholdPolicy {
        let d = ThresholdPolicy::default();
        let f = &self.threshold;
        ThresholdPolicy {
            noise_margin_db: flags.noise_margin_db.or(f.noise_margin_db).unwrap_or(d.noise_margin_db),
            dynamic_cut_db: flags.dynamic_cut_db.or(f.dynamic_cut_db).unwrap_or(d.dynamic_cut_db),
            noise_fraction: flags.noise_fraction.or(f.noise_fraction).unwrap_or(d.noise_fraction),
            cal_db: flags.cal_db.or(f.cal_db).unwrap_or(d.cal_db),
        }
    }

    /// Link budget starting from `base`.
    pub fn link(&self, flags: &LinkSettings, base: LinkBudget) -> LinkBudget {
        let f = &self.link;
        LinkBudget {
            tx_power_dbm: flags.tx_power_dbm.or(f.tx_power_dbm).unwrap_or(base.tx_power_dbm),
            amp_gain_db: flags.amp_gain_db.or(f.amp_gain_db).unwrap_or(base.amp_gain_db),
            tx_ant_gain_db: flags.tx_ant_gain_db.or(f.tx_ant_gain_db).unwrap_or(base.tx_ant_gain_db),
            rx_ant_gain_db: flags.rx_ant_gain_db.or(f.rx_ant_gain_db).unwrap_or(base.rx_ant_gain_db),
            misc_loss_db: flags.misc_loss_db.or(f.misc_loss_db).unwrap_or(base.misc_loss_db),
        }
    }

    pub fn average(&self, flags: &AverageSettings) -> AverageConfig {
        let d = AverageConfig::default();
        let f = &self.average;
        AverageConfig {
            sensitivity_dbm: flags.sensitivity_dbm.or(f.sensitivity_dbm).unwrap_or(d.sensitivity_dbm),
            include_below_sensitivity: flags
                .include_below_sensitivity
                .or(f.include_below_sensitivity)
                .unwrap_or(d.include_below_sensitivity),
            ground_step_deg: flags.ground_step_deg.or(f.ground_step_deg).unwrap_or(d.ground_step_deg),
        }
    }
}
