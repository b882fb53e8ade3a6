use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};

use crate::analysis::{
    delay_stats, o2i_penetration_loss, path_gain_from_rss, power_angle_profile, scatter_pattern, AnalysisError,
    ArcGeometry, Axis, LinkBudget, ScanPlane, Station, TaggedLevel, BORESIGHT_CAVEAT,
};
use crate::fuse::{average_dwells, mean_dbm, parse_annotated_csv, AnnotatedRow, DwellAverage, MeasurementKind};
use crate::geo::EnuVector;
use crate::ingest::{parse_pdp, PdpOptions};

use super::plan::load_plan;
use super::{read, triple, AverageSettings, CliError, Ctx, LinkSettings, ThresholdSettings, EXIT_OK};

#[derive(Debug, Clone, clap::Args)]
pub struct AnnotatedInput {
    /// Annotated CSV; defaults to `<out-dir>/annotated.csv`.
    #[arg(long)]
    pub annotated: Option<PathBuf>,
    /// Output table; defaults to `<out-dir>/<kind>.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub average: AverageSettings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Horizontal,
    Vertical,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Power-azimuth profile per tilt level at one waypoint.
    Pap {
        #[command(flatten)]
        input: AnnotatedInput,
        #[arg(long)]
        wp: Option<usize>,
    },
    /// Power-elevation profile of the ground positioner at one azimuth.
    Pep {
        #[command(flatten)]
        input: AnnotatedInput,
        #[arg(long)]
        wp: Option<usize>,
        /// Ground azimuth bin; required when several were swept.
        #[arg(long)]
        az_deg: Option<f64>,
    },
    /// Path gain per dwell from RSS and the link budget.
    Pathgain {
        #[command(flatten)]
        input: AnnotatedInput,
        #[command(flatten)]
        link: LinkSettings,
    },
    /// Path gain and delay moments per power-delay profile.
    Delayspread {
        #[arg(long)]
        pdp: Option<PathBuf>,
        /// Keep only profiles annotated to a dwell.
        #[arg(long)]
        annotated: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        threshold: ThresholdSettings,
    },
    /// Back-scattering pattern of a facade spot from an arc of dwells.
    Scatter {
        #[command(flatten)]
        input: AnnotatedInput,
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Illuminated spot `e,n,u` in local metres.
        #[arg(long, value_parser = triple)]
        spot: [f64; 3],
        #[arg(long)]
        radius_m: f64,
        #[arg(long, value_enum, default_value = "horizontal")]
        plane: PlaneArg,
        /// Azimuth of the outward wall normal.
        #[arg(long)]
        normal_az_deg: f64,
        #[arg(long, default_value_t = 5.0)]
        bin_deg: f64,
        #[arg(long, default_value_t = 0.5)]
        tolerance_m: f64,
    },
    /// Outdoor-to-indoor penetration loss from two annotated runs.
    O2i {
        /// `tag=annotated.csv` measured outside.
        #[arg(long)]
        outdoor: String,
        /// `tag=annotated.csv` measured inside.
        #[arg(long)]
        indoor: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        average: AverageSettings,
    },
}

fn analysis_err(e: AnalysisError) -> CliError {
    CliError::input(e.to_string())
}

fn rows(path: &Path) -> Result<Vec<AnnotatedRow>, CliError> {
    parse_annotated_csv(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn annotated_path(ctx: &Ctx<'_>, p: &Option<PathBuf>) -> PathBuf {
    p.clone().unwrap_or_else(|| ctx.output_path("annotated.csv"))
}

/// RSS dwell averages, optionally for one waypoint.
fn rss_averages(ctx: &mut Ctx<'_>, input: &AnnotatedInput, wp: Option<usize>) -> Result<Vec<DwellAverage>, CliError> {
    let rows = rows(&annotated_path(ctx, &input.annotated))?;
    let cfg = ctx.file.average(&input.average);
    let summary = average_dwells(&rows, &cfg);
    for h in &summary.holes {
        ctx.warn(format!(
            "wp {} yaw {} tilt {}: all {} samples below sensitivity",
            h.key.wp_index, h.key.yaw_bin_deg, h.key.tilt_bin_deg, h.n_excluded
        ));
    }
    Ok(summary
        .averages
        .into_iter()
        .filter(|a| a.key.kind == MeasurementKind::Rss && wp.is_none_or(|w| a.key.wp_index == w))
        .collect())
}

fn out_path(ctx: &Ctx<'_>, p: &Option<PathBuf>, name: &str) -> PathBuf {
    p.clone().unwrap_or_else(|| ctx.output_path(name))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn distinct(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    v
}

pub fn cmd_analyze(ctx: &mut Ctx<'_>, cmd: &AnalyzeCmd) -> Result<i32, CliError> {
    match cmd {
        AnalyzeCmd::Pap { input, wp } => {
            let avgs = rss_averages(ctx, input, *wp)?;
            let mut s = String::from("tilt_deg,azimuth_deg,power_dbm,n\n");
            for tilt in distinct(avgs.iter().map(|a| a.key.tilt_bin_deg).collect()) {
                let prof = power_angle_profile(&avgs, Station::Air, Axis::Azimuth, tilt).map_err(analysis_err)?;
                if !prof.missing_deg.is_empty() {
                    ctx.warn(format!("tilt {tilt}: no data at azimuth {:?}", prof.missing_deg));
                }
                for b in &prof.bins {
                    let _ = writeln!(s, "{tilt},{},{},{}", b.angle_deg, b.power_dbm, b.n_samples);
                }
            }
            if avgs.is_empty() {
                return Err(analysis_err(AnalysisError::Empty));
            }
            let out = out_path(ctx, &input.out, "pap.csv");
            ctx.write_output(&out, &s)?;
        }
        AnalyzeCmd::Pep { input, wp, az_deg } => {
            let avgs: Vec<DwellAverage> = rss_averages(ctx, input, *wp)?.into_iter().filter(|a| a.key.ground_az_bin_deg.is_some()).collect();
            if avgs.is_empty() {
                return Err(CliError::input("pep needs ground positioner angles; run fuse with --ground-log"));
            }
            let az = match az_deg {
                Some(a) => *a,
                None => {
                    let all = distinct(avgs.iter().filter_map(|a| a.key.ground_az_bin_deg).collect());
                    if all.len() > 1 {
                        return Err(CliError::input(format!("several ground azimuths {all:?}; pick one with --az-deg")));
                    }
                    all[0]
                }
            };
            let prof = power_angle_profile(&avgs, Station::Ground, Axis::Elevation, az).map_err(analysis_err)?;
            if prof.bins.is_empty() {
                return Err(CliError::input(format!("no dwells at ground azimuth {az}")));
            }
            if !prof.missing_deg.is_empty() {
                ctx.warn(format!("no data at elevation {:?}", prof.missing_deg));
            }
            let mut s = String::from("elevation_deg,power_dbm,n\n");
            for b in &prof.bins {
                let _ = writeln!(s, "{},{},{}", b.angle_deg, b.power_dbm, b.n_samples);
            }
            let out = out_path(ctx, &input.out, "pep.csv");
            ctx.write_output(&out, &s)?;
        }
        AnalyzeCmd::Pathgain { input, link } => {
            let lb = ctx.file.link(link, LinkBudget::horn_to_horn());
            lb.check().map_err(analysis_err)?;
            let avgs = rss_averages(ctx, input, None)?;
            let mut s = String::from("wp_index,yaw_bin_deg,tilt_bin_deg,ground_az_deg,ground_el_deg,avg_power_dbm,path_gain_db,n\n");
            for a in &avgs {
                let k = &a.key;
                let pg = path_gain_from_rss(a.avg_power_dbm, &lb);
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    k.wp_index,
                    k.yaw_bin_deg,
                    k.tilt_bin_deg,
                    opt(k.ground_az_bin_deg),
                    opt(k.ground_el_bin_deg),
                    a.avg_power_dbm,
                    pg.path_gain_db,
                    a.n_samples
                );
            }
            ctx.warn(BORESIGHT_CAVEAT);
            let out = out_path(ctx, &input.out, "pathgain.csv");
            ctx.write_output(&out, &s)?;
        }
        AnalyzeCmd::Delayspread { pdp, annotated, out, threshold } => {
            let path = super::required(pdp, &ctx.file.pdp.clone(), "pdp")?;
            let parsed = parse_pdp(&read(&path)?, &PdpOptions::default()).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            for w in &parsed.warnings {
                ctx.warn(format!("{}: {w}", path.display()));
            }
            let keep: Option<Vec<_>> = match annotated {
                Some(p) => Some(rows(p)?.into_iter().filter(|r| r.kind == MeasurementKind::Pdp).map(|r| r.t_utc).collect()),
                None => None,
            };
            let policy = ctx.file.threshold(threshold);
            let mut s = String::from("t_utc,path_gain_db,mean_delay_ns,rms_ds_ns\n");
            let mut silent = 0;
            for p in &parsed.records {
                if keep.as_ref().is_some_and(|k| k.binary_search(&p.t()).is_err()) {
                    continue;
                }
                match delay_stats(p, &policy) {
                    Ok(d) => {
                        let _ = writeln!(s, "{},{},{},{}", d.t, d.path_gain_db, d.mean_delay_ns, d.rms_delay_spread_ns);
                    }
                    Err(AnalysisError::NoSignal) => silent += 1,
                    Err(e) => return Err(analysis_err(e)),
                }
            }
            if silent > 0 {
                ctx.warn(format!("{silent} profile(s) skipped: no signal above threshold"));
            }
            let out = out_path(ctx, out, "delay.csv");
            ctx.write_output(&out, &s)?;
        }
        AnalyzeCmd::Scatter { input, plan, spot, radius_m, plane, normal_az_deg, bin_deg, tolerance_m } => {
            let plan = load_plan(&super::required(plan, &ctx.file.plan.clone(), "plan")?)?;
            let wps = plan.planned_waypoints();
            let avgs = rss_averages(ctx, input, None)?;
            let mut dwells = Vec::with_capacity(avgs.len());
            for a in &avgs {
                let wp = wps
                    .get(a.key.wp_index)
                    .ok_or_else(|| CliError::input(format!("wp_index {} not in the plan", a.key.wp_index)))?;
                let pos = plan.frame.to_enu(&wp.waypoint.position).map_err(|e| CliError::input(e.to_string()))?;
                dwells.push((pos, a.avg_power_dbm));
            }
            let plane = match plane {
                PlaneArg::Horizontal => ScanPlane::Horizontal,
                PlaneArg::Vertical => ScanPlane::Vertical,
            };
            let mut geom = ArcGeometry::new(EnuVector::new(spot[0], spot[1], spot[2]), *radius_m, plane, *normal_az_deg);
            geom.bin_deg = *bin_deg;
            geom.tolerance_m = *tolerance_m;
            let pat = scatter_pattern(&dwells, &geom).map_err(analysis_err)?;
            let mut s = String::from("aspect_deg,rel_db\n");
            for b in &pat.bins {
                let _ = writeln!(s, "{},{}", b.aspect_deg, b.rel_db);
            }
            let out = out_path(ctx, &input.out, "scatter.csv");
            ctx.write_output(&out, &s)?;
        }
        AnalyzeCmd::O2i { outdoor, indoor, out, average } => {
            let cfg = ctx.file.average(average);
            let level = |spec: &str| -> Result<TaggedLevel, CliError> {
                let (tag, path) = spec.split_once('=').ok_or_else(|| CliError::input(format!("`{spec}`: expected tag=file")))?;
                let rows = rows(Path::new(path))?;
                let values: Vec<f64> = rows
                    .iter()
                    .filter(|r| r.kind == MeasurementKind::Rss && (cfg.include_below_sensitivity || r.power_dbm >= cfg.sensitivity_dbm))
                    .map(|r| r.power_dbm)
                    .collect();
                let avg = mean_dbm(&values).ok_or_else(|| CliError::input(format!("{path}: no RSS samples above sensitivity")))?;
                Ok(TaggedLevel { tag: tag.to_string(), avg_power_dbm: avg })
            };
            let (o, i) = (level(outdoor)?, level(indoor)?);
            let loss = o2i_penetration_loss(&o, &i).map_err(analysis_err)?;
            if let Some(w) = &loss.warning {
                ctx.warn(w.clone());
            }
            let s = format!("tag,outdoor_dbm,indoor_dbm,loss_db\n{},{},{},{}\n", o.tag, o.avg_power_dbm, i.avg_power_dbm, loss.loss_db);
            let out = out_path(ctx, out, "o2i.csv");
            ctx.write_output(&out, &s)?;
        }
    }
    Ok(EXIT_OK)
}
