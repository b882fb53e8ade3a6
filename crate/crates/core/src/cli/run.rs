use std::path::PathBuf;

use crate::analysis::LinkBudget;
use crate::fuse::{annotate, segment_hovers, write_annotated_csv, write_orphans_csv, AnnotateConfig, Measurement};
use crate::ingest::{
    parse_ground_log, parse_pdp, parse_rss, parse_telemetry, serialize_ground_log, serialize_pdp, serialize_rss,
    serialize_telemetry, PdpOptions, Parsed,
};
use crate::sim::{simulate_campaign, AntennaKind, CampaignConfig, Scene};

use super::plan::load_plan;
use super::{read, required, AntennaArg, AverageSettings, CliError, Ctx, LinkSettings, SegmenterSettings, EXIT_OK};

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub plan: Option<PathBuf>,
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Record during the whole flight, not only while hovering.
    #[arg(long)]
    pub continuous: bool,
    /// Skip the channel sounder.
    #[arg(long)]
    pub no_uwb: bool,
    #[arg(long)]
    pub freq_ghz: Option<f64>,
    /// Antenna on the UAV gimbal.
    #[arg(long, value_enum, default_value = "horn")]
    pub air_antenna: AntennaArg,
    #[arg(long)]
    pub uwb_window_ns: Option<f64>,
    #[arg(long)]
    pub jitter_sigma_m: Option<f64>,
    #[arg(long)]
    pub speed_mps: Option<f64>,
    #[arg(long)]
    pub noise_sigma_db: Option<f64>,
    #[command(flatten)]
    pub link: LinkSettings,
}

#[derive(Debug, clap::Args)]
pub struct FuseArgs {
    #[arg(long)]
    pub plan: Option<PathBuf>,
    /// Without telemetry every measurement is orphaned.
    #[arg(long)]
    pub telemetry: Option<PathBuf>,
    #[arg(long)]
    pub rss: Option<PathBuf>,
    #[arg(long)]
    pub pdp: Option<PathBuf>,
    #[arg(long)]
    pub ground_log: Option<PathBuf>,
    /// Largest time gap between a sample and its ground positioner record.
    #[arg(long)]
    pub max_time_gap_s: Option<f64>,
    #[command(flatten)]
    pub segmenter: SegmenterSettings,
    #[command(flatten)]
    pub average: AverageSettings,
}

pub fn cmd_simulate(ctx: &mut Ctx<'_>, a: &SimulateArgs) -> Result<i32, CliError> {
    let plan_path = required(&a.plan, &ctx.file.plan, "plan")?;
    let scene_path = required(&a.scene, &ctx.file.scene, "scene")?;
    let plan = load_plan(&plan_path)?;
    let scene = Scene::parse(&read(&scene_path)?).map_err(|e| CliError::input(format!("{}: {e}", scene_path.display())))?;
    let seed = ctx.seed.unwrap_or(scene.seed);

    let mut cfg = CampaignConfig { gate_to_hovers: !a.continuous, ..Default::default() };
    cfg.mmwave.link = ctx.file.link(&a.link, LinkBudget::horn_to_horn());
    cfg.mmwave.air_antenna = match a.air_antenna {
        AntennaArg::Horn => AntennaKind::Horn,
        AntennaArg::Omni => AntennaKind::Omni,
    };
    if let Some(f) = a.freq_ghz {
        cfg.mmwave.freq_ghz = f;
    }
    if let Some(s) = a.noise_sigma_db {
        cfg.mmwave.noise.sigma_db = s;
    }
    if let Some(s) = a.jitter_sigma_m {
        cfg.flight.hover_jitter_sigma_m = s;
    }
    if let Some(s) = a.speed_mps {
        cfg.flight.speed_mps = s;
    }
    if a.no_uwb {
        cfg.uwb = None;
    } else if let (Some(u), Some(w)) = (cfg.uwb.as_mut(), a.uwb_window_ns) {
        u.window_ns = w;
    }

    let c = simulate_campaign(&plan, &scene, &cfg, seed).map_err(|e| CliError::input(e.to_string()))?;
    let telemetry = ctx.output_path("telemetry.jsonl");
    ctx.write_output(&telemetry, &serialize_telemetry(&c.flight.telemetry))?;
    let rss = ctx.output_path("rss.csv");
    ctx.write_output(&rss, &serialize_rss(&c.rss))?;
    if cfg.uwb.is_some() {
        let pdp = ctx.output_path("pdp.jsonl");
        ctx.write_output(&pdp, &serialize_pdp(&c.pdps))?;
    }
    let ground = ctx.output_path("ground_log.csv");
    ctx.write_output(&ground, &serialize_ground_log(&c.ground_log))?;
    let manifest = serde_json::json!({
        "seed": seed,
        "plan": plan.name,
        "gated_to_hovers": cfg.gate_to_hovers,
        "telemetry_records": c.flight.telemetry.len(),
        "rss_samples": c.rss.len(),
        "pdp_profiles": c.pdps.len(),
        "ground_records": c.ground_log.len(),
        "hover_windows": c.flight.hovers.iter().map(|w| serde_json::json!({
            "wp_index": w.wp_index,
            "t_start": w.t_start.to_iso(),
            "t_end": w.t_end.to_iso(),
        })).collect::<Vec<_>>(),
    });
    let run = ctx.output_path("run.json");
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    ctx.write_output(&run, &text)?;
    ctx.say(format!(
        "seed {seed}: {} telemetry records, {} RSS samples, {} PDPs, {} hovers",
        c.flight.telemetry.len(),
        c.rss.len(),
        c.pdps.len(),
        c.flight.hovers.len()
    ));
    Ok(EXIT_OK)
}

fn load<T>(ctx: &mut Ctx<'_>, path: &std::path::Path, parse: impl Fn(&str) -> Result<Parsed<T>, crate::ingest::ParseError>) -> Result<Vec<T>, CliError> {
    let parsed = parse(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        ctx.warn(format!("{}: {w}", path.display()));
    }
    Ok(parsed.records)
}

pub fn cmd_fuse(ctx: &mut Ctx<'_>, a: &FuseArgs) -> Result<i32, CliError> {
    let file = ctx.file.clone();
    let avg = file.average(&a.average);
    let mut measurements = Vec::new();
    if let Some(p) = a.rss.clone().or(file.rss.clone()) {
        measurements.extend(load(ctx, &p, |s| parse_rss(s, avg.sensitivity_dbm))?.into_iter().map(Measurement::Rss));
    }
    if let Some(p) = a.pdp.clone().or(file.pdp.clone()) {
        measurements.extend(load(ctx, &p, |s| parse_pdp(s, &PdpOptions::default()))?.into_iter().map(Measurement::Pdp));
    }
    if measurements.is_empty() {
        ctx.warn("no measurements given (--rss, --pdp)");
    }
    measurements.sort_by_key(|m| m.t());

    let segments = match a.telemetry.clone().or(file.telemetry.clone()) {
        Some(t) => {
            let plan = load_plan(&required(&a.plan, &file.plan, "plan")?)?;
            let telemetry = load(ctx, &t, parse_telemetry)?;
            segment_hovers(&telemetry, &plan, &file.segmenter(&a.segmenter))
        }
        None => Vec::new(),
    };
    let ground = match a.ground_log.clone().or(file.ground_log.clone()) {
        Some(p) => load(ctx, &p, parse_ground_log)?,
        None => Vec::new(),
    };
    let mut acfg = AnnotateConfig::default();
    if let Some(g) = a.max_time_gap_s {
        acfg.max_time_gap_s = g;
    }
    let total = measurements.len();
    let below = measurements.iter().filter(|m| m.below_sensitivity()).count();
    let ann = annotate(measurements, &segments, &ground, &acfg);
    for w in &ann.warnings {
        ctx.warn(w.clone());
    }
    let annotated = ctx.output_path("annotated.csv");
    ctx.write_output(&annotated, &write_annotated_csv(&ann.samples))?;
    let orphans = ctx.output_path("orphans.csv");
    ctx.write_output(&orphans, &write_orphans_csv(&ann.orphans))?;
    ctx.say(format!("segments found: {}", segments.len()));
    ctx.say(format!("samples: {total} total, {} annotated, {} orphaned, {below} below sensitivity", ann.samples.len(), ann.orphans.len()));
    Ok(EXIT_OK)
}
