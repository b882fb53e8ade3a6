use std::path::PathBuf;

use serde::Deserialize;

use crate::geo::{EnuVector, LocalFrame};
use crate::mission::{expand_schedule, parse_plan, serialize_plan, validate, MissionConstraints, MissionPlan, ScanSpec, ValidationReport};

use super::{read, required, CliError, Ctx, EXIT_OK, EXIT_VIOLATION};

#[derive(Debug, clap::Args)]
pub struct PlanArgs {
    /// Scenario in local coordinates (TOML).
    #[arg(long, conflicts_with = "from")]
    pub scenario: Option<PathBuf>,
    /// Start from an existing plan file.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Origin `lat,lon` of the default single-hover scenario.
    #[arg(long, default_value = "44.35,11.7")]
    pub origin: String,
    /// Height of the default single-hover scenario, metres.
    #[arg(long, default_value_t = 19.0)]
    pub hover_agl_m: f64,
    /// Expand hovering waypoints into the angular raster.
    #[arg(long)]
    pub raster: bool,
    #[arg(long, default_value_t = crate::devices::RASTER_STEP_DEG)]
    pub az_step_deg: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,15,30,45,60")]
    pub tilts_deg: Vec<f64>,
    #[arg(long, default_value_t = crate::devices::HOVER_HOLD_S)]
    pub dwell_s: f64,
    #[arg(long, default_value_t = 50.0)]
    pub roi_range_m: f64,
    /// Expand only this waypoint ordinal.
    #[arg(long)]
    pub raster_wp: Option<usize>,
    /// Output plan file; defaults to `<out-dir>/plan.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the report without writing the plan.
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, clap::Args)]
pub struct ValidateArgs {
    pub plan: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenario {
    name: String,
    origin: Origin,
    hold_s: Option<f64>,
    constraints: Option<ScenarioConstraints>,
    items: Vec<ScenarioItem>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Origin {
    lat_deg: f64,
    lon_deg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioConstraints {
    max_agl_m: Option<f64>,
    tilt_min_deg: Option<f64>,
    tilt_max_deg: Option<f64>,
    min_hold_s: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum ScenarioItem {
    Waypoint { e: f64, n: f64, u: f64, hold_s: Option<f64> },
    Roi { e: f64, n: f64, u: f64 },
}

fn scenario_plan(text: &str, origin_name: &str) -> Result<MissionPlan, CliError> {
    let s: Scenario = toml::from_str(text).map_err(|e| CliError::input(format!("{origin_name}: {e}")))?;
    let frame = LocalFrame::new(s.origin.lat_deg, s.origin.lon_deg).map_err(|e| CliError::input(format!("{origin_name}: origin: {e}")))?;
    let mut plan = MissionPlan::new(s.name, frame);
    if let Some(c) = s.constraints {
        let d = MissionConstraints::default();
        plan.constraints = MissionConstraints {
            max_agl_m: c.max_agl_m.unwrap_or(d.max_agl_m),
            tilt_min_deg: c.tilt_min_deg.unwrap_or(d.tilt_min_deg),
            tilt_max_deg: c.tilt_max_deg.unwrap_or(d.tilt_max_deg),
            min_hold_s: c.min_hold_s.unwrap_or(d.min_hold_s),
        };
    }
    let default_hold = s.hold_s.unwrap_or(plan.constraints.min_hold_s);
    for (i, item) in s.items.into_iter().enumerate() {
        let r = match item {
            ScenarioItem::Waypoint { e, n, u, hold_s } => plan.push_waypoint_enu(EnuVector::new(e, n, u), hold_s.unwrap_or(default_hold)).map(|_| ()),
            ScenarioItem::Roi { e, n, u } => plan.push_roi_enu(EnuVector::new(e, n, u)).map(|_| ()),
        };
        r.map_err(|e| CliError::input(format!("{origin_name}: item {i}: {e}")))?;
    }
    Ok(plan)
}

pub(crate) fn load_plan(path: &std::path::Path) -> Result<MissionPlan, CliError> {
    parse_plan(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn print_report(ctx: &mut Ctx<'_>, report: &ValidationReport, plan: &MissionPlan) {
    for w in &report.warnings {
        ctx.warn(w.to_string());
    }
    if report.is_valid() {
        ctx.say(format!("plan `{}`: {} waypoints, valid", plan.name, plan.waypoint_count()));
    } else {
        let _ = writeln!(ctx.err, "plan `{}`: {} violation(s)", plan.name, report.violations.len());
        for v in &report.violations {
            let _ = writeln!(ctx.err, "  violation: {v}");
        }
    }
}

pub fn cmd_plan(ctx: &mut Ctx<'_>, a: &PlanArgs) -> Result<i32, CliError> {
    let mut plan = if let Some(p) = &a.scenario {
        scenario_plan(&read(p)?, &p.display().to_string())?
    } else if let Some(p) = &a.from {
        load_plan(p)?
    } else {
        let [lat, lon] = <[f64; 2]>::try_from(
            a.origin.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>().map_err(|e| CliError::input(format!("--origin: {e}")))?,
        )
        .map_err(|_| CliError::input("--origin expects `lat,lon`"))?;
        let frame = LocalFrame::new(lat, lon).map_err(|e| CliError::input(format!("--origin: {e}")))?;
        let mut plan = MissionPlan::new("hover", frame);
        plan.push_waypoint_enu(EnuVector::new(0.0, 0.0, a.hover_agl_m), a.dwell_s).map_err(|e| CliError::input(e.to_string()))?;
        plan
    };
    if a.raster {
        let scan = ScanSpec {
            azimuth_step_deg: a.az_step_deg,
            tilt_levels_deg: a.tilts_deg.clone(),
            dwell_s: a.dwell_s,
            roi_range_m: a.roi_range_m,
            waypoint: a.raster_wp,
        };
        plan = expand_schedule(&plan, &scan).map_err(|e| CliError::input(e.to_string()))?;
    }
    let report = validate(&plan);
    print_report(ctx, &report, &plan);
    if !report.is_valid() {
        return Ok(EXIT_VIOLATION);
    }
    if a.dry_run {
        ctx.say("dry run: plan not written");
    } else {
        let out = a.out.clone().unwrap_or_else(|| ctx.output_path("plan.json"));
        ctx.write_output(&out, &serialize_plan(&plan))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_validate(ctx: &mut Ctx<'_>, a: &ValidateArgs) -> Result<i32, CliError> {
    let path = required(&a.plan, &ctx.file.plan, "plan")?;
    let plan = load_plan(&path)?;
    let report = validate(&plan);
    print_report(ctx, &report, &plan);
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_VIOLATION })
}
