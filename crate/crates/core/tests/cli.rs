use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const FREE_SPACE_100M: &str = r#"{"buildings": [], "ground_station": {"e": 100, "n": 0, "u": 19, "antenna": "horn", "positioner": []}, "seed": 11}"#;

const BORESIGHT_SCENARIO: &str = r#"
name = "boresight"
origin = { lat_deg = 44.35, lon_deg = 11.7 }

[[items]]
type = "roi"
e = 100.0
n = 0.0
u = 19.0

[[items]]
type = "waypoint"
e = 0.0
n = 0.0
u = 19.0
hold_s = 60.0
"#;

fn uavprop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavprop"))
        .current_dir(dir)
        .env_remove("UAVPROP_OUT_DIR")
        .args(args)
        .output()
        .unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn ok(o: &Output) {
    assert_eq!(o.status.code(), Some(0), "stdout:\n{}\nstderr:\n{}", text(&o.stdout), text(&o.stderr));
}

/// Plan and simulate the boresight hover into `out/`.
fn boresight_run(dir: &Path, out: &str) {
    fs::write(dir.join("scenario.toml"), BORESIGHT_SCENARIO).unwrap();
    fs::write(dir.join("scene.json"), FREE_SPACE_100M).unwrap();
    ok(&uavprop(dir, &["--out-dir", out, "plan", "--scenario", "scenario.toml"]));
    let plan = format!("{out}/plan.json");
    ok(&uavprop(dir, &["--out-dir", out, "simulate", "--plan", &plan, "--scene", "scene.json"]));
}

#[test]
fn plan_raster_defaults_to_120_dwells() {
    let d = TempDir::new().unwrap();
    let o = uavprop(d.path(), &["plan", "--raster"]);
    ok(&o);
    assert!(text(&o.stdout).contains("120 waypoints, valid"));
    let plan = uavprop::mission::parse_plan(&fs::read_to_string(d.path().join("plan.json")).unwrap()).unwrap();
    assert_eq!(plan.waypoint_count(), 120);
}

#[test]
fn waypoint_above_cap_exits_one() {
    let d = TempDir::new().unwrap();
    let o = uavprop(d.path(), &["plan", "--hover-agl-m", "55"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o.stderr).contains("altitude exceeds 50 m AGL"));
    assert!(!d.path().join("plan.json").exists());
}

#[test]
fn dry_run_writes_nothing() {
    let d = TempDir::new().unwrap();
    let o = uavprop(d.path(), &["plan", "--raster", "--dry-run"]);
    ok(&o);
    assert!(!d.path().join("plan.json").exists());
}

#[test]
fn validate_reports_violations() {
    let d = TempDir::new().unwrap();
    ok(&uavprop(d.path(), &["plan", "--hover-agl-m", "50"]));
    ok(&uavprop(d.path(), &["validate", "plan.json"]));
    let bad = fs::read_to_string(d.path().join("plan.json")).unwrap().replace("\"agl_m\": 50.0", "\"agl_m\": 50.5");
    fs::write(d.path().join("bad.json"), bad).unwrap();
    assert_eq!(uavprop(d.path(), &["validate", "bad.json"]).status.code(), Some(1));
    assert_eq!(uavprop(d.path(), &["validate", "missing.json"]).status.code(), Some(2));
}

#[test]
fn missing_scene_is_an_input_error() {
    let d = TempDir::new().unwrap();
    ok(&uavprop(d.path(), &["plan"]));
    let o = uavprop(d.path(), &["simulate", "--plan", "plan.json", "--scene", "nope.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("nope.json"));
}

#[test]
fn same_seed_gives_identical_files() {
    let d = TempDir::new().unwrap();
    boresight_run(d.path(), "a");
    boresight_run(d.path(), "b");
    for f in ["telemetry.jsonl", "rss.csv", "pdp.jsonl", "ground_log.csv", "run.json"] {
        let (a, b) = (fs::read(d.path().join("a").join(f)).unwrap(), fs::read(d.path().join("b").join(f)).unwrap());
        assert!(a == b, "{f} differs");
    }
    ok(&uavprop(d.path(), &["--seed", "12", "--out-dir", "c", "simulate", "--plan", "a/plan.json", "--scene", "scene.json"]));
    assert_ne!(fs::read(d.path().join("a/rss.csv")).unwrap(), fs::read(d.path().join("c/rss.csv")).unwrap());
}

#[test]
fn boresight_rss_matches_link_budget() {
    let d = TempDir::new().unwrap();
    boresight_run(d.path(), "out");
    let rss = uavprop::ingest::parse_rss(&fs::read_to_string(d.path().join("out/rss.csv")).unwrap(), -100.0).unwrap().records;
    assert!(rss.len() >= 100);
    let mean = rss.iter().map(|r| r.rss_dbm).sum::<f64>() / rss.len() as f64;
    assert!((mean + 34.08).abs() <= 0.2, "{mean}");
}

#[test]
fn fuse_pipeline_has_no_orphans_and_pathgain_runs() {
    let d = TempDir::new().unwrap();
    boresight_run(d.path(), "out");
    let o = uavprop(
        d.path(),
        &[
            "--out-dir", "out", "fuse", "--plan", "out/plan.json", "--telemetry", "out/telemetry.jsonl", "--rss", "out/rss.csv",
            "--pdp", "out/pdp.jsonl", "--ground-log", "out/ground_log.csv",
        ],
    );
    ok(&o);
    let s = text(&o.stdout);
    assert!(s.contains("segments found: 1"), "{s}");
    assert!(s.contains(" 0 orphaned"), "{s}");
    let o = uavprop(d.path(), &["--out-dir", "out", "analyze", "pathgain"]);
    ok(&o);
    assert!(text(&o.stderr).contains("boresight"));
    let table = fs::read_to_string(d.path().join("out/pathgain.csv")).unwrap();
    let row: Vec<&str> = table.lines().nth(1).unwrap().split(',').collect();
    let pg: f64 = row[6].parse().unwrap();
    assert!((pg + 101.08).abs() < 0.3, "{pg}");
    let o = uavprop(d.path(), &["--out-dir", "out", "analyze", "delayspread", "--pdp", "out/pdp.jsonl", "--annotated", "out/annotated.csv"]);
    ok(&o);
    assert!(fs::read_to_string(d.path().join("out/delay.csv")).unwrap().lines().count() > 50);
}

#[test]
fn withheld_telemetry_orphans_everything() {
    let d = TempDir::new().unwrap();
    boresight_run(d.path(), "out");
    let o = uavprop(d.path(), &["--out-dir", "f", "fuse", "--rss", "out/rss.csv"]);
    ok(&o);
    let orphans = fs::read_to_string(d.path().join("f/orphans.csv")).unwrap();
    let n = orphans.lines().skip(1).count();
    assert!(n >= 100);
    assert!(orphans.lines().skip(1).all(|l| l.ends_with(",no segment")));
    assert_eq!(fs::read_to_string(d.path().join("f/annotated.csv")).unwrap().lines().count(), 1);
}

#[test]
fn continuous_recording_orphans_manual_phases() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("scenario.toml"), BORESIGHT_SCENARIO.replace("hold_s = 60.0", "hold_s = 6.0")).unwrap();
    fs::write(d.path().join("scene.json"), FREE_SPACE_100M).unwrap();
    ok(&uavprop(d.path(), &["plan", "--scenario", "scenario.toml"]));
    ok(&uavprop(d.path(), &["simulate", "--plan", "plan.json", "--scene", "scene.json", "--continuous", "--no-uwb"]));
    let o = uavprop(d.path(), &["fuse", "--plan", "plan.json", "--telemetry", "telemetry.jsonl", "--rss", "rss.csv"]);
    ok(&o);
    let orphans = fs::read_to_string(d.path().join("orphans.csv")).unwrap();
    assert!(orphans.contains("before first hover") && orphans.contains("after last hover"));
    assert!(!d.path().join("pdp.jsonl").exists());
}

#[test]
fn raster_pap_is_five_by_twenty_four() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("scene.json"), r#"{"buildings": [], "ground_station": {"e": 0, "n": 80, "u": 2, "antenna": "horn", "positioner": []}, "seed": 3}"#).unwrap();
    ok(&uavprop(d.path(), &["plan", "--raster"]));
    ok(&uavprop(d.path(), &["simulate", "--plan", "plan.json", "--scene", "scene.json", "--no-uwb"]));
    ok(&uavprop(d.path(), &["fuse", "--plan", "plan.json", "--telemetry", "telemetry.jsonl", "--rss", "rss.csv", "--ground-log", "ground_log.csv"]));
    ok(&uavprop(d.path(), &["analyze", "pap"]));
    let pap = fs::read_to_string(d.path().join("pap.csv")).unwrap();
    let rows: Vec<Vec<f64>> = pap.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 120);
    let best = rows.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    // Ground station due north, 80 m away and 17 m down.
    assert_eq!((best[0], best[1]), (15.0, 0.0));
}

#[test]
fn delayspread_of_two_equal_taps() {
    let d = TempDir::new().unwrap();
    let mut lines = String::new();
    for k in 0..3 {
        let mut taps = vec![-140.0; 300];
        taps[20] = -70.0;
        taps[120] = -70.0;
        let v = serde_json::json!({"t_utc": format!("2021-06-01T10:00:0{k}.000Z"), "bin_ns": 1.0, "taps_db": taps});
        lines.push_str(&v.to_string());
        lines.push('\n');
    }
    fs::write(d.path().join("pdp.jsonl"), lines).unwrap();
    ok(&uavprop(d.path(), &["analyze", "delayspread", "--pdp", "pdp.jsonl"]));
    let out = fs::read_to_string(d.path().join("delay.csv")).unwrap();
    assert_eq!(out.lines().count(), 4);
    for l in out.lines().skip(1) {
        let cols: Vec<&str> = l.split(',').collect();
        assert_eq!((cols[2], cols[3]), ("50", "50"));
    }
}

#[test]
fn o2i_and_pep_input_errors() {
    let d = TempDir::new().unwrap();
    boresight_run(d.path(), "out");
    ok(&uavprop(d.path(), &["--out-dir", "out", "fuse", "--plan", "out/plan.json", "--telemetry", "out/telemetry.jsonl", "--rss", "out/rss.csv"]));
    let o = uavprop(d.path(), &["analyze", "o2i", "--outdoor", "floor1=out/annotated.csv", "--indoor", "floor2=out/annotated.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = uavprop(d.path(), &["--out-dir", "out", "analyze", "o2i", "--outdoor", "f1=out/annotated.csv", "--indoor", "f1=out/annotated.csv"]);
    ok(&o);
    let o2i = fs::read_to_string(d.path().join("out/o2i.csv")).unwrap();
    assert!(o2i.lines().nth(1).unwrap().ends_with(",0"));
    let o = uavprop(d.path(), &["--out-dir", "out", "analyze", "pep"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("ground"));
}

#[test]
fn config_file_and_env_supply_defaults() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("scenario.toml"), BORESIGHT_SCENARIO).unwrap();
    fs::write(d.path().join("scene.json"), FREE_SPACE_100M).unwrap();
    ok(&uavprop(d.path(), &["plan", "--scenario", "scenario.toml"]));
    fs::create_dir(d.path().join("cfg")).unwrap();
    fs::write(d.path().join("cfg/run.toml"), "seed = 5\nplan = \"../plan.json\"\nscene = \"../scene.json\"\nout_dir = \"../from_config\"\n").unwrap();
    ok(&uavprop(d.path(), &["--config", "cfg/run.toml", "simulate", "--no-uwb"]));
    assert!(fs::read_to_string(d.path().join("from_config/run.json")).unwrap().contains("\"seed\": 5"));

    let o = Command::new(env!("CARGO_BIN_EXE_uavprop"))
        .current_dir(d.path())
        .env("UAVPROP_OUT_DIR", "from_env")
        .args(["--config", "cfg/run.toml", "simulate", "--no-uwb"])
        .output()
        .unwrap();
    ok(&o);
    assert!(d.path().join("from_env/rss.csv").exists());
    assert_eq!(fs::read(d.path().join("from_env/rss.csv")).unwrap(), fs::read(d.path().join("from_config/rss.csv")).unwrap());

    fs::write(d.path().join("cfg/bad.toml"), "sed = 5\n").unwrap();
    assert_eq!(uavprop(d.path(), &["--config", "cfg/bad.toml", "formats"]).status.code(), Some(2));
}
