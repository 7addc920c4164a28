use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn quadzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadzero"))
        .args(args)
        .output()
        .expect("spawn quadzero")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn radius_reports_large_coefficient_root() {
    let v = json(&quadzero(&[
        "radius", "--b", "2", "--c", "3", "--k", "4", "--n", "3", "--m", "1",
    ]));
    assert_eq!(v["source"], "Thm31");
    let r = v["radius"].as_f64().unwrap();
    assert!((r - 2.458_972_346_377_964).abs() < 1e-12);
    assert_eq!(v["delta"].as_f64().unwrap(), r);
}

#[test]
fn radius_fallback_has_null_delta() {
    let v = json(&quadzero(&[
        "radius", "--b", "0", "--c", "0.5", "--k", "1", "--n", "3", "--m", "1",
    ]));
    assert_eq!(v["source"], "FallbackCauchy");
    assert_eq!(v["radius"].as_f64().unwrap(), 1.5);
    assert!(v["delta"].is_null());
}

#[test]
fn zeros_csv_closed_form() {
    let out = quadzero(&[
        "zeros", "--b", "0", "--c", "0", "--n", "3", "--m", "1", "--k", "1", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,residual,jacobian,orientation"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    let reversing = rows.iter().filter(|r| r[4] == "SenseReversing").count();
    assert_eq!(reversing, 4);
    for r in &rows {
        // 17 significant digits in scientific notation
        let mantissa = r[0].trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.len(), 18, "{}", r[0]);
        let (x, y): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let modulus = x.hypot(y);
        assert!(modulus < 1e-12 || (modulus - 1.0).abs() < 1e-10);
    }
}

#[test]
fn zeros_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("zeros.svg");
    let out = quadzero(&[
        "zeros",
        "--b",
        "2",
        "--c",
        "3",
        "--k",
        "2",
        "--n",
        "2",
        "--m",
        "1",
        "--format",
        "json",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    let v = json(&out);
    let count = v["count"].as_u64().unwrap();
    assert_eq!(v["zeros"].as_array().unwrap().len() as u64, count);
    assert!(count >= 1);

    let text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let circles: Vec<_> = root.descendants().filter(|n| n.has_tag_name("circle")).collect();
    let markers = circles.iter().filter(|n| n.attribute("r") == Some("4")).count() as u64;
    assert_eq!(markers, count);
    let stroked = circles.iter().filter(|n| n.attribute("fill") == Some("none")).count();
    // bounding circle plus the critical circle for n = k, m = 1
    assert_eq!(stroked, 2);
}

#[test]
fn critical_circle_rejects_unit_b() {
    for b in ["1", "-1"] {
        let out = quadzero(&["critical-circle", "--b", b, "--c", "3", "--k", "2"]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("Theorem 3.4 requires b ≠ ±1"));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn critical_circle_worked_point() {
    let v = json(&quadzero(&[
        "critical-circle",
        "--b",
        "2",
        "--c",
        "3",
        "--k",
        "2",
        "--census",
        "1e-6",
    ]));
    assert!((v["radius"].as_f64().unwrap() - 0.816_496_580_927_726).abs() < 1e-12);
    assert_eq!(v["passed"], true);
    assert_eq!(v["rays"].as_array().unwrap().len(), 2);
    assert!(v["census"]["inside"].is_u64());
}

#[test]
fn critical_circle_needs_matching_signs() {
    let out = quadzero(&["critical-circle", "--b", "2", "--c", "0.5", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Theorem 3.4"));
}

#[test]
fn unavailable_disk_exits_two() {
    let out = quadzero(&["zeros", "--b", "1", "--c", "0.5", "--k", "2", "--n", "2", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Theorem 3.1 requires k > n"));
}

#[test]
fn invalid_degrees_exit_two() {
    let out = quadzero(&["radius", "--b", "1", "--c", "1", "--k", "3", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = quadzero(&["radius", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_on_contour_exits_three() {
    // the unimodular zeros of conj(z)^3 + z lie on the unit circle
    let out = quadzero(&[
        "winding", "--b", "0", "--c", "0", "--k", "1", "--n", "3", "--m", "1", "--radius", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("vanishes on the contour"));
}

#[test]
fn winding_default_and_rectangle() {
    let v = json(&quadzero(&[
        "winding", "--b", "0", "--c", "0", "--k", "1", "--n", "3", "--m", "1",
    ]));
    assert_eq!(v["winding"], -3);
    assert_eq!(v["contour"]["kind"], "circle");
    let v = json(&quadzero(&[
        "winding", "--b", "0", "--c", "0", "--k", "1", "--n", "3", "--m", "1", "--lo-re", "-0.5", "--lo-im", "-0.5",
        "--hi-re", "0.5", "--hi-im", "0.5",
    ]));
    assert_eq!(v["winding"], 1);
}

#[test]
fn classify_reports_orientation() {
    let v = json(&quadzero(&[
        "classify", "--b", "0", "--c", "0", "--k", "1", "--n", "3", "--m", "1", "--re", "0", "--im", "0",
    ]));
    assert_eq!(v["orientation"], "SensePreserving");
    assert_eq!(v["jacobian"], 1.0);
    // |z| = 3^{-1/2} is the singular circle of conj(z)^3 + z
    let r = (1.0f64 / 3.0).sqrt().to_string();
    let v = json(&quadzero(&[
        "classify", "--b", "0", "--c", "0", "--k", "1", "--n", "3", "--m", "1", "--re", &r, "--im", "0",
    ]));
    assert_eq!(v["orientation"], "Singular");
}

#[test]
fn circle_image_is_closed() {
    let out = quadzero(&[
        "circle-image",
        "--b",
        "2",
        "--c",
        "3",
        "--k",
        "4",
        "--n",
        "3",
        "--m",
        "1",
        "--radius",
        "1.5",
        "--samples",
        "32",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "theta,re,im");
    assert_eq!(rows.len(), 1 + 33);
    let first: Vec<&str> = rows[1].split(',').collect();
    let last: Vec<&str> = rows[33].split(',').collect();
    assert_eq!(first[1..], last[1..]);
}

#[test]
fn sweep_csv_schema_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("sweep.svg");
    let out = quadzero(&[
        "sweep",
        "--b-lo",
        "0",
        "--b-hi",
        "1",
        "--b-steps",
        "3",
        "--c-lo",
        "-1",
        "--c-hi",
        "2",
        "--c-steps",
        "2",
        "--k",
        "3",
        "--n",
        "2",
        "--m",
        "1",
        "--threads",
        "2",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "b,c,count,n_plus,n_minus,n_singular,bound_upper,bound_proven,radius,winding_check,violation"
    );
    assert_eq!(rows.len(), 1 + 6);
    // row order is (b index, c index)
    let bc: Vec<(f64, f64)> = rows[1..]
        .iter()
        .map(|r| {
            let f: Vec<&str> = r.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    assert_eq!(
        bc,
        vec![
            (0.0, -1.0),
            (0.0, 2.0),
            (0.5, -1.0),
            (0.5, 2.0),
            (1.0, -1.0),
            (1.0, 2.0)
        ]
    );
    for r in &rows[1..] {
        assert_eq!(r.split(',').count(), 11);
        assert!(r.ends_with(",none"));
    }

    let doc_text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&doc_text).unwrap();
    let cells = doc
        .descendants()
        .filter(|n| n.has_tag_name("rect") && n.attribute("fill") != Some("white"))
        .count();
    assert_eq!(cells, 6);
}

#[test]
fn threads_default_from_environment() {
    let args = [
        "sweep",
        "--b-lo",
        "0.5",
        "--b-hi",
        "2",
        "--b-steps",
        "4",
        "--c-lo",
        "-2",
        "--c-hi",
        "2",
        "--c-steps",
        "3",
        "--k",
        "4",
        "--n",
        "2",
        "--m",
        "1",
    ];
    let a = Command::new(env!("CARGO_BIN_EXE_quadzero"))
        .args(args)
        .env("QUADZERO_THREADS", "1")
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_quadzero"))
        .args(args)
        .env("QUADZERO_THREADS", "3")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_quadzero"))
        .args(args)
        .env("QUADZERO_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# instance\nb = 2\nc = 3\nk = 4\nn = 3\nm = 1\nformat = json\n").unwrap();
    let path = cfg.to_str().unwrap();

    let v = json(&quadzero(&["radius", "--config", path]));
    assert_eq!(v["source"], "Thm31");

    let v = json(&quadzero(&["--config", path, "radius", "--c", "0.5"]));
    assert_eq!(v["source"], "Thm32");

    // format is taken from the file for zeros
    let v = json(&quadzero(&["zeros", "--config", path]));
    assert!(v["count"].as_u64().unwrap() >= 1);

    fs::write(&cfg, "nonsense = 1\n").unwrap();
    let out = quadzero(&[
        "radius", "--config", path, "--b", "2", "--c", "3", "--k", "4", "--n", "3", "--m", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown config key"));
}
