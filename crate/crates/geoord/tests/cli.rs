//! End-to-end tests of the `geoord` binary: exit codes, file formats and
//! byte-for-byte determinism of the demo -> order -> interpolate -> plot
//! pipeline.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geoord"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geoord-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn demo_order_check_interpolate_plot_pipeline() {
    let dir = tmp_dir("pipeline");
    let sample = dir.join("sample.json");
    let truth = dir.join("truth.json");
    let order = dir.join("order.json");
    let report = dir.join("report.json");
    let curve = dir.join("curve.json");
    let svg = dir.join("curve.svg");

    let out = run(&[
        "demo",
        "se3-trajectory",
        "64",
        "--seed",
        "7",
        "--output",
        p(&sample),
        "--truth",
        p(&truth),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["order", "--input", p(&sample), "--output", p(&order)]);
    assert!(out.status.success());

    // recovered order must match the truth up to direction/rotation
    let truth_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&truth).unwrap()).unwrap();
    let order_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&order).unwrap()).unwrap();
    assert_eq!(order_json["closed"], serde_json::json!(true));
    assert_eq!(order_json["algorithm"], serde_json::json!("mst"));
    assert_eq!(order_json["max_degree"], serde_json::json!(2));
    let t: Vec<usize> = truth_json["order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    let o: Vec<usize> = order_json["order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    let n = t.len();
    let matches = (0..n).any(|shift| {
        (0..n).all(|i| o[i] == t[(i + shift) % n])
            || (0..n).all(|i| o[i] == t[(n + shift - i) % n])
    });
    assert!(matches, "CLI order does not match demo truth");

    let out = run(&[
        "check",
        "--input",
        p(&sample),
        "--truth",
        p(&truth),
        "--output",
        p(&report),
    ]);
    assert!(out.status.success());
    let report_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report_json["is_dense"], serde_json::json!(true));

    let out = run(&[
        "interpolate",
        "--input",
        p(&sample),
        "--truth",
        p(&order),
        "--scheme",
        "partial",
        "--k",
        "4",
        "--output",
        p(&curve),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let curve_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&curve).unwrap()).unwrap();
    assert_eq!(curve_json["scheme"], serde_json::json!("partial_geodesic"));
    // closed curve with 64 nodes at k=4: 64*4 + 1 samples
    assert_eq!(curve_json["samples"].as_array().unwrap().len(), 257);

    let out = run(&["plot", "--input", p(&curve), "--output", p(&svg)]);
    assert!(out.status.success());
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    assert_eq!(svg_text.matches("<path").count(), 1);
    assert!(svg_text.matches("<line").count() >= 16);
}

#[test]
fn pipeline_is_byte_identical_across_runs() {
    let dir = tmp_dir("determinism");
    let mut bytes: Vec<Vec<u8>> = Vec::new();
    for round in 0..2 {
        let sample = dir.join(format!("s{round}.json"));
        let truth = dir.join(format!("t{round}.json"));
        let order = dir.join(format!("o{round}.json"));
        let curve = dir.join(format!("c{round}.json"));
        let svg = dir.join(format!("p{round}.svg"));
        assert!(run(&[
            "demo",
            "sphere-loop",
            "50",
            "--seed",
            "42",
            "--output",
            p(&sample),
            "--truth",
            p(&truth)
        ])
        .status
        .success());
        assert!(run(&["order", "--input", p(&sample), "--output", p(&order)])
            .status
            .success());
        // sphere samples cannot be interpolated; plot the ordered points
        assert!(run(&[
            "plot",
            "--input",
            p(&sample),
            "--truth",
            p(&order),
            "--output",
            p(&svg)
        ])
        .status
        .success());
        let mut all = std::fs::read(&sample).unwrap();
        all.extend(std::fs::read(&truth).unwrap());
        all.extend(std::fs::read(&order).unwrap());
        all.extend(std::fs::read(&svg).unwrap());
        let _ = std::fs::read(&curve).err();
        bytes.push(all);
    }
    assert_eq!(bytes[0], bytes[1], "pipeline output differs between runs");
}

#[test]
fn order_is_stable_across_thread_counts() {
    let dir = tmp_dir("threads");
    let sample = dir.join("sample.json");
    let truth = dir.join("truth.json");
    assert!(run(&[
        "demo",
        "se2-circle",
        "48",
        "--seed",
        "5",
        "--output",
        p(&sample),
        "--truth",
        p(&truth)
    ])
    .status
    .success());
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let order = dir.join(format!("order-{threads}.json"));
        let out = bin()
            .args(["order", "--input", p(&sample), "--output", p(&order)])
            .env("GEOORD_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&order).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn malformed_input_exits_one() {
    let dir = tmp_dir("badjson");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["order", "--input", p(&bad), "--output", p(&dir.join("x.json"))]);
    assert_eq!(out.status.code(), Some(1));

    let empty = dir.join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = run(&[
        "check",
        "--input",
        p(&empty),
        "--truth",
        p(&empty),
        "--output",
        p(&dir.join("y.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn branching_sample_exits_two_and_names_the_vertex() {
    let dir = tmp_dir("branching");
    let sample = dir.join("star.json");
    // a three-armed star: the hub acquires degree 3 in the MST
    std::fs::write(
        &sample,
        r#"{
  "manifold": "plane",
  "points": [[0.0, 0.0], [1.0, 0.0], [-0.5, 0.866], [-0.5, -0.866]]
}
"#,
    )
    .unwrap();
    let out = run(&["order", "--input", p(&sample), "--output", p(&dir.join("o.json"))]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("0"), "stderr should name the branching vertex: {stderr}");
}

#[test]
fn sparse_demo_fails_density_check() {
    let dir = tmp_dir("sparse");
    let sample = dir.join("sample.json");
    let truth = dir.join("truth.json");
    let report = dir.join("report.json");
    assert!(run(&[
        "demo",
        "plane-ellipse",
        "8",
        "--seed",
        "1",
        "--output",
        p(&sample),
        "--truth",
        p(&truth)
    ])
    .status
    .success());
    assert!(run(&[
        "check",
        "--input",
        p(&sample),
        "--truth",
        p(&truth),
        "--output",
        p(&report)
    ])
    .status
    .success());
    let report_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report_json["is_dense"], serde_json::json!(false));
}

#[test]
fn interpolate_two_granularities_nest() {
    let dir = tmp_dir("granularity");
    let sample = dir.join("sample.json");
    let truth = dir.join("truth.json");
    assert!(run(&[
        "demo",
        "se3-trajectory",
        "48",
        "--seed",
        "3",
        "--output",
        p(&sample),
        "--truth",
        p(&truth)
    ])
    .status
    .success());
    let coarse = dir.join("coarse.json");
    let fine = dir.join("fine.json");
    for (k, path) in [("2", &coarse), ("4", &fine)] {
        assert!(run(&[
            "interpolate",
            "--input",
            p(&sample),
            "--truth",
            p(&truth),
            "--scheme",
            "geodesic",
            "--k",
            k,
            "--output",
            p(path),
        ])
        .status
        .success());
    }
    let params = |path: &Path| -> Vec<String> {
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v["samples"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| format!("{:.12}", s["t"].as_f64().unwrap()))
            .collect()
    };
    let coarse_params = params(&coarse);
    let fine_params = params(&fine);
    for t in &coarse_params {
        assert!(fine_params.contains(t), "coarse parameter {t} missing from fine run");
    }
}

#[test]
fn decasteljau_needs_velocities_and_se3() {
    let dir = tmp_dir("decasteljau");
    let sample = dir.join("pair.json");
    std::fs::write(
        &sample,
        r#"{
  "manifold": "se3",
  "points": [
    {"rotation": [[1,0,0],[0,1,0],[0,0,1]], "translation": [-5, 0, 0]},
    {"rotation": [[1,0,0],[0,0,-1],[0,1,0]], "translation": [5, 0, 0]}
  ]
}
"#,
    )
    .unwrap();
    let out = run(&[
        "interpolate",
        "--input",
        p(&sample),
        "--scheme",
        "decasteljau",
        "--k",
        "16",
        "--output",
        p(&dir.join("c.json")),
    ]);
    assert_eq!(out.status.code(), Some(1), "missing velocities must fail");

    // with velocities it works
    std::fs::write(
        &sample,
        r#"{
  "manifold": "se3",
  "points": [
    {"rotation": [[1,0,0],[0,1,0],[0,0,1]], "translation": [-5, 0, 0]},
    {"rotation": [[1,0,0],[0,0,-1],[0,1,0]], "translation": [5, 0, 0]}
  ],
  "velocities": [[0, 0, 0, 3, 1, 1], [1.5707963267948966, 0, 0, -1, -3, -1]]
}
"#,
    )
    .unwrap();
    let curve = dir.join("c.json");
    let out = run(&[
        "interpolate",
        "--input",
        p(&sample),
        "--scheme",
        "decasteljau",
        "--k",
        "16",
        "--output",
        p(&curve),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&curve).unwrap()).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 16);

    // wrong manifold for the scheme
    let se2 = dir.join("se2.json");
    std::fs::write(
        &se2,
        r#"{"manifold": "se2", "points": [[0, 0, 0], [0.5, 1, 0], [1.0, 2, 0]]}"#,
    )
    .unwrap();
    let out = run(&[
        "interpolate",
        "--input",
        p(&se2),
        "--scheme",
        "decasteljau",
        "--output",
        p(&dir.join("x.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn frames_command_orders_by_masks_and_poses() {
    let dir = tmp_dir("frames");
    let input = dir.join("frames.json");
    // six frames along a gentle arc, poses and masks both present
    let mut records = Vec::new();
    for k in 0..6 {
        let t = k as f64 / 5.0;
        let theta: f64 = 1.2 * t;
        let c = [50.0 * t, 10.0 * t * t];
        let (sin, cos) = theta.sin_cos();
        let (a, b) = (6.0, 14.0);
        let corner = |x: f64, y: f64| vec![c[0] + cos * x - sin * y, c[1] + sin * x + cos * y];
        records.push(serde_json::json!({
            "id": format!("f{k}"),
            "pose": [theta, c[0], c[1]],
            "mask": {
                "a": a,
                "b": b,
                "corners": [
                    corner(-b / 2.0, -a / 2.0),
                    corner(b / 2.0, -a / 2.0),
                    corner(b / 2.0, a / 2.0),
                    corner(-b / 2.0, a / 2.0)
                ]
            }
        }));
    }
    // shuffled presentation
    let shuffled: Vec<_> = [3usize, 0, 5, 1, 4, 2]
        .iter()
        .map(|&i| records[i].clone())
        .collect();
    std::fs::write(&input, serde_json::to_string_pretty(&shuffled).unwrap()).unwrap();

    let output = dir.join("result.json");
    let out = run(&[
        "frames",
        "--input",
        p(&input),
        "--output",
        p(&output),
        "--algo",
        "mst",
        "--beta",
        "0.001",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    let order: Vec<&str> = v["order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(order, vec!["f0", "f1", "f2", "f3", "f4", "f5"]);

    // nn without start fails with exit 1
    let out = run(&[
        "frames",
        "--input",
        p(&input),
        "--output",
        p(&dir.join("x.json")),
        "--algo",
        "nn",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_demo_name_fails() {
    let dir = tmp_dir("unknown");
    let out = run(&[
        "demo",
        "trefoil",
        "30",
        "--output",
        p(&dir.join("s.json")),
        "--truth",
        p(&dir.join("t.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
