use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hilbtex::imageio::load_image;

fn hilbtex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbtex"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn csv_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn generate_cascade_writes_image_sidecar_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.pgm");
    let o = hilbtex(&[
        "generate",
        "cascade",
        "--probs",
        "0.2434,0.2522,0.2566,0.2478",
        "--steps",
        "10",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let img = load_image(&out).unwrap();
    assert_eq!(
        (img.record.width, img.record.height, img.record.bit_depth),
        (1024, 1024, 16)
    );
    let sidecar: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(sidecar["surface"]["kind"], "cascade");
    assert_eq!(sidecar["surface"]["spec"]["steps"], 10);
    assert!(sidecar["seed"].is_null());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.pgm.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["verb"], "generate");
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn fbs_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pgm"), dir.path().join("b.pgm"));
    for out in [&a, &b] {
        let o = hilbtex(&[
            "generate",
            "fbs",
            "--hurst",
            "0.5",
            "--level",
            "9",
            "--seed",
            "7",
            "--out",
            p(out),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(load_image(&a).unwrap().record.width, 512);
}

#[test]
fn invalid_arguments_exit_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pgm");
    let o = hilbtex(&[
        "generate",
        "cascade",
        "--probs",
        "0.3,0.3,0.3,0.3",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum"));
    assert!(!out.exists());

    assert_eq!(
        hilbtex(&["generate", "blob", "--out", p(&out)])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hilbtex(&["analyze", p(&out), "--out", "x.csv"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hilbtex(&["--help"]).status.code(), Some(0));
}

#[test]
fn analyze_rejects_nine_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("f.pgm");
    assert!(
        hilbtex(&["generate", "fbs", "--level", "5", "--out", p(&img)])
            .status
            .success()
    );
    let csv = dir.path().join("a.csv");
    let o = hilbtex(&["analyze", p(&img), "--dim", "9", "--out", p(&csv)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("D = 9"));
}

#[test]
fn analyze_emits_one_row_per_transform() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("cas.pgm");
    assert!(
        hilbtex(&["generate", "cascade", "--steps", "8", "--out", p(&img)])
            .status
            .success()
    );
    let csv = dir.path().join("out/a.csv");
    let o = hilbtex(&[
        "analyze",
        p(&img),
        "--transforms",
        "id,rot90,rot180,rot270,mirror",
        "--out",
        p(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&csv);
    assert_eq!(
        lines[0],
        "label,source,method,D,tau,transform,H,C,F,samples,undersampled,seed"
    );
    assert_eq!(lines.len(), 6);
    let transforms: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(5).unwrap())
        .collect();
    assert_eq!(transforms, ["id", "rot90", "rot180", "rot270", "mirror"]);
    // the sidecar marks a cascade, so D defaults to 6
    assert!(lines[1..].iter().all(|l| l.split(',').nth(3) == Some("6")));
    assert!(lines[1].starts_with("cas_id_D6_t1,"));
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        for v in &fields[6..9] {
            let v: f64 = v.parse().unwrap();
            assert!((0.0..=1.0).contains(&v));
        }
    }
    assert!(dir.path().join("out/a.csv.manifest.json").exists());
}

#[test]
fn directories_are_expanded_in_name_order_and_failures_reported() {
    let dir = tempfile::tempdir().unwrap();
    let imgs = dir.path().join("imgs");
    for (name, seed) in [("b_s2.pgm", "2"), ("a_s1.pgm", "1")] {
        let out = imgs.join(name);
        assert!(hilbtex(&[
            "generate",
            "fbs",
            "--level",
            "6",
            "--seed",
            seed,
            "--out",
            p(&out)
        ])
        .status
        .success());
    }
    fs::write(imgs.join("notes.txt"), "ignored").unwrap();
    let csv = dir.path().join("a.csv");
    assert!(
        hilbtex(&["analyze", p(&imgs), "--dim", "4", "--out", p(&csv)])
            .status
            .success()
    );
    let lines = csv_lines(&csv);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("a_s1_id_D4_t1,") && lines[1].ends_with(",1"));
    assert!(lines[2].starts_with("b_s2_id_D4_t1,") && lines[2].ends_with(",2"));

    fs::write(imgs.join("broken.pgm"), b"P5\n8 8\n255\n").unwrap();
    let o = hilbtex(&["analyze", p(&imgs), "--dim", "4", "--out", p(&csv)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(csv_lines(&csv).len(), 3);
}

#[test]
fn compare_writes_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("f.pgm");
    assert!(
        hilbtex(&["generate", "fbs", "--level", "8", "--out", p(&img)])
            .status
            .success()
    );
    let csv = dir.path().join("c.csv");
    let o = hilbtex(&[
        "compare",
        p(&img),
        "--dim",
        "8",
        "--patch",
        "2x4",
        "--out",
        p(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&csv);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1].split(',').nth(2), Some("hilbert"));
    assert_eq!(lines[2].split(',').nth(2), Some("patch2d"));

    let o = hilbtex(&[
        "compare",
        p(&img),
        "--dim",
        "6",
        "--patch",
        "2x4",
        "--out",
        p(&csv),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("f.pgm");
    assert!(
        hilbtex(&["generate", "fbs", "--level", "6", "--out", p(&img)])
            .status
            .success()
    );
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# shared settings\ndim = 3\ntransforms = id,mirror\n").unwrap();
    let csv = dir.path().join("a.csv");

    assert!(
        hilbtex(&["analyze", p(&img), "--config", p(&cfg), "--out", p(&csv)])
            .status
            .success()
    );
    let lines = csv_lines(&csv);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1].split(',').nth(3), Some("3"));

    assert!(hilbtex(&[
        "analyze",
        p(&img),
        "--config",
        p(&cfg),
        "--dim",
        "4",
        "--out",
        p(&csv)
    ])
    .status
    .success());
    assert_eq!(csv_lines(&csv)[1].split(',').nth(3), Some("4"));

    fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(
        hilbtex(&["analyze", p(&img), "--config", p(&cfg), "--out", p(&csv)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn plots_are_valid_svg() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let svg = dir.path().join("empty.svg");
    assert!(hilbtex(&["plot", p(&empty), "--out", p(&svg)])
        .status
        .success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && !text.contains("<circle"));

    let mut csv =
        String::from("label,source,method,D,tau,transform,H,C,F,samples,undersampled,seed\n");
    for (i, (h, c, f)) in [(0.9, 0.1, 0.1), (0.92, 0.09, 0.08), (0.7, 0.3, 0.4)]
        .iter()
        .enumerate()
    {
        let series = if i < 2 { "x" } else { "y" };
        csv.push_str(&format!(
            "r{i},{series}_s{i}.pgm,hilbert,4,1,id,{h},{c},{f},100,false,{i}\n"
        ));
    }
    let data = dir.path().join("d.csv");
    fs::write(&data, csv).unwrap();
    for plane in ["cecp", "fecp"] {
        let out = dir.path().join(format!("{plane}.svg"));
        let o = hilbtex(&[
            "plot",
            p(&data),
            "--plane",
            plane,
            "--group",
            "series",
            "--out",
            p(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&out).unwrap();
        assert_eq!(text.matches("<circle").count(), 3);
        assert_eq!(text.matches(r#"class="errorbar""#).count(), 2);
        assert_eq!(text.contains("polyline"), plane == "cecp");
    }
}
