use std::fs;
use std::process::{Command, Output};

use hitchin_cli::Report;

fn hitchin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitchin")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Report {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = hitchin(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    serde_json::from_str(&out).unwrap()
}

#[test]
fn sl2_text_report() {
    let o = hitchin(&["--type", "A1", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim P 3, dim M 3"), "{out}");
    assert!(out.contains("bound 2^0 = 1"), "{out}");
}

#[test]
fn json_report_fields() {
    let r = json(&["--type", "B2+A1", "--central-rank", "1", "--genus", "3", "--verify"]);
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.spec.cartan, "B2+A1");
    assert_eq!(r.datum.central_rank, 1);
    assert_eq!(r.datum.dim_g, 14);
    assert_eq!(r.datum.orbits.iter().map(|o| o.size).collect::<Vec<_>>(), vec![4, 4, 2]);
    assert_eq!(r.dimension.dim_p, 2 * 14 + 1);
    assert_eq!(r.dimension.strategy_agreement, Some(true));
    assert_eq!(r.cover.d, (16 * 4).to_string());
}

#[test]
fn json_round_trips() {
    let o = hitchin(&["--type", "G2", "--lattice", "adjoint", "--genus", "4", "--format", "json", "--verify"]);
    let text = stdout(&o);
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.to_json() + "\n", text);
}

#[test]
fn big_integers_are_strings() {
    let o = hitchin(&["--type", "E8", "--lattice", "adjoint", "--genus", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["datum"]["weyl_order"], "696729600");
    assert_eq!(v["cover"]["d"], (696_729_600u64 * 4).to_string());
    assert!(v["fiber"]["bound"].is_string());
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["--type", "A1", "--genus", "1"], 4, "genus must be ≥ 2"),
        (&["--type", "X3", "--genus", "2"], 3, "invalid type"),
        (&["--type", "A1", "--lattice", "file=/nonexistent", "--genus", "2"], 5, "lattice file"),
        (&["--type", "A1"], 2, "genus"),
        (&["--sweep", "nonsense"], 2, "unknown preset"),
        (&["--bogus"], 2, "--bogus"),
        (&["--config", "/nonexistent.cfg"], 6, "config file"),
    ];
    for (args, code, needle) in cases {
        let o = hitchin(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).is_empty());
    }
    assert_eq!(hitchin(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# PGl(2)\ntype = A1\nlattice = adjoint\ngenus = 3\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let r = json(&["--config", cfg]);
    assert_eq!((r.spec.lattice.as_str(), r.spec.genus), ("adjoint", 3));
    let r = json(&["--config", cfg, "--genus", "2", "--lattice", "sc"]);
    assert_eq!((r.spec.lattice.as_str(), r.spec.genus), ("sc", 2));

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "type = A1\ncolour = blue\n").unwrap();
    let o = hitchin(&["--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).contains("line 2"));
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn custom_lattice_files() {
    let dir = tempfile::tempdir().unwrap();
    // Gl(2): e₁ = (1, 1), e₂ = (−1, 1) in (ω, χ) coordinates with χ = det/2.
    let text = dir.path().join("gl2.txt");
    fs::write(&text, "# basis of X(T)\n1 1\n-1 1\n").unwrap();
    let arg = format!("file={}", text.display());
    let r = json(&["--type", "A1", "--central-rank", "1", "--lattice", &arg, "--genus", "2"]);
    assert_eq!(r.spec.lattice, "custom");
    assert_eq!(r.dimension.dim_p, 4 + 1);
    assert!(r.fiber.injective);

    let js = dir.path().join("pgl2.json");
    fs::write(&js, "[[2]]").unwrap();
    let arg = format!("file={}", js.display());
    let r = json(&["--type", "A1", "--lattice", &arg, "--genus", "2"]);
    assert_eq!(r.fiber.bound, "8");

    let half = dir.path().join("half.json");
    fs::write(&half, r#"[["1/2"]]"#).unwrap();
    let o = hitchin(&["--type", "A1", "--lattice", &format!("file={}", half.display()), "--genus", "2"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("weight lattice"), "{}", stderr(&o));

    let shape = dir.path().join("shape.txt");
    fs::write(&shape, "1 0\n").unwrap();
    let o = hitchin(&["--type", "A1", "--lattice", &format!("file={}", shape.display()), "--genus", "2"]);
    assert_eq!(o.status.code(), Some(5));

    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "1 x\n").unwrap();
    let o = hitchin(&["--type", "A1", "--lattice", &format!("file={}", junk.display()), "--genus", "2"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn torus() {
    let r = json(&["--type", "T", "--central-rank", "2", "--genus", "3", "--verify"]);
    assert_eq!(r.dimension.dim_p, 6);
    assert_eq!(r.cover.spectral_genus, "3");
    assert_eq!(r.cover.branch_fiber_size, None);
}

#[test]
fn sweep_is_ordered_and_deterministic() {
    let o = hitchin(&["--sweep", "small", "--format", "json"]);
    assert!(o.status.success());
    let reports: Vec<Report> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let keys: Vec<(String, String)> = reports.iter().map(|r| (r.spec.cartan.clone(), r.spec.lattice.clone())).collect();
    assert_eq!(keys.len(), 8);
    assert_eq!(keys[0], ("A1".into(), "sc".into()));
    assert_eq!(keys[1], ("A1".into(), "adjoint".into()));
    assert_eq!(keys[7], ("G2".into(), "adjoint".into()));

    let strip = |mut r: Report| {
        r.timing.total_us = 0;
        r
    };
    let again: Vec<Report> = stdout(&hitchin(&["--sweep", "small", "--format", "json"]))
        .lines()
        .map(|l| strip(serde_json::from_str(l).unwrap()))
        .collect();
    assert_eq!(reports.into_iter().map(strip).collect::<Vec<_>>(), again);
}
