use std::path::Path;
use std::process::{Command, Output};

fn shellfound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellfound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn solve_shell_writes_header_trace_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = shellfound(&["solve-shell", "--n", "33", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = read(&out);
    assert!(text.starts_with("# preset=defaults\n"));
    assert!(text.contains("# n=33\n"));
    assert!(text.contains("# grid_m="));
    let b = body(&text);
    let mut lines = b.lines();
    assert_eq!(lines.next(), Some("x2,u2,u3"));
    assert_eq!(lines.count(), 33);

    let manifest = read(&dir.path().join("t.csv.manifest"));
    for key in ["command=solve-shell", "converged=true", "runtime_s=", "final_residual=", "workers=0"] {
        assert!(manifest.contains(key), "missing {key}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, args: &[&str]| {
        let out = dir.path().join(name);
        let mut all: Vec<&str> = args.to_vec();
        let o = out.to_str().unwrap().to_string();
        all.extend(["--out", &o]);
        let r = shellfound(&all);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        read(&out)
    };
    let a = run("a.csv", &["sweep", "--param", "dE", "--from", "2", "--to", "16", "--steps", "15", "--n", "17"]);
    let b = run("b.csv", &["sweep", "--param", "dE", "--from", "2", "--to", "16", "--steps", "15", "--n", "17"]);
    assert_eq!(a, b);
    let rows: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "delta,azimuthal_error,radial_error,converged_shell,converged_twobody,phi_scale");
    assert_eq!(rows.len(), 16);
    assert!(rows[1].starts_with("2,"));
    assert!(rows[15].starts_with("16,"));

    let c = run("c.csv", &["solve-two-body", "--n", "33"]);
    let d = run("d.csv", &["solve-two-body", "--n", "33", "--workers", "2"]);
    assert_eq!(c, d);
}

#[test]
fn closed_form_has_zero_centre_row() {
    let o = shellfound(&["closed-form", "--preset", "defaults", "--points", "11"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("# phi_scale="));
    let b = body(&text);
    let rows: Vec<&str> = b.lines().collect();
    assert_eq!(rows[0], "x2,w2");
    assert_eq!(rows[6], "0.000000000000e0,0.000000000000e0");
}

#[test]
fn config_file_and_overrides_resolve_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# shell\ndE = 4\nh=0.2\nn=17\n").unwrap();
    let o = shellfound(&[
        "closed-form",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "h=0.3",
        "--points",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("# E=4000.0\n"));
    assert!(text.contains("# h=0.3\n"));
    assert!(text.contains("# n=17\n"));
}

#[test]
fn exit_statuses() {
    let code = |args: &[&str]| shellfound(args).status.code();
    assert_eq!(code(&["solve-shell", "--preset", "fig99"]), Some(2));
    assert_eq!(code(&["solve-shell", "--set", "nu=0.6"]), Some(2));
    assert_eq!(code(&["solve-shell", "--n", "3"]), Some(2));
    assert_eq!(code(&["solve-shell", "--relax", "2.5"]), Some(2));
    assert_eq!(code(&["sweep", "--n", "17"]), Some(2));
    assert_eq!(code(&["solve-shell", "--n", "33", "--method", "jacobi", "--relax", "1.2"]), Some(3));
    assert_eq!(code(&["solve-shell", "--n", "17", "--method", "jacobi", "--max-iter", "5"]), Some(4));
    assert_eq!(code(&["solve-shell", "--n", "17", "--out", "/nonexistent-dir/x.csv"]), Some(2));
}

#[test]
fn checkpoint_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("field.txt");
    let o = shellfound(&["solve-two-body", "--n", "17", "--checkpoint", ck.to_str().unwrap()]);
    assert!(o.status.success());
    let text = read(&ck);
    assert!(text.starts_with("shellfound-checkpoint 1\nregions 2\n"));
}

#[test]
fn verify_quick_reports_every_check() {
    let o = shellfound(&["verify"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("8 of 8 checks passed"), "{text}");
}
