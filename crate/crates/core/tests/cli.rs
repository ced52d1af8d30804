use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conformal-dunkl"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conformal-dunkl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_default_config_passes() {
    let cfg = scratch("verify.toml", "n = 2\nroot_system = \"B2_euclidean\"\nmultiplicity = \"1/2\"\nsamples = 40\n");
    let o = bin().args(["--config", cfg.to_str().unwrap(), "verify"]).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("passed"));
}

#[test]
fn eval_flat_laplacian() {
    let cfg = scratch("eval.toml", "n = 2\nroot_system = \"A1\"\nmultiplicity = \"0\"\n");
    let pts = scratch("pts.txt", "0.3 0.4\n-1 2\n");
    let o = bin()
        .args(["--config", cfg.to_str().unwrap(), "--format", "json", "eval", "--function", "x1^2 + x2^2", "--points"])
        .arg(&pts)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in v.as_array().unwrap() {
        assert!((row["chart"].as_f64().unwrap() - 4.0).abs() < 1e-12);
        assert!((row["ambient"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    }
}

#[test]
fn roots_of_b_n() {
    let cfg = scratch("roots.toml", "n = 1\nroot_system = \"B(n)\"\n");
    let o = bin().args(["--config", cfg.to_str().unwrap(), "roots"]).output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group_order"], 8);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn table_is_deterministic() {
    let cfg = scratch("table.toml", "n = 2\nsamples = 15\n");
    let run = |seed: &str| bin().args(["--config", cfg.to_str().unwrap(), "--seed", seed, "table"]).output().unwrap();
    let a = run("5");
    let b = run("5");
    let c = run("6");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("index,"));
}

#[test]
fn out_flag_writes_file() {
    let cfg = scratch("out.toml", "n = 2\n");
    let out = std::env::temp_dir().join(format!("conformal-dunkl-roots-{}.csv", std::process::id()));
    let o = bin().args(["--config", cfg.to_str().unwrap(), "--format", "csv", "--out"]).arg(&out).arg("roots").output().unwrap();
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn unknown_config_key_is_rejected() {
    let cfg = scratch("bad.toml", "n = 2\nbogus = 1\n");
    let o = bin().args(["--config", cfg.to_str().unwrap(), "roots"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn verify_covers_every_suite() {
    let cfg = scratch("cover.toml", "n = 2\nroot_system = \"B2_euclidean\"\nmultiplicity = \"1\"\nsamples = 20\n");
    let o = bin().args(["--config", cfg.to_str().unwrap(), "verify"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for suite in [
        "sl2 [E,F] = H",
        "commutativity",
        "laplacian sum = direct",
        "G-equivariance",
        "extension independence j=1",
        "extension dependence",
        "chart formula = ambient route",
        "k=0 chart formula = flat Laplacian",
        "chart formula = classical Dunkl Laplacian",
        "bi-Laplacian",
        "chart equivariance",
        "leading symbol",
        "axioms",
        "group order",
        "hyperplane bases",
        "chart reflection involutive",
        "lifted reflection",
        "symbolic derivative",
    ] {
        assert!(names.iter().any(|n| n.contains(suite)), "missing {suite}");
    }
    assert_eq!(v["passed"], true);
}
