use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(rel)
}

fn vgroupoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vgroupoid")).args(args).env_remove("VGROUPOID_WITNESS_CAP").output().unwrap()
}

fn write_temp(src: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".gd").tempfile().unwrap();
    std::io::Write::write_all(&mut f, src.as_bytes()).unwrap();
    f
}

const BROKEN_TABLE: &str = "field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n\
    morphism M : G -> G = table{ (0,0)->(0,0), (0,1)->(1,1), (1,0)->(1,0), (1,1)->(0,1) }\ncheck M homomorphism\n";

#[test]
fn golden_text_report_ends_with_a_verdict() {
    let out = vgroupoid(&["verify", data("golden.gd").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().last().unwrap().starts_with("pass: 19 directive(s)"));
    assert!(stdout.contains("check Sign morphism: pass"));
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    let f = write_temp(BROKEN_TABLE);
    let out = vgroupoid(&["verify", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["status"], "fail");
    assert!(!json["directives"][0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn witness_cap_flag_beats_environment() {
    let f = write_temp(BROKEN_TABLE);
    let path = f.path().to_str().unwrap();
    let count = |out: Output| {
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        json["directives"][0]["witnesses"].as_array().unwrap().len()
    };
    let by_env = Command::new(env!("CARGO_BIN_EXE_vgroupoid"))
        .args(["verify", path, "--json"])
        .env("VGROUPOID_WITNESS_CAP", "1")
        .output()
        .unwrap();
    let by_flag = Command::new(env!("CARGO_BIN_EXE_vgroupoid"))
        .args(["verify", path, "--json", "--witness-cap", "2"])
        .env("VGROUPOID_WITNESS_CAP", "1")
        .output()
        .unwrap();
    let default = vgroupoid(&["verify", path, "--json"]);
    let (env, flag, default) = (count(by_env), count(by_flag), count(default));
    assert!(env < flag && flag <= default, "{env} {flag} {default}");
}

#[test]
fn unreadable_file_exits_two() {
    let out = vgroupoid(&["verify", "/nonexistent/spec.gd"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
}

#[test]
fn size_guard_is_reported_at_its_statement() {
    let f = write_temp("field F = Zp(5)\nspace V = F^3\ngroupoid G = v3(V)\n");
    let out = vgroupoid(&["verify", f.path().to_str().unwrap(), "--max-carrier", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":3:") && stderr.contains("SizeGuard"), "{stderr}");
}

#[test]
fn empty_check_list_warns_but_passes() {
    let f = write_temp("field F = Zp(2)\nspace V = F^1\ngroupoid G = pair(V)\n");
    let out = vgroupoid(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NoChecks"));
}

#[test]
fn catalog_and_sg_card() {
    let out = vgroupoid(&["catalog", "list"]);
    let listing = String::from_utf8(out.stdout).unwrap();
    for kind in ["single_unit", "null", "pair", "vpq", "v3", "tvg", "product", "whitney", "sg"] {
        assert!(listing.lines().any(|l| l.starts_with(kind)), "{kind} missing");
    }
    let out = vgroupoid(&["sg-card", "6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "|SG_6| = 1956, |SG_6,0| = 63");
    assert_eq!(vgroupoid(&["sg-card", "0"]).status.code(), Some(2));
}
