use serde_json::Value;
use std::process::{Command, Output};

fn qe_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qe-lab")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let o = qe_lab(args);
    let v = serde_json::from_slice(&o.stdout).expect("json report");
    (o.status.code().expect("exit code"), v)
}

#[test]
fn card_em_q2_m1_is_43_on_every_path() {
    let (code, v) = report(&["hecke", "card-em", "--q", "2", "--m", "1", "--building"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "qe-lab/1");
    assert_eq!(v["config"]["hecke"]["card-em"]["q"], 2);
    assert_eq!(v["results"]["direct"], "43");
    assert_eq!(v["results"]["brion"], "43");
    assert_eq!(v["results"]["building"], 43);
}

#[test]
fn verify_dominating_prints_both_rays() {
    let (code, v) = report(&["bounds", "verify-dominating"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    let rays = &v["results"]["dominating"][0]["rays"];
    assert_eq!(rays, &serde_json::json!([[1, 0, 0, 0, 0, 0, 2, 0], [1, 2, 2, 2, 0, 0, 0, 0]]));
}

#[test]
fn hexagon_q2_m1_passes() {
    let (code, v) = report(&["geometry", "verify-hexagon", "--q", "2", "--m", "1"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["polytope", "verify-brion", "--m", "3", "--trials", "4"][..],
        &["tree", "em-r", "--m", "4", "--format", "csv"][..],
        &["bounds", "final-sum", "--m", "10,20", "--split-max", "20"][..],
    ] {
        let a = qe_lab(args);
        let b = qe_lab(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["hecke", "spectral-floor", "--m", "5,10", "--grid-n", "8"];
    let one = Command::new(env!("CARGO_BIN_EXE_qe-lab")).args(args).env("QE_LAB_THREADS", "1").output().unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_qe-lab")).args(args).env("QE_LAB_THREADS", "2").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn usage_and_resource_errors_exit_1() {
    assert_eq!(qe_lab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qe_lab(&["hecke", "card-em", "--q", "x"]).status.code(), Some(1));
    assert_eq!(qe_lab(&["building", "ball", "--p", "5"]).status.code(), Some(1));
    assert_eq!(qe_lab(&["building", "ball", "--radius", "40"]).status.code(), Some(1));
    assert_eq!(qe_lab(&["bounds", "em-lambda", "--lambda", "1"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_qe-lab")).args(["tree", "em-r"]).env("QE_LAB_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    assert_eq!(qe_lab(&["--help"]).status.code(), Some(0));
    assert_eq!(qe_lab(&["--version"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_2_with_a_record() {
    let o = qe_lab(&["bounds", "em-lambda", "--m", "1", "--lambda", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let rec: Value = serde_json::from_slice(&o.stderr).expect("failure record");
    assert_eq!(rec["failed"][0]["name"], "exact_within_polytope_route");
}

#[test]
fn csv_and_output_file() {
    let dir = std::env::temp_dir().join(format!("qe-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("floor.csv");
    let o = qe_lab(&["tree", "spectral-floor", "--m", "10,20", "--rescale-m", "50", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("q,M,grid_n,min_average,argmin_theta,min_scaled_near_real\n"));
    assert_eq!(text.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn polytope_json_input() {
    let dir = std::env::temp_dir().join(format!("qe-lab-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.json");
    let p = qe_weyl::NamedPolytope2D::H.dilate(2);
    std::fs::write(&path, p.to_json_string()).unwrap();
    let (code, v) = report(&["polytope", "verify-brion", "--input", path.to_str().unwrap(), "--trials", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["polytope"]["dim"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
