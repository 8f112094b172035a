use std::process::{Command, Output};

use serde_json::Value;

fn chgdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chgdet"))
        .args(args)
        .output()
        .expect("spawn chgdet")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const SINE: [&str; 4] = ["--alpha", "0", "--beta-im", "0"];

fn with<'a>(base: &[&'a str], more: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(more).copied().collect()
}

#[test]
fn det_quadrature_json() {
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "0.5", "--s", "1"])));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["route"], "quadrature");
    assert_eq!(v["params"]["gamma"], 0.5);
    let x = v["value"].as_f64().unwrap();
    assert!((x + 0.369_802_404_026_596_1).abs() < 1e-12, "{x}");
}

#[test]
fn det_value_round_trips_through_json() {
    let out = chgdet(&["det", "--alpha", "0.5", "--beta-im", "0.3", "--gamma", "0.7", "--s", "2", "--nodes", "96"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let x = v["value"].as_f64().unwrap();
    assert!(text.contains(&format!("\"value\": {x}")) || text.contains(&format!("\"value\": {x:?}")));
    assert_eq!(v["meta"]["n_used"], 96);
}

#[test]
fn every_route_gives_zero_at_zero_gamma() {
    for route in ["quadrature", "asymptotic", "painleve", "toeplitz"] {
        let out = chgdet(&["det", "--alpha", "0.4", "--beta-im", "-0.2", "--gamma", "0", "--s", "3", "--route", route]);
        let v = json_of(&out);
        assert_eq!(v["value"].as_f64().unwrap(), 0.0, "{route}");
    }
}

#[test]
fn det_csv_has_header() {
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "0.5", "--s", "1", "--route", "painleve", "--format", "csv"])));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("route,alpha,beta_im,gamma,s,value"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("painleve,"));
    assert!(lines.next().is_none());
}

#[test]
fn negative_parameters_parse() {
    let out = chgdet(&["det", "--alpha", "-0.3", "--beta-im", "-0.7", "--gamma", "0.5", "--s", "1"]);
    let v = json_of(&out);
    assert_eq!(v["params"]["alpha"], -0.3);
    assert_eq!(v["params"]["beta_im"], -0.7);
}

#[test]
fn out_of_range_gamma_is_usage_error() {
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "1.5", "--s", "1"])));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--gamma"));
}

#[test]
fn bad_alpha_and_missing_flag_are_usage_errors() {
    let out = chgdet(&["det", "--alpha", "-0.7", "--beta-im", "0", "--gamma", "0.5", "--s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--alpha"));
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "0.5"])));
    assert_eq!(out.status.code(), Some(2));
    let out = chgdet(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_node_count_is_usage_error() {
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "0.5", "--s", "1", "--nodes", "3"])));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--nodes"));
}

#[test]
fn compare_keeps_input_order() {
    let out = chgdet(&with(&["compare"], &with(&SINE, &["--gamma", "0.5", "--s-list", "20,5,10"])));
    let v = json_of(&out);
    assert_eq!(v["reference"], "quadrature");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let s: Vec<f64> = rows.iter().map(|r| r["s"].as_f64().unwrap()).collect();
    assert_eq!(s, [20.0, 20.0, 5.0, 5.0, 10.0, 10.0]);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0]["gap"], 0.0);
        let gap = pair[1]["gap"].as_f64().unwrap();
        let gs = pair[1]["gap_times_s"].as_f64().unwrap();
        assert!(gap < 1e-3);
        assert!((gs - gap * pair[1]["s"].as_f64().unwrap()).abs() < 1e-15);
    }
}

#[test]
fn compare_csv_lists_all_routes() {
    let out = chgdet(&with(
        &["compare"],
        &with(&SINE, &["--gamma", "0.5", "--s-list", "1,2", "--routes", "quadrature,painleve,toeplitz", "--format", "csv"]),
    ));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,route,value,gap,gap_times_s");
    assert_eq!(lines.len(), 7);
    assert!(lines[2].starts_with("1.0,painleve,"));
}

#[test]
fn stats_json_fields() {
    let out = chgdet(&with(&["stats"], &with(&SINE, &["--s", "5"])));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    let pmf: Vec<f64> = v["pmf"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    let mean = v["e_n"].as_f64().unwrap();
    assert!((mean - 10.0 / std::f64::consts::PI).abs() < 1e-10);
    assert!(v["gaps"]["mean_gap"].as_f64().unwrap() < 1e-10);
    for key in ["var_n", "ks_normal", "ks_raw"] {
        assert!(v[key].is_f64(), "{key}");
    }
}

#[test]
fn stats_csv_is_pmf_table() {
    let out = chgdet(&with(&["stats"], &with(&SINE, &["--s", "2", "--format", "csv"])));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,pmf"));
    assert!(lines.next().unwrap().starts_with("0,"));
}

#[test]
fn painleve_trajectory_reaches_four_s() {
    let out = chgdet(&with(&["painleve"], &with(&SINE, &["--gamma", "0.5", "--s", "2"])));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,u1_re,u1_im,u2_re,u2_im,v1_re,v1_im,v2_re,v2_im,H_re,H_im"));
    let last: f64 = text.lines().last().unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((last - 8.0).abs() < 1e-12);
}

#[test]
fn painleve_rejects_huge_s() {
    let out = chgdet(&with(&["painleve"], &with(&SINE, &["--gamma", "0.5", "--s", "80"])));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn toeplitz_ratio_table_converges() {
    let out = chgdet(&["toeplitz", "--alpha", "0", "--beta-im", "0.3", "--gamma", "0.5", "--s", "1", "--nodes", "128", "--format", "json"]);
    let v = json_of(&out);
    let rows = v["rows"].as_array().unwrap();
    let n: Vec<u64> = rows.iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(n, [16, 32, 64, 128]);
    let gaps: Vec<f64> = rows.iter().map(|r| r["gap"].as_f64().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn help_exits_zero() {
    let out = chgdet(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn asymptotic_route_is_the_library_value() {
    let out = chgdet(&with(&["det"], &with(&SINE, &["--gamma", "0.5", "--s", "10", "--route", "asymptotic"])));
    let v = json_of(&out);
    let p = chgdet::KernelParams::new(0.0, 0.0, 0.5).unwrap();
    let lib = chgdet::asymptotics::log_asym_det(&p, 10.0).unwrap().total;
    assert_eq!(v["value"].as_f64().unwrap(), lib);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = with(&["compare"], &with(&SINE, &["--gamma", "0.3", "--s-list", "3,1,2", "--routes", "quadrature,asymptotic,painleve"]));
    let a = chgdet(&args);
    let b = chgdet(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stats_mean_at_s_twenty() {
    let v = json_of(&chgdet(&with(&["stats"], &with(&SINE, &["--s", "20"]))));
    assert!((v["e_n"].as_f64().unwrap() - 12.732).abs() < 1e-3);
    let v = json_of(&chgdet(&with(&["stats"], &with(&SINE, &["--s", "1"]))));
    assert_eq!(v["refs"]["sigma2"], 0.0);
}
