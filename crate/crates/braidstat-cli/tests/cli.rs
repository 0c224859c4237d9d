use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_braidstat"));
    c.env_remove("BRAIDSTAT_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON: {e}: {}", stdout(o)))
}

fn err_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("stderr is not JSON: {e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidstat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn coinv_csv_for_joyce_file() {
    let o = run(&["coinv", "--rack", &data("joyce.json"), "--cocycle", "const:-1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,engine,rep,orbit_size,alive"));
    let total: usize = lines.map(|l| l.split(',').nth(3).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 81);
    // the file and the built-in name give the same rack
    let b = run(&["coinv", "--rack", "joyce", "--cocycle", "const:-1", "--n", "4"]);
    assert_eq!(o.stdout, b.stdout);
}

#[test]
fn homology_report_fields() {
    let o = run(&["homology", "--space", "kappa_zeta:3", "--n", "3", "--imax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for k in ["n", "coefficients", "engine", "dims", "predicted_vanishing_below", "conforms"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["n"], 3);
    assert_eq!(v["dims"].as_array().unwrap().len(), 3);
    assert_eq!(v["predicted_vanishing_below"], "2/3");
    let fox = json(&run(&["homology", "--space", "kappa_zeta:3", "--n", "3", "--imax", "1", "--engine", "fox"]));
    assert_eq!(fox["dims"][1], v["dims"][1]);
    assert_eq!(fox["dims"][0], v["dims"][0]);
}

#[test]
fn homology_predict() {
    let v = json(&run(&["homology", "--predict", "--d", "1", "--n", "7", "--r-size", "3", "--q", "100000"]));
    assert_eq!(v["vanishing_threshold"], "2");
    assert_eq!(v["vanishing_degrees"], serde_json::json!([0, 1]));
}

#[test]
fn validation_errors_exit_two_with_json() {
    for args in [
        vec!["coinv", "--rack", "nope", "--n", "2"],
        vec!["coinv", "--bogus"],
        vec!["rack"],
        vec!["ffstats", "--q", "6", "--n-max", "3", "--statistic", "mobius_sum"],
        vec!["ffstats", "--q", "9", "--n-max", "3", "--statistic", "legendre", "--format", "text"],
        vec!["homology", "--space", "kappa", "--n", "3", "--imax", "3"],
        vec!["coinv", "--rack", "missing_file.json", "--n", "2"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let e = err_json(&o);
        assert!(e["error"].is_string() && e["message"].is_string(), "{args:?}");
        assert_eq!(e["exit_code"], 2);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn cap_errors_exit_three() {
    let o = run(&["ffstats", "--q", "5", "--n-max", "20", "--statistic", "mobius_sum"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(err_json(&o)["error"], "WorkCapExceeded");
    let o = run(&["homology", "--space", "kappa", "--n", "7"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn cap_env_var_overrides() {
    let args = ["coinv", "--rack", "joyce", "--n", "4"];
    assert_eq!(run(&args).status.code(), Some(0));
    let o = bin().args(args).env("BRAIDSTAT_CAP", "80").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().args(["ffstats", "--q", "3", "--n-max", "14", "--statistic", "mobius_sum"]).env("BRAIDSTAT_CAP", "1000").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().args(args).env("BRAIDSTAT_CAP", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_is_merged_under_flags() {
    let cfg = tmp(
        "merge.toml",
        "format = \"json\"\n[coinv]\nrack = \"joyce\"\ncocycle = \"const:-1\"\nn = 3\n[hurwitz]\ngroup = \"s3\"\nclass = \"transpositions\"\ngenerating = true\n",
    );
    let c = cfg.to_str().unwrap();
    let v = json(&run(&["--config", c, "coinv"]));
    assert_eq!(v["n"], 3);
    let v = json(&run(&["coinv", "--config", c, "--n", "2"]));
    assert_eq!(v["n"], 2);
    assert_eq!(v["cocycle"], "joyce:const:-1");
    // explicit format wins over the config
    let o = run(&["--config", c, "coinv", "--format", "csv"]);
    assert!(stdout(&o).starts_with("n,engine"));
    // boolean keys: generating from the config, overridable on the command line
    let v = json(&run(&["--config", c, "hurwitz", "--n", "3", "--product-one=false"]));
    assert_eq!(v["tuples"], 24);
    let v = json(&run(&["--config", c, "hurwitz", "--n", "3", "--product-one=false", "--generating=false"]));
    assert_eq!(v["tuples"], 27);
    let bad = tmp("bad.toml", "[coinv]\nnonsense = 1\n");
    let o = run(&["--config", bad.to_str().unwrap(), "coinv", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = tmp("bad2.toml", "[nosuch]\nn = 1\n");
    assert_eq!(run(&["--config", bad.to_str().unwrap(), "coinv"]).status.code(), Some(2));
}

#[test]
fn output_is_independent_of_threads() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["coinv", "--rack", "s3_transpositions*t2", "--cocycle", "pm", "--one-controlled", "2", "--window", "5"],
        vec!["homology", "--space", "rack:s3_transpositions:const:-1", "--n", "4"],
        vec!["ffstats", "--q", "3", "--n-min", "1", "--n-max", "7", "--statistic", "legendre", "--format", "json"],
        vec!["hurwitz", "--group", "s4", "--class", "transpositions", "--n", "4"],
        vec!["symstats", "--mode", "trace", "--q", "3", "--n", "5"],
    ];
    for args in cases {
        let one = bin().arg("--threads").arg("1").args(&args).output().unwrap();
        let four = bin().arg("--threads").arg("4").args(&args).output().unwrap();
        let again = bin().args(&args).output().unwrap();
        assert_eq!(one.status.code(), Some(0), "{args:?}");
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, again.stdout, "{args:?}");
    }
    assert_eq!(run(&["--threads", "0", "rack", "--rack", "t2"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let p = std::env::temp_dir().join(format!("braidstat-cli-out-{}.csv", std::process::id()));
    let o = run(&["ffstats", "--q", "3", "--n-max", "3", "--statistic", "chi_disc_sum", "--output", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let s = std::fs::read_to_string(&p).unwrap();
    assert_eq!(s, "q,n,statistic,value,main_term,residual,verdict\n3,1,chi_disc_sum,3,3,0,PASS\n3,2,chi_disc_sum,0,0,0,PASS\n3,3,chi_disc_sum,0,0,0,PASS\n");
}

#[test]
fn help_documents_units_caps_and_formats() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let top = stdout(&o);
    assert!(top.contains("Exit codes") && top.contains("BRAIDSTAT_CAP") && top.contains("--config"));
    for sub in ["rack", "cocycle", "bvs", "coinv", "homology", "symstats", "hurwitz", "ffstats", "accept"] {
        let o = run(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        let h = stdout(&o);
        assert!(h.contains("Formats:"), "{sub}: formats");
        assert!(h.contains("BRAIDSTAT_CAP"), "{sub}: caps");
        assert!(h.contains("Example: braidstat"), "{sub}: example");
        assert!(h.contains("--threads"), "{sub}: threads");
    }
    assert!(stdout(&run(&["ffstats", "--help"])).contains("q^n"));
    assert!(stdout(&run(&["homology", "--help"])).contains("Strands are capped at 6"));
}

#[test]
fn builtin_objects_resolve() {
    let v = json(&run(&["rack", "--rack", "s3_transpositions", "--generators", "0,1"]));
    assert_eq!(v["size"], 3);
    assert_eq!(v["generates"], true);
    assert_eq!(v["quandle"], true);
    let v = json(&run(&["cocycle", "--rack", "s3_transpositions*t2", "--cocycle", "pm"]));
    assert_eq!(v["p_y"].as_array().unwrap().len(), 6);
    let v = json(&run(&["bvs", "--space", "kappa_pm", "--word", "s1 s1^-1", "--tuple", "0,1"]));
    assert_eq!(v["yang_baxter"], true);
    assert_eq!(v["action"]["image"], serde_json::json!([{"tuple": [0, 1], "coefficient": "1"}]));
    let v = json(&run(&["symstats", "--space", "kappa_wedge", "--n", "3"]));
    assert_eq!(v["non_hook_dim"], 0);
    let v = json(&run(&["coinv", "--space", "kappa_pm", "--deg-bound", "6", "--format", "json"]));
    assert_eq!(v["dims"], serde_json::json!([1, 2, 2, 2, 2, 2, 2]));
}

#[test]
fn accept_runs_selected_criteria() {
    let o = run(&["accept", "--suite", "1,10"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("criterion 1: PASS"));
    assert!(s.contains("criterion 10: PASS"));
    assert_eq!(run(&["accept", "--suite", "11"]).status.code(), Some(2));
    let v = json(&run(&["accept", "--suite", "9", "--format", "json"]));
    assert_eq!(v[0]["id"], 9);
}

#[test]
fn experiment_file() {
    let v = json(&run(&["ffstats", "--experiment", &data("legendre_q5.toml"), "--format", "json"]));
    assert_eq!(v["experiment"]["q"], 5);
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    assert_eq!(v["decreasing"], false);
    let o = run(&["ffstats", "--experiment", &data("legendre_q5.toml"), "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
