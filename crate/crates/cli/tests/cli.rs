use std::process::{Command, Output};

use serde_json::Value;

fn wordstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordstat"))
        .args(args)
        .env_remove("WORDSTAT_ENUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = wordstat(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON record")
}

#[test]
fn count_examples() {
    let v = json(&[
        "count",
        "des-mod",
        "--s",
        "2",
        "--alphabet",
        "4",
        "--r",
        "1",
        "--n",
        "2",
        "--p",
        "1",
        "--engine",
        "closed-form",
    ]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "count");
    assert_eq!(v["engine"], "closed-form");
    assert_eq!(v["result"]["count"], "2");

    let v = json(&[
        "count",
        "levels-threshold",
        "--k",
        "1",
        "--t",
        "1",
        "--n",
        "3",
        "--s",
        "2",
    ]);
    assert_eq!(v["result"]["count"], "1");

    let v = json(&[
        "count", "des-le", "--k", "2", "--t", "2", "--n", "2", "--s", "1", "--engine", "oracle",
    ]);
    assert_eq!(v["engine"], "oracle");
    assert_eq!(v["result"]["count"], "1");
}

#[test]
fn large_counts_stay_exact() {
    // 9^30 overflows u64 and f64 mantissas alike
    let v = json(&[
        "count", "des-gt", "--k", "9", "--t", "9", "--n", "30", "--s", "0",
    ]);
    assert_eq!(v["result"]["count"], "42391158275216203514294433201");
}

#[test]
fn engines_agree_through_the_cli() {
    let base = [
        "count",
        "levels-blocks",
        "--sizes",
        "1,2",
        "--n",
        "4",
        "--targets",
        "1,1",
        "--engine",
    ];
    let counts: Vec<Value> = ["closed-form", "oracle", "transfer", "series"]
        .iter()
        .map(|e| {
            let mut args = base.to_vec();
            args.push(e);
            json(&args)["result"]["count"].clone()
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
}

#[test]
fn table_json_and_csv() {
    let v = json(&[
        "table",
        "levels-threshold",
        "--k",
        "2",
        "--t",
        "2",
        "--n",
        "2",
    ]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["value"][0], "0");
    assert_eq!(rows[0]["count"], "2");
    assert_eq!(v["result"]["total"], "4");

    let out = wordstat(&[
        "table",
        "des-mod",
        "--s",
        "2",
        "--alphabet",
        "2",
        "--r",
        "2",
        "--n",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "des,count\n0,3\n1,1\n"
    );

    let v = json(&[
        "table", "des-le", "--k", "3", "--t", "1", "--n", "0", "--engine", "series",
    ]);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["total"], "1");
}

#[test]
fn hall_remmel_through_the_cli() {
    let closed = json(&[
        "table",
        "hall-remmel",
        "--rho",
        "2,1,1",
        "--x",
        "2,3",
        "--y",
        "1",
    ]);
    let oracle = json(&[
        "table",
        "hall-remmel",
        "--rho",
        "2,1,1",
        "--x",
        "2,3",
        "--y",
        "1",
        "--engine",
        "oracle",
    ]);
    assert_eq!(closed["result"]["rows"], oracle["result"]["rows"]);
    assert_eq!(closed["result"]["total"], "12");
}

#[test]
fn series_examples() {
    let v = json(&[
        "series",
        "--k",
        "2",
        "--partition",
        "threshold:1",
        "--track",
        "x2",
        "--order",
        "2",
    ]);
    let coeffs = v["result"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[2]["text"], "3 + x_2");
    assert_eq!(v["result"]["vars"][0], "x_2");

    let v = json(&["series", "--k", "3", "--order", "0"]);
    assert_eq!(v["result"]["coefficients"][0]["text"], "1");

    let v = json(&["series", "--gf", "B", "--k", "2", "--order", "2"]);
    assert_eq!(v["result"]["variable"], "v");
    assert_eq!(v["result"]["coefficients"][2]["text"], "q + q^2");

    let v = json(&[
        "series",
        "--k",
        "3",
        "--partition",
        "blocks:1,2,1",
        "--track",
        "all",
        "--q",
        "per-block",
        "--order",
        "1",
    ]);
    assert_eq!(v["result"]["coefficients"][1]["text"], "q_2 + 2*q_1");
}

#[test]
fn verify_reports_and_fault_injection() {
    let v = json(&[
        "verify",
        "oracle-vs-transfer",
        "--k-max",
        "3",
        "--n-max",
        "7",
    ]);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["reports"][0]["failures"], "0");

    let out = wordstat(&["verify", "identities", "--n-max", "6", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], false);
    assert!(v["result"]["reports"][0]["first_failure"].is_string());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &[
            "count", "des-le", "--k", "3", "--t", "4", "--n", "2", "--s", "1",
        ][..],
        &["count", "des-le", "--k", "3", "--t", "2", "--n", "2"],
        &[
            "count", "des-le", "--k", "3", "--t", "2", "--n", "2", "--s", "0", "--format", "csv",
        ],
        &[
            "table",
            "des-mod",
            "--s",
            "2",
            "--alphabet",
            "3",
            "--r",
            "3",
            "--n",
            "2",
        ],
        &["table", "hall-remmel", "--rho", "1,1", "--engine", "series"],
        &[
            "series",
            "--k",
            "2",
            "--partition",
            "halves",
            "--order",
            "2",
        ],
        &["series", "--k", "2", "--track", "w1", "--order", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(wordstat(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_is_read_from_the_environment() {
    let args = [
        "count", "des-le", "--k", "3", "--t", "2", "--n", "5", "--s", "1", "--engine", "oracle",
    ];
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_wordstat"))
            .args(args)
            .env("WORDSTAT_ENUM_BUDGET", budget)
            .output()
            .unwrap()
    };
    let out = run("100");
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(run("243").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}
