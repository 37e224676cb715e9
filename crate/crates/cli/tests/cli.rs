use std::process::{Command, Output};

use serde_json::Value;

fn ielie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ielie"))
        .args(args)
        .env_remove("IE_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = ielie(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    ielie(args).status.code().unwrap()
}

#[test]
fn golden_outputs() {
    assert_eq!(stdout(&["verma", "det", "--n", "2"]), "2*lam^2");
    assert_eq!(stdout(&["trees", "count", "--n", "3"]), "2");
    assert_eq!(stdout(&["bracket", "Dm[()]", "Dp[(()())]"]), "2*Dp[(())]");
    assert_eq!(
        stdout(&["bracket", "Dp[()]", "Dp[(()())]"]),
        "-Dp[((()()))] + 2*Dp[(()(()))] + Dp[(()()())]"
    );
    assert_eq!(
        stdout(&["trees", "enumerate", "--n", "3"]),
        "((()))\n(()())"
    );
    assert_eq!(stdout(&["act", "Dm[()]", "(()())"]), "2*(())");
    assert_eq!(stdout(&["act", "Dm[()]", "()"]), "1");
    assert_eq!(stdout(&["act", "--quotient", "Dm[()]", "()"]), "0");
    assert_eq!(stdout(&["char", "ct", "--n", "3"]), "1 1 1 2");
    assert_eq!(
        stdout(&["verma", "kernel", "--lam", "0", "--n", "1"]),
        "dimension: 1\n1*[()]"
    );
    assert_eq!(
        stdout(&["verma", "kernel", "--lam", "1", "--n", "2"]),
        "dimension: 0"
    );
    assert_eq!(
        stdout(&["descend", "Dp[(()())]"]),
        "xi = (): 2*Dp[(())]\nxi = (): 2*Dp[()]\nreached 2*Dp[()]"
    );
    assert_eq!(
        stdout(&["verma", "system", "--n", "2"]),
        "columns: (()) ()()\n() (): [1, 2*lam + 1]\n(()) 1: [lam, lam]"
    );
}

#[test]
fn json_schemas() {
    let s = json(&["verma", "system", "--n", "2"]);
    assert_eq!(s["n"], 2);
    assert_eq!(s["columns"], serde_json::json!(["(())", "()()"]));
    assert_eq!(s["rows"][0], serde_json::json!({"t": "()", "J": "()"}));
    assert_eq!(s["A"], serde_json::json!([[1, 1], [0, 0]]));
    assert_eq!(s["B"], serde_json::json!([[0, 2], [1, 1]]));

    assert_eq!(json(&["trees", "count", "--n", "7"])["count"], 48);
    assert_eq!(json(&["verma", "det", "--n", "2"])["det"], "2*lam^2");
    let e = json(&["verma", "exceptional", "--n", "2"]);
    assert_eq!(e["confirmed"], serde_json::json!(["0"]));
    assert_eq!(e["residual"], "2");
    assert_eq!(
        json(&["oracle-check", "Dm[()]", "Dp[(()())]"])["verdict"],
        "pass"
    );
    assert_eq!(
        json(&["z1-check", "--n", "3"])["matrix"],
        serde_json::json!([[1, 1], [0, 1]])
    );
    let c = json(&["char", "verma", "--n", "5"]);
    assert_eq!(c["dims"], serde_json::json!([1, 1, 2, 4, 9, 20]));
    assert_eq!(c["product_identity"], true);
    let j = json(&["jacobi-sample", "--samples", "50"]);
    assert_eq!(j["verdict"], "pass");
    assert_eq!(j["seed"], 20240601);
    assert_eq!(json(&["descend", "Dp[()]"])["verdict"], "reached");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bracket", "Dx[()]", "d"]), 2);
    assert_eq!(code(&["trees", "count", "--n", "x"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["descend", "Dm[()]"]), 1);
    assert_eq!(code(&["act", "--quotient", "d", "1"]), 1);
    assert_eq!(code(&["trees", "count", "--n", "13"]), 3);
    assert_eq!(code(&["verma", "det", "--n", "6"]), 3);
    assert_eq!(
        code(&["trees", "count", "--n", "13", "--max-size", "13"]),
        0
    );
}

#[test]
fn environment_overrides_the_size_guard() {
    let o = Command::new(env!("CARGO_BIN_EXE_ielie"))
        .args(["trees", "count", "--n", "13"])
        .env("IE_MAX_SIZE", "13")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "12486");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["jacobi-sample", "--samples", "30", "--json"][..],
        &["verma", "system", "--n", "3", "--json"][..],
        &["z1-check", "--n", "4"][..],
    ] {
        assert_eq!(ielie(args).stdout, ielie(args).stdout);
    }
}
