use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hsing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsing"))
        .args(args)
        .env_remove("HSING_PRECISION")
        .output()
        .expect("failed to run hsing")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn exact(v: &Value, num: i64, den: i64) {
    assert_eq!(v["kind"], "exact", "{v}");
    assert_eq!(v["num"], num, "{v}");
    assert_eq!(v["den"], den, "{v}");
}

#[test]
fn intro_slope() {
    let out = hsing(&["slope", "--field", "F2", "--vars", "y|x", "x^2+y^4+y^5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "hsing-report/1");
    assert_eq!(r["command"], "slope");
    assert_eq!(r["status"], "ok");
    exact(&r["result"]["slope"], 5, 2);
    assert_eq!(r["result"]["rendered"]["witness"][0], "x + y^2");
}

#[test]
fn same_curve_over_rationals() {
    let r = report(&hsing(&["slope", "--vars", "y|x", "x^2+y^4+y^5"]));
    exact(&r["result"]["slope"], 2, 1);
}

#[test]
fn refined_slope_of_three_fold_example() {
    let out = hsing(&[
        "refined-slope",
        "--vars",
        "u|y1,y2,y3",
        "y1^4 + y1^2*(y2 + u^2)^2 + y3^4 + y3*u^7 + u^12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    exact(&r["result"]["slope"], 7, 3);
    exact(&r["result"]["realized_by_cut"], 7, 3);
}

#[test]
fn pure_power_is_degenerate() {
    let r = report(&hsing(&["slope", "--vars", "u|y", "y^3"]));
    assert_eq!(r["result"]["slope"]["kind"], "infinite");
    assert_eq!(r["result"]["status"], "degenerate");
}

#[test]
fn parse_error_exits_one() {
    let out = hsing(&["slope", "--field", "F2", "x^^2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert!(r["error"]["message"].as_str().unwrap().contains("column 3"));
}

#[test]
fn refusal_exits_two() {
    // the y-block does not carry the directrix x + y of the tangent cone
    let out = hsing(&["delta", "--vars", "y|x", "(x + y)^2 + y^5"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "refused");
    assert_eq!(r["error"]["kind"], "refusal");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = hsing(&["slope", "--bogus", "x^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn reports_are_deterministic() {
    let args = ["cut", "--field", "F2", "--vars", "u|y1,y2", "--seed", "9", "y1*y2*(y1+y2)+u^7"];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(report(&hsing(&args)));
    let b = strip(report(&hsing(&args)));
    assert_eq!(a, b);
    exact(&a["result"]["nubar_gen"], 7, 3);
    assert_eq!(a["result"]["field"], "Fq:2^4");
    assert_eq!(a["result"]["certificate"]["valid"], true);
}

#[test]
fn polynomial_from_stdin_and_precision_from_env() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hsing"))
        .args(["delta", "--vars", "u|y"])
        .env("HSING_PRECISION", "12")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"(y + u^2)^2 + u^5\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let r = report(&out);
    assert_eq!(r["request"]["precision"], 12);
    exact(&r["result"]["delta"], 5, 2);
}

#[test]
fn auto_frame_is_normalized() {
    let r = report(&hsing(&["delta", "(x + y)^2 + x^5"]));
    exact(&r["result"]["delta"], 5, 2);
    assert_eq!(r["result"]["frame"]["u"].as_array().unwrap().len(), 1);
}

#[test]
fn nubar_methods_agree() {
    for method in ["hickel", "resultant"] {
        let out = hsing(&[
            "nubar", "--field", "F2", "--vars", "y|x", "--theta", "x+y^2", "--method", method,
            "x^2+y^4+y^5",
        ]);
        exact(&report(&out)["result"]["nubar"], 5, 2);
    }
}

#[test]
fn text_format() {
    let out = hsing(&["slope", "--field", "F2", "--vars", "y|x", "--format", "text", "x^2+y^4+y^5"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l.trim() == "slope: 5/2"), "{s}");
}

#[test]
fn suite_passes() {
    let out = hsing(&["suite"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["passed"], r["result"]["total"]);
}
