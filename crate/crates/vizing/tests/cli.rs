// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::Path;

use serde_json::Value;
use vizing::cli::run;

fn vizing(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["vizing"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn colour_then_audit_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p3.mg");
    let c = dir.path().join("p3.col");
    fs::write(&g, "mg 3 2 2 1\n0 1 1\n1 2 1\n").unwrap();
    let (code, _, err) = vizing(&["colour", "--input", path_str(&g), "--output", path_str(&c)]);
    assert_eq!(code, 0, "{err}");
    let dump = fs::read_to_string(&c).unwrap();
    assert_eq!(dump.lines().count(), 2);
    assert!(dump.lines().all(|l| !l.ends_with(" 0")));

    let (code, out, _) = vizing(&[
        "audit",
        "--input",
        path_str(&g),
        "--colouring",
        path_str(&c),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["proper"], true);
    assert_eq!(v["uncoloured"], 0);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn small_parameter_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.mg");
    let (code, _, _) = vizing(&[
        "gen",
        "--n",
        "40",
        "--delta",
        "3",
        "--seed",
        "2",
        "--output",
        path_str(&g),
    ]);
    assert_eq!(code, 0);
    let (code, _, err) = vizing(&["schedule", "--input", path_str(&g), "--L", "6"]);
    assert_eq!(code, 1);
    assert!(err.contains("3L"), "{err}");
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.mg");
    fs::write(&g, "mg 3 2 2 1\n0 1 1\n1 x 1\n").unwrap();
    let (code, _, err) = vizing(&["colour", "--input", path_str(&g)]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(vizing(&["--help"]).0, 0);
    assert_eq!(vizing(&["--version"]).0, 0);
    assert_eq!(vizing(&["frobnicate"]).0, 1);
    assert_eq!(vizing(&["schedule", "--input", "x.mg"]).0, 1);
}

#[test]
fn stats_sweep_does_not_increase() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.mg");
    vizing(&[
        "gen",
        "--n",
        "3000",
        "--delta",
        "3",
        "--seed",
        "11",
        "--output",
        path_str(&g),
    ]);
    let (code, out, err) = vizing(&["stats", "--input", path_str(&g), "--L", "50,100,200"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let fractions: Vec<f64> = rows
        .iter()
        .map(|r| {
            let s = r["uncoloured_fraction"].as_str().unwrap();
            let (a, b) = s.split_once('/').unwrap();
            a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap()
        })
        .collect();
    assert!(fractions.windows(2).all(|w| w[1] <= w[0]), "{fractions:?}");
}

#[test]
fn schedule_writes_log_and_round_limit_dump() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.mg");
    let c = dir.path().join("g.col");
    vizing(&[
        "gen",
        "--n",
        "500",
        "--delta",
        "4",
        "--pi",
        "2",
        "--seed",
        "3",
        "--output",
        path_str(&g),
    ]);
    let (code, _, err) = vizing(&[
        "schedule",
        "--input",
        path_str(&g),
        "--L",
        "12",
        "--output",
        path_str(&c),
    ]);
    assert_eq!(code, 0, "{err}");
    let log = fs::read_to_string(dir.path().join("g.col.log")).unwrap();
    assert!(log
        .lines()
        .all(|l| serde_json::from_str::<Value>(l).is_ok()));
    let (code, _, _) = vizing(&[
        "audit",
        "--input",
        path_str(&g),
        "--colouring",
        path_str(&c),
        "--L",
        "12",
    ]);
    assert_eq!(code, 0);

    let (code, _, err) = vizing(&[
        "schedule",
        "--input",
        path_str(&g),
        "--L",
        "12",
        "--output",
        path_str(&c),
        "--max-rounds",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("round limit"), "{err}");
    let dump = fs::read_to_string(&c).unwrap();
    assert!(dump.lines().filter(|l| l.ends_with(" 0")).count() > 0);
}

#[test]
fn orient_respects_the_out_degree_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.mg");
    vizing(&[
        "gen",
        "--n",
        "200",
        "--delta",
        "5",
        "--pi",
        "1",
        "--seed",
        "9",
        "--output",
        path_str(&g),
    ]);
    let (code, out, err) = vizing(&["orient", "--input", path_str(&g)]);
    assert_eq!(code, 0, "{err}");
    assert!(!out.is_empty());

    let m = dir.path().join("m.mg");
    fs::write(&m, "mg 2 2 2 2\n0 1 1\n0 1 2\n").unwrap();
    assert_eq!(vizing(&["orient", "--input", path_str(&m)]).0, 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.mg");
    vizing(&[
        "gen",
        "--n",
        "800",
        "--delta",
        "3",
        "--seed",
        "4",
        "--output",
        path_str(&g),
    ]);
    let first = vizing(&[
        "schedule",
        "--input",
        path_str(&g),
        "--L",
        "10",
        "--seed",
        "7",
        "--workers",
        "3",
    ]);
    let again = vizing(&[
        "schedule",
        "--input",
        path_str(&g),
        "--L",
        "10",
        "--seed",
        "7",
        "--workers",
        "1",
    ]);
    assert_eq!(first, again);
}
