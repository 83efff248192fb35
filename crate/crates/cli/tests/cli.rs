use std::process::Command;

use otformal_core::corpus::{ARRANGEMENTS, GRAPHS};
use otformal_core::{graph_to_arrangement, parse_arrangement, parse_graph};
use serde_json::Value;

fn data(file: &str) -> String {
    format!("{}/../core/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn otformal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_otformal")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = otformal(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    stdout
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&ok(&a)).unwrap()
}

#[test]
fn yuzvinsky_formality_line() {
    assert_eq!(
        ok(&["arr", "formality", &data("yuz_a1.arr")]),
        "2-formal: yes (three-rank 6 = d−n 6; codim I2 = 6)\n"
    );
    assert!(ok(&["arr", "formality", &data("yuz_a2.arr")]).starts_with("2-formal: no"));
}

#[test]
fn egypt_quadratic_diagram() {
    let expected = "\
total:  1  4  6  4  1
    0:  1 -- -- -- --
    1: --  4 -- -- --
    2: -- --  6 -- --
    3: -- -- --  4 --
    4: -- -- -- --  1
";
    assert_eq!(ok(&["arr", "betti", &data("egypt.arr"), "--ideal", "quadratic"]), expected);
    assert_eq!(ok(&["graph", "betti", &data("egypt.graph"), "--ideal", "quadratic"]), expected);
}

#[test]
fn five_cycle_verdicts() {
    let v = json(&["graph", "formality", &data("c5.graph")]);
    let r = &v["result"];
    assert_eq!(r["verdict_h1"], false);
    assert_eq!(r["arrangement"]["verdict_direct"], false);
    assert_eq!(r["arrangement"]["verdict_codim"], false);
    assert_eq!(r["two_formal"], false);
    assert_eq!(r["h1"], 1);
}

#[test]
fn json_round_trips() {
    for cmd in ["info", "circuits", "ot", "formality", "hilbert", "betti", "syzygies", "aot"] {
        for file in ["nonfano.arr", "ex13.arr", "rank2_d5.arr"] {
            let (code, raw, _) = otformal(&["arr", cmd, &data(file), "--json"]);
            assert_eq!(code, 0);
            let v: Value = serde_json::from_str(&raw).unwrap();
            let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
            assert_eq!(again, raw, "arr {cmd} {file}");
            assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
            assert_eq!(v["command"], format!("arr {cmd}"));
        }
    }
    for cmd in ["info", "to-arr", "formality", "betti"] {
        let raw = ok(&["graph", cmd, &data("wheel4.graph"), "--json"]);
        let v: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", raw);
    }
}

#[test]
fn text_and_json_agree() {
    for file in ARRANGEMENTS {
        let path = data(&format!("{file}.arr"));
        let text = ok(&["arr", "formality", &path]);
        let v = json(&["arr", "formality", &path]);
        let r = &v["result"];
        assert_eq!(text.starts_with("2-formal: yes"), r["two_formal"] == true, "{file}");
        if let Some(t) = r["three_rank"].as_u64() {
            assert!(text.contains(&format!("three-rank {t} ")), "{file}");
        }
        if let Some(c) = r["codim_i2"].as_u64() {
            assert!(text.contains(&format!("codim I2 = {c}")), "{file}");
        }
    }
    let path = data("nonfano.arr");
    let text = ok(&["arr", "betti", &path]);
    let v = json(&["arr", "betti", &path]);
    let totals: Vec<String> = v["result"]["totals"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    assert_eq!(text.lines().next().unwrap().split_whitespace().skip(1).collect::<Vec<_>>(), totals);
    assert_eq!(v["field_mode"]["kind"], "prime");
}

#[test]
fn flags_reach_the_computation() {
    let v = json(&["arr", "betti", &data("nonfano.arr"), "--exact", "--max-j", "1"]);
    assert_eq!(v["field_mode"]["kind"], "rational");
    assert_eq!(v["result"]["max_j"], 1);
    let v = json(&["arr", "betti", &data("nonfano.arr"), "--prime", "32003", "--max-i", "2"]);
    assert_eq!(v["field_mode"]["p"], 32003);
    assert_eq!(v["result"]["max_i"], 2);
    let v = json(&["arr", "ot", &data("nonfano.arr"), "--ideal", "quadratic", "--order", "lex"]);
    assert_eq!(v["result"]["generators"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["order"], "lex");
    let v = json(&["arr", "formality", &data("nonfano.arr"), "--method", "direct"]);
    assert_eq!(v["result"]["codim_i2"], Value::Null);
    let v = json(&["arr", "aot", &data("nonfano.arr"), "--trials", "3", "--seed", "7"]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["phi_vanishing"]["trials"], 3);
}

#[test]
fn deterministic_given_seed() {
    let a = ok(&["arr", "aot", &data("yuz_a2.arr"), "--seed", "11"]);
    let b = ok(&["arr", "aot", &data("yuz_a2.arr"), "--seed", "11"]);
    assert_eq!(a, b);
}

#[test]
fn to_arr_round_trips() {
    for g in GRAPHS {
        let text = std::fs::read_to_string(data(&format!("{g}.graph"))).unwrap();
        let expected = graph_to_arrangement(&parse_graph(&text).unwrap()).unwrap();
        let printed = ok(&["graph", "to-arr", &data(&format!("{g}.graph"))]);
        let parsed = parse_arrangement(&printed).unwrap();
        assert_eq!(parsed.forms(), expected.forms(), "{g}");
        assert_eq!(parsed.name(), Some(g));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(otformal(&[]).0, 1);
    assert_eq!(otformal(&["arr", "nonsense", &data("ex13.arr")]).0, 1);
    assert_eq!(otformal(&["arr", "betti", &data("ex13.arr"), "--exact", "--prime", "7"]).0, 1);
    assert_eq!(otformal(&["arr", "info", "/definitely/not/here.arr"]).0, 1);
    assert_eq!(otformal(&["--help"]).0, 0);

    let dir = std::env::temp_dir().join(format!("otformal-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.arr");
    std::fs::write(&bad, "ambient 2\n1 0\n1 0 5\n").unwrap();
    let (code, _, err) = otformal(&["arr", "info", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let bad_graph = dir.join("bad.graph");
    std::fs::write(&bad_graph, "vertices 3\n1 1\n").unwrap();
    assert_eq!(otformal(&["graph", "info", bad_graph.to_str().unwrap()]).0, 2);

    assert_eq!(otformal(&["arr", "formality", &data("yuz_a1.arr"), "--limit-pairs", "2"]).0, 3);
    assert_eq!(otformal(&["arr", "info", &data("yuz_a1.arr"), "--limit-flats", "3"]).0, 3);
    assert_eq!(otformal(&["arr", "betti", &data("ex13.arr"), "--prime", "10"]).0, 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn every_bundled_file_runs_every_command() {
    for file in ARRANGEMENTS.iter().chain(["egypt"].iter()) {
        let path = data(&format!("{file}.arr"));
        for cmd in ["info", "circuits", "ot", "formality", "hilbert", "betti", "syzygies", "aot"] {
            ok(&["arr", cmd, &path]);
        }
    }
    for g in GRAPHS {
        let path = data(&format!("{g}.graph"));
        for cmd in ["info", "to-arr", "formality", "betti"] {
            ok(&["graph", cmd, &path]);
        }
    }
}

#[test]
fn in_process_matches_binary() {
    let path = data("k4.graph");
    let out = otformal_cli::run(["otformal", "graph", "info", path.as_str()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, ok(&["graph", "info", &path]));
}
