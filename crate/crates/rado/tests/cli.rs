use std::io::Write;
use std::process::Command;

use proptest::prelude::*;
use rado::format::{parse_certificate, parse_group, CertificateJson};
use rado_core::columns::check_columns_condition;
use rado_core::IntMatrix;
use serde_json::Value;

fn rado(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rado")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap().trim_end().to_owned())
}

fn ok(args: &[&str]) -> String {
    let (code, out) = rado(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    out
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn documented_examples() {
    let cert = json(&["check-columns", "--matrix", "[[1,1,-1]]", "--ring", "Z"]);
    assert_eq!(cert["order"], serde_json::json!([0, 2, 1]));
    assert_eq!(cert["breakpoints"], serde_json::json!([2, 3]));
    assert_eq!(ok(&["gaussian", "--N", "2", "--M", "1", "--q", "2"]), "3");
    assert_eq!(ok(&["count", "--matrix", "[[1,1,-1]]", "--group", "Z5"]), "25");
}

#[test]
fn exit_codes() {
    let (code, out) = rado(&["gaussian", "--N", "2", "--M", "3", "--q", "2"]);
    assert_eq!(code, 2);
    let err: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(err["error"], "invalid_input");
    assert_eq!(rado(&["count", "--matrix", "[[1,1]", "--group", "Z5"]).0, 2);
    assert_eq!(rado(&["count", "--matrix", "[[1,1,-1]]", "--group", "Z5", "--unknown"]).0, 2);
    assert_eq!(rado(&["search-colorings", "--matrix", "[[1,1,-1]]", "--group", "Z40"]).0, 3);
    let (code, out) =
        rado(&["count", "--matrix", "[[1,1,-1]]", "--group", "Z50", "--backend", "brute", "--oracle-bound", "5"]);
    assert_eq!(code, 3);
    assert!(out.contains("\"capacity\""));
    let (code, out) = rado(&["reduce", "--matrix", "[[1,1,1]]", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(out.contains("no_certificate"), "{out}");
}

#[test]
fn matrices_and_sets_from_files() {
    let mut m = tempfile::NamedTempFile::new().unwrap();
    write!(m, "[[1, 1, -1]]").unwrap();
    let mut s = tempfile::NamedTempFile::new().unwrap();
    write!(s, "[1, 4]").unwrap();
    let mpath = format!("@{}", m.path().display());
    let spath = format!("@{}", s.path().display());
    assert_eq!(ok(&["count", "--matrix", &mpath, "--group", "Z5"]), "25");
    // x + y = z inside {1, 4} ⊂ ℤ₅: none.
    assert_eq!(ok(&["count", "--matrix", &mpath, "--group", "Z5", "--set", &spath]), "0");
    // x ∈ {1,2}, y ∈ {2,3}, z = 3: only (1, 2, 3).
    let sets = "[[1,2],[[2],[3]],[3]]";
    assert_eq!(ok(&["count", "--matrix", &mpath, "--group", "Z5", "--sets", sets]), "1");
}

#[test]
fn backends_agree_through_the_cli() {
    for backend in ["auto", "brute", "fourier"] {
        let out = ok(&["count", "--matrix", "[[1,2,-3],[0,1,1]]", "--group", "Z4xZ6", "--backend", backend]);
        assert_eq!(out, ok(&["count", "--matrix", "[[1,2,-3],[0,1,1]]", "--group", "[4,6]", "--backend", "brute"]));
    }
}

#[test]
fn searches_are_byte_identical_across_threads_and_runs() {
    for mode in ["exhaustive", "randomized"] {
        let base = [
            "search-colorings",
            "--matrix",
            "[[1,1,-1]]",
            "--cyclic",
            "5:12",
            "--mode",
            mode,
            "--budget",
            "200000",
            "--seed",
            "9",
        ];
        let one = ok(&[&base[..], &["--threads", "1"]].concat());
        for threads in ["1", "2", "7"] {
            assert_eq!(ok(&[&base[..], &["--threads", threads]].concat()), one);
        }
    }
}

#[test]
fn schur_table_and_csv() {
    let reports = json(&["search-colorings", "--matrix", "[[1,1,-1]]", "--cyclic", "2:11"]);
    let mins: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["min"].as_str().unwrap()).collect();
    assert_eq!(mins, ["0", "0", "0", "0", "2", "4", "6", "8", "12", "16"]);
    assert_eq!(reports[3]["witness"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(reports[3]["normalizer"], "25");
    let csv = ok(&["--format", "csv", "search-colorings", "--matrix", "[[1,1,-1]]", "--cyclic", "5:6"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "group,colors,mode,min,evaluated,normalizer,empirical_c,witness");
    assert!(lines[1].starts_with("Z5,2,exhaustive,0,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn reduce_and_skeleton() {
    let r = json(&["reduce", "--matrix", "[[2,2,-2]]", "--n", "5"]);
    assert_eq!(r["reduced"], serde_json::json!([[1, 1, -1]]));
    let cert = serde_json::to_string(&r["certificate"]).unwrap();
    let s = json(&[
        "skeleton",
        "--matrix",
        "[[1,1,-1]]",
        "--n",
        "5",
        "--basis",
        "[[1,2,0],[0,0,1]]",
        "--certificate",
        &cert,
    ]);
    assert_eq!(s["f_set"].as_array().unwrap().len(), 5 + 1);
    let (code, _) = rado(&["skeleton", "--matrix", "[[1,1,-1]]", "--n", "5", "--basis", "[[0,1],[1,0]]"]);
    assert_eq!(code, 2);
}

#[test]
fn subgroups_formula_and_enumeration() {
    for (d, copies) in [("2", "1"), ("2", "2"), ("4", "1"), ("4", "2")] {
        let args = ["subgroups", "--group", "Z4xZ4xZ2", "--d", d, "--copies", copies];
        let formula = ok(&args);
        let listed = ok(&[&args[..], &["--method", "enumerate"]].concat());
        assert_eq!(formula, listed, "d={d} copies={copies}");
    }
    let all: Value = json(&["subgroups", "--group", "Z2xZ2", "--method", "enumerate", "--list"]);
    assert_eq!(all.as_array().unwrap().len(), 5);
}

#[test]
fn classify_and_special() {
    let out = json(&["classify", "--group", "Z3xZ3", "--u", "1"]);
    let kinds: Vec<&str> = out["translates"].as_array().unwrap().iter().map(|t| t["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.len(), 12);
    assert_eq!(kinds.iter().filter(|&&k| k == "vertical").count(), 3);
    assert_eq!(kinds.iter().filter(|&&k| k == "transverse").count(), 9);
    // Every transverse 1-translate projects onto all of ℤ₃, so one shared color is special.
    let color_all = |odd_one: Option<usize>| {
        let colors: Vec<Value> = out["translates"]
            .as_array()
            .unwrap()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let tr = &t["translate"];
                let color = if t["kind"] == "vertical" {
                    9
                } else if Some(i) == odd_one {
                    2
                } else {
                    1
                };
                serde_json::json!({ "base": tr["base"], "generators": tr["generators"], "color": color })
            })
            .collect();
        serde_json::to_string(&colors).unwrap()
    };
    let sp = json(&["classify", "--group", "Z3xZ3", "--u", "1", "--translate-colors", &color_all(None)]);
    assert_eq!(sp["special"]["special"], true);
    let last = kinds.iter().rposition(|&k| k == "transverse");
    let sp = json(&["classify", "--group", "Z3xZ3", "--u", "1", "--translate-colors", &color_all(last)]);
    assert_eq!(sp["special"]["special"], false);
    assert_eq!(sp["special"]["conflict"].as_array().unwrap().len(), 2);
}

#[test]
fn density_and_fixture() {
    let w = json(&["density-cex", "--coefficients", "[1,-2]", "--n", "60"]);
    assert_eq!(w["solutions"], "0");
    assert_eq!(w["meets_bound"], true);
    for copies in ["1", "2"] {
        assert_eq!(json(&["fixture6", "--copies", copies])["passed"], true);
    }
    let d = json(&["density-cex", "--matrix", "[[1,-1]]", "--group", "Z8", "--epsilon", "0.5"]);
    assert_eq!(d["min"], "4");
    assert_eq!(rado(&["fixture6", "--copies", "3"]).0, 2);
}

#[test]
fn count_mono_by_order_and_random() {
    let m = json(&["count-mono", "--matrix", "[[1,0,-1,0],[0,1,-1,0],[0,0,0,2]]", "--group", "Z4xZ4"]);
    assert_eq!(m["total"], "9");
    let a = ok(&[
        "count-mono",
        "--matrix",
        "[[1,1,-1]]",
        "--group",
        "Z9",
        "--coloring",
        "random",
        "--colors",
        "3",
        "--seed",
        "5",
    ]);
    let b = ok(&[
        "count-mono",
        "--matrix",
        "[[1,1,-1]]",
        "--group",
        "Z9",
        "--coloring",
        "random",
        "--colors",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(a, b);
    let explicit = json(&["count-mono", "--matrix", "[[1,1,-1]]", "--group", "Z5", "--coloring", "[1,2,2,1]"]);
    assert_eq!(explicit["total"], "0");
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=2usize, 0..=3usize)
        .prop_flat_map(|(k, extra)| prop::collection::vec(prop::collection::vec(-4i64..=4, k + extra), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_round_trip(rows in matrix_strategy(), ring in prop::sample::select(vec!["Z", "Q", "Z2", "Z3", "Z4", "Z6"])) {
        let a = IntMatrix::from_i64(&rows).unwrap();
        let ring = rado::format::parse_ring(ring).unwrap();
        if let Some(cert) = check_columns_condition(&a, ring, 9).unwrap() {
            let text = serde_json::to_string(&CertificateJson::from_certificate(&cert)).unwrap();
            let back = parse_certificate(&text).unwrap();
            prop_assert_eq!(&back, &cert);
            prop_assert!(back.verify(&a).is_ok());
            prop_assert_eq!(serde_json::to_string(&CertificateJson::from_certificate(&back)).unwrap(), text);
        }
    }

    #[test]
    fn groups_round_trip(factors in prop::collection::vec(2u64..=12, 1..=3)) {
        let text = factors.iter().map(|f| format!("Z{f}")).collect::<Vec<_>>().join("x");
        let g = parse_group(&text).unwrap();
        prop_assert_eq!(parse_group(&g.to_string()).unwrap(), g.clone());
        prop_assert_eq!(g.order(), factors.iter().product::<u64>());
    }
}
