use std::process::{Command, Output};

use hermint::io::Document;

fn hermint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermint")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hermint(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn kin_chi_latex_matches_golden_files() {
    let golden = [
        (1, include_str!("golden/kin_chi_n1.tex")),
        (2, include_str!("golden/kin_chi_n2.tex")),
        (3, include_str!("golden/kin_chi_n3.tex")),
    ];
    for (n, want) in golden {
        let n = n.to_string();
        let got = stdout(&["kin-chi", "--n", &n, "--lambda", "0", "--format", "latex"]);
        assert_eq!(got, want, "n = {n}");
        // byte-stable across runs
        assert_eq!(stdout(&["kin-chi", "--n", &n, "--lambda", "0", "--format", "latex"]), got);
    }
}

#[test]
fn c3_table_has_the_printed_coefficients() {
    let got = stdout(&["kin-chi", "--n", "3", "--lambda", "0", "--format", "latex"]);
    for piece in [
        "\\frac{16}{15 \\pi}\\mu_{10} \\otimes \\mu_{52}",
        "\\frac{5}{24}\\mu_{20} \\otimes \\mu_{41}",
        "\\frac{1}{6}\\mu_{20} \\otimes \\mu_{42}",
        "\\frac{1}{3}\\mu_{21} \\otimes \\mu_{42}",
        "\\frac{2}{3 \\pi}\\mu_{30} \\otimes \\mu_{30}",
        "\\frac{4}{9 \\pi}\\mu_{30} \\otimes \\mu_{31}",
        "\\frac{16}{27 \\pi}\\mu_{31} \\otimes \\mu_{31}",
    ] {
        assert!(got.contains(piece), "missing {piece}");
    }
}

#[test]
fn t_acts_on_n10() {
    assert_eq!(stdout(&["act", "--op", "t", "--target", "N:1,0", "--n", "3"]), "(3/4)*N[2,0]\n");
    assert_eq!(
        stdout(&["act", "--op", "t", "--target", "N:2,0", "--n", "4"]),
        "(16/5*pi^-1)*N[3,0] + (16/15*pi^-1)*N[3,1]\n"
    );
}

#[test]
fn json_output_reparses() {
    let cases: &[&[&str]] = &[
        &["kin-chi", "--n", "2", "--lambda", "1/3"],
        &["kin-chi", "--n", "2"],
        &["convert", "mu:2,1 - 3*mu:1,0", "--n", "2"],
        &["convert", "st:1,1", "--n", "3", "--basis", "tau", "--lambda", "-1"],
        &["convert", "D:2,1 + N:1,0", "--n", "3", "--basis", "b-gamma"],
        &["local-kin", "D:0,0", "--n", "2"],
        &["semi-local", "N:1,0", "--n", "2", "--lambda", "1"],
        &["eval", "st:0,2", "--on", "ball", "--n", "2"],
        &["eval", "st:1,0", "--on", "cpm:2", "--n", "3"],
        &["tube", "global", "--n", "2"],
        &["tube", "local", "--n", "2"],
        &["tube", "complex", "--n", "2"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let text = stdout(&a);
        let doc = Document::from_json(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(Document::from_json(&doc.to_json()).unwrap(), doc, "{args:?}");
        assert_eq!(doc.to_json(), text.trim_end(), "{args:?}");
    }
    let pair = stdout(&["decompose", "D:2,1", "--n", "3", "--format", "json"]);
    let docs: Vec<Document> = serde_json::from_str(&pair).unwrap();
    assert_eq!(docs.len(), 2);
}

#[test]
fn json_valuation_round_trips_into_the_library() {
    let text = stdout(&["mult", "st:0,1", "st:1,0", "--n", "3", "--format", "json"]);
    let v = Document::from_json(&text).unwrap().into_valuation().unwrap();
    assert_eq!(Document::valuation(&v).to_json(), text.trim_end());
}

#[test]
fn csv_has_numeric_column() {
    let got = stdout(&["tube", "global", "--n", "1", "--lambda", "1", "--format", "csv", "--numeric"]);
    let mut lines = got.lines();
    assert_eq!(lines.next(), Some("key,coefficient,sn,cs,integrals,value"));
    assert!(got.contains("mu[0,0],\"pi\",2,0,,3.14159265358979"));
}

#[test]
fn exit_codes() {
    assert_eq!(hermint(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hermint(&["kin-chi", "--lambda", "x/y"]).status.code(), Some(2));
    assert_eq!(hermint(&["convert", "mu:9,0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hermint(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(hermint(&["verify", "--suite", "ftaig", "--n", "2"]).status.code(), Some(0));
    assert_eq!(hermint(&["conjecture", "--n-max", "8"]).status.code(), Some(0));
    // a truncated λ-series no longer satisfies the relations
    assert_eq!(hermint(&["conjecture", "--n-max", "8", "--lambda-terms", "0"]).status.code(), Some(1));
    assert_eq!(hermint(&["tube", "global", "--format", "latex"]).status.code(), Some(2));
}

#[test]
fn verify_reports_follow_the_schema() {
    let text = stdout(&["verify", "--suite", "module,kernel", "--n", "2", "--lambdas", "0,formal", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        for key in ["suite", "n", "lambda", "status", "witness"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
        assert_eq!(r["status"], "pass");
    }
    assert_eq!(rows[1]["lambda"], "formal");
}

#[test]
fn verify_reads_a_config_file() {
    let dir = std::env::temp_dir().join(format!("hermint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweeps.toml");
    std::fs::write(
        &path,
        r#"
[[sweep]]
suite = ["ftaig", "angularity"]
n = [1, 2]
lambda = ["0", "1/3"]

[[identity]]
name = "shifrin"
bound = 4
"#,
    )
    .unwrap();
    let out = stdout(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    std::fs::write(&path, "[[sweep]]\nsuite = [\"ftaig\"]\nn = [99]\n").unwrap();
    assert_eq!(hermint(&["verify", "--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn worker_count_does_not_change_reports() {
    let run = |w: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hermint"))
            .args(["verify", "--suite", "all", "--n-max", "2", "--format", "json"])
            .env("HERMINT_WORKERS", w)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn template_evaluation() {
    // χ(CP³) = 4, s(CP³_λ) = 3/λ
    assert_eq!(stdout(&["eval", "st:0,0", "--on", "cpm:3", "--n", "3", "--lambda", "1"]), "4\n");
    assert_eq!(stdout(&["eval", "st:1,0", "--on", "cpm:3", "--n", "3"]), "3*lambda^-1\n");
}
