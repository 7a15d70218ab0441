//! Report contents for the shipped examples, and determinism across runs and
//! thread counts.

use std::process::Command;

use obstruct_cli::commands::{fixture, gersten, load_text, pages, secondary, sq2_report, tower};
use obstruct_cli::format::{InstanceFile, Metadata};
use obstruct_cli::report::OutputFormat;
use obstruct_core::fixtures::{self, random_filtered, RandomShape, NAMES};
use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_obstruct");

fn loaded(file: &InstanceFile) -> obstruct_cli::commands::Loaded {
    load_text(&file.to_text()).unwrap()
}

#[test]
fn sl3_second_page_differential_is_an_isomorphism() {
    let l = loaded(&fixture("sl3").unwrap());
    let r = pages(&l, None, 1).unwrap().to_json();
    let p2 = &r["result"]["pages"][0];
    assert_eq!(p2["page"], json!(2));
    assert_eq!(
        p2["entries"],
        json!([{"degree": 1, "weight": 2, "group": "Z/2"}, {"degree": 2, "weight": 3, "group": "Z/2"}])
    );
    let d = &p2["differentials"][0];
    assert_eq!(d["from"], json!([1, 2]));
    assert_eq!(d["to"], json!([2, 3]));
    assert_eq!(d["isomorphism"], json!(true));
    assert_eq!(r["result"]["pages"][1]["zero"], json!(true));
    assert_eq!(r["result"]["e_infinity"]["zero"], json!(true));
}

#[test]
fn gersten_projective_line_has_free_h1() {
    let l = loaded(&gersten("projective_line", 3, 1, 3, false, false).unwrap());
    let r = pages(&l, None, 1).unwrap().to_json();
    assert_eq!(
        r["result"]["cohomology"],
        json!([{"degree": 0, "group": "Z/2"}, {"degree": 1, "group": "Z"}])
    );
}

#[test]
fn z4_tower_of_twice_the_generator() {
    let l = loaded(&fixture("z4").unwrap());
    let r = tower(&l, None, Some("2"), 0).unwrap().to_json();
    let st = &r["result"]["stages"];
    assert_eq!(st[0]["nonzero"], json!(false));
    assert_eq!(st[1]["nonzero"], json!(true));
    assert_eq!(st[1]["value"], json!([1]));
    assert_eq!(r["verdict"], json!("first nonzero stage 1"));
    let all = tower(&l, None, None, 0).unwrap().to_json();
    assert_eq!(all["result"]["checked"], json!(4));
    assert_eq!(all["result"]["exhaustive"], json!(true));
}

#[test]
fn secondary_on_fixtures() {
    for name in NAMES {
        let l = loaded(&fixture(name).unwrap());
        let r = secondary(&l, None).unwrap().to_json();
        assert_eq!(r["result"]["isomorphic"], json!(true), "{name}");
        assert!(r["result"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == json!(true)));
    }
    let l = loaded(&fixture("cd_one").unwrap());
    let r = secondary(&l, None).unwrap().to_json();
    assert_eq!(r["result"]["cokernel"], json!("0"));
}

#[test]
fn sq2_of_the_hyperplane_class() {
    let r = sq2_report("P4", None, "h").unwrap().to_json();
    assert_eq!(r["result"]["sq2"], json!("h^2"));
    let r = sq2_report("P4", Some("h"), "h").unwrap().to_json();
    assert_eq!(r["result"]["twisted"], json!("0"));
    let r = sq2_report("P2xP3", None, "h1*h2").unwrap().to_json();
    assert_eq!(r["result"]["assembly"], json!(true));
}

fn instances() -> Vec<InstanceFile> {
    let mut out: Vec<InstanceFile> = NAMES.iter().map(|n| fixture(n).unwrap()).collect();
    out.push(gersten("projective_line", 3, 1, 3, false, false).unwrap());
    out.push(gersten("projective_line", 5, 2, 2, false, true).unwrap());
    let mut rng = fixtures::rng(11);
    for _ in 0..20 {
        let f = random_filtered(&mut rng, RandomShape::default());
        out.push(InstanceFile::new(Metadata::default(), &f, None));
    }
    out
}

#[test]
fn pages_reports_do_not_depend_on_threads() {
    for file in instances() {
        let l = loaded(&file);
        let one = pages(&l, None, 1).unwrap();
        for threads in [2, 3, 8] {
            let many = pages(&l, None, threads).unwrap();
            assert_eq!(many.render(OutputFormat::Json), one.render(OutputFormat::Json));
            assert_eq!(many.render(OutputFormat::Text), one.render(OutputFormat::Text));
        }
        assert_eq!(pages(&l, None, 1).unwrap(), one);
    }
}

#[test]
fn binary_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl3.json");
    let st = Command::new(BIN).args(["fixtures", "--name", "sl3", "--out"]).arg(&path).output().unwrap();
    assert!(st.status.success());
    assert!(st.stdout.is_empty());
    let run = |threads: &str, format: &str| {
        let out = Command::new(BIN)
            .args(["pages", "--threads", threads, "--format", format, "--input"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    for format in ["json", "text"] {
        let a = run("1", format);
        assert_eq!(a, run("1", format));
        assert_eq!(a, run("4", format));
    }
    let report: Value = serde_json::from_slice(&run("1", "json")).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(report["instance"], json!(obstruct_cli::commands::digest(&InstanceFile::parse(&text).unwrap())));
}
