use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hendecagon_core::construction::hendecagon_script;
use hendecagon_core::fold::TwoFoldConfig;
use hendecagon_core::script::{config_to_text, script_to_text};

fn hendecagon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hendecagon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_prints_descending_coefficients() {
    let o = hendecagon(&["poly", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1 -4 -3 3 1\n");
    assert_eq!(stdout(&hendecagon(&["poly", "7"])), "1 1 -2 -1\n");
    assert_eq!(hendecagon(&["poly", "8"]).status.code(), Some(2));
}

#[test]
fn classify_reports() {
    let o = hendecagon(&["classify", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("factorization = \"2^2 * 3\""), "{text}");
    assert!(text.contains("single_fold_constructible = true"));
    let eleven = stdout(&hendecagon(&["classify", "11"]));
    assert!(eleven.contains("single_fold_constructible = false"));
    assert_eq!(hendecagon(&["classify", "2"]).status.code(), Some(2));
    assert_eq!(hendecagon(&["classify", "x"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hendecagon(&[]).status.code(), Some(2));
    assert_eq!(hendecagon(&["fold"]).status.code(), Some(2));
    assert_eq!(
        hendecagon(&["solve", "--config", "/nonexistent/config.toml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hendecagon(&["--help"]).status.code(), Some(0));
}

#[test]
fn solve_lists_five_solutions() {
    let o = hendecagon(&["solve"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ts: Vec<f64> = text
        .lines()
        .filter_map(|l| l.strip_prefix("t = "))
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(ts.len(), 5);
    assert!(text.contains("t = 1.68250706566\n"));
    for (k, t) in (1..=5).zip(&ts) {
        let oracle = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 11.0).cos();
        assert!((t - oracle).abs() < 1e-11);
    }
}

#[test]
fn solve_reads_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.toml");
    fs::write(&path, config_to_text(&TwoFoldConfig::hendecagon()).unwrap()).unwrap();
    let o = hendecagon(&["solve", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&hendecagon(&["solve"])));

    fs::write(&path, "format = \"two-fold-config\"\nversion = 7\n").unwrap();
    assert_eq!(
        hendecagon(&["solve", "--config", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

fn svg_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".svg"))
        .collect();
    names.sort();
    names
}

#[test]
fn construct_writes_diagrams() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let o = hendecagon(&["construct", "--out", dir.to_str().unwrap()]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).contains("check.side_lengths = pass"));
    }
    let names = svg_files(a.path());
    assert_eq!(names.len(), 21);
    assert_eq!(names[0], "final.svg");
    assert_eq!(names[20], "step-20.svg");
    for name in &names {
        let text = fs::read_to_string(a.path().join(name)).unwrap();
        assert_eq!(
            text,
            fs::read_to_string(b.path().join(name)).unwrap(),
            "{name}"
        );
        let doc = roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(
            root.attribute("viewBox"),
            Some("-4.500000 -3.500000 9.000000 9.000000")
        );
        assert!(root
            .descendants()
            .any(|n| n.attribute("class") == Some("sheet")));
    }
    let final_doc = fs::read_to_string(a.path().join("final.svg")).unwrap();
    let doc = roxmltree::Document::parse(&final_doc).unwrap();
    let sides = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("side"))
        .count();
    assert_eq!(sides, 11);
    let report = fs::read_to_string(a.path().join("residuals.txt")).unwrap();
    assert!(report.contains("two_fold.8.t = 1.68250706566"));
}

#[test]
fn construct_runs_a_script_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hendecagon.toml");
    let text = script_to_text(&hendecagon_script()).unwrap();
    fs::write(&path, &text).unwrap();
    let o = hendecagon(&["construct", "--script", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&hendecagon(&["construct"])));

    // Off by one in the last digit of P's expected x.
    let broken = text.replacen("x = \"-2.5\"", "x = \"-2.4999\"", 1);
    assert_ne!(broken, text);
    fs::write(&path, broken).unwrap();
    let o = hendecagon(&["construct", "--script", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("7b"));

    fs::write(&path, "not a script").unwrap();
    assert_eq!(
        hendecagon(&["construct", "--script", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_code_tracks_criteria() {
    let o = hendecagon(&["verify"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 7, "{text}");
    let all_pass = lines.iter().all(|l| l.starts_with("[PASS]"));
    assert_eq!(o.status.code(), Some(if all_pass { 0 } else { 1 }));
}
