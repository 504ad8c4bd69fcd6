use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pfvdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfvdc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn map(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../maps")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn spectrum_certificates() {
    let o = pfvdc(&["spectrum", "--map", &map("doubling"), "--degree", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("certificate_annulus: true"));

    let o = pfvdc(&["spectrum", "--map", &map("two_block"), "--degree", "20"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("certificate_annulus: false"), "{s}");
    assert!(s.contains("ergodic_components: 2"), "{s}");

    let o = pfvdc(&["spectrum", "--map", &map("beta_1_9"), "--degree", "60"]);
    let s = stdout(&o);
    assert!(s.contains("# route: signed"), "{s}");
    assert!(s.contains("certificate_minor: false"), "{s}");
}

#[test]
fn generate_counts() {
    let o = pfvdc(&["generate", "--map", "builtin:doubling", "--n", "7"]);
    assert!(o.status.success());
    assert_eq!(
        data_lines(&stdout(&o)),
        ["0.5", "0.25", "0.75", "0.125", "0.625", "0.375", "0.875"]
    );
    let o = pfvdc(&["generate", "--dim", "2", "--levels", "0..4"]);
    assert_eq!(data_lines(&stdout(&o)).len(), 341);
    let o = pfvdc(&["generate", "--dim", "3", "--levels", "0..3"]);
    assert_eq!(data_lines(&stdout(&o)).len(), 585);
    let o = pfvdc(&["generate", "--dim", "2", "--n", "10", "--format", "csv"]);
    let s = stdout(&o);
    let lines = data_lines(&s);
    assert_eq!(lines[0], "index,level,x,y");
    assert_eq!(lines.len(), 11);
}

#[test]
fn generate_bits_match_decimal() {
    let o = pfvdc(&[
        "generate",
        "--map",
        "builtin:tent",
        "--n",
        "20",
        "--format",
        "bits",
        "--precision",
        "40",
    ]);
    let b = stdout(&o);
    let o = pfvdc(&["generate", "--map", "builtin:tent", "--n", "20"]);
    let d = stdout(&o);
    for (bits, dec) in data_lines(&b).iter().zip(data_lines(&d)) {
        let v: f64 = dec.parse().unwrap();
        let approx = bits
            .chars()
            .enumerate()
            .map(|(i, c)| {
                if c == '1' {
                    0.5f64.powi(i as i32 + 1)
                } else {
                    0.0
                }
            })
            .sum::<f64>();
        assert!((v - approx).abs() <= 2f64.powi(-40), "{bits} {dec}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert_eq!(pfvdc(&["discrepancy", &empty]).status.code(), Some(2));
    assert_eq!(
        pfvdc(&["generate", "--dim", "1", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pfvdc(&["generate", "--map", "builtin:nope", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    let bad = write(dir.path(), "bad.txt", "0.5\n1.5\n");
    assert_eq!(pfvdc(&["discrepancy", &bad]).status.code(), Some(2));
}

#[test]
fn discrepancy_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("v.txt").display().to_string();
    let o = pfvdc(&[
        "generate",
        "--map",
        "builtin:doubling",
        "--n",
        "1024",
        "--format",
        "csv",
        "--out",
        &pts,
    ]);
    assert!(o.status.success());
    let o = pfvdc(&["discrepancy", &pts]);
    assert!(o.status.success());
    let s = stdout(&o);
    let row = data_lines(&s)
        .into_iter()
        .find(|l| l.starts_with("1024,"))
        .unwrap()
        .to_string();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[1].parse::<f64>().unwrap(), 1.0 / 1024.0);
    assert!(s.contains("# fit_slope:"));

    let table = write(dir.path(), "t.txt", "N D\n4 0.25\n16 0.0625\n64 0.015625\n");
    let o = pfvdc(&["fit", &table]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# max_c: 0.5"));
}

#[test]
fn verify_and_corrupted_mix() {
    let o = pfvdc(&["verify", "--degree", "12"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let grid = stdout(&pfvdc(&["verify", "--export-mix"]));
    let dir = tempfile::tempdir().unwrap();
    let mut lines: Vec<String> = grid.lines().map(String::from).collect();
    let row = lines.iter().position(|l| l.starts_with("y3 ")).unwrap();
    let flipped = if lines[row].ends_with('0') { '1' } else { '0' };
    lines[row].pop();
    lines[row].push(flipped);
    let path = write(dir.path(), "mix.txt", &lines.join("\n"));
    let o = pfvdc(&["verify", "--degree", "12", "--mix", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL mix_checksum"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "generate",
            "--map",
            "builtin:golden_mean",
            "--n",
            "300",
            "--format",
            "csv",
        ],
        vec![
            "generate",
            "--dim",
            "3",
            "--levels",
            "1..2",
            "--format",
            "bits",
            "--precision",
            "16",
        ],
        vec!["spectrum", "--map", "builtin:tent", "--degree", "16"],
    ] {
        assert_eq!(stdout(&pfvdc(&args)), stdout(&pfvdc(&args)));
    }
}
