mod common;

use common::{check_golden, run_cli, GOLDEN_CASES};
use serde_json::Value;

#[test]
fn golden_cases() {
    let failures: Vec<String> = GOLDEN_CASES.iter().filter_map(|c| check_golden(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_exit_code_is_covered() {
    for code in [0, 2, 3, 4, 5] {
        assert!(
            GOLDEN_CASES.iter().any(|c| c.code == code),
            "no golden case exits {code}"
        );
    }
}

#[test]
fn stdin_matches_file_input() {
    let from_file = run_cli(&["det", "m3x3.txt"]);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_detlab"))
        .args(["det", "-"])
        .stdin(std::fs::File::open(common::golden_dir().join("m3x3.txt")).unwrap())
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), from_file.stdout);
}

#[test]
fn machine_records_round_trip_through_scalar_parser() {
    let run = run_cli(&["--machine", "--field", "gf:7", "solve", "sys_diag.txt"]);
    assert_eq!(run.code, 0);
    let rec: Value = serde_json::from_str(run.stdout.trim()).unwrap();
    let field: detlab_core::Field = rec["field"].as_str().unwrap().parse().unwrap();
    let xs: Vec<_> = rec["x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| field.parse(v.as_str().unwrap()).unwrap())
        .collect();
    assert_eq!(xs, vec![field.integer(2), field.integer(3)]);

    let run = run_cli(&["--machine", "verify", "xminusy"]);
    for line in run.stdout.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["command"], "verify");
        if let Some(residual) = rec["witness"]["residual"].as_array() {
            for r in residual {
                detlab_core::Field::Rational.parse(r.as_str().unwrap()).unwrap();
            }
        }
    }
}
