//! Independent oracles for integration tests. Nothing here calls the
//! library's determinant engines.

#![allow(dead_code)]

use detlab_core::{Field, Matrix, Scalar, SplitMix64};

/// Brute-force signed sum over all n! permutations.
pub fn permutation_det(a: &Matrix) -> Scalar {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = a.field().zero();
    permute(a, &mut perm, 0, &mut total);
    total
}

fn permute(a: &Matrix, perm: &mut Vec<usize>, k: usize, total: &mut Scalar) {
    let n = perm.len();
    if k == n {
        let mut term = a.field().one();
        for (i, &j) in perm.iter().enumerate() {
            term = term * a.get(i, j);
        }
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        *total = if inversions % 2 == 0 {
            total.clone() + term
        } else {
            total.clone() - term
        };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(a, perm, k + 1, total);
        perm.swap(k, i);
    }
}

/// `a11 * a22 - a21 * a12`.
pub fn two_by_two(a: &Matrix) -> Scalar {
    a.get(0, 0) * a.get(1, 1) - a.get(1, 0) * a.get(0, 1)
}

pub fn gf7() -> Field {
    Field::prime(7).unwrap()
}

pub fn fields() -> [Field; 2] {
    [Field::Rational, gf7()]
}

/// Rows `0..n-1` random, last row a random combination of the others.
pub fn singular_matrix(rng: &mut SplitMix64, field: Field, n: usize) -> Matrix {
    assert!(n >= 2);
    let head = rng.tuple(field, n - 1, n);
    let coeffs: Vec<Scalar> = (0..n - 1).map(|_| rng.scalar(field)).collect();
    let last = head.linear_combination(&coeffs).unwrap();
    let mut t = head;
    t.push(last).unwrap();
    Matrix::from(t)
}

/// One CLI golden case: arguments (run inside `tests/golden`), expected exit
/// code. Expected stdout/stderr live in `tests/golden/<name>.out` / `.err`.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "det_identity",
        args: &["det", "identity3.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_2x2",
        args: &["det", "m2x2.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_3x3_cofactor",
        args: &["--algorithm", "cofactor", "det", "m3x3.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_gf7",
        args: &["--field", "gf:7", "det", "gf7.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_elimination",
        args: &["det", "--algorithm", "elimination", "swap.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_machine",
        args: &["--machine", "det", "--algorithm", "elimination", "m3x3.txt"],
        code: 0,
    },
    GoldenCase {
        name: "det_not_square",
        args: &["det", "rect.txt"],
        code: 3,
    },
    GoldenCase {
        name: "det_parse_error",
        args: &["det", "bad.txt"],
        code: 2,
    },
    GoldenCase {
        name: "det_composite_modulus",
        args: &["--field", "gf:9", "det", "m2x2.txt"],
        code: 2,
    },
    GoldenCase {
        name: "solve_identity",
        args: &["solve", "sys_identity.txt"],
        code: 0,
    },
    GoldenCase {
        name: "solve_diag",
        args: &["solve", "sys_diag.txt"],
        code: 0,
    },
    GoldenCase {
        name: "solve_singular",
        args: &["solve", "sys_parallel.txt"],
        code: 4,
    },
    GoldenCase {
        name: "solve_singular_machine",
        args: &["solve", "--machine", "sys_parallel.txt"],
        code: 4,
    },
    GoldenCase {
        name: "solve_parse_error",
        args: &["solve", "m2x2.txt"],
        code: 2,
    },
    GoldenCase {
        name: "independent_basis",
        args: &["independent", "identity3.txt"],
        code: 0,
    },
    GoldenCase {
        name: "independent_parallel",
        args: &["independent", "parallel.txt"],
        code: 0,
    },
    GoldenCase {
        name: "independent_partial",
        args: &["independent", "partial3.txt"],
        code: 0,
    },
    GoldenCase {
        name: "verify_det3",
        args: &["verify", "det:3"],
        code: 0,
    },
    GoldenCase {
        name: "verify_xminusy",
        args: &["verify", "xminusy"],
        code: 0,
    },
    GoldenCase {
        name: "verify_xy",
        args: &["verify", "xy"],
        code: 0,
    },
    GoldenCase {
        name: "verify_scaled_gf7",
        args: &[
            "verify",
            "scaled:3:lifted:det:2",
            "--field",
            "gf:7",
            "--seed",
            "11",
            "--trials",
            "50",
        ],
        code: 0,
    },
    GoldenCase {
        name: "verify_machine",
        args: &["--machine", "verify", "xminusy", "--trials", "20"],
        code: 0,
    },
    // the single sampled instance has a zero coordinate, so the expected
    // main-equation failure of xy goes unobserved
    GoldenCase {
        name: "verify_unexpected",
        args: &["verify", "xy", "--trials", "1", "--seed", "6"],
        code: 5,
    },
    GoldenCase {
        name: "verify_parse_error",
        args: &["verify", "det:0"],
        code: 2,
    },
];

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> CliRun {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_detlab"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("spawn detlab");
    CliRun {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Compares one case against its golden files; rewrites them instead when
/// `DETLAB_BLESS=1`.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let run = run_cli(case.args);
    let dir = golden_dir();
    let (out_path, err_path) = (
        dir.join(format!("{}.out", case.name)),
        dir.join(format!("{}.err", case.name)),
    );
    if std::env::var("DETLAB_BLESS").as_deref() == Ok("1") {
        std::fs::write(&out_path, &run.stdout).unwrap();
        std::fs::write(&err_path, &run.stderr).unwrap();
    }
    if run.code != case.code {
        return Err(format!(
            "{}: exit {} != {} (stderr: {})",
            case.name, run.code, case.code, run.stderr
        ));
    }
    let expected_out = std::fs::read_to_string(&out_path).map_err(|e| format!("{}: {e}", case.name))?;
    let expected_err = std::fs::read_to_string(&err_path).map_err(|e| format!("{}: {e}", case.name))?;
    if run.stdout != expected_out {
        return Err(format!(
            "{}: stdout differs\n--- got\n{}--- want\n{}",
            case.name, run.stdout, expected_out
        ));
    }
    if run.stderr != expected_err {
        return Err(format!(
            "{}: stderr differs\n--- got\n{}--- want\n{}",
            case.name, run.stderr, expected_err
        ));
    }
    let again = run_cli(case.args);
    if (again.code, &again.stdout, &again.stderr) != (run.code, &run.stdout, &run.stderr) {
        return Err(format!("{}: rerun not byte-identical", case.name));
    }
    Ok(())
}
