//! Shared between the regression and acceptance test targets: the bundled
//! fixture matrix and the binary runner.

use std::path::PathBuf;
use std::process::Command;

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run_modkit(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_modkit"))
        .args(args)
        .current_dir(manifest_dir())
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

/// Fixture name → command line (json format appended by the harness).
pub const FIXTURES: &[(&str, &[&str])] = &[
    (
        "validate_column_module_d3",
        &["validate", "instances/column_module_d3.json"],
    ),
    (
        "validate_degenerate_module",
        &["validate", "instances/degenerate_module.json"],
    ),
    (
        "validate_broken_closure",
        &["validate", "instances/broken_closure.json"],
    ),
    (
        "compacts_column_module_d3",
        &["compacts", "instances/column_module_d3.json", "X"],
    ),
    (
        "compacts_degenerate_module",
        &["compacts", "instances/degenerate_module.json", "X"],
    ),
    (
        "adjointables_column_module_d3",
        &["adjointables", "instances/column_module_d3.json", "X"],
    ),
    (
        "adjointables_daws_n2",
        &["adjointables", "instances/daws_n2.json", "row"],
    ),
    (
        "adjointables_daws_n3",
        &["adjointables", "instances/daws_n3.json", "row"],
    ),
    (
        "represent_scalar_columns_d2",
        &["represent", "instances/scalar_columns_d2.json", "H"],
    ),
    (
        "represent_scalar_columns_d3",
        &["represent", "instances/scalar_columns_d3.json", "H"],
    ),
    (
        "represent_scalar_columns_d2_explicit_rho",
        &[
            "represent",
            "instances/scalar_columns_d2.json",
            "H",
            "idC",
        ],
    ),
    (
        "represent_zero_module",
        &["represent", "instances/zero_module.json", "Z"],
    ),
    (
        "represent_scalar_columns_d3_noise",
        &[
            "represent",
            "instances/scalar_columns_d3.json",
            "H",
            "default",
            "--inject-noise",
            "1e-3",
        ],
    ),
    (
        "bimodule_check_scalar_columns_d2",
        &["bimodule-check", "instances/scalar_columns_d2.json", "H"],
    ),
    (
        "bimodule_check_full_matrix",
        &[
            "bimodule-check",
            "instances/full_matrix_bimodule.json",
            "XM2",
        ],
    ),
    (
        "bimodule_check_two_block",
        &["bimodule-check", "instances/two_block_ideal.json", "CM"],
    ),
    (
        "ideal_check_two_block",
        &["ideal-check", "instances/two_block_ideal.json", "CM"],
    ),
    (
        "ideal_check_scalar_columns_d2",
        &["ideal-check", "instances/scalar_columns_d2.json", "H"],
    ),
    (
        "tensor_columns_2_3",
        &[
            "tensor",
            "instances/tensor_columns_2_3.json",
            "X2_corr",
            "Y3_corr",
        ],
    ),
    (
        "tensor_chained",
        &[
            "tensor",
            "instances/chained_tensor.json",
            "X_corr",
            "Y_corr",
        ],
    ),
    ("daws_2", &["daws", "2"]),
    ("daws_3", &["daws", "3"]),
];

/// Runs every fixture command and compares bytes; returns the failures.
pub fn compare_fixtures() -> Vec<String> {
    let mut failures = Vec::new();
    for (name, args) in FIXTURES {
        let mut full: Vec<&str> = args.to_vec();
        full.push("--format");
        full.push("json");
        let (stdout, stderr, code) = run_modkit(&full);
        if !stderr.is_empty() {
            failures.push(format!("{name}: unexpected stderr: {stderr}"));
            continue;
        }
        let fixture_path = manifest_dir()
            .join("tests/fixtures")
            .join(format!("{name}.json"));
        let expected = match std::fs::read_to_string(&fixture_path) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{name}: fixture missing ({e})"));
                continue;
            }
        };
        if stdout != expected {
            failures.push(format!("{name}: report drifted from fixture"));
        }
        let parsed: serde_json::Value = match serde_json::from_str(&stdout) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{name}: invalid report json ({e})"));
                continue;
            }
        };
        if parsed["status"].as_i64().unwrap_or(-1) as i32 != code {
            failures.push(format!("{name}: exit code disagrees with report status"));
        }
    }
    failures
}
