//! Shared fixtures for the integration tests.

use std::path::PathBuf;

/// One pinned invocation per subcommand and the file holding its output.
pub const GOLDEN: &[(&str, &[&str])] = &[
    ("identity.csv", &["identity", "--alpha", "3", "--beta", "1", "--n-max", "8", "--mode", "exact"]),
    (
        "spectrum.csv",
        &["spectrum", "-N", "3", "--eps0", "0", "--v", "1", "--gamma", "0.5", "--from", "-3", "--to", "3", "--points", "13"],
    ),
    (
        "current.json",
        &["current", "-N", "1", "--eps0", "0", "--v", "1", "--gamma", "0.2", "--mu-l", "10", "--mu-r", "-10", "--temperature", "0"],
    ),
    (
        "evolve.csv",
        &["evolve", "-N", "2", "--eps0", "0", "--v", "1", "--gamma", "1", "--drive-energy", "0.5", "--stride", "100"],
    ),
    (
        "equivalence.json",
        &[
            "equivalence", "-N", "4", "--eps0", "0.1", "--v", "0.8", "--gamma", "0.6", "--from", "-2", "--to", "2",
            "--points", "5", "--format", "json",
        ],
    ),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Run the CLI in-process; returns (exit code, stdout, stderr).
#[allow(dead_code)] // not every test target calls it
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qwire").chain(args.iter().copied());
    let code = qwire::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
