use std::path::{Path, PathBuf};

use serde_json::Value;

/// A recorded CLI invocation: arguments, exit code and stdout.
pub struct GoldenCase {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
    pub stdout_path: PathBuf,
}

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let dir = manifest_dir().join("tests/golden");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("golden dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let spec: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
            GoldenCase {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                args: spec["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect(),
                exit: spec["exit"].as_i64().unwrap() as i32,
                stdout_path: p.with_extension("stdout"),
            }
        })
        .collect()
}

/// Compares one run with the recording. With `GOLDEN_BLESS` set the
/// recording is rewritten instead.
pub fn compare(case: &GoldenCase, exit: i32, stdout: &str) -> Result<(), String> {
    for line in stdout.lines() {
        serde_json::from_str::<Value>(line).map_err(|e| format!("{}: stdout line is not JSON ({e}): {line}", case.name))?;
    }
    if std::env::var_os("GOLDEN_BLESS").is_some() {
        std::fs::write(&case.stdout_path, stdout).unwrap();
    }
    if exit != case.exit {
        return Err(format!("{}: exit {exit}, expected {}", case.name, case.exit));
    }
    let want = std::fs::read_to_string(&case.stdout_path).map_err(|e| format!("{}: {e}", case.name))?;
    if want != stdout {
        return Err(format!("{}: stdout differs\n--- expected\n{want}--- actual\n{stdout}", case.name));
    }
    Ok(())
}
