//! Golden JSON reports: one command per module, run through the binary.

use std::path::PathBuf;
use std::process::Command;

use patcalc::output::strip_timings;

pub struct GoldenCase {
    pub name: &'static str,
    /// Arguments after the binary; `{data}` expands to the test data directory.
    pub args: &'static [&'static str],
}

pub const CASES: [GoldenCase; 8] = [
    GoldenCase { name: "fincat_validate", args: &["-f", "{data}/golden.pc", "validate", "D"] },
    GoldenCase { name: "kan_colimit", args: &["-f", "{data}/golden.pc", "colimit", "X"] },
    GoldenCase { name: "patterns_gamma", args: &["gamma", "f_star(2)"] },
    GoldenCase { name: "stdlib_cut", args: &["validate", "cut(3)"] },
    GoldenCase { name: "freealg_free", args: &["free", "f_star(3)", "--gen", "2", "--bound", "3"] },
    GoldenCase { name: "day_yoneda", args: &["yoneda", "discrete_cyclic(2)", "--phi", "<2>-[1,1]-><1>", "--level", "2"] },
    GoldenCase { name: "morita_cut", args: &["morita", "cut", "--level", "3"] },
    GoldenCase { name: "cli_retract", args: &["-f", "{data}/retract.pc", "extendable", "P"] },
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

/// Runs the binary with `--json`, returning the body without timings and the exit code.
pub fn run(args: &[&str]) -> Result<(String, i32), String> {
    let data = data_dir();
    let args: Vec<String> = args.iter().map(|a| a.replace("{data}", data.to_str().unwrap())).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_patcalc"))
        .args(&args)
        .arg("--json")
        .env_remove("PATCALC_LEVEL")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((strip_timings(&stdout), out.status.code().unwrap_or(-1)))
}

/// Two runs agree byte for byte and match the stored report. With
/// `PATCALC_BLESS=1` the stored report is rewritten instead.
pub fn check_case(case: &GoldenCase) -> Result<(), String> {
    let (first, code) = run(case.args)?;
    let (second, code2) = run(case.args)?;
    if first != second || code != code2 {
        return Err(format!("{}: two runs differ", case.name));
    }
    if !(0..=1).contains(&code) {
        return Err(format!("{}: exit code {code}\n{first}", case.name));
    }
    let path = golden_path(case.name);
    if std::env::var("PATCALC_BLESS").is_ok_and(|v| v == "1") {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&path, format!("{first}\n")).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let stored = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stored.trim_end() != first {
        return Err(format!("{}: report differs from {}\n{first}", case.name, path.display()));
    }
    Ok(())
}
