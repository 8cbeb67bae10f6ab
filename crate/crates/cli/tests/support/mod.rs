//! Golden cases and the exit-code matrix shared by the CLI tests.
#![allow(dead_code)]

use qgforms::forms::PreregularityReport;
use qgforms::io;
use qgforms::spalg::RelationSpace;
use std::path::{Path, PathBuf};
use std::process::Command;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> String {
    root().join("fixtures").join(format!("{name}.json")).display().to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    root().join("golden").join(name)
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[String]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_qgforms"))
        .args(args)
        .env("QGFORMS_THREADS", "2")
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// How a command's output is parsed and re-emitted.
#[derive(Clone, Copy, Debug)]
pub enum Format {
    Form,
    Preregularity,
    Relations,
    Presentation,
    Reports,
    Value,
}

pub struct Case {
    pub golden: String,
    pub args: Vec<String>,
    pub code: i32,
    pub format: Format,
}

fn case(golden: String, args: Vec<String>, code: i32, format: Format) -> Case {
    Case { golden, args, code, format }
}

/// Fixtures with the degree used for `algebra`.
pub const FIXTURES: [(&str, usize); 9] = [
    ("signature2", 2),
    ("signature3", 2),
    ("ast-e", 2),
    ("ast-f", 2),
    ("takeuchi-e", 2),
    ("takeuchi-f", 2),
    ("sklyanin3", 2),
    ("sklyanin4", 2),
    ("yangmills", 3),
];

/// Pairs `(e, f)` used for the two-form presentations.
pub const PAIRS: [(&str, &str, &str); 3] =
    [("signature2", "signature2", "signature2"), ("ast", "ast-e", "ast-f"), ("takeuchi", "takeuchi-e", "takeuchi-f")];

/// Every golden case in the order they must run: later cases read earlier goldens.
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, degree) in FIXTURES {
        let form = fixture(name);
        let catalog = match name {
            "signature2" => args(&["catalog", "signature", "--n", "2"]),
            "signature3" => args(&["catalog", "signature", "--n", "3"]),
            "ast-e" | "ast-f" => {
                let side = &name[4..];
                args(&["catalog", "ast", "--param", "p_0_1=2", "--param", "lambda=3", "--side", side])
            }
            "takeuchi-e" | "takeuchi-f" => {
                let side = &name[9..];
                args(&["catalog", "takeuchi", "--param", "p=2", "--param", "q=5", "--side", side])
            }
            other => args(&["catalog", other]),
        };
        out.push(case(format!("{name}.catalog.json"), catalog, 0, Format::Form));
        out.push(case(format!("{name}.check.json"), args(&["check", &form]), 0, Format::Preregularity));
        out.push(case(
            format!("{name}.algebra.json"),
            args(&["algebra", &form, "--N", &degree.to_string()]),
            0,
            Format::Relations,
        ));
        for slot in ["first", "last"] {
            out.push(case(format!("{name}.polar-{slot}.json"), args(&["polar", &form, "--slot", slot]), 0, Format::Form));
        }
        out.push(case(format!("{name}.codet.json"), args(&["codet", &form, "--seed", "1"]), 0, Format::Value));
        out.push(case(format!("{name}.he.json"), args(&["hopf", &form, "--kind", "he"]), 0, Format::Presentation));
        let he = golden_path(&format!("{name}.he.json")).display().to_string();
        out.push(case(
            format!("{name}.he.counit.json"),
            args(&["verify", &he, "--suite", "counit"]),
            0,
            Format::Reports,
        ));
    }
    for (pair, e, f) in PAIRS {
        let (e, f) = (fixture(e), fixture(f));
        for kind in ["hf", "hef", "se", "sf", "sef", "gef"] {
            let forms: Vec<&str> = match kind {
                "hf" | "sf" => vec![&f],
                _ => vec![&e, &f],
            };
            let mut a = args(&["hopf"]);
            a.extend(forms.iter().map(|s| s.to_string()));
            a.extend(args(&["--kind", kind]));
            out.push(case(format!("{pair}.{kind}.json"), a, 0, Format::Presentation));
        }
        out.push(case(
            format!("{pair}.om.json"),
            args(&["hopf", &e, &f, "--kind", "om", "--N", "2"]),
            0,
            Format::Presentation,
        ));
    }
    out.push(case(
        "ast.ast.json".into(),
        args(&["hopf", "--kind", "ast", "--param", "p_0_1=2", "--param", "lambda=3"]),
        0,
        Format::Presentation,
    ));
    let g = |name: &str| golden_path(name).display().to_string();
    out.push(case(
        "signature2.hef.inverse.json".into(),
        args(&["verify", &g("signature2.hef.json"), "--suite", "inverse"]),
        0,
        Format::Reports,
    ));
    out.push(case(
        "signature2.hef.recheck.json".into(),
        args(&["verify", &g("signature2.hef.json"), "--recheck", &g("signature2.hef.inverse.json")]),
        0,
        Format::Value,
    ));
    out.push(case(
        "signature2.sef.sovereign.json".into(),
        args(&["verify", &g("signature2.sef.json"), "--suite", "sovereign"]),
        0,
        Format::Reports,
    ));
    out.push(case(
        "ast.equiv.json".into(),
        args(&["verify", &g("ast.ast.json"), "--suite", "equiv", "--against", &g("ast.hef.json"), "--max-len", "4"]),
        0,
        Format::Reports,
    ));
    out
}

/// Parses `text` in the given format and emits it again.
pub fn reemit(format: Format, text: &str) -> Result<String, String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    Ok(match format {
        Format::Form => io::form_to_json(&io::form_from_json(text).map_err(|x| e(&x))?),
        Format::Preregularity => {
            let file: io::PreregularityFile = serde_json::from_str(text).map_err(|x| e(&x))?;
            let report = PreregularityReport::try_from(&file).map_err(|x| e(&x))?;
            io::to_pretty(&io::PreregularityFile::from(&report))
        }
        Format::Relations => {
            let file: io::RelationSpaceFile = serde_json::from_str(text).map_err(|x| e(&x))?;
            let space = RelationSpace::try_from(&file).map_err(|x| e(&x))?;
            io::to_pretty(&io::RelationSpaceFile::from(&space))
        }
        Format::Presentation => io::presentation_to_json(&io::presentation_from_json(text).map_err(|x| e(&x))?),
        Format::Reports => io::reports_to_json(&io::reports_from_json(text).map_err(|x| e(&x))?),
        Format::Value => {
            let v: serde_json::Value = serde_json::from_str(text).map_err(|x| e(&x))?;
            io::to_pretty(&v)
        }
    })
}

/// Runs one case against its golden file. With `QGFORMS_BLESS=1` the golden is rewritten.
pub fn check_case(c: &Case) -> Result<(), String> {
    let out = run(&c.args);
    if out.code != c.code {
        return Err(format!("{}: exit {} (expected {}): {}", c.golden, out.code, c.code, out.stderr.trim()));
    }
    let path = golden_path(&c.golden);
    if std::env::var("QGFORMS_BLESS").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if out.stdout != expected {
        return Err(format!("{}: output differs from golden", c.golden));
    }
    let again = reemit(c.format, &out.stdout).map_err(|e| format!("{}: reparse failed: {e}", c.golden))?;
    if again != out.stdout {
        return Err(format!("{}: re-emitted JSON differs", c.golden));
    }
    Ok(())
}

/// Exit-code cases: description, arguments and expected code. `dir` holds scratch inputs.
pub fn exit_matrix(dir: &Path) -> Vec<(String, Vec<String>, i32)> {
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).expect("scratch file");
        p.display().to_string()
    };
    let malformed = write("malformed.json", "{\"dim\": 2, \"arity\": ");
    let zero = write("zero.json", "{\"dim\": 2, \"arity\": 2, \"entries\": []}");
    let tampered = {
        let text = std::fs::read_to_string(golden_path("signature2.he.json")).expect("golden presentation");
        let mut v: serde_json::Value = serde_json::from_str(&text).expect("presentation JSON");
        let rel = v["relations"][0].as_array_mut().expect("relation terms");
        rel.push(serde_json::json!({"word": [], "val": "1"}));
        write("tampered.json", &io::to_pretty(&v))
    };
    let sig2 = fixture("signature2");
    let sig3 = fixture("signature3");
    let hef = golden_path("signature2.hef.json").display().to_string();
    vec![
        ("preregular form checks".into(), args(&["check", &sig2]), 0),
        ("missing file".into(), args(&["check", &dir.join("absent.json").display().to_string()]), 1),
        ("malformed JSON".into(), args(&["check", &malformed]), 1),
        ("zero form".into(), args(&["check", &zero]), 2),
        ("degree beyond arity".into(), args(&["algebra", &sig2, "--N", "5"]), 2),
        ("mismatched pair".into(), args(&["hopf", &sig2, &sig3, "--kind", "hef"]), 2),
        ("unknown flag".into(), args(&["check", &sig2, "--bogus"]), 2),
        ("max-len below two".into(), args(&["verify", &hef, "--suite", "inverse", "--max-len", "1"]), 2),
        ("tampered relation".into(), args(&["verify", &tampered, "--suite", "counit"]), 3),
        ("bound too small".into(), args(&["verify", &hef, "--suite", "inverse", "--max-len", "2"]), 4),
    ]
}
