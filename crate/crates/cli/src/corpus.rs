//! Regression corpus: each case is `<name>.arr` or `<name>.graph` next to
//! `<name>.expected.json`, which holds `{"schema": 1, "facts": {...}}`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hyperarr::arrangement::Arrangement;
use hyperarr::graphic::Graph;
use serde_json::{json, Value};

use crate::facts::{Facts, Subject, ARRANGEMENT_FACTS, GRAPH_FACTS};
use crate::json::SCHEMA;
use crate::{read_file, CliError};

pub const EXPECTED_SUFFIX: &str = ".expected.json";

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub key: String,
    pub expected: Value,
    pub got: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CaseStatus {
    Pass,
    /// A computed fact differs from the expected one.
    Fail(Vec<Mismatch>),
    /// The case itself could not be read.
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub facts: usize,
    pub status: CaseStatus,
}

#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub cases: Vec<CaseResult>,
    pub warnings: Vec<String>,
}

impl Summary {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == CaseStatus::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(c.status, CaseStatus::Fail(_)))
            .count()
    }

    pub fn errors(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(c.status, CaseStatus::Error(_)))
            .count()
    }

    /// 0 when every case passes, 2 on any mismatch, 1 on unreadable cases only.
    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            crate::EXIT_INVARIANT
        } else if self.errors() > 0 {
            crate::EXIT_PARSE
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let (status, detail) = match &c.status {
                    CaseStatus::Pass => ("pass", Value::Null),
                    CaseStatus::Fail(ms) => (
                        "fail",
                        Value::Array(
                            ms.iter()
                                .map(|m| json!({ "key": m.key, "expected": m.expected, "got": m.got }))
                                .collect(),
                        ),
                    ),
                    CaseStatus::Error(e) => ("error", json!(e)),
                };
                json!({ "name": c.name, "facts": c.facts, "status": status, "detail": detail })
            })
            .collect();
        json!({
            "cases": cases,
            "passed": self.passed(),
            "failed": self.failed(),
            "errors": self.errors(),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut s = String::new();
        for c in &self.cases {
            let status = match &c.status {
                CaseStatus::Pass => "pass".to_string(),
                CaseStatus::Fail(ms) => {
                    let keys: Vec<&str> = ms.iter().map(|m| m.key.as_str()).collect();
                    format!("FAIL {}", keys.join(", "))
                }
                CaseStatus::Error(e) => format!("corpus error: {e}"),
            };
            let _ = writeln!(s, "{:<width$}  {:>2} facts  {status}", c.name, c.facts);
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} corpus errors",
            self.passed(),
            self.failed(),
            self.errors()
        );
        s
    }
}

fn case_names(dir: &Path) -> Result<(Vec<String>, Vec<String>), CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut names = Vec::new();
    let mut inputs = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let file = entry.map_err(io)?.file_name().to_string_lossy().into_owned();
        if let Some(n) = file.strip_suffix(EXPECTED_SUFFIX) {
            names.push(n.to_string());
        } else if let Some(n) = file.strip_suffix(".arr").or_else(|| file.strip_suffix(".graph")) {
            inputs.push(n.to_string());
        }
    }
    names.sort();
    inputs.sort();
    let orphans = inputs.into_iter().filter(|n| names.binary_search(n).is_err()).collect();
    Ok((names, orphans))
}

fn load_subject(dir: &Path, name: &str) -> Result<Subject, String> {
    let arr = dir.join(format!("{name}.arr"));
    let graph = dir.join(format!("{name}.graph"));
    match (arr.exists(), graph.exists()) {
        (true, false) => {
            let text = read_file(&arr).map_err(|e| e.to_string())?;
            Arrangement::parse(&text)
                .map(Subject::Arrangement)
                .map_err(|e| format!("{}: {e}", arr.display()))
        }
        (false, true) => {
            let text = read_file(&graph).map_err(|e| e.to_string())?;
            Graph::parse(&text)
                .map(Subject::Graph)
                .map_err(|e| format!("{}: {e}", graph.display()))
        }
        (true, true) => Err(format!("both {name}.arr and {name}.graph exist")),
        (false, false) => Err(format!("no input file for {name}")),
    }
}

fn load_expected(path: &Path, graph: bool) -> Result<serde_json::Map<String, Value>, String> {
    let text = read_file(path).map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if v.get("schema") != Some(&json!(SCHEMA)) {
        return Err(format!("{}: expected \"schema\": {SCHEMA}", path.display()));
    }
    let facts = v
        .get("facts")
        .and_then(Value::as_object)
        .ok_or_else(|| format!("{}: missing object \"facts\"", path.display()))?;
    for key in facts.keys() {
        let known = ARRANGEMENT_FACTS.contains(&key.as_str()) || (graph && GRAPH_FACTS.contains(&key.as_str()));
        if !known {
            return Err(format!("{}: unknown fact `{key}`", path.display()));
        }
    }
    Ok(facts.clone())
}

pub fn run_case(dir: &Path, name: &str) -> CaseResult {
    let error = |e: String| CaseResult {
        name: name.to_string(),
        facts: 0,
        status: CaseStatus::Error(e),
    };
    let subject = match load_subject(dir, name) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let is_graph = matches!(subject, Subject::Graph(_));
    let expected = match load_expected(&dir.join(format!("{name}{EXPECTED_SUFFIX}")), is_graph) {
        Ok(f) => f,
        Err(e) => return error(e),
    };
    let facts = Facts::new(subject);
    let mut mismatches = Vec::new();
    for (key, want) in &expected {
        match facts.compute(key, want) {
            Ok(got) if &got == want => {}
            Ok(got) => mismatches.push(Mismatch {
                key: key.clone(),
                expected: want.clone(),
                got,
            }),
            Err(e) => return error(e.to_string()),
        }
    }
    CaseResult {
        name: name.to_string(),
        facts: expected.len(),
        status: if mismatches.is_empty() {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail(mismatches)
        },
    }
}

/// Run every case in `dir`, in parallel, reporting in name order.
pub fn run_corpus(dir: &Path) -> Result<Summary, CliError> {
    let (names, orphans) = case_names(dir)?;
    let mut warnings: Vec<String> = orphans
        .iter()
        .map(|n| format!("{n}: input without expected facts"))
        .collect();
    if names.is_empty() {
        warnings.push(format!("no cases in {}", dir.display()));
    }
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(names.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut results: Vec<Option<CaseResult>> = vec![None; names.len()];
    let slots = std::sync::Mutex::new(&mut results);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= names.len() {
                    break;
                }
                let r = run_case(dir, &names[i]);
                slots.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    Ok(Summary {
        cases: results.into_iter().map(|r| r.expect("every case ran")).collect(),
        warnings,
    })
}

/// The shipped corpus directory.
pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(status: CaseStatus) -> CaseResult {
        CaseResult {
            name: "c".into(),
            facts: 1,
            status,
        }
    }

    #[test]
    fn exit_code_prefers_failures() {
        let mismatch = Mismatch {
            key: "t".into(),
            expected: json!(1),
            got: json!(2),
        };
        let mut s = Summary::default();
        assert_eq!(s.exit_code(), 0);
        s.cases.push(case(CaseStatus::Error("bad".into())));
        assert_eq!(s.exit_code(), crate::EXIT_PARSE);
        s.cases.push(case(CaseStatus::Fail(vec![mismatch])));
        assert_eq!(s.exit_code(), crate::EXIT_INVARIANT);
        assert_eq!((s.passed(), s.failed(), s.errors()), (0, 1, 1));
        assert!(s.to_text().contains("FAIL t"));
    }

    #[test]
    fn schema_is_required() {
        let dir = std::env::temp_dir().join(format!("hyperarr-schema-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("x.arr"), "dim 2\n1 0\n0 1\n").unwrap();
        std::fs::write(dir.join("x.expected.json"), r#"{"schema": 2, "facts": {}}"#).unwrap();
        let r = run_case(&dir, "x");
        std::fs::remove_dir_all(&dir).unwrap();
        assert!(matches!(r.status, CaseStatus::Error(ref e) if e.contains("schema")));
    }
}
