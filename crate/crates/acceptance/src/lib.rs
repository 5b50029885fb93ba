//! The shipped session corpus, run once through `run_session` and shared by
//! the acceptance criteria.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde_json::Value;
use tempfile::TempDir;
use torhilbert::{run_session, Overrides, RunOptions, RunSummary, Session, Task};
use torhilbert_core::harness::Fixture;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures")
}

pub fn session_paths() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .expect("fixtures directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "session"))
        .collect();
    paths.sort();
    paths
}

pub fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub struct Corpus {
    _out: TempDir,
    pub runs: BTreeMap<String, RunSummary>,
    pub sessions: BTreeMap<String, Session>,
}

pub fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let out = TempDir::new().expect("temp dir");
        let mut runs = BTreeMap::new();
        let mut sessions = BTreeMap::new();
        for path in session_paths() {
            let name = stem(&path);
            let opts = RunOptions { out: Some(out.path().join(&name)), parallel: true, certify: false };
            let summary = run_session(&path, &Overrides::default(), &opts).expect("fixture session loads");
            let text = std::fs::read_to_string(&path).unwrap();
            sessions.insert(name.clone(), Session::parse(&text, &Overrides::default()).unwrap());
            runs.insert(name, summary);
        }
        Corpus { _out: out, runs, sessions }
    })
}

pub fn reports(name: &str) -> Vec<&'static Value> {
    corpus().runs[name]
        .outcomes
        .iter()
        .map(|o| o.report.as_ref().unwrap_or_else(|| panic!("{name} task {} failed: {}", o.index, o.summary)))
        .collect()
}

/// Every task in the corpus that names a fixture, with its report.
pub fn fixture_tasks() -> Vec<(String, &'static Task, Option<&'static Value>)> {
    let c = corpus();
    let mut out = Vec::new();
    for (name, session) in &c.sessions {
        for (task, outcome) in session.tasks.iter().zip(&c.runs[name].outcomes) {
            if task.m.is_some() && task.n.is_some() && task.ii.is_some() {
                out.push((name.clone(), task, outcome.report.as_ref()));
            }
        }
    }
    out
}

pub fn fixture_of(task: &Task) -> Fixture {
    let m = task.m.as_ref().unwrap();
    let n = task.n.as_ref().unwrap();
    let ii = task.ii.as_ref().unwrap();
    let jj = task.jj.as_ref().unwrap_or(ii);
    let label = format!("line {}: M={} N={} I={} J={}", task.line, m.name, n.name, ii.name, jj.name);
    Fixture::new(label, task.i, m.value.clone(), n.value.clone(), ii.value.clone(), jj.value.clone())
}

pub fn hypotheses_hold(r: &Value) -> bool {
    r["hypotheses"].as_array().is_some_and(|h| h.iter().all(|c| c["holds"] == Value::Bool(true)))
}
