//! Executes the tasks of a session and writes their artifacts.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use torhilbert_core::fit::fit_bivariate;
use torhilbert_core::harness::{
    check_corollary7, check_corollary8, check_prop10, check_theorem6, check_theorem9, remark_fixtures, Budgets,
    Fixture, TheoremReport,
};
use torhilbert_core::homology::{check_prop5, image_stabilization, tor_length};
use torhilbert_core::sampler::{sample_diagonal, sample_grid, sample_mixed, Ranges};
use torhilbert_core::{certify, Length};

use crate::explain::explain;
use crate::session::{Session, Task, TaskKind};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Output directory; wins over the session's `out` statement.
    pub out: Option<PathBuf>,
    pub parallel: bool,
    pub certify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check contradicted its prediction.
    Refuted,
    Failed,
}

#[derive(Clone, Debug)]
pub struct TaskOutcome {
    pub index: usize,
    pub line: usize,
    pub kind: TaskKind,
    pub status: Status,
    /// Short verdict or error text.
    pub summary: String,
    pub artifacts: Vec<PathBuf>,
    /// The JSON document written for the task, if any.
    pub report: Option<Value>,
}

#[derive(Clone, Debug, Default)]
pub struct RunSummary {
    pub outcomes: Vec<TaskOutcome>,
}

impl RunSummary {
    /// 0 on success, 3 if any check was refuted, otherwise 1 if a task failed.
    pub fn exit_code(&self) -> i32 {
        if self.outcomes.iter().any(|o| o.status == Status::Refuted) {
            3
        } else if self.outcomes.iter().any(|o| o.status == Status::Failed) {
            1
        } else {
            0
        }
    }
}

pub const DEFAULT_OUT: &str = "torhilbert-out";

struct Produced {
    status: Status,
    summary: String,
    report: Option<Value>,
    files: Vec<(&'static str, String)>,
}

impl Produced {
    fn ok(summary: impl Into<String>) -> Produced {
        Produced { status: Status::Ok, summary: summary.into(), report: None, files: Vec::new() }
    }
}

fn envelope(task: &Task, body: impl Serialize) -> Value {
    let mut v = json!({ "task": task.kind.name(), "line": task.line });
    if let (Value::Object(head), Ok(Value::Object(rest))) = (&mut v, serde_json::to_value(body)) {
        head.extend(rest);
    }
    v
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn fixture(task: &Task) -> Fixture {
    let m = task.m.as_ref().expect("M checked at load");
    let n = task.n.as_ref().expect("N checked at load");
    let ii = task.ii.as_ref().expect("I checked at load");
    let jj = task.jj.as_ref().unwrap_or(ii);
    let label = format!("line {}: M={} N={} I={} J={}", task.line, m.name, n.name, ii.name, jj.name);
    Fixture::new(label, task.i, m.value.clone(), n.value.clone(), ii.value.clone(), jj.value.clone())
}

fn budgets(task: &Task, parallel: bool) -> Result<Budgets, String> {
    let default_hi = if task.kind == TaskKind::Theorem9 { 6 } else { 8 };
    let n = task.n_range.unwrap_or((1, default_hi));
    let m = task.m_range.unwrap_or((1, default_hi));
    let grid = Ranges::new(n, m).map_err(|e| e.to_string())?;
    Ok(Budgets {
        grid,
        diagonal: task.n_range.unwrap_or((1, 10)),
        max_degree: task.max_degree,
        parallel,
        ..Budgets::default()
    })
}

fn theorem_output(task: &Task, rep: &TheoremReport) -> Produced {
    let report = envelope(task, rep);
    let mut files = vec![("json", pretty(&report)), ("txt", explain(&report))];
    if let Some(t) = &rep.table {
        files.push(("csv", t.to_csv()));
    } else if let Some(s) = &rep.series {
        files.push(("csv", s.to_csv()));
    }
    let status = if rep.is_refuted() { Status::Refuted } else { Status::Ok };
    Produced { status, summary: rep.conclusion.to_string(), report: Some(report), files }
}

fn execute(task: &Task, session: &Session, parallel: bool) -> Result<Produced, String> {
    let b = budgets(task, parallel)?;
    let err = |e: torhilbert_core::Error| e.to_string();
    Ok(match task.kind {
        TaskKind::Sample | TaskKind::Mixed => {
            let fx = fixture(task);
            let table = if task.kind == TaskKind::Sample {
                sample_grid(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, parallel)
            } else {
                sample_mixed(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, parallel)
            };
            let mut p = Produced::ok(format!("{} cells", table.values.iter().map(Vec::len).sum::<usize>()));
            p.files.push(("csv", table.to_csv()));
            p
        }
        TaskKind::Diagonal => {
            let fx = fixture(task);
            let series = sample_diagonal(fx.i, &fx.m, &fx.n, &fx.ii, b.diagonal, parallel);
            let mut p = Produced::ok(format!("{} values", series.values.len()));
            p.files.push(("csv", series.to_csv()));
            p
        }
        TaskKind::Fit => {
            let fx = fixture(task);
            let d = match b.max_degree {
                Some(d) => d,
                None => fx.default_max_degree().map_err(err)?,
            };
            let table = sample_grid(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, parallel);
            let fit = fit_bivariate(&table, d, &b.onsets);
            let report = envelope(task, json!({ "fixture": fx.info(), "fit": fit }));
            let mut p = Produced::ok(fit.verdict.to_string());
            p.files = vec![("json", pretty(&report)), ("txt", explain(&report)), ("csv", table.to_csv())];
            p.report = Some(report);
            p
        }
        TaskKind::Theorem6 => theorem_output(task, &check_theorem6(&fixture(task), &b).map_err(err)?),
        TaskKind::Corollary7 => theorem_output(task, &check_corollary7(&fixture(task), &b).map_err(err)?),
        TaskKind::Corollary8 => theorem_output(task, &check_corollary8(&fixture(task), &b).map_err(err)?),
        TaskKind::Theorem9 => theorem_output(task, &check_theorem9(&fixture(task), &b).map_err(err)?),
        TaskKind::Prop10 => theorem_output(task, &check_prop10(&fixture(task), &b).map_err(err)?),
        TaskKind::Prop5 => {
            let fx = fixture(task);
            let budget = task.budget.unwrap_or(8);
            let rep = check_prop5(fx.i, &fx.ii, &fx.m, &fx.n, budget).map_err(err)?;
            let report = envelope(task, json!({ "fixture": fx.info(), "prop5": rep }));
            let status = if rep.agree { Status::Ok } else { Status::Refuted };
            let summary = if rep.agree { "conditions agree" } else { "conditions disagree" };
            Produced {
                status,
                summary: summary.into(),
                files: vec![("json", pretty(&report)), ("txt", explain(&report))],
                report: Some(report),
            }
        }
        TaskKind::Stabilize => {
            let fx = fixture(task);
            let st =
                image_stabilization(fx.i, &fx.ii, &fx.m, &fx.n, task.budget.unwrap_or(4), task.window.unwrap_or(4));
            let summary = match st.k {
                Some(k) => format!("stable from k={k}"),
                None => "no onset within budget".into(),
            };
            let report = envelope(task, json!({ "fixture": fx.info(), "stabilization": st }));
            let mut p = Produced::ok(summary);
            p.files = vec![("json", pretty(&report)), ("txt", explain(&report))];
            p.report = Some(report);
            p
        }
        TaskKind::Tor => {
            let m = task.m.as_ref().expect("M checked at load");
            let n = task.n.as_ref().expect("N checked at load");
            let rows: Vec<Value> = (0..=task.i as i64)
                .map(|j| {
                    let ab: Length = tor_length(j, &m.value, &n.value);
                    let ba: Length = tor_length(j, &n.value, &m.value);
                    json!({ "i": j, "forward": ab, "backward": ba, "equal": ab == ba })
                })
                .collect();
            let symmetric = rows.iter().all(|r| r["equal"] == Value::Bool(true));
            let report = envelope(
                task,
                json!({ "M": m.value.describe(), "N": n.value.describe(), "lengths": rows, "symmetric": symmetric }),
            );
            Produced {
                status: if symmetric { Status::Ok } else { Status::Refuted },
                summary: if symmetric { "symmetric" } else { "asymmetric" }.into(),
                files: vec![("json", pretty(&report)), ("txt", explain(&report))],
                report: Some(report),
            }
        }
        TaskKind::Remark => {
            let reports = remark_fixtures(&session.ring, &b).map_err(err)?;
            let refuted = reports.iter().any(TheoremReport::is_refuted);
            let report = envelope(task, json!({ "reports": reports }));
            Produced {
                status: if refuted { Status::Refuted } else { Status::Ok },
                summary: reports.iter().map(|r| r.conclusion.to_string()).collect::<Vec<_>>().join(", "),
                files: vec![("json", pretty(&report)), ("txt", explain(&report))],
                report: Some(report),
            }
        }
    })
}

fn write_files(
    dir: &Path,
    index: usize,
    task: &Task,
    files: &[(&'static str, String)],
) -> Result<Vec<PathBuf>, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let mut out = Vec::new();
    for (ext, contents) in files {
        let path = dir.join(format!("{index:02}_{}.{ext}", task.kind.name()));
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        out.push(path);
    }
    Ok(out)
}

/// Runs every task in order. Engine panics are caught and reported as task
/// failures.
pub fn run(session: &Session, opts: &RunOptions) -> RunSummary {
    if opts.certify {
        certify::enable();
    }
    let dir = opts
        .out
        .clone()
        .or_else(|| session.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let mut summary = RunSummary::default();
    for (k, task) in session.tasks.iter().enumerate() {
        let index = k + 1;
        let result = catch_unwind(AssertUnwindSafe(|| execute(task, session, opts.parallel))).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "engine panic".into());
            Err(format!("internal error: {msg}"))
        });
        let outcome = match result.and_then(|p| {
            let artifacts = write_files(&dir, index, task, &p.files)?;
            Ok((p, artifacts))
        }) {
            Ok((p, artifacts)) => TaskOutcome {
                index,
                line: task.line,
                kind: task.kind,
                status: p.status,
                summary: p.summary,
                artifacts,
                report: p.report,
            },
            Err(message) => TaskOutcome {
                index,
                line: task.line,
                kind: task.kind,
                status: Status::Failed,
                summary: message,
                artifacts: Vec::new(),
                report: None,
            },
        };
        summary.outcomes.push(outcome);
    }
    if opts.certify {
        certify::disable();
    }
    summary
}
