//! Task execution and report encodings.

use std::fmt::Write;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use super::checks::{
    check_corollary, check_monotonicity, classify_with, CorollaryCheck, MonotonicityCheck, Regime,
    Verdict,
};
use super::job::{Format, Job, ParamOverrides, TaskKind};
use super::JobError;
use crate::ends::{group_ends, pair_ends, EndsEstimate, Params};
use crate::error::Error;
use crate::graph::{components, cw_complement, to_dot, Ball, Subgraph};
use crate::groups::{GroupModel, Subgroup};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Applied over every task's own parameters.
    pub overrides: ParamOverrides,
    /// Record wall-clock time. Off for byte-comparable output.
    pub timing: bool,
}

/// One task's outcome. `counts_per_level`, `stabilized` and `value` refer
/// to `e(G,K)` for chain checks.
#[derive(Clone, Debug, Serialize)]
pub struct TaskResult {
    pub task: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    pub counts_per_level: Vec<usize>,
    pub stabilized: bool,
    pub value: Option<usize>,
    /// Counts strictly increase, the signature of infinitely many ends.
    pub increasing: bool,
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EndsEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<CorollaryCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotonicity: Option<MonotonicityCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl TaskResult {
    fn new(task: &str, params: Params) -> TaskResult {
        TaskResult {
            task: task.to_string(),
            params,
            subgroup: None,
            h: None,
            k: None,
            counts_per_level: Vec::new(),
            stabilized: false,
            value: None,
            increasing: false,
            verdict: None,
            regime: None,
            estimate: None,
            corollary: None,
            monotonicity: None,
            dot: None,
            elapsed_ms: None,
        }
    }

    fn with_estimate(mut self, e: &EndsEstimate) -> TaskResult {
        self.counts_per_level = e.counts.clone();
        self.stabilized = e.stabilized;
        self.value = e.value;
        self.increasing = e.increasing;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group: String,
    pub model: GroupModel,
    pub results: Vec<TaskResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    /// 2 if any verdict is VIOLATED, else 3 if any is INCONCLUSIVE, else 0.
    pub fn exit_code(&self) -> i32 {
        let any = |v| self.results.iter().any(|r| r.verdict == Some(v));
        if any(Verdict::Violated) {
            2
        } else if any(Verdict::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per task and level.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("task_index,task,level,count\n");
        for (i, r) in self.results.iter().enumerate() {
            for (level, count) in r.counts_per_level.iter().enumerate() {
                writeln!(out, "{i},{},{level},{count}", r.task).unwrap();
            }
        }
        out
    }

    /// The graphs of all export tasks, one after another.
    pub fn to_dot(&self) -> Result<String, JobError> {
        let graphs: Vec<&str> = self
            .results
            .iter()
            .filter_map(|r| r.dot.as_deref())
            .collect();
        if graphs.is_empty() {
            return Err(JobError::Usage(
                "dot output needs an export-dot task".to_string(),
            ));
        }
        Ok(graphs.concat())
    }

    pub fn encode(&self, format: Format) -> Result<String, JobError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => Ok(self.to_csv()),
            Format::Dot => self.to_dot(),
        }
    }
}

fn elapsed(start: Instant, timing: bool) -> Option<u64> {
    timing.then(|| start.elapsed().as_millis() as u64)
}

/// Runs the tasks of `job` in order.
pub fn run_job(job: &Job, opts: &RunOptions) -> Result<Report, JobError> {
    let start = Instant::now();
    let mut results = Vec::with_capacity(job.tasks.len());
    for task in &job.tasks {
        let t0 = Instant::now();
        let params = opts
            .overrides
            .over(task.overrides)
            .over(job.defaults)
            .resolve();
        let mut r = run_task(&job.model, &task.kind, params)?;
        r.elapsed_ms = elapsed(t0, opts.timing);
        results.push(r);
    }
    Ok(Report {
        group: job.model.to_string(),
        model: job.model.clone(),
        results,
        elapsed_ms: elapsed(start, opts.timing),
    })
}

fn run_task(model: &GroupModel, kind: &TaskKind, params: Params) -> Result<TaskResult, JobError> {
    let name = kind.name();
    let r = match kind {
        TaskKind::Ends => {
            let e = group_ends(model, &params)?;
            let mut r = TaskResult::new(name, params).with_estimate(&e);
            r.verdict = (!e.stabilized).then_some(Verdict::Inconclusive);
            r.estimate = Some(e);
            r
        }
        TaskKind::PairEnds { subgroup } => {
            let e = pair_ends(subgroup, &params)?;
            let mut r = TaskResult::new(name, params).with_estimate(&e);
            r.subgroup = Some(subgroup.label().to_string());
            r.verdict = (!e.stabilized).then_some(Verdict::Inconclusive);
            r.estimate = Some(e);
            r
        }
        TaskKind::CheckCorollary { h, k } => {
            let c = check_corollary(h, k, &params)?;
            let mut r = chain_result(name, params, h, k).with_estimate(&c.e_k);
            r.verdict = Some(c.verdict);
            r.regime = Some(classify_with(h, k, &c.e_h)?);
            r.corollary = Some(c);
            r
        }
        TaskKind::CheckMonotonicity { h, k } => {
            let c = check_monotonicity(h, k, &params)?;
            let mut r = chain_result(name, params, h, k).with_estimate(&c.e_k);
            r.verdict = Some(c.verdict);
            r.regime = Some(classify_with(h, k, &c.e_h)?);
            r.monotonicity = Some(c);
            r
        }
        TaskKind::ExportDot {
            subgroup,
            radius,
            level,
        } => export_dot(model, subgroup.as_ref(), *radius, *level, params)?,
    };
    Ok(r)
}

fn chain_result(name: &str, params: Params, h: &Subgroup, k: &Subgroup) -> TaskResult {
    let mut r = TaskResult::new(name, params);
    r.h = Some(h.label().to_string());
    r.k = Some(k.label().to_string());
    r
}

/// The ball of radius `radius` (default `nmax`), coloured by the
/// components of its complement of the level-`level` metric ball.
fn export_dot(
    model: &GroupModel,
    subgroup: Option<&Arc<Subgroup>>,
    radius: Option<usize>,
    level: Option<usize>,
    params: Params,
) -> Result<TaskResult, JobError> {
    let radius = radius.unwrap_or(params.n_max);
    let (ball, title) = match subgroup {
        Some(h) => (
            Ball::schreier(Arc::clone(h), radius, params.budget)?,
            format!("{model} / {}", h.label()),
        ),
        None => (
            Ball::cayley(model, radius, params.budget)?,
            model.to_string(),
        ),
    };
    let whole = Subgraph::full(&ball);
    let comps = match level {
        Some(l) if l > radius => {
            return Err(Error::DepthExceedsRadius { depth: l, radius }.into());
        }
        Some(l) => components(&cw_complement(&whole, &Subgraph::metric_ball(&ball, l))),
        None => Vec::new(),
    };
    let mut r = TaskResult::new("export-dot", params);
    r.subgroup = subgroup.map(|h| h.label().to_string());
    if level.is_some() {
        r.counts_per_level = vec![comps.iter().filter(|c| c.horizon).count()];
    }
    r.dot = Some(to_dot(&whole, &title, &comps));
    Ok(r)
}
