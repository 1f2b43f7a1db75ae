//! Job files: a group, named subgroups and a task list, in TOML.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use super::JobError;
use crate::ends::Params;
use crate::groups::{GroupModel, Subgroup, SubgroupSpec};

/// Output encoding of a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = JobError;

    fn from_str(s: &str) -> Result<Self, JobError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "dot" => Ok(Format::Dot),
            other => Err(JobError::Usage(format!("unsupported format {other:?}"))),
        }
    }
}

/// Optional parameter overrides. Unset fields fall through to the next
/// layer: command line, then task, then `[defaults]`, then built-in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub nmax: Option<usize>,
    pub margin: Option<usize>,
    pub window: Option<usize>,
    pub budget: Option<usize>,
}

impl ParamOverrides {
    /// Fields of `self` win over those of `below`.
    pub fn over(self, below: ParamOverrides) -> ParamOverrides {
        ParamOverrides {
            nmax: self.nmax.or(below.nmax),
            margin: self.margin.or(below.margin),
            window: self.window.or(below.window),
            budget: self.budget.or(below.budget),
        }
    }

    /// Fills the gaps from [`Params::default`]; the margin defaults to `nmax`.
    pub fn resolve(self) -> Params {
        let d = Params::default();
        let n_max = self.nmax.unwrap_or(d.n_max);
        Params {
            n_max,
            margin: self.margin.unwrap_or(n_max),
            window: self.window.unwrap_or(d.window),
            budget: self.budget.unwrap_or(d.budget),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SubgroupEntry {
    Words(Vec<String>),
    Factors { factors: Vec<Vec<String>> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawTask {
    Ends {
        nmax: Option<usize>,
        margin: Option<usize>,
        window: Option<usize>,
        budget: Option<usize>,
    },
    PairEnds {
        subgroup: String,
        nmax: Option<usize>,
        margin: Option<usize>,
        window: Option<usize>,
        budget: Option<usize>,
    },
    CheckCorollary {
        h: String,
        k: String,
        nmax: Option<usize>,
        margin: Option<usize>,
        window: Option<usize>,
        budget: Option<usize>,
    },
    CheckMonotonicity {
        h: String,
        k: String,
        nmax: Option<usize>,
        margin: Option<usize>,
        window: Option<usize>,
        budget: Option<usize>,
    },
    ExportDot {
        subgroup: Option<String>,
        radius: Option<usize>,
        level: Option<usize>,
        budget: Option<usize>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    group: GroupModel,
    format: Option<Format>,
    #[serde(default)]
    defaults: ParamOverrides,
    #[serde(default)]
    subgroups: BTreeMap<String, SubgroupEntry>,
    #[serde(default)]
    tasks: Vec<RawTask>,
}

/// What a task computes. Subgroups are resolved; parameters are not, so
/// command-line overrides can still apply.
#[derive(Clone, Debug)]
pub enum TaskKind {
    Ends,
    PairEnds {
        subgroup: Arc<Subgroup>,
    },
    CheckCorollary {
        h: Arc<Subgroup>,
        k: Arc<Subgroup>,
    },
    CheckMonotonicity {
        h: Arc<Subgroup>,
        k: Arc<Subgroup>,
    },
    ExportDot {
        subgroup: Option<Arc<Subgroup>>,
        radius: Option<usize>,
        level: Option<usize>,
    },
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Ends => "ends",
            TaskKind::PairEnds { .. } => "pair-ends",
            TaskKind::CheckCorollary { .. } => "check-corollary",
            TaskKind::CheckMonotonicity { .. } => "check-monotonicity",
            TaskKind::ExportDot { .. } => "export-dot",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub kind: TaskKind,
    pub overrides: ParamOverrides,
}

/// A parsed and validated job.
#[derive(Clone, Debug)]
pub struct Job {
    pub model: GroupModel,
    pub subgroups: BTreeMap<String, Arc<Subgroup>>,
    pub tasks: Vec<Task>,
    pub defaults: ParamOverrides,
    pub format: Option<Format>,
}

impl Job {
    /// A job with no subgroups and no tasks.
    pub fn new(model: GroupModel) -> Job {
        Job {
            model,
            subgroups: BTreeMap::new(),
            tasks: Vec::new(),
            defaults: ParamOverrides::default(),
            format: None,
        }
    }

    /// Parses and validates TOML job text.
    pub fn parse(text: &str) -> Result<Job, JobError> {
        let raw: RawJob = toml::from_str(text).map_err(|e| JobError::Parse(e.to_string()))?;
        let model = raw.group.validated().map_err(JobError::Validation)?;

        let mut subgroups = BTreeMap::new();
        for (name, entry) in raw.subgroups {
            let spec = subgroup_spec(&model, &entry).map_err(JobError::Validation)?;
            let h = Subgroup::new(&model, &spec)
                .map_err(JobError::Validation)?
                .named(name.clone());
            subgroups.insert(name, Arc::new(h));
        }

        let mut job = Job {
            model,
            subgroups,
            tasks: Vec::new(),
            defaults: raw.defaults,
            format: raw.format,
        };
        for (i, t) in raw.tasks.into_iter().enumerate() {
            let task = job.resolve_task(t).map_err(|e| match e {
                JobError::Undefined(msg) => JobError::Undefined(format!("task {i}: {msg}")),
                other => other,
            })?;
            job.tasks.push(task);
        }
        Ok(job)
    }

    /// Adds a subgroup under `name`, replacing any previous one.
    pub fn define(&mut self, name: &str, spec: &SubgroupSpec) -> Result<Arc<Subgroup>, JobError> {
        let h = Arc::new(
            Subgroup::new(&self.model, spec)
                .map_err(JobError::Validation)?
                .named(name),
        );
        self.subgroups.insert(name.to_string(), Arc::clone(&h));
        Ok(h)
    }

    pub fn subgroup(&self, name: &str) -> Result<Arc<Subgroup>, JobError> {
        self.subgroups
            .get(name)
            .cloned()
            .ok_or_else(|| JobError::Undefined(format!("subgroup {name:?} is not defined")))
    }

    /// Appends a task after checking its chain hypothesis, if any.
    pub fn push(&mut self, kind: TaskKind, overrides: ParamOverrides) -> Result<(), JobError> {
        self.check_chain(&kind)?;
        self.tasks.push(Task { kind, overrides });
        Ok(())
    }

    /// Chain tasks need `K <= H`, checked by membership of K's generators.
    fn check_chain(&self, kind: &TaskKind) -> Result<(), JobError> {
        if let TaskKind::CheckCorollary { h, k } | TaskKind::CheckMonotonicity { h, k } = kind {
            if let Some(w) = h.first_non_member(k).map_err(JobError::Validation)? {
                return Err(JobError::Compute(crate::Error::ChainViolation {
                    inner: k.label().to_string(),
                    outer: h.label().to_string(),
                    word: self.model.render(&w),
                }));
            }
        }
        Ok(())
    }

    fn resolve_task(&self, t: RawTask) -> Result<Task, JobError> {
        let ov = |nmax, margin, window, budget| ParamOverrides {
            nmax,
            margin,
            window,
            budget,
        };
        let (kind, overrides) = match t {
            RawTask::Ends {
                nmax,
                margin,
                window,
                budget,
            } => (TaskKind::Ends, ov(nmax, margin, window, budget)),
            RawTask::PairEnds {
                subgroup,
                nmax,
                margin,
                window,
                budget,
            } => (
                TaskKind::PairEnds {
                    subgroup: self.subgroup(&subgroup)?,
                },
                ov(nmax, margin, window, budget),
            ),
            RawTask::CheckCorollary {
                h,
                k,
                nmax,
                margin,
                window,
                budget,
            } => (
                TaskKind::CheckCorollary {
                    h: self.subgroup(&h)?,
                    k: self.subgroup(&k)?,
                },
                ov(nmax, margin, window, budget),
            ),
            RawTask::CheckMonotonicity {
                h,
                k,
                nmax,
                margin,
                window,
                budget,
            } => (
                TaskKind::CheckMonotonicity {
                    h: self.subgroup(&h)?,
                    k: self.subgroup(&k)?,
                },
                ov(nmax, margin, window, budget),
            ),
            RawTask::ExportDot {
                subgroup,
                radius,
                level,
                budget,
            } => (
                TaskKind::ExportDot {
                    subgroup: subgroup.map(|s| self.subgroup(&s)).transpose()?,
                    radius,
                    level,
                },
                ov(None, None, None, budget),
            ),
        };
        self.check_chain(&kind)?;
        Ok(Task { kind, overrides })
    }
}

fn subgroup_spec(model: &GroupModel, entry: &SubgroupEntry) -> crate::Result<SubgroupSpec> {
    match entry {
        SubgroupEntry::Words(words) => {
            let words: Vec<&str> = words.iter().map(String::as_str).collect();
            SubgroupSpec::parse(model, &words)
        }
        SubgroupEntry::Factors { factors } => {
            let parsed = factors
                .iter()
                .map(|list| list.iter().map(|w| model.parse_word(w)).collect())
                .collect::<crate::Result<Vec<Vec<_>>>>()?;
            SubgroupSpec::from_factors(model, parsed)
        }
    }
}

/// Parses a compact group description: `free:2`, `abelian:3`, or factors
/// joined by `*` such as `free:1*abelian:2`.
pub fn parse_group_spec(text: &str) -> Result<GroupModel, JobError> {
    let factor = |part: &str| -> Result<GroupModel, JobError> {
        let bad = || {
            JobError::Usage(format!(
                "cannot read group {part:?}; expected free:N or abelian:N"
            ))
        };
        let (family, rank) = part.trim().split_once(':').ok_or_else(bad)?;
        let rank: usize = rank.trim().parse().map_err(|_| bad())?;
        match family.trim() {
            "free" | "f" => Ok(GroupModel::Free { rank }),
            "abelian" | "free_abelian" | "z" => Ok(GroupModel::FreeAbelian { rank }),
            _ => Err(bad()),
        }
    };
    let parts: Vec<GroupModel> = text.split('*').map(factor).collect::<Result<_, _>>()?;
    let model = if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        GroupModel::Product { factors: parts }
    };
    model.validated().map_err(JobError::Validation)
}

/// Splits a comma-separated generator list. Blank input is the trivial
/// subgroup.
pub fn parse_word_list(model: &GroupModel, text: &str) -> Result<SubgroupSpec, JobError> {
    let words: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .collect();
    SubgroupSpec::parse(model, &words).map_err(JobError::Validation)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"
format = "json"

[group]
family = "free_abelian"
rank = 3

[defaults]
nmax = 4

[subgroups]
H = ["x", "y"]
K = ["x"]
T = []

[[tasks]]
kind = "ends"
nmax = 3

[[tasks]]
kind = "pair-ends"
subgroup = "H"

[[tasks]]
kind = "check-corollary"
h = "H"
k = "K"

[[tasks]]
kind = "export-dot"
radius = 2
"#;

    #[test]
    fn parses_full_job() {
        let job = Job::parse(CHAIN).unwrap();
        assert_eq!(job.model, GroupModel::FreeAbelian { rank: 3 });
        assert_eq!(job.format, Some(Format::Json));
        assert_eq!(job.subgroups.len(), 3);
        assert!(job.subgroups["T"].is_trivial());
        assert_eq!(job.subgroups["H"].label(), "H");
        let names: Vec<&str> = job.tasks.iter().map(|t| t.kind.name()).collect();
        assert_eq!(
            names,
            ["ends", "pair-ends", "check-corollary", "export-dot"]
        );
        let p = job.tasks[0].overrides.over(job.defaults).resolve();
        assert_eq!((p.n_max, p.margin, p.window), (3, 3, 3));
        let p = job.tasks[1].overrides.over(job.defaults).resolve();
        assert_eq!(p.n_max, 4);
    }

    #[test]
    fn product_subgroups() {
        let text = r#"
[group]
family = "product"
factors = [{ family = "free", rank = 2 }, { family = "free_abelian", rank = 1 }]

[subgroups]
P = { factors = [["a"], ["c c"]] }
"#;
        let job = Job::parse(text).unwrap();
        assert_eq!(job.subgroups["P"].generators().len(), 2);

        let mixed = text.replace(r#"["a"], ["c c"]"#, r#"["a c"], []"#);
        assert!(matches!(Job::parse(&mixed), Err(JobError::Validation(_))));
    }

    #[test]
    fn undefined_subgroup() {
        let text = "[group]\nfamily = \"free\"\nrank = 2\n[[tasks]]\nkind = \"pair-ends\"\nsubgroup = \"H\"\n";
        let err = Job::parse(text).unwrap_err();
        assert!(matches!(err, JobError::Undefined(_)));
        assert_eq!(err.exit_code(), 66);
    }

    #[test]
    fn chain_is_validated() {
        let text = r#"
[group]
family = "free_abelian"
rank = 2
[subgroups]
H = ["x"]
K = ["y"]
[[tasks]]
kind = "check-monotonicity"
h = "H"
k = "K"
"#;
        let err = Job::parse(text).unwrap_err();
        assert!(matches!(
            err,
            JobError::Compute(crate::Error::ChainViolation { .. })
        ));
        assert_eq!(err.exit_code(), 67);
    }

    #[test]
    fn syntax_errors() {
        for text in [
            "[group\nfamily = 1",
            "[group]\nfamily = \"cyclic\"\nrank = 2",
            "[group]\nfamily = \"free\"\nrank = 2\n[[tasks]]\nkind = \"solve\"",
            "format = \"png\"\n[group]\nfamily = \"free\"\nrank = 2",
            "[group]\nfamily = \"free\"\nrank = 2\ncolour = 1",
        ] {
            let err = Job::parse(text).unwrap_err();
            assert!(matches!(err, JobError::Parse(_)), "{text}: {err}");
            assert_eq!(err.exit_code(), 65);
        }
        let err = Job::parse("[group]\nfamily = \"free\"\nrank = 0").unwrap_err();
        assert!(matches!(err, JobError::Validation(_)));
    }

    #[test]
    fn bad_word_in_subgroup() {
        let text = "[group]\nfamily = \"free\"\nrank = 2\n[subgroups]\nH = [\"a q\"]\n";
        assert!(matches!(Job::parse(text), Err(JobError::Validation(_))));
    }

    #[test]
    fn group_specs() {
        assert_eq!(
            parse_group_spec("free:2").unwrap(),
            GroupModel::Free { rank: 2 }
        );
        assert_eq!(
            parse_group_spec("abelian:3").unwrap(),
            GroupModel::FreeAbelian { rank: 3 }
        );
        assert_eq!(
            parse_group_spec("free:1 * abelian:2").unwrap(),
            GroupModel::Product {
                factors: vec![
                    GroupModel::Free { rank: 1 },
                    GroupModel::FreeAbelian { rank: 2 }
                ]
            }
        );
        assert!(parse_group_spec("free").is_err());
        assert!(parse_group_spec("heisenberg:3").is_err());
        assert!(parse_group_spec("free:0").is_err());
    }

    #[test]
    fn word_lists() {
        let m = GroupModel::FreeAbelian { rank: 2 };
        assert_eq!(parse_word_list(&m, "x, y y").unwrap().generators.len(), 2);
        assert!(parse_word_list(&m, "").unwrap().generators.is_empty());
        assert!(parse_word_list(&m, "x, q").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("png".parse::<Format>().is_err());
    }
}
