use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use filtered_ends::report::{
    parse_group_spec, parse_word_list, run_job, Format, Job, JobError, ParamOverrides, RunOptions,
    TaskKind,
};

/// Filtered ends of finitely generated groups and of pairs of groups.
#[derive(Parser)]
#[command(name = "filtered-ends", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// End count of a group.
    Ends(Common),
    /// Filtered ends of a pair (G, H).
    PairEnds {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators of H; empty for the trivial subgroup.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Chain checks for K <= H.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        k: Option<String>,
    },
    /// Encode a ball as DOT, or a whole job in any format.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        subgroup: Option<String>,
        /// Ball radius; defaults to nmax.
        #[arg(long)]
        radius: Option<usize>,
        /// Colour the complement of this metric ball by component.
        #[arg(long)]
        level: Option<usize>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Ends(c) => c,
            Command::PairEnds { common, .. }
            | Command::Check { common, .. }
            | Command::Export { common, .. } => common,
        }
    }
}

#[derive(Args)]
struct Common {
    /// TOML job file.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Inline group, e.g. free:2, abelian:3, free:1*abelian:2.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    margin: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    /// Vertex cap per ball.
    #[arg(long)]
    budget: Option<usize>,
    /// json, csv or dot.
    #[arg(long)]
    format: Option<String>,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit timing fields, for byte-comparable output.
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            nmax: self.nmax,
            margin: self.margin,
            window: self.window,
            budget: self.budget,
        }
    }
}

fn load_job(path: &Path) -> Result<Job, JobError> {
    let text = std::fs::read_to_string(path).map_err(|source| JobError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Job::parse(&text)
}

/// Keeps the job tasks the subcommand is about.
fn select(job: &mut Job, keep: impl Fn(&TaskKind) -> bool) {
    job.tasks.retain(|t| keep(&t.kind));
}

fn inline_job(common: &Common) -> Result<Job, JobError> {
    let text = common
        .group
        .as_deref()
        .ok_or_else(|| JobError::Usage("either --job or --group is required".to_string()))?;
    Ok(Job::new(parse_group_spec(text)?))
}

fn build(command: &Command) -> Result<(Job, Option<Format>), JobError> {
    let common = command.common();
    if let Some(path) = &common.job {
        if common.group.is_some() {
            return Err(JobError::Usage("--group conflicts with --job".to_string()));
        }
        let mut job = load_job(path)?;
        match command {
            Command::Ends(_) => select(&mut job, |k| matches!(k, TaskKind::Ends)),
            Command::PairEnds { .. } => {
                select(&mut job, |k| matches!(k, TaskKind::PairEnds { .. }))
            }
            Command::Check { .. } => select(&mut job, |k| {
                matches!(
                    k,
                    TaskKind::CheckCorollary { .. } | TaskKind::CheckMonotonicity { .. }
                )
            }),
            Command::Export { .. } => {}
        }
        return Ok((job, None));
    }

    let mut job = inline_job(common)?;
    let none = ParamOverrides::default();
    match command {
        Command::Ends(_) => job.push(TaskKind::Ends, none)?,
        Command::PairEnds { subgroup, .. } => {
            let spec = parse_word_list(&job.model, subgroup.as_deref().unwrap_or(""))?;
            let h = job.define("H", &spec)?;
            job.push(TaskKind::PairEnds { subgroup: h }, none)?;
        }
        Command::Check { h, k, .. } => {
            let (Some(h), Some(k)) = (h, k) else {
                return Err(JobError::Usage("check needs --h and --k".to_string()));
            };
            let h = job.define("H", &parse_word_list(&job.model, h)?)?;
            let k = job.define("K", &parse_word_list(&job.model, k)?)?;
            job.push(
                TaskKind::CheckCorollary {
                    h: h.clone(),
                    k: k.clone(),
                },
                none,
            )?;
            job.push(TaskKind::CheckMonotonicity { h, k }, none)?;
        }
        Command::Export {
            subgroup,
            radius,
            level,
            ..
        } => {
            let subgroup = match subgroup {
                Some(s) => Some(job.define("H", &parse_word_list(&job.model, s)?)?),
                None => None,
            };
            let kind = TaskKind::ExportDot {
                subgroup,
                radius: *radius,
                level: *level,
            };
            job.push(kind, none)?;
            return Ok((job, Some(Format::Dot)));
        }
    }
    Ok((job, None))
}

fn run(cli: Cli) -> Result<i32, JobError> {
    let (job, fallback) = build(&cli.command)?;
    let common = cli.command.common();
    let format = match &common.format {
        Some(f) => f.parse()?,
        None => job.format.or(fallback).unwrap_or_default(),
    };
    let opts = RunOptions {
        overrides: common.overrides(),
        timing: !common.no_timing,
    };
    let report = run_job(&job, &opts)?;
    let bytes = report.encode(format)?;
    match &common.out {
        Some(path) => std::fs::write(path, bytes).map_err(|source| JobError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{bytes}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            return ExitCode::from(if ok { 0 } else { 64 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
