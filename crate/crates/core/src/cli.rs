//! The `voltspy` command line: `synth`, `attack` and `defend`.
//!
//! Exit codes are 0 on success, 1 for data errors and 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::attacks::{self, canonical_spec, AttackOptions, Flow, Objective, DEFAULT_MAX_ROWS};
use crate::error::{Error, Result};
use crate::learners::ModelKind;
use crate::par;
use crate::shield::{self, DEFAULT_SIZES};
use crate::synthgen::{self, Scale};
use crate::telemetry::read_dataset_dir;

pub const THREADS_ENV: &str = "VOLTSPY_THREADS";
pub const SWEEP_FILE: &str = "sweep.csv";

#[derive(Debug, Parser)]
#[command(name = "voltspy", version, about = "Inference attacks on EV battery traces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a labelled synthetic dataset.
    Synth(SynthArgs),
    /// Run inference attacks on a dataset directory.
    Attack(AttackArgs),
    /// Sweep the mean-aggregation countermeasure over window sizes.
    Defend(DefendArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "desk")]
    pub scale: Scale,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    /// Directory holding samples.csv and labels.csv.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Comma-separated objectives, or `all`.
    #[arg(long, default_value = "all", value_parser = Objective::parse_list)]
    pub objective: std::vec::Vec<Objective>,
    #[arg(long, default_value = "dt,knn,mlp,rf", value_parser = parse_kinds)]
    pub models: std::vec::Vec<ModelKind>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Undersample the training rows to the minority class.
    #[arg(long)]
    pub balance: bool,
    /// Head/tail region fraction for the origin and destination objectives.
    #[arg(long, value_parser = parse_fraction)]
    pub fraction: Option<f64>,
    /// Stratified cap on training rows; 0 disables it.
    #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rows: usize,
}

#[derive(Debug, Args)]
pub struct DefendArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "style")]
    pub objective: Objective,
    /// Comma-separated window sizes in samples.
    #[arg(long, value_parser = parse_sizes)]
    pub sizes: Option<std::vec::Vec<usize>>,
    #[arg(long, default_value = "dt,knn,mlp,rf", value_parser = parse_kinds)]
    pub models: std::vec::Vec<ModelKind>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rows: usize,
}

fn parse_list<T: std::str::FromStr<Err = String>>(s: &str) -> std::result::Result<Vec<T>, String> {
    let items = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect::<std::result::Result<Vec<T>, _>>()?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(items)
}

fn parse_kinds(s: &str) -> std::result::Result<Vec<ModelKind>, String> {
    let mut kinds = parse_list::<ModelKind>(s)?;
    kinds.sort_unstable();
    kinds.dedup();
    Ok(kinds)
}

fn parse_sizes(s: &str) -> std::result::Result<Vec<usize>, String> {
    let sizes: Vec<usize> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad window size `{p}`: {e}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    if sizes.contains(&0) {
        return Err("window sizes must be positive".into());
    }
    Ok(sizes)
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let f: f64 = s.parse().map_err(|e| format!("bad fraction `{s}`: {e}"))?;
    if f > 0.0 && f <= 1.0 {
        Ok(f)
    } else {
        Err(format!("fraction {f} outside (0, 1]"))
    }
}

fn cap(max_rows: usize) -> Option<usize> {
    (max_rows > 0).then_some(max_rows)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    par::init_threads(std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    let mut stdout = std::io::stdout().lock();
    let outcome = match cli.command {
        Command::Synth(a) => synth(&a, &mut stdout),
        Command::Attack(a) => attack(&a, &mut stdout),
        Command::Defend(a) => match check_defend(&a) {
            Ok(()) => defend(&a, &mut stdout),
            Err(msg) => {
                eprintln!("error: {msg}");
                return 2;
            }
        },
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn check_defend(a: &DefendArgs) -> std::result::Result<(), String> {
    if canonical_spec(a.objective).flow != Flow::PerSample {
        return Err(format!(
            "defend needs a per-sample objective (style or vehicle), got `{}`",
            a.objective
        ));
    }
    Ok(())
}

fn say(out: &mut impl Write, line: std::fmt::Arguments) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::io("stdout", e))
}

pub fn synth(a: &SynthArgs, out: &mut impl Write) -> Result<()> {
    let ds = synthgen::synthesize_to_dir(a.scale, a.seed, &a.out)?;
    say(
        out,
        format_args!(
            "wrote {} trips ({} samples) to {}",
            ds.trips.len(),
            ds.total_samples(),
            a.out.display()
        ),
    )
}

pub fn attack(a: &AttackArgs, out: &mut impl Write) -> Result<()> {
    let ds = read_dataset_dir(&a.data)?;
    let opts = AttackOptions {
        kinds: a.models.clone(),
        seed: a.seed,
        balance: a.balance,
        max_rows: cap(a.max_rows),
    };
    let mut results = Vec::new();
    for &objective in &a.objective {
        let mut spec = canonical_spec(objective);
        if let Some(f) = a.fraction {
            spec = spec.with_fraction(f)?;
        }
        let prepared = attacks::prepare(&ds, &spec, &opts)?;
        if a.balance {
            say(
                out,
                format_args!(
                    "{objective}: balanced train histogram {:?}",
                    prepared.fingerprint.train_histogram
                ),
            )?;
        }
        for run in prepared.fit_all(&opts)? {
            let r = run.result;
            say(
                out,
                format_args!(
                    "{objective} {}: accuracy {:.4} macro-F1 {:.4} ({})",
                    r.model_kind, r.report.accuracy, r.report.macro_f1, r.best_params
                ),
            )?;
            results.push(r);
        }
    }
    attacks::write_results(&a.out, &results)
}

pub fn defend(a: &DefendArgs, out: &mut impl Write) -> Result<()> {
    let ds = read_dataset_dir(&a.data)?;
    let opts = AttackOptions {
        kinds: a.models.clone(),
        seed: a.seed,
        balance: false,
        max_rows: cap(a.max_rows),
    };
    let sizes = a.sizes.clone().unwrap_or_else(|| DEFAULT_SIZES.to_vec());
    let result = shield::sweep(&ds, a.objective, &sizes, &opts)?;
    write_sweep(&a.out, &result)?;
    for r in &result.rows {
        say(
            out,
            format_args!("w={:<4} {:<4} accuracy {:.4}", r.window_size, r.model_kind, r.accuracy),
        )?;
    }
    if let (Some(lo), Some(hi)) = (result.accuracy(10, ModelKind::Rf), result.accuracy(100, ModelKind::Rf)) {
        let ratio = if lo > 0.0 { hi / lo } else { f64::NAN };
        say(
            out,
            format_args!("rf accuracy ratio size 100 / size 10: {ratio:.4} ({hi:.4} / {lo:.4})"),
        )?;
    }
    Ok(())
}

fn write_sweep(dir: &Path, result: &shield::SweepResult) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(SWEEP_FILE);
    let file = std::fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    result.write_csv(std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("voltspy").chain(args.iter().copied()))
    }

    #[test]
    fn objective_lists() {
        let cli = parse(&["attack", "--data", "d", "--out", "o", "--objective", "origin,style"]).unwrap();
        let Command::Attack(a) = cli.command else { panic!() };
        assert_eq!(a.objective, vec![Objective::Style, Objective::Origin]);
        assert_eq!(a.models, ModelKind::ALL.to_vec());
        assert_eq!(a.seed, 42);
    }

    #[test]
    fn unknown_objective_is_usage_error() {
        let e = parse(&["attack", "--data", "d", "--out", "o", "--objective", "mood"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(
            run(["voltspy", "attack", "--data", "d", "--out", "o", "--objective", "mood"]),
            2
        );
    }

    #[test]
    fn defend_rejects_catalog_objectives() {
        assert_eq!(
            run([
                "voltspy",
                "defend",
                "--data",
                "d",
                "--out",
                "o",
                "--objective",
                "origin"
            ]),
            2
        );
    }

    #[test]
    fn bad_values() {
        assert!(parse(&["attack", "--data", "d", "--out", "o", "--fraction", "1.5"]).is_err());
        assert!(parse(&["defend", "--data", "d", "--out", "o", "--sizes", "10,0"]).is_err());
        assert!(parse(&["attack", "--data", "d", "--out", "o", "--models", "svm"]).is_err());
        assert!(parse(&["synth", "--out", "o", "--scale", "huge"]).is_err());
    }

    #[test]
    fn missing_data_is_data_error() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nothing");
        let out = dir.path().join("out");
        let code = run([
            "voltspy".into(),
            "attack".into(),
            "--data".into(),
            missing.into_os_string(),
            "--out".into(),
            out.into_os_string(),
        ]);
        assert_eq!(code, 1);
    }
}
