//! The `llt` command line tool.
//!
//! Every subcommand writes its effective configuration (defaults and the
//! resolved seed included) to a sidecar next to its output: `<out>.config`
//! for file outputs, `<out>/config.txt` for `experiment`.
//!
//! Exit codes: 0 success, 1 user or data error, 2 numerical failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classify::{abs_mean_classify, prediction_accuracy, predictions_csv};
use crate::dataset::{fmt_f64, scan_dataset, Dataset};
use crate::error::{Error, Result};
use crate::experiment::{run_experiment_on, ExperimentConfig};
use crate::law::EmbeddingConfig;
use crate::split::{split, SplitPlan};
use crate::transform::{train_laws, transform_test, LawBank, SelectCriterion, TransformedTable};
use crate::ucr::convert_ucr;
use crate::with_workers;

#[derive(Debug, Parser)]
#[command(name = "llt", version, about = "Linear law-based feature space transformation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge a UCR train/test pair into a dataset directory
    Convert {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Split a dataset into training and test instances
    Split {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        test_ratio: f64,
        /// Drawn from entropy (and recorded) when omitted
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the law bank of the training instances
    Laws {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        lag: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Transform the test instances with a law bank
    Transform {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        laws: PathBuf,
        #[arg(long, default_value = "rank")]
        select: SelectCriterion,
        /// Defaults to the lag recorded next to the law bank, else 1
        #[arg(long)]
        lag: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Classify a transformed table by smallest mean absolute response
    Classify {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Repeat split, laws, transform and classify over a ladder of seeds
    Experiment {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        lag: usize,
        #[arg(long)]
        test_ratio: f64,
        #[arg(long, default_value = "rank")]
        select: SelectCriterion,
        #[arg(long)]
        repeats: usize,
        /// Base seed; run r uses seed + r
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(msg) => {
            println!("{msg}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        2
    } else {
        1
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(OsString::from).unwrap_or_default();
    name.push(".config");
    out.with_file_name(name)
}

fn write_file(path: &Path, body: impl AsRef<[u8]>) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::io(path, e))
}

fn write_config(path: &Path, command: &str, entries: &[(&str, String)]) -> Result<()> {
    let mut out = format!("command={command}\n");
    for (k, v) in entries {
        let _ = writeln!(out, "{k}={v}");
    }
    write_file(path, out)
}

fn read_config_value(path: &Path, key: &str) -> Result<Option<String>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text
        .lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('=').map(str::to_owned)))
}

fn workers_str(w: Option<usize>) -> String {
    w.map_or_else(|| "auto".to_owned(), |n| n.to_string())
}

fn load(data: &Path, plan: &Path) -> Result<(Dataset, SplitPlan)> {
    let dataset = Dataset::open(data)?;
    let plan = SplitPlan::read(plan)?.validated(dataset.index())?;
    Ok((dataset, plan))
}

/// Resolves the transform lag from the flag and the law bank's sidecar.
fn resolve_lag(flag: Option<usize>, laws: &Path) -> Result<usize> {
    let recorded = read_config_value(&sidecar_path(laws), "lag")?
        .map(|v| {
            v.parse::<usize>()
                .map_err(|_| Error::InvalidConfig(format!("bad lag {v:?} in law bank config")))
        })
        .transpose()?;
    match (flag, recorded) {
        (Some(f), Some(r)) if f != r => Err(Error::InvalidConfig(format!(
            "--lag {f} differs from the lag {r} the laws were trained with"
        ))),
        (Some(f), _) => Ok(f),
        (None, Some(r)) => Ok(r),
        (None, None) => Ok(1),
    }
}

fn execute(command: Command) -> Result<String> {
    match command {
        Command::Convert { train, test, out } => {
            let index = convert_ucr(&train, &test, &out)?;
            write_config(
                &out.join("convert.config"),
                "convert",
                &[
                    ("train", train.display().to_string()),
                    ("test", test.display().to_string()),
                    ("out", out.display().to_string()),
                ],
            )?;
            Ok(format!(
                "{} instances, {} classes",
                index.num_instances(),
                index.num_classes()
            ))
        }
        Command::Split {
            data,
            test_ratio,
            seed,
            out,
        } => {
            let index = scan_dataset(&data)?;
            let plan = split(&index, test_ratio, seed)?;
            plan.write(&out)?;
            let seed = plan.seed.expect("generated plans record their seed");
            write_config(
                &sidecar_path(&out),
                "split",
                &[
                    ("data", data.display().to_string()),
                    ("test_ratio", fmt_f64(test_ratio)),
                    ("seed", seed.to_string()),
                    ("out", out.display().to_string()),
                ],
            )?;
            Ok(format!(
                "{} train, {} test instances (seed {seed})",
                plan.tau(),
                plan.num_test()
            ))
        }
        Command::Laws {
            data,
            plan,
            dim,
            lag,
            out,
            workers,
        } => {
            let config = EmbeddingConfig::new(dim, lag)?;
            let (dataset, split_plan) = load(&data, &plan)?;
            let bank = with_workers(workers, || train_laws(&dataset, &split_plan, config))??;
            bank.write_csv(&out)?;
            write_config(
                &sidecar_path(&out),
                "laws",
                &[
                    ("data", data.display().to_string()),
                    ("plan", plan.display().to_string()),
                    ("dim", dim.to_string()),
                    ("lag", lag.to_string()),
                    ("out", out.display().to_string()),
                    ("workers", workers_str(workers)),
                ],
            )?;
            Ok(format!(
                "{} laws ({} training instances x {} features)",
                bank.len(),
                split_plan.tau(),
                dataset.index().num_features()
            ))
        }
        Command::Transform {
            data,
            plan,
            laws,
            select,
            lag,
            out,
            workers,
        } => {
            let lag = resolve_lag(lag, &laws)?;
            let (dataset, split_plan) = load(&data, &plan)?;
            let bank = LawBank::read_csv(&laws, lag, Some(&dataset.index().classes))?;
            let table =
                with_workers(workers, || transform_test(&dataset, &split_plan, &bank, select))??;
            table.write_csv(&out)?;
            let mut sel_name = out.file_name().map(OsString::from).unwrap_or_default();
            sel_name.push(".selections.csv");
            write_file(&out.with_file_name(sel_name), table.selections_csv()?)?;
            write_config(
                &sidecar_path(&out),
                "transform",
                &[
                    ("data", data.display().to_string()),
                    ("plan", plan.display().to_string()),
                    ("laws", laws.display().to_string()),
                    ("dim", bank.config().dim().to_string()),
                    ("lag", lag.to_string()),
                    ("select", select.to_string()),
                    ("out", out.display().to_string()),
                    ("workers", workers_str(workers)),
                ],
            )?;
            Ok(format!(
                "{} rows x {} columns ({} law columns + label)",
                table.num_rows(),
                table.num_numeric_columns(),
                table.columns.len()
            ))
        }
        Command::Classify { table, out } => {
            let t = TransformedTable::read_csv(&table)?;
            let predictions = abs_mean_classify(&t)?;
            let acc = prediction_accuracy(&predictions)?;
            write_file(&out, predictions_csv(&predictions)?)?;
            write_config(
                &sidecar_path(&out),
                "classify",
                &[
                    ("table", table.display().to_string()),
                    ("out", out.display().to_string()),
                ],
            )?;
            Ok(format!(
                "{} instances, accuracy {}",
                predictions.len(),
                fmt_f64(acc)
            ))
        }
        Command::Experiment {
            data,
            dim,
            lag,
            test_ratio,
            select,
            repeats,
            seed,
            out,
            workers,
        } => {
            let cfg = ExperimentConfig {
                data: data.clone(),
                dim,
                lag,
                test_ratio,
                criterion: select,
                repeats,
                base_seed: seed,
            };
            let dataset = Dataset::open(&data)?;
            let summary = with_workers(workers, || run_experiment_on(&dataset, &cfg))??;
            summary.write_to(&out)?;
            write_config(
                &out.join("config.txt"),
                "experiment",
                &[
                    ("data", data.display().to_string()),
                    ("dim", dim.to_string()),
                    ("lag", lag.to_string()),
                    ("test_ratio", fmt_f64(test_ratio)),
                    ("select", select.to_string()),
                    ("repeats", repeats.to_string()),
                    ("seed", seed.to_string()),
                    ("out", out.display().to_string()),
                    ("workers", workers_str(workers)),
                ],
            )?;
            Ok(format!(
                "mean accuracy {:.5}, std {:.5}{} over {} runs",
                summary.mean,
                summary.std,
                if summary.std_defined { "" } else { " (undefined)" },
                summary.runs.len()
            ))
        }
    }
}
