//! Batch verification: group files in, reports out.
//!
//! Exit codes used by the command-line front end: 0 clean, 1 usage or
//! input error, 2 theorem violation, 3 internal invariant failure
//! (including a pinned `expected` value that no longer matches).

pub mod files;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::chartab::{character_table_with, CharacterTable, TableError, TableOptions, DEFAULT_SPLIT_ATTEMPTS};
use crate::classes::conjugacy_data;
use crate::group::{GroupError, DEFAULT_ORDER_CAP};
use crate::structure::{is_nilpotent, is_solvable, sylow_tower};

pub use files::{load_group_file, load_table, table_json, Expected, GroupFile, TableDocument};
pub use report::{EntryRecord, Flags, Mismatch, Statistics, ThetaReport, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: cannot parse group file: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("{}: malformed table document: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("{}: table rejected: {source}", path.display())]
    Rejected { path: PathBuf, source: TableError },
    #[error("{}: {source}", path.display())]
    Group { path: PathBuf, source: GroupError },
    #[error("{}: character table computation failed: {source}", path.display())]
    Table { path: PathBuf, source: TableError },
}

impl HarnessError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Table { .. } => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub jobs: usize,
    pub max_order: usize,
    pub format: OutputFormat,
    pub seed: u64,
    pub fail_fast: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_order: DEFAULT_ORDER_CAP,
            format: OutputFormat::Text,
            seed: 0,
            fail_fast: false,
        }
    }
}

impl RunConfig {
    fn table_options(&self) -> TableOptions {
        TableOptions {
            seed: self.seed,
            max_split_attempts: DEFAULT_SPLIT_ATTEMPTS,
        }
    }
}

/// Group, table and flags for an in-memory group file. `path` is only used
/// in error messages.
pub fn analyze_group(file: &GroupFile, path: &Path, config: &RunConfig) -> Result<ThetaReport, HarnessError> {
    let group = file.build(config.max_order).map_err(|source| HarnessError::Group {
        path: path.to_path_buf(),
        source,
    })?;
    let data = conjugacy_data(&group);
    let table = character_table_with(&group, &data, config.table_options()).map_err(|source| {
        HarnessError::Table {
            path: path.to_path_buf(),
            source,
        }
    })?;
    let (statistics, stats) = Statistics::from_table(&table);
    let tower = sylow_tower(&group);
    let flags = Flags {
        nilpotent: Some(is_nilpotent(&group)),
        sylow_series: Some(tower.is_some()),
        sylow_tower: tower,
        solvable: Some(is_solvable(&group)),
        circle_avoiding: stats.circle_avoiding,
    };
    let mut report = ThetaReport {
        group_name: file.name.clone(),
        seed: Some(config.seed),
        flags,
        statistics,
        expected_mismatches: Vec::new(),
    };
    if let Some(expected) = &file.expected {
        report.expected_mismatches = compare_expected(expected, &report);
    }
    Ok(report)
}

pub fn cmd_analyze(path: &Path, config: &RunConfig) -> Result<ThetaReport, HarnessError> {
    analyze_group(&load_group_file(path)?, path, config)
}

pub fn cmd_table(path: &Path, config: &RunConfig) -> Result<CharacterTable, HarnessError> {
    let file = load_group_file(path)?;
    let group = file.build(config.max_order).map_err(|source| HarnessError::Group {
        path: path.to_path_buf(),
        source,
    })?;
    character_table_with(&group, &conjugacy_data(&group), config.table_options()).map_err(|source| {
        HarnessError::Table {
            path: path.to_path_buf(),
            source,
        }
    })
}

/// Statistics of an external table. The name is the file name without
/// `.json` and `.table`.
pub fn cmd_check_table(path: &Path) -> Result<ThetaReport, HarnessError> {
    let table = load_table(path)?;
    let (statistics, stats) = Statistics::from_table(&table);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = name.strip_suffix(".json").unwrap_or(&name);
    let name = name.strip_suffix(".table").unwrap_or(name).to_string();
    Ok(ThetaReport {
        group_name: name,
        seed: None,
        flags: Flags {
            nilpotent: None,
            sylow_series: None,
            sylow_tower: None,
            solvable: None,
            circle_avoiding: stats.circle_avoiding,
        },
        statistics,
        expected_mismatches: Vec::new(),
    })
}

/// Analyzes every `*.json` file directly inside `dir`, in parallel on
/// `config.jobs` threads. Entries are reported sorted by group name.
/// Per-entry failures are recorded; with `fail_fast`, entries not yet
/// started after the first failure are skipped.
pub fn cmd_verify(dir: &Path, config: &RunConfig) -> Result<VerifyReport, HarnessError> {
    let io = |source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }

    let mut parsed: Vec<(String, PathBuf, Result<GroupFile, HarnessError>)> = paths
        .into_iter()
        .map(|p| {
            let file_name = p.file_name().unwrap().to_string_lossy().into_owned();
            let loaded = load_group_file(&p);
            (file_name, p, loaded)
        })
        .collect();
    let key = |(f, _, g): &(String, PathBuf, Result<GroupFile, HarnessError>)| {
        (g.as_ref().map_or_else(|_| f.clone(), |g| g.name.clone()), f.clone())
    };
    parsed.sort_by_key(key);
    let mut seen = std::collections::BTreeMap::new();
    for (_, _, g) in &parsed {
        if let Ok(g) = g {
            *seen.entry(g.name.clone()).or_insert(0) += 1;
        }
    }
    for (_, path, g) in &mut parsed {
        let duplicate = match g {
            Ok(g) if seen[&g.name] > 1 => g.name.clone(),
            _ => continue,
        };
        *g = Err(HarnessError::Parse {
            path: path.clone(),
            message: format!("group name {duplicate:?} is used by more than one file"),
        });
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    let stop = AtomicBool::new(false);
    let results: Vec<(EntryRecord, Option<std::time::Duration>)> = pool.install(|| {
        parsed
            .par_iter()
            .map(|(file, path, loaded)| {
                if config.fail_fast && stop.load(Ordering::SeqCst) {
                    return (EntryRecord::Skipped { file: file.clone() }, None);
                }
                let start = Instant::now();
                let outcome = match loaded {
                    Ok(g) => analyze_group(g, path, config),
                    Err(e) => Err(HarnessError::Parse {
                        path: path.clone(),
                        message: match e {
                            HarnessError::Parse { message, .. } => message.clone(),
                            other => other.to_string(),
                        },
                    }),
                };
                let elapsed = start.elapsed();
                let record = match outcome {
                    Ok(report) => EntryRecord::Ok {
                        file: file.clone(),
                        report: Box::new(report),
                    },
                    Err(e) => EntryRecord::Error {
                        file: file.clone(),
                        exit_code: e.exit_code(),
                        message: e.to_string(),
                    },
                };
                if record.exit_code() != 0 {
                    stop.store(true, Ordering::SeqCst);
                }
                (record, Some(elapsed))
            })
            .collect()
    });
    let (entries, timings) = results.into_iter().unzip();
    Ok(VerifyReport::new(entries, timings))
}

/// Differences between pinned values and a fresh report.
pub fn compare_expected(expected: &Expected, report: &ThetaReport) -> Vec<Mismatch> {
    let st = &report.statistics;
    let mut out = Vec::new();
    let mut check = |field: &str, want: Option<String>, got: String| {
        if let Some(want) = want {
            if want != got {
                out.push(Mismatch {
                    field: field.to_string(),
                    expected: want,
                    found: got,
                });
            }
        }
    };
    let show = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
    let mut degrees = st.degrees.clone();
    degrees.sort_unstable();
    check("order", expected.order.map(|v| v.to_string()), st.order.to_string());
    check("class_count", expected.class_count.map(|v| v.to_string()), st.class_count.to_string());
    check("exponent", expected.exponent.map(|v| v.to_string()), st.exponent.to_string());
    check(
        "degrees",
        expected.degrees.as_ref().map(|v| format!("{v:?}")),
        format!("{degrees:?}"),
    );
    // Rationals are compared by value, so "2/4" pins the same as "1/2".
    let normalize = |s: &str| {
        report::parse_rational(s).map_or_else(|| s.to_string(), |r| report::format_rational(&r))
    };
    check(
        "min_theta",
        expected.min_theta.as_deref().map(normalize),
        st.min_theta.clone(),
    );
    check(
        "min_theta_prime_on_l_prime",
        expected.min_theta_prime_on_l_prime.as_deref().map(normalize),
        st.min_theta_prime_on_l_prime.clone().unwrap_or_else(|| "none".into()),
    );
    check("nilpotent", expected.nilpotent.map(|b| b.to_string()), show(report.flags.nilpotent));
    check("sylow_series", expected.sylow_series.map(|b| b.to_string()), show(report.flags.sylow_series));
    check("solvable", expected.solvable.map(|b| b.to_string()), show(report.flags.solvable));
    check(
        "circle_avoiding",
        expected.circle_avoiding.map(|b| b.to_string()),
        report.flags.circle_avoiding.to_string(),
    );
    check(
        "column_weak_counterexamples",
        expected.column_weak_counterexamples.map(|v| v.to_string()),
        st.finding_counts.counterexample_column_weak.to_string(),
    );
    check(
        "column_strict_counterexamples",
        expected.column_strict_counterexamples.map(|v| v.to_string()),
        st.finding_counts.counterexample_column_strict.to_string(),
    );
    out
}
